"""Root-datum construction: counts, invariants, and lattice coordinates."""

from fractions import Fraction

import pytest

from bundleaut import linalg
from bundleaut.finabel import lattice_quotient
from bundleaut.rootdata import (
    DynkinType,
    InvalidType,
    admissible_types,
    build_root_datum,
    coroot,
    is_positive_root,
    root_hyperplanes,
)


def closure_oracle(simples):
    """Independent breadth-first closure under the reflection formula."""
    def reflect(v, a):
        c = 2 * sum(x * y for x, y in zip(v, a)) / sum(x * x for x in a)
        return tuple(x - c * y for x, y in zip(v, a))

    roots = set(simples)
    frontier = list(simples)
    while frontier:
        new = []
        for r in frontier:
            for a in simples:
                img = reflect(r, a)
                if img not in roots:
                    roots.add(img)
                    new.append(img)
        frontier = new
    return roots


@pytest.mark.parametrize("name,count", [
    ("A1", 2),        # rank-1 symmetry: {a, -a}
    ("A2", 6),
    ("B2", 8),
    ("C3", 18),
    ("D4", 24),
    ("D5", 40),
    ("E6", 72),
    ("E7", 126),
    ("E8", 240),
    ("F4", 48),
    ("G2", 12),
])
def test_root_counts(name, count):
    rd = build_root_datum(DynkinType.parse(name))
    assert len(rd.roots) == count
    assert len(rd.roots) == len(closure_oracle(rd.simple_roots))


@pytest.mark.parametrize("family,rank", [
    ("A", 0), ("B", 1), ("C", 2), ("D", 3), ("E", 5), ("E", 9), ("F", 3), ("G", 3),
])
def test_inadmissible_types_rejected(family, rank):
    with pytest.raises(InvalidType):
        DynkinType(family, rank)


def test_parse_round_trip():
    assert DynkinType.parse("e6") == DynkinType("E", 6)
    assert DynkinType.parse("D_5") == DynkinType("D", 5)
    with pytest.raises(InvalidType):
        DynkinType.parse("H4")


@pytest.mark.parametrize("t", admissible_types(6))
def test_root_system_invariants(t):
    rd = build_root_datum(t)
    roots = set(rd.roots)
    assert len(roots) % 2 == 0
    assert all(linalg.vneg(a) in roots for a in roots)
    # Cartan shape
    for i in range(rd.rank):
        assert rd.cartan[i][i] == 2
        for j in range(rd.rank):
            if i != j:
                assert rd.cartan[i][j] in (0, -1, -2, -3)
    # closed under every simple reflection, bijectively
    for i in range(rd.rank):
        image = {rd.simple_reflection(i, a) for a in roots}
        assert image == roots
    # <a, a^vee> = 2
    for a in rd.roots:
        assert linalg.dot(a, coroot(a)) == 2
    # weights and coweights are dual to the simple (co)roots
    for i, w in enumerate(rd.fundamental_weights):
        for j, a in enumerate(rd.simple_roots):
            assert linalg.dot(w, coroot(a)) == (1 if i == j else 0)
    for i, w in enumerate(rd.fundamental_coweights):
        for j, a in enumerate(rd.simple_roots):
            assert linalg.dot(a, w) == (1 if i == j else 0)


@pytest.mark.parametrize("name,planes", [
    ("A1", 1),
    ("A2", 3),
    ("G2", 6),  # 12 roots / 2; also h*r = 6*2
])
def test_hyperplane_counts(name, planes):
    rd = build_root_datum(DynkinType.parse(name))
    hp = root_hyperplanes(rd)
    assert len(hp) == planes
    seen = [a for plane in hp for a in plane]
    assert sorted(seen) == sorted(rd.roots)  # each root in exactly one plane


def test_positive_root_split():
    rd = build_root_datum(DynkinType.parse("F4"))
    pos = [a for a in rd.roots if is_positive_root(rd, a)]
    assert len(pos) == len(rd.roots) // 2
    assert all(not is_positive_root(rd, linalg.vneg(a)) for a in pos)


def test_coroot_map():
    rd = build_root_datum(DynkinType.parse("B2"))
    cr = rd.coroots
    assert set(cr) == set(rd.roots)
    for a, av in cr.items():
        assert av == linalg.vscale(Fraction(2) / linalg.dot(a, a), a)


def test_ranks_beyond_default_bound():
    # the enumeration bound is configurable; construction itself is not capped
    rd = build_root_datum(DynkinType("A", 8))
    assert len(rd.roots) == 72
    rd = build_root_datum(DynkinType("B", 9))
    assert len(rd.roots) == 162
    assert DynkinType("A", 8) not in admissible_types(8)
    assert DynkinType("A", 8) in admissible_types(9)


def test_e6_lattice_matches_printed_coordinates():
    rd = build_root_datum(DynkinType.parse("E6"))
    third = Fraction(2, 3)
    w1 = rd.fundamental_weights[0]
    assert w1 == (0, 0, 0, 0, 0, -third, -third, third)
    # the root span is cut out by xi_7 = xi_6 and xi_8 = -xi_6
    for a in rd.roots:
        assert a[6] == a[5] and a[7] == -a[5]


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_dn_weight_classes(n):
    rd = build_root_datum(DynkinType("D", n))
    q = lattice_quotient(rd.fundamental_weights, rd.simple_roots)
    eps1 = linalg.vector([1] + [0] * (n - 1))
    zero = q.group.zero()
    cls = {
        "0": zero,
        "eps1": q.project(eps1),
        "wn": q.project(rd.fundamental_weights[n - 1]),
        "wn1": q.project(rd.fundamental_weights[n - 2]),
    }
    assert len(set(cls.values())) == 4 == q.group.order
    double_wn = q.group.add(cls["wn"], cls["wn"])
    if n % 2:
        # 2 w_n = eps_1 and 3 w_n = w_{n-1}
        assert double_wn == cls["eps1"]
        assert q.group.add(double_wn, cls["wn"]) == cls["wn1"]
    else:
        assert double_wn == zero
        assert q.group.add(cls["wn"], cls["wn1"]) == cls["eps1"]
