"""Weyl-group machinery: orbits, Coxeter elements, degrees, longest element.

Orbit computations act through simple-reflection generators only, encoded as
permutations of the root list so the breadth-first searches run on small
integers.  The group order comes from an orbit-stabilizer chain on
fundamental weights; the full group is never enumerated.  Invariant degrees
are read off the cyclotomic factorization of the characteristic polynomial
of a Coxeter element, all in exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from . import linalg
from .linalg import Matrix, Vector
from .rootdata import RootDatum, is_positive_root, root_hyperplanes


class EmptyPairSet(ValueError):
    """Rank-1 systems have a single hyperplane and no distinct pairs."""


@dataclass(frozen=True)
class WeylElement:
    matrix: Matrix
    word: tuple[int, ...] | None = None

    def apply(self, v: Vector) -> Vector:
        return linalg.mat_vec(self.matrix, v)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylElement(linalg.mat_mul(self.matrix, other.matrix), word)

    @property
    def is_identity(self) -> bool:
        return self.matrix == linalg.identity(len(self.matrix))

    def order(self) -> int:
        n = 1
        power = self
        while not power.is_identity:
            power = power * self
            n += 1
            if n > 10000:
                raise RuntimeError("element order runaway")
        return n


@dataclass(frozen=True)
class OrbitDecomposition:
    items: tuple
    orbits: tuple[tuple, ...]

    @property
    def representatives(self) -> tuple:
        return tuple(orbit[0] for orbit in self.orbits)

    @property
    def num_orbits(self) -> int:
        return len(self.orbits)


def simple_reflection_element(rd: RootDatum, i: int) -> WeylElement:
    dim = rd.ambient_dim
    cols = [rd.simple_reflection(i, e) for e in linalg.identity(dim)]
    return WeylElement(linalg.transpose(linalg.matrix(cols)), (i,))


@lru_cache(maxsize=None)
def _root_permutations(rd: RootDatum) -> tuple[tuple[int, ...], ...]:
    """For each simple reflection, the permutation it induces on rd.roots."""
    index = {root: k for k, root in enumerate(rd.roots)}
    perms = []
    for i in range(rd.rank):
        perms.append(tuple(index[rd.simple_reflection(i, r)] for r in rd.roots))
    return tuple(perms)


def _orbit_partition(n_items: int, perms) -> list[list[int]]:
    seen = [False] * n_items
    orbits = []
    for start in range(n_items):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for p in perms:
                    y = p[x]
                    if not seen[y]:
                        seen[y] = True
                        orbit.append(y)
                        nxt.append(y)
            frontier = nxt
        orbits.append(sorted(orbit))
    orbits.sort(key=lambda o: o[0])
    return orbits


def orbits_on_roots(rd: RootDatum) -> OrbitDecomposition:
    perms = _root_permutations(rd)
    orbits = _orbit_partition(len(rd.roots), perms)
    return OrbitDecomposition(
        items=rd.roots,
        orbits=tuple(tuple(rd.roots[i] for i in orbit) for orbit in orbits),
    )


@lru_cache(maxsize=None)
def _hyperplane_permutations(rd: RootDatum):
    planes = root_hyperplanes(rd)
    reps = [max(p) for p in planes]
    rep_index = {}
    for k, plane in enumerate(planes):
        for root in plane:
            rep_index[root] = k
    root_perms = _root_permutations(rd)
    perms = []
    for perm in root_perms:
        root_of = {root: rd.roots[perm[i]] for i, root in enumerate(rd.roots)}
        perms.append(tuple(rep_index[root_of[rep]] for rep in reps))
    return planes, tuple(perms)


def orbits_on_hyperplane_pairs(rd: RootDatum) -> OrbitDecomposition:
    """W-orbits on unordered pairs of distinct root hyperplanes."""
    if rd.rank < 2:
        raise EmptyPairSet("rank-1 systems have no singular discriminant locus")
    planes, perms = _hyperplane_permutations(rd)
    h = len(planes)
    pairs = [(i, j) for i in range(h) for j in range(i + 1, h)]
    pair_index = {p: k for k, p in enumerate(pairs)}
    pair_perms = []
    for perm in perms:
        images = []
        for i, j in pairs:
            a, b = perm[i], perm[j]
            images.append(pair_index[(a, b) if a < b else (b, a)])
        pair_perms.append(tuple(images))
    orbits = _orbit_partition(len(pairs), pair_perms)
    items = tuple(frozenset((planes[i], planes[j])) for i, j in pairs)
    return OrbitDecomposition(
        items=items,
        orbits=tuple(tuple(items[k] for k in orbit) for orbit in orbits),
    )


def ordered_root_pair_orbit_count(rd: RootDatum) -> int:
    """Number of W-orbits on Phi x Phi under the diagonal action.

    Reported alongside the distinct-hyperplane-pair count; the two differ
    because each hyperplane carries two roots and the diagonal contributes
    orbits of its own.
    """
    perms = _root_permutations(rd)
    n = len(rd.roots)
    pair_perms = [
        tuple(p[k // n] * n + p[k % n] for k in range(n * n)) for p in perms
    ]
    return len(_orbit_partition(n * n, pair_perms))


def coxeter_element(rd: RootDatum) -> WeylElement:
    w = WeylElement(linalg.identity(rd.ambient_dim), ())
    for i in range(rd.rank):
        w = w * simple_reflection_element(rd, i)
    return w


def coxeter_number(rd: RootDatum) -> int:
    return coxeter_element(rd).order()


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_divmod(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    # ascending coefficients, b monic in its leading term
    a = list(a)
    q = [0] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        shift = len(a) - len(b)
        lead, blead = a[-1], b[-1]
        if lead % blead:
            return q, a
        f = lead // blead
        q[shift] = f
        for i, c in enumerate(b):
            a[shift + i] -= f * c
    while a and a[-1] == 0:
        a.pop()
    return q, a


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> tuple[int, ...]:
    """Coefficients of the d-th cyclotomic polynomial, ascending."""
    poly = [-1] + [0] * (d - 1) + [1]  # x^d - 1
    for e in range(1, d):
        if d % e == 0:
            q, r = _poly_divmod(poly, list(cyclotomic_polynomial(e)))
            assert not r
            poly = q
    return tuple(poly)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def invariant_degrees(rd: RootDatum) -> tuple[int, ...]:
    """Degrees d_1 <= ... <= d_r of the free invariant generators.

    Extracted from the characteristic polynomial of a Coxeter element: the
    polynomial factors into cyclotomics, each Phi_d contributing exponents
    j*h/d for j coprime to d, and degrees are exponents plus one.
    """
    cox = coxeter_element(rd)
    h = cox.order()
    coeffs = linalg.charpoly(cox.matrix)  # descending
    poly = []
    for c in reversed(coeffs):
        assert c.denominator == 1
        poly.append(int(c))
    exponents: list[int] = []
    trivial_mult = 0
    for d in _divisors(h):
        phi = list(cyclotomic_polynomial(d))
        while True:
            q, r = _poly_divmod(poly, phi)
            if r:
                break
            poly = q
            if d == 1:
                trivial_mult += 1
            else:
                step = h // d
                exponents.extend(step * j for j in range(1, d + 1) if gcd(j, d) == 1)
    assert poly == [1], "characteristic polynomial is not a product of cyclotomics"
    assert trivial_mult == rd.ambient_dim - rd.rank
    assert len(exponents) == rd.rank
    return tuple(sorted(e + 1 for e in exponents))


def longest_element(rd: RootDatum) -> WeylElement:
    """The unique element sending every positive root to a negative root.

    Greedy descent: as long as some simple root stays positive, append its
    reflection; each step increases the length by one.
    """
    simples = rd.simple_roots
    w = WeylElement(linalg.identity(rd.ambient_dim), ())
    while True:
        i = next(
            (i for i in range(rd.rank) if is_positive_root(rd, w.apply(simples[i]))),
            None,
        )
        if i is None:
            return w
        w = w * simple_reflection_element(rd, i)


@lru_cache(maxsize=None)
def weyl_order(rd: RootDatum) -> int:
    """|W| by an orbit-stabilizer chain on fundamental weights.

    Stab_W(w_i) is the parabolic generated by the other simple reflections,
    so |W| = |orbit(w_i)| * |W_{S - i}| recursively; orbits are small even
    in rank 8.
    """
    simples = rd.simple_roots
    weights = rd.fundamental_weights

    def order(active: frozenset) -> int:
        if not active:
            return 1
        i = min(active)
        orbit = {weights[i]}
        frontier = [weights[i]]
        while frontier:
            nxt = []
            for v in frontier:
                for j in active:
                    image = rd.reflect(v, simples[j])
                    if image not in orbit:
                        orbit.add(image)
                        nxt.append(image)
            frontier = nxt
        return len(orbit) * order(active - {i})

    return order(frozenset(range(rd.rank)))
