"""Headline outputs: automorphism presentations, the classification table,
Hitchin-base numerology, and the local delta-invariant calculator.

The automorphism group of a moduli component is assembled as
H^1(C, Z(G)) x| (Out(G, delta) x Aut(C)): the torsion part comes from the
character group of the center raised to the 2g-th power, the outer part is
the stabilizer of the component label, and Aut(C) stays symbolic.  Table
rows group component labels delta by their stabilizer: orbits of the
Out(G)-action merged when the stabilizers agree pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import groupclass, weyl
from .finabel import AbelianAction, FiniteAbelianGroup, torsion_power
from .groupclass import GroupForm, OutGroup
from .rootdata import DynkinType, RootDatum, build_root_datum, admissible_types

MIN_GENUS_PRESENTATION = 4
SEMIDIRECT = "⋊"
TIMES = "×"
DELTA = "δ"
IN = "∈"
NEQ = "≠"


class GenusOutOfRange(ValueError):
    """Genus below the validity range of the requested output."""


class InconsistentProfile(ValueError):
    """A ramification entry violating parity or positivity."""


def _render_torsion(factors) -> str:
    if not factors:
        return ""
    parts = []
    i = 0
    factors = tuple(factors)
    while i < len(factors):
        j = i
        while j < len(factors) and factors[j] == factors[i]:
            j += 1
        k = j - i
        term = f"Pic(C)[{factors[i]}]"
        parts.append(term if k == 1 else f"({term})^{k}")
        i = j
    return f" {TIMES} ".join(parts)


def render_presentation(torsion_factors, outer: OutGroup) -> str:
    torsion = _render_torsion(torsion_factors)
    inner = "Aut(C)" if outer.is_trivial else f"{outer.symbol()} {TIMES} Aut(C)"
    if not torsion:
        return inner
    if outer.is_trivial:
        return f"{torsion} {SEMIDIRECT} Aut(C)"
    return f"{torsion} {SEMIDIRECT} ({inner})"


def _describe_action(action: AbelianAction, name: str) -> str:
    group = action.group
    if group.is_trivial:
        return "trivial"
    k = len(group.invariant_factors)
    m = action.matrix(name)
    identity = tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))
    if m == identity:
        return "trivial"
    if all(m[i][j] % group.invariant_factors[i] ==
           (-1 if i == j else 0) % group.invariant_factors[i]
           for i in range(k) for j in range(k)):
        return "dualization L -> L^{-1}"
    if all(m[i][j] in (0, 1) for i in range(k) for j in range(k)) and \
            all(sum(row) == 1 for row in m) and \
            all(sum(col) == 1 for col in zip(*m)):
        return "permutation of the torsion factors"
    rows = "; ".join(",".join(str(x) for x in row) for row in m)
    return f"matrix [{rows}]"


@dataclass(frozen=True)
class AutPresentation:
    """H^1(C, Z(G)) x| (Out(G, delta) x Aut(C)) in structured form."""

    group: GroupForm
    genus: int
    delta: tuple[int, ...]
    torsion_blocks: tuple[tuple[int, int], ...]  # (l, multiplicity 2g)
    outer: OutGroup
    outer_action: AbelianAction  # on Hom(Z(G), G_m)

    @property
    def torsion_group(self) -> FiniteAbelianGroup:
        chars = groupclass.center_char_group(self.group)
        if chars.is_trivial:
            return chars
        return torsion_power(chars, 2 * self.genus)

    def render(self) -> str:
        return render_presentation([l for l, _ in self.torsion_blocks], self.outer)

    def action_descriptions(self) -> dict[str, str]:
        out = {"Aut(C)": "pull-back" if self.torsion_blocks else "trivial"}
        for name in self.outer_action.names():
            if name != "e":
                out[name] = _describe_action(self.outer_action, name)
        return out


def aut_presentation(gf: GroupForm, delta, genus: int) -> AutPresentation:
    if genus < MIN_GENUS_PRESENTATION:
        raise GenusOutOfRange(
            f"the presentation holds for genus >= {MIN_GENUS_PRESENTATION}, got {genus}")
    delta = groupclass.validate_delta(gf, delta)
    chars = groupclass.center_char_group(gf)
    outer = groupclass.out_stabilizer(gf, delta)
    full_action = groupclass.out_action_on_center_chars(gf)
    actors = tuple((e.name, full_action.matrix(e.name)) for e in outer.elements)
    return AutPresentation(
        group=gf,
        genus=genus,
        delta=delta,
        torsion_blocks=tuple((l, 2 * genus) for l in chars.invariant_factors),
        outer=outer,
        outer_action=AbelianAction(group=full_action.group, actors=actors),
    )


def _render_element(x) -> str:
    if len(x) == 1:
        return str(x[0])
    return "(" + ",".join(str(c) for c in x) + ")"


def delta_classes(gf: GroupForm) -> list[tuple[tuple, ...]]:
    """Component labels grouped as in the classification table.

    Labels are partitioned into Out(G)-orbits; orbits whose stabilizer
    subgroups coincide (as sets of subgroups over the orbit) are printed as
    one row, since they produce identical presentations.
    """
    pi1 = groupclass.fundamental_group(gf)
    action = groupclass.out_action_on_pi1(gf)
    names = [e.name for e in groupclass.out_group(gf).elements]

    def stab(x):
        return frozenset(n for n in names if action.apply(n, x) == x)

    orbits = []
    seen = set()
    for x in sorted(pi1.elements()):
        if x in seen:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for n in names:
                z = action.apply(n, y)
                if z not in orbit:
                    orbit.add(z)
                    frontier.append(z)
        seen |= orbit
        orbits.append(tuple(sorted(orbit)))

    by_stabs: dict[frozenset, list] = {}
    for orbit in orbits:
        key = frozenset(stab(x) for x in orbit)
        by_stabs.setdefault(key, []).extend(orbit)
    classes = [tuple(sorted(v)) for v in by_stabs.values()]
    classes.sort(key=lambda c: c[0])
    return classes


def delta_class_label(gf: GroupForm, cls: tuple) -> str:
    pi1 = groupclass.fundamental_group(gf)
    sym = pi1.symbol()
    elems = set(cls)
    everything = set(pi1.elements())
    if pi1.is_trivial:
        return f"{DELTA} {IN} {{0}}"
    if elems == everything:
        return f"{DELTA} {IN} {sym}"
    if gf.dynkin.family == "A":
        two_torsion = {x for x in everything if pi1.add(x, x) == pi1.zero()}
        if elems == two_torsion:
            return f"2{DELTA} = 0 {IN} {sym}"
        if elems == everything - two_torsion:
            return f"2{DELTA} {NEQ} 0 {IN} {sym}"
    zero = pi1.zero()
    if elems == {zero}:
        return f"{DELTA} = {_render_element(zero)} {IN} {sym}"
    if elems == everything - {zero}:
        return f"{DELTA} {NEQ} {_render_element(zero)} {IN} {sym}"
    listing = ", ".join(_render_element(x) for x in sorted(elems))
    return f"{DELTA} = {listing} {IN} {sym}"


@dataclass(frozen=True)
class TableRow:
    family: str
    group: str
    delta_class: str
    presentation: str
    delta_values: tuple[tuple[int, ...], ...]

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "group": self.group,
            "delta_class": self.delta_class,
            "presentation": self.presentation,
            "delta_values": [list(d) for d in self.delta_values],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TableRow":
        return cls(
            family=d["family"],
            group=d["group"],
            delta_class=d["delta_class"],
            presentation=d["presentation"],
            delta_values=tuple(tuple(v) for v in d["delta_values"]),
        )


def table_types(max_rank: int = 8) -> list[DynkinType]:
    """Classification-table order: A, B, C, then D_4, even D, odd D, then
    the exceptional types."""
    types = admissible_types(max_rank)
    ds = sorted(t.rank for t in types if t.family == "D")
    d_order = [n for n in ds if n == 4] + [n for n in ds if n % 2 == 0 and n != 4] \
        + [n for n in ds if n % 2]
    ordered = [t for t in types if t.family in "ABC"]
    ordered += [DynkinType("D", n) for n in d_order]
    ordered += [t for t in types if t.family in "EFG"]
    return ordered


def classification_table(genus: int, max_rank: int = 8) -> list[TableRow]:
    """One row per (form, delta-class), in classification order."""
    if genus < MIN_GENUS_PRESENTATION:
        raise GenusOutOfRange(
            f"the table requires genus >= {MIN_GENUS_PRESENTATION}, got {genus}")
    rows = []
    for t in table_types(max_rank):
        for gf in groupclass.enumerate_forms(t):
            for cls in delta_classes(gf):
                rendered = {aut_presentation(gf, d, genus).render() for d in cls}
                assert len(rendered) == 1, "presentation not constant on a class"
                rows.append(TableRow(
                    family=t.label,
                    group=gf.display_name,
                    delta_class=delta_class_label(gf, cls),
                    presentation=rendered.pop(),
                    delta_values=cls,
                ))
    return rows


@dataclass(frozen=True)
class HitchinReport:
    group: str
    genus: int
    dim_group: int
    dim_center: int
    dim_basis: int
    weights: tuple[int, ...]
    coxeter_number: int
    fiber_dim: int
    higgs_stack_dim: int
    m_ab_components: int
    n_extra_components: int

    def as_dict(self) -> dict:
        return {
            "group": self.group,
            "genus": self.genus,
            "dim_group": self.dim_group,
            "dim_center": self.dim_center,
            "dim_basis": self.dim_basis,
            "weights": list(self.weights),
            "coxeter_number": self.coxeter_number,
            "fiber_dim": self.fiber_dim,
            "higgs_stack_dim": self.higgs_stack_dim,
            "m_ab_components": self.m_ab_components,
            "n_extra_components": self.n_extra_components,
        }


def riemann_roch_basis_dim(degrees, rank: int, genus: int, dim_center: int = 0) -> int:
    """sum_i h^0(omega^{d_i}) = sum d_i(2g-2) + r(1-g) + #{d_i = 1}."""
    return sum(degrees) * (2 * genus - 2) + rank * (1 - genus) + dim_center


def hitchin_report(gf: GroupForm, genus: int) -> HitchinReport:
    if genus < 2:
        raise GenusOutOfRange(f"Hitchin numerology requires genus >= 2, got {genus}")
    rd = build_root_datum(gf.dynkin)
    degrees = weyl.invariant_degrees(rd)
    dim_group = rd.rank + len(rd.roots)
    dim_center = 0  # almost-simple throughout
    closed_form = dim_group * (genus - 1) + dim_center
    via_rr = riemann_roch_basis_dim(degrees, rd.rank, genus, dim_center)
    assert via_rr == closed_form, "Riemann-Roch sum disagrees with dim G(g-1)"
    m = weyl.orbits_on_roots(rd).num_orbits
    try:
        n = weyl.orbits_on_hyperplane_pairs(rd).num_orbits
    except weyl.EmptyPairSet:
        n = 0
    return HitchinReport(
        group=gf.display_name,
        genus=genus,
        dim_group=dim_group,
        dim_center=dim_center,
        dim_basis=closed_form,
        weights=degrees,
        coxeter_number=degrees[-1],
        fiber_dim=dim_group * (genus - 1),
        higgs_stack_dim=2 * dim_group * (genus - 1) + dim_center,
        m_ab_components=m,
        n_extra_components=n,
    )


def delta_local(point) -> int:
    """delta_p = (deg_p(a* D) - (dim t - dim t^{W_x})) / 2, checked integral."""
    deg, drop = point
    if deg < 0 or drop < 0:
        raise InconsistentProfile(f"negative entry in profile point {point}")
    if (deg - drop) % 2:
        raise InconsistentProfile(
            f"profile point {point}: deg - drop = {deg - drop} is odd")
    if deg < drop:
        raise InconsistentProfile(
            f"profile point {point}: deg - drop = {deg - drop} is negative")
    return (deg - drop) // 2


def delta_total(profile) -> int:
    """Sum of the local invariants; zero exactly on transversal profiles."""
    return sum(delta_local(p) for p in profile)


def degree_identity_check(rd: RootDatum) -> tuple[int, int, int]:
    """Assert |Phi| = r * h and return (|Phi|, r, h)."""
    nroots = len(rd.roots)
    h = weyl.coxeter_number(rd)
    assert nroots == rd.rank * h, (nroots, rd.rank, h)
    return nroots, rd.rank, h
