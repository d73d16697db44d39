"""Exact root data for the simple Dynkin families.

Roots, coroots, Cartan matrices and fundamental (co)weights are built over
exact rationals.  D_n uses the coordinates with Q(D_n) the even integer
vectors and P(D_n) = Z^n + <(sum e_i)/2>; E-types sit inside R^8 in the
standard even coordinate system, so E_6 has w_1 = (2/3)(e_8 - e_7 - e_6).
A, B, C use the usual e_i - e_j / +-e_i / +-2e_i conventions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import (
    Vector,
    dot,
    invert,
    mat_mul,
    matrix,
    transpose,
    vector,
    vneg,
    vscale,
    vsub,
)

DEFAULT_MAX_RANK = 8

_FAMILIES = "ABCDEFG"


class InvalidType(ValueError):
    """Family/rank pair outside the admissible classification."""


@dataclass(frozen=True, order=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self):
        fam, n = self.family, self.rank
        ok = (
            (fam == "A" and n >= 1)
            or (fam == "B" and n >= 2)
            or (fam == "C" and n >= 3)
            or (fam == "D" and n >= 4)
            or (fam == "E" and n in (6, 7, 8))
            or (fam == "F" and n == 4)
            or (fam == "G" and n == 2)
        )
        if not ok:
            raise InvalidType(f"inadmissible Dynkin type {fam}{n}")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def label(self) -> str:
        return f"{self.family}_{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "DynkinType":
        s = text.strip().replace("_", "")
        if len(s) < 2 or s[0].upper() not in _FAMILIES or not s[1:].isdigit():
            raise InvalidType(f"cannot parse Dynkin type from {text!r}")
        return cls(s[0].upper(), int(s[1:]))

    def __str__(self) -> str:
        return self.name


def _unit(dim: int, i: int) -> Vector:
    return vector(1 if j == i else 0 for j in range(dim))


def _simple_roots(t: DynkinType) -> tuple[int, list[Vector]]:
    n = t.rank
    half = Fraction(1, 2)
    if t.family == "A":
        dim = n + 1
        return dim, [vsub(_unit(dim, i), _unit(dim, i + 1)) for i in range(n)]
    if t.family == "B":
        roots = [vsub(_unit(n, i), _unit(n, i + 1)) for i in range(n - 1)]
        roots.append(_unit(n, n - 1))
        return n, roots
    if t.family == "C":
        roots = [vsub(_unit(n, i), _unit(n, i + 1)) for i in range(n - 1)]
        roots.append(vscale(2, _unit(n, n - 1)))
        return n, roots
    if t.family == "D":
        roots = [vsub(_unit(n, i), _unit(n, i + 1)) for i in range(n - 1)]
        roots.append(vector([0] * (n - 2) + [1, 1]))
        return n, roots
    if t.family == "E":
        a1 = vector([half, -half, -half, -half, -half, -half, -half, half])
        a2 = vector([1, 1, 0, 0, 0, 0, 0, 0])
        chain = [vsub(_unit(8, k - 2), _unit(8, k - 3)) for k in range(3, 9)]
        return 8, ([a1, a2] + chain)[:n]
    if t.family == "F":
        return 4, [
            vector([0, 1, -1, 0]),
            vector([0, 0, 1, -1]),
            vector([0, 0, 0, 1]),
            vector([half, -half, -half, -half]),
        ]
    # G_2: realized in the sum-zero plane of R^3
    return 3, [vector([1, -1, 0]), vector([-2, 1, 1])]


def coroot(alpha: Vector) -> Vector:
    return vscale(Fraction(2) / dot(alpha, alpha), alpha)


@dataclass(frozen=True)
class RootDatum:
    dynkin: DynkinType
    ambient_dim: int
    simple_roots: tuple[Vector, ...]
    cartan: tuple[tuple[int, ...], ...]
    roots: tuple[Vector, ...]
    fundamental_weights: tuple[Vector, ...]
    fundamental_coweights: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return self.dynkin.rank

    @property
    def simple_coroots(self) -> tuple[Vector, ...]:
        return tuple(coroot(a) for a in self.simple_roots)

    @property
    def coroots(self) -> dict[Vector, Vector]:
        return {a: coroot(a) for a in self.roots}

    def reflect(self, v: Vector, alpha: Vector) -> Vector:
        # s_alpha(v) = v - <v, alpha^vee> alpha
        c = dot(v, coroot(alpha))
        return vsub(v, vscale(c, alpha))

    def simple_reflection(self, i: int, v: Vector) -> Vector:
        return self.reflect(v, self.simple_roots[i])


@lru_cache(maxsize=None)
def build_root_datum(t: DynkinType) -> RootDatum:
    """Construct the full root datum for an admissible type.

    The root set is the closure of the simple roots under the simple
    reflections; coroots are 2a/(a,a); fundamental (co)weights come from the
    inverse Cartan matrix, so they live in the span of the roots.
    """
    dim, simples = _simple_roots(t)
    n = t.rank

    cartan_rows = []
    for i in range(n):
        covec = coroot(simples[i])
        row = []
        for j in range(n):
            c = dot(simples[j], covec)
            if c.denominator != 1:
                raise InvalidType(f"non-integral Cartan pairing for {t}")
            row.append(int(c))
        cartan_rows.append(tuple(row))
    cartan = tuple(cartan_rows)
    for i in range(n):
        assert cartan[i][i] == 2
        for j in range(n):
            if i != j:
                assert cartan[i][j] in (0, -1, -2, -3)

    roots = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for root in frontier:
            for a in simples:
                image = vsub(root, vscale(dot(root, coroot(a)), a))
                if image not in roots:
                    roots.add(image)
                    nxt.append(image)
        frontier = nxt

    cartan_inv = invert(cartan)
    weights = [
        _combine(cartan_inv, i, simples)
        for i in range(n)
    ]
    cocartan_inv = invert(transpose(matrix(cartan)))
    coweights = [
        _combine(cocartan_inv, i, [coroot(a) for a in simples])
        for i in range(n)
    ]

    return RootDatum(
        dynkin=t,
        ambient_dim=dim,
        simple_roots=tuple(simples),
        cartan=cartan,
        roots=tuple(sorted(roots)),
        fundamental_weights=tuple(weights),
        fundamental_coweights=tuple(coweights),
    )


def _combine(coeff_matrix, i, basis):
    out = vector([0] * len(basis[0]))
    for k, b in enumerate(basis):
        out = tuple(x + coeff_matrix[k][i] * y for x, y in zip(out, b))
    return out


def root_hyperplanes(rd: RootDatum) -> tuple[frozenset, ...]:
    """The |Phi|/2 hyperplanes, each as the unordered pair {a, -a}."""
    seen = set()
    planes = []
    for alpha in rd.roots:
        rep = max(alpha, vneg(alpha))
        if rep not in seen:
            seen.add(rep)
            planes.append(frozenset((rep, vneg(rep))))
    planes.sort(key=lambda p: max(p))
    return tuple(planes)


@lru_cache(maxsize=None)
def _simple_coordinate_matrix(rd: RootDatum):
    # pseudo-inverse (A^T A)^-1 A^T for A = simple roots as columns; exact
    # because the simple roots are linearly independent
    a_rows = matrix(rd.simple_roots)
    gram = tuple(tuple(dot(u, v) for v in rd.simple_roots) for u in rd.simple_roots)
    return mat_mul(invert(gram), a_rows)


def simple_root_coordinates(rd: RootDatum, v: Vector) -> Vector:
    """Coordinates of v (a vector in the root span) in the simple-root basis."""
    m = _simple_coordinate_matrix(rd)
    return tuple(dot(row, v) for row in m)


def is_positive_root(rd: RootDatum, alpha: Vector) -> bool:
    coords = simple_root_coordinates(rd, alpha)
    return all(c >= 0 for c in coords) and any(c > 0 for c in coords)


def admissible_types(max_rank: int = DEFAULT_MAX_RANK) -> list[DynkinType]:
    """All admissible types up to the rank bound, in classification order.

    The A family is bounded by SL_n matrix size (n <= max_rank, so rank
    n-1); B/C/D by Dynkin rank; exceptional types appear when their rank
    fits.
    """
    types: list[DynkinType] = []
    types += [DynkinType("A", n - 1) for n in range(2, max_rank + 1)]
    types += [DynkinType("B", n) for n in range(2, max_rank + 1)]
    types += [DynkinType("C", n) for n in range(3, max_rank + 1)]
    types += [DynkinType("D", n) for n in range(4, max_rank + 1)]
    types += [DynkinType("E", n) for n in (6, 7, 8) if n <= max_rank]
    if max_rank >= 4:
        types.append(DynkinType("F", 4))
    if max_rank >= 2:
        types.append(DynkinType("G", 2))
    return types
