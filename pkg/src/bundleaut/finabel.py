"""Exact integer-lattice arithmetic and finite abelian groups.

Smith normal form over Z by elementary row/column reduction, lattice
quotients with invariant factors and explicit projection maps, finite
abelian groups in invariant-factor form, subgroup enumeration, and named
automorphism actions on them.  Matrices are plain lists of lists of Python
ints; there is no size limit beyond practicality.
"""

from __future__ import annotations

import copy
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from . import linalg
from .linalg import Vector

IntMatrix = list[list[int]]


class LatticeError(ValueError):
    """Rank mismatch, non-containment, or a vector outside its lattice."""


def _int_identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(m: list[list[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (S, U, V) with U*M*V = S, S diagonal, d_i | d_{i+1}.

    U and V are unimodular.  Pivots are chosen as the minimal nonzero
    absolute value (first in scan order on ties), which makes the output
    deterministic for a fixed input.
    """
    s = [list(row) for row in m]
    nrows = len(s)
    ncols = len(s[0]) if nrows else 0
    u = _int_identity(nrows)
    v = _int_identity(ncols)

    def row_op(i, j, q):  # row_i -= q * row_j
        s[i] = [a - q * b for a, b in zip(s[i], s[j])]
        u[i] = [a - q * b for a, b in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in s:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    for t in range(min(nrows, ncols)):
        while True:
            pivot = None
            best = None
            for i in range(t, nrows):
                for j in range(t, ncols):
                    val = abs(s[i][j])
                    if val and (best is None or val < best):
                        best, pivot = val, (i, j)
            if pivot is None:
                break
            if pivot != (t, t):
                if pivot[0] != t:
                    swap_rows(t, pivot[0])
                if pivot[1] != t:
                    swap_cols(t, pivot[1])
            dirty = False
            for i in range(t + 1, nrows):
                if s[i][t]:
                    row_op(i, t, s[i][t] // s[t][t])
                    dirty = dirty or s[i][t] != 0
            for j in range(t + 1, ncols):
                if s[t][j]:
                    col_op(j, t, s[t][j] // s[t][t])
                    dirty = dirty or s[t][j] != 0
            if dirty:
                continue
            # divisibility: fold in a row whose entries the pivot misses
            culprit = next(
                (i for i in range(t + 1, nrows)
                 for j in range(t + 1, ncols) if s[i][j] % s[t][t]),
                None,
            )
            if culprit is None:
                break
            s[t] = [a + b for a, b in zip(s[t], s[culprit])]
            u[t] = [a + b for a, b in zip(u[t], u[culprit])]
        if t < min(nrows, ncols) and s[t][t] < 0:
            s[t] = [-a for a in s[t]]
            u[t] = [-a for a in u[t]]
    return s, u, v


def int_invert(m: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix, exactly."""
    inv = linalg.invert(m)
    out = []
    for row in inv:
        out.append([_as_int(x) for x in row])
    return out


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise LatticeError("expected an integer entry")
    return int(x)


def _prime_powers(n: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def from_cyclic_orders(orders) -> "FiniteAbelianGroup":
    """Canonical invariant factors of a direct sum of cyclic groups."""
    by_prime: dict[int, list[int]] = {}
    for n in orders:
        for p, e in _prime_powers(n).items():
            by_prime.setdefault(p, []).append(p ** e)
    for parts in by_prime.values():
        parts.sort(reverse=True)
    k = max((len(parts) for parts in by_prime.values()), default=0)
    factors = []
    for i in range(k):
        f = prod(parts[i] for parts in by_prime.values() if i < len(parts))
        factors.append(f)
    factors.reverse()
    return FiniteAbelianGroup(tuple(factors))


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z/l_1 x ... x Z/l_k with l_1 | l_2 | ... | l_k, every l_i >= 2.

    The empty tuple is the trivial group.  Elements are int tuples with
    coordinate i taken modulo l_i.
    """

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        fs = self.invariant_factors
        if any(f < 2 for f in fs):
            raise ValueError("invariant factors must be >= 2")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise ValueError("invariant factors must form a divisibility chain")

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.invariant_factors)

    def elements(self):
        return itertools.product(*(range(f) for f in self.invariant_factors))

    def reduce(self, x) -> tuple[int, ...]:
        return tuple(a % f for a, f in zip(x, self.invariant_factors))

    def add(self, x, y) -> tuple[int, ...]:
        return tuple((a + b) % f for a, b, f in zip(x, y, self.invariant_factors))

    def neg(self, x) -> tuple[int, ...]:
        return tuple((-a) % f for a, f in zip(x, self.invariant_factors))

    def element_order(self, x) -> int:
        n = 1
        y = self.reduce(x)
        while any(y):
            y = self.add(y, x)
            n += 1
        return n

    def contains(self, x) -> bool:
        return len(x) == len(self.invariant_factors) and all(
            0 <= a < f for a, f in zip(x, self.invariant_factors))

    def symbol(self) -> str:
        if not self.invariant_factors:
            return "{0}"
        parts = []
        for f, group in itertools.groupby(self.invariant_factors):
            k = len(list(group))
            base = f"Z/{f}Z"
            parts.append(base if k == 1 else f"({base})^{k}")
        return " x ".join(parts)


def direct_sum(a: FiniteAbelianGroup, b: FiniteAbelianGroup) -> FiniteAbelianGroup:
    return from_cyclic_orders(a.invariant_factors + b.invariant_factors)


def torsion_power(g: FiniteAbelianGroup, exponent_2g: int) -> FiniteAbelianGroup:
    """(Z/l_1)^{2g} + ... + (Z/l_k)^{2g}, renormalized to invariant factors.

    exponent_2g must be 2*genus with genus >= 2.
    """
    if exponent_2g < 4 or exponent_2g % 2:
        raise ValueError("exponent must be 2*genus with genus >= 2")
    orders = [f for f in g.invariant_factors for _ in range(exponent_2g)]
    return from_cyclic_orders(orders)


def closure(group: FiniteAbelianGroup, generators) -> frozenset:
    """The subgroup generated by the given elements."""
    elems = {group.zero()}
    frontier = [group.reduce(g) for g in generators]
    elems.update(frontier)
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = group.add(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


def _row_lattice_basis(rows: IntMatrix, rank: int) -> IntMatrix:
    """A basis (rank x rank) of the row lattice of an integer matrix."""
    s, _, v = smith_normal_form(rows)
    vinv = int_invert(v)
    basis = []
    for i in range(rank):
        d = s[i][i] if i < len(s) else 0
        if d == 0:
            raise LatticeError("row lattice does not have full rank")
        basis.append([d * x for x in vinv[i]])
    return basis


class Subgroup:
    """A subgroup of a FiniteAbelianGroup, with explicit coordinates.

    `structure` is the subgroup's own invariant-factor form and `basis`
    realizes the decomposition inside the ambient group:  every element is
    sum(c_i * basis_i) with c the `to_coords` image.
    """

    def __init__(self, ambient: FiniteAbelianGroup, generators, basis=None):
        self.ambient = ambient
        self.generators = tuple(ambient.reduce(g) for g in generators)
        self.elements = closure(ambient, self.generators)
        self._init_structure()
        if basis is not None:
            self._remap_basis(tuple(ambient.reduce(b) for b in basis))

    @classmethod
    def from_elements(cls, ambient: FiniteAbelianGroup, elements) -> "Subgroup":
        elements = frozenset(ambient.reduce(e) for e in elements)
        gens: list[tuple[int, ...]] = []
        have = frozenset({ambient.zero()})
        for e in sorted(elements):
            if e not in have:
                gens.append(e)
                have = closure(ambient, gens)
        sub = cls(ambient, gens)
        assert sub.elements == elements
        return sub

    def _init_structure(self):
        d = self.ambient.invariant_factors
        r = len(d)
        if r == 0 or len(self.elements) == 1:
            self.structure = FiniteAbelianGroup(())
            self.basis = ()
            self._coords = {self.ambient.zero(): ()}
            return
        rows = [list(g) for g in self.generators]
        rows += [[d[i] if j == i else 0 for j in range(r)] for i in range(r)]
        bl = _row_lattice_basis(rows, r)
        bl_t = list(zip(*bl))
        mk = []
        for i in range(r):
            target = [d[i] if j == i else 0 for j in range(r)]
            x = linalg.solve(bl_t, target)
            mk.append([_as_int(c) for c in x])
        s, _, v = smith_normal_form(mk)
        full = [s[i][i] for i in range(r)]
        positions = [i for i, f in enumerate(full) if f > 1]
        self.structure = FiniteAbelianGroup(tuple(full[i] for i in positions))
        vinv = int_invert(v)
        basis = []
        for i in positions:
            z = [sum(vinv[i][k] * bl[k][j] for k in range(r)) for j in range(r)]
            basis.append(self.ambient.reduce(z))
        self.basis = tuple(basis)
        # tabulate coordinates; subgroups here are small
        coords = {}
        for c in self.structure.elements():
            elt = self.ambient.zero()
            for ci, b in zip(c, self.basis):
                for _ in range(ci):
                    elt = self.ambient.add(elt, b)
            coords[elt] = c
        assert len(coords) == len(self.elements) == self.structure.order
        self._coords = coords

    def _remap_basis(self, basis):
        coords = {}
        for c in self.structure.elements():
            elt = self.ambient.zero()
            for ci, b in zip(c, basis):
                for _ in range(ci):
                    elt = self.ambient.add(elt, b)
            coords[elt] = c
        if len(coords) != self.structure.order or set(coords) != set(self.elements):
            raise ValueError("proposed basis does not decompose the subgroup")
        self.basis = basis
        self._coords = coords

    def with_basis(self, basis) -> "Subgroup":
        return Subgroup(self.ambient, self.generators, basis=basis)

    def to_coords(self, element) -> tuple[int, ...]:
        return self._coords[self.ambient.reduce(element)]

    def from_coords(self, coords) -> tuple[int, ...]:
        elt = self.ambient.zero()
        for ci, b in zip(self.structure.reduce(coords), self.basis):
            for _ in range(ci):
                elt = self.ambient.add(elt, b)
        return elt

    def __contains__(self, element) -> bool:
        return self.ambient.reduce(element) in self.elements

    def canonical_key(self):
        return (len(self.elements), tuple(sorted(self.elements)))

    def __eq__(self, other):
        return (isinstance(other, Subgroup)
                and self.ambient == other.ambient
                and self.elements == other.elements)

    def __hash__(self):
        return hash((self.ambient, self.elements))

    def __repr__(self):
        return f"Subgroup({self.structure.symbol()} in {self.ambient.symbol()})"


def enumerate_subgroups(g: FiniteAbelianGroup) -> list[Subgroup]:
    """Every subgroup exactly once, ordered by size then element lists."""
    all_elements = list(g.elements())
    seen = {frozenset({g.zero()})}
    frontier = list(seen)
    while frontier:
        nxt = []
        for elems in frontier:
            for x in all_elements:
                if x not in elems:
                    grown = closure(g, list(elems) + [x])
                    if grown not in seen:
                        seen.add(grown)
                        nxt.append(grown)
        frontier = nxt
    ordered = sorted(seen, key=lambda e: (len(e), tuple(sorted(e))))
    return [Subgroup.from_elements(g, elems) for elems in ordered]


class LatticeQuotient:
    """sup/sub for full-rank lattices, with an explicit projection map.

    `project` sends any vector of the sup lattice to its class in
    invariant-factor coordinates; `generator_lifts` are sup-lattice vectors
    projecting to the unit classes.
    """

    def __init__(self, sup_basis, sub_basis):
        sup_basis = [linalg.vector(v) for v in sup_basis]
        sub_basis = [linalg.vector(v) for v in sub_basis]
        if len(sup_basis) != len(sub_basis):
            raise LatticeError("sup and sub lattices must have equal rank")
        r = len(sup_basis)
        self.sup_basis = tuple(sup_basis)
        self.ambient_dim = len(sup_basis[0]) if sup_basis else 0
        self._sup_t = list(zip(*sup_basis)) if r else []
        rel = []
        for w in sub_basis:
            coords = self._sup_coords(w)
            rel.append(coords)
        s, _, v = smith_normal_form(rel)
        full = [s[i][i] for i in range(r)]
        if any(f == 0 for f in full):
            raise LatticeError("sub lattice does not have full rank")
        self._full = full
        self._v = v
        self._positions = [i for i, f in enumerate(full) if f > 1]
        self.group = FiniteAbelianGroup(tuple(full[i] for i in self._positions))
        vinv = int_invert(v)
        lifts = []
        for i in self._positions:
            lift = linalg.vector([0] * len(sup_basis[0])) if sup_basis else ()
            for k in range(r):
                lift = linalg.vadd(lift, linalg.vscale(vinv[i][k], sup_basis[k]))
            lifts.append(lift)
        self.generator_lifts = tuple(lifts)
        self._remap = None

    def _sup_coords(self, v) -> list[int]:
        if not self.sup_basis:
            raise LatticeError("empty lattice")
        x = linalg.solve(self._sup_t, v)
        if x is None:
            raise LatticeError("vector lies outside the span of the lattice")
        return [_as_int(c) for c in x]

    def project(self, v) -> tuple[int, ...]:
        x = self._sup_coords(linalg.vector(v))
        y = [sum(x[k] * self._v[k][j] for k in range(len(x))) for j in range(len(x))]
        coords = tuple(y[i] % self._full[i] for i in self._positions)
        if self._remap is not None:
            return self._remap[coords]
        return coords

    def lift(self, coords) -> Vector:
        result = linalg.vector([0] * self.ambient_dim)
        for c, g in zip(coords, self.generator_lifts):
            result = linalg.vadd(result, linalg.vscale(c, g))
        return result

    def with_basis(self, lifts) -> "LatticeQuotient":
        """Re-coordinatize the quotient on the classes of the given lifts."""
        if len(lifts) != len(self.group.invariant_factors):
            raise LatticeError("need one lift per invariant factor")
        if self.group.order > 4096:
            raise LatticeError("quotient too large to re-coordinatize")
        base_coords = [self._unmapped_project(l) for l in lifts]
        table = {}
        for c in self.group.elements():
            total = self.group.zero()
            for ci, b in zip(c, base_coords):
                for _ in range(ci):
                    total = self.group.add(total, b)
            table[total] = c
        if len(table) != self.group.order:
            raise LatticeError("lifts do not generate independent classes")
        other = copy.copy(self)
        other._remap = table
        other.generator_lifts = tuple(linalg.vector(l) for l in lifts)
        return other

    def _unmapped_project(self, v):
        x = self._sup_coords(linalg.vector(v))
        y = [sum(x[k] * self._v[k][j] for k in range(len(x))) for j in range(len(x))]
        return tuple(y[i] % self._full[i] for i in self._positions)


def lattice_quotient(sup_basis, sub_basis) -> LatticeQuotient:
    return LatticeQuotient(sup_basis, sub_basis)


@dataclass(frozen=True)
class AbelianAction:
    """Named automorphisms of a finite abelian group, as integer matrices.

    Matrix column j is the image of the j-th invariant-factor generator;
    entries are taken modulo the factor of their row.
    """

    group: FiniteAbelianGroup
    actors: tuple[tuple[str, tuple[tuple[int, ...], ...]], ...]

    def __post_init__(self):
        for name, m in self.actors:
            images = {self.apply(name, x) for x in self.group.elements()}
            if len(images) != self.group.order:
                raise ValueError(f"actor {name!r} is not invertible")

    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.actors)

    def matrix(self, name: str):
        for n, m in self.actors:
            if n == name:
                return m
        raise KeyError(name)

    def apply(self, name: str, x) -> tuple[int, ...]:
        m = self.matrix(name)
        fs = self.group.invariant_factors
        k = len(fs)
        return tuple(
            sum(m[i][j] * x[j] for j in range(k)) % fs[i] for i in range(k)
        )
