"""Finite-dimensional Lie algebras given by rational structure constants.

A bracket table stores [e_i, e_j] for i < j only; the diagonal and the
lower triangle follow from antisymmetry.  The Jacobi identity is checked
on construction, so every live ``LieAlgebra`` value is an actual Lie
algebra.  All derived objects (series, quotients, direct sums) stay in
exact rational arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .exactla import (
    DimensionMismatch,
    Matrix,
    Subspace,
    basis_vector,
    is_zero_vector,
    kernel_basis,
    rational,
    vector,
    zero_vector,
)

Vector = tuple[Fraction, ...]


class JacobiViolation(ValueError):
    """A bracket table that is not a Lie algebra."""

    def __init__(self, i: int, j: int, k: int, residual: Vector):
        self.triple = (i, j, k)
        self.residual = residual
        rendered = ", ".join(str(entry) for entry in residual)
        super().__init__(
            f"Jacobi identity fails on basis triple ({i + 1},{j + 1},{k + 1}); "
            f"residual ({rendered})")


class NotNilpotent(ValueError):
    """Lower central series stabilises above zero."""


class NotAnIdeal(ValueError):
    """Attempted quotient by a subspace that is not an ideal."""


def _canonical_table(dim: int, table) -> dict[tuple[int, int], tuple[tuple[int, Fraction], ...]]:
    out: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]] = {}
    for (i, j), entry in table.items():
        if not (0 <= i < j < dim):
            raise DimensionMismatch(f"bracket pair ({i},{j}) outside 0 <= i < j < {dim}")
        if isinstance(entry, Mapping):
            items = entry.items()
        else:
            items = entry
        cleaned = []
        for k, c in items:
            if not 0 <= k < dim:
                raise DimensionMismatch(f"bracket target index {k} outside basis")
            c = rational(c)
            if c:
                cleaned.append((k, c))
        if cleaned:
            cleaned.sort()
            out[(i, j)] = tuple(cleaned)
    return out


class LieAlgebra:
    """Lie algebra on basis e_0..e_{n-1} with a sparse bracket table."""

    def __init__(self, dim: int, table, name: str = "L"):
        if dim < 0:
            raise DimensionMismatch("negative dimension")
        self.dim = dim
        self.name = name
        self._table = _canonical_table(dim, table)
        self._key = (dim, tuple(sorted(self._table.items())))
        self._check_jacobi()

    # Structural identity: the name is a label, not part of the algebra.
    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim})"

    @property
    def table(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        """Copy of the sparse table, for display and serialisation."""
        return {pair: dict(entry) for pair, entry in self._table.items()}

    @property
    def is_abelian(self) -> bool:
        return not self._table

    # -- bracket ---------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> Vector:
        """[e_i, e_j] as a dense vector."""
        if i == j:
            return zero_vector(self.dim)
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        acc = [Fraction(0)] * self.dim
        for k, c in self._table.get((i, j), ()):
            acc[k] = sign * c
        return tuple(acc)

    def bracket_vector_basis(self, v: Sequence[Fraction], j: int) -> Vector:
        """[v, e_j], exploiting sparsity of the table."""
        acc = [Fraction(0)] * self.dim
        for i, x in enumerate(v):
            if not x:
                continue
            if i == j:
                continue
            if i < j:
                for k, c in self._table.get((i, j), ()):
                    acc[k] += x * c
            else:
                for k, c in self._table.get((j, i), ()):
                    acc[k] -= x * c
        return tuple(acc)

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        """Bilinear antisymmetric extension of the table."""
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("vector length does not match algebra dimension")
        acc = [Fraction(0)] * self.dim
        for (i, j), entry in self._table.items():
            w = x[i] * y[j] - x[j] * y[i]
            if w:
                for k, c in entry:
                    acc[k] += w * c
        return tuple(acc)

    # -- validation ------------------------------------------------------

    def _check_jacobi(self):
        for i, j, k in itertools.combinations(range(self.dim), 3):
            res = [a + b + c for a, b, c in zip(
                self.bracket_vector_basis(self.bracket_basis(i, j), k),
                self.bracket_vector_basis(self.bracket_basis(j, k), i),
                self.bracket_vector_basis(self.bracket_basis(k, i), j))]
            if not is_zero_vector(res):
                raise JacobiViolation(i, j, k, tuple(res))


def validate(dim: int, table, name: str = "L") -> LieAlgebra:
    """Build a LieAlgebra, raising JacobiViolation on a bad table."""
    return LieAlgebra(dim, table, name=name)


@dataclass(frozen=True)
class SeriesProfile:
    """Lower/upper central series data of a nilpotent algebra.

    ``lower`` is (gamma_1, ..., gamma_{c+1}) ending at the zero subspace;
    ``upper`` is (Z_0, ..., Z_c) starting at zero and ending at the whole
    space.  ``derived_dim`` is dim gamma_2 and ``gen_count`` the size of a
    minimal generating set.
    """

    lower: tuple[Subspace, ...]
    upper: tuple[Subspace, ...]
    nilpotency_class: int
    derived_dim: int
    gen_count: int

    def gamma(self, i: int) -> Subspace:
        """gamma_i, extended by zero past the nilpotency class."""
        if i < 1:
            raise ValueError("lower central series starts at index 1")
        if i >= len(self.lower) + 1:
            return Subspace.zero(self.lower[0].ambient_dim)
        return self.lower[min(i, len(self.lower)) - 1]

    @property
    def center(self) -> Subspace:
        return self.upper[1] if len(self.upper) > 1 else self.upper[0]


def product_space(L: LieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    """Span of all [a, b] with a in A, b in B."""
    if A.ambient_dim != L.dim or B.ambient_dim != L.dim:
        raise DimensionMismatch("subspace ambient dimension does not match algebra")
    vecs = [L.bracket(a, b) for a in A.basis.entries for b in B.basis.entries]
    return Subspace.from_vectors(L.dim, vecs)


def _lower_series(L: LieAlgebra) -> tuple[Subspace, ...]:
    full = Subspace.full(L.dim)
    series = [full]
    current = full
    while not current.is_zero:
        vecs = [L.bracket_vector_basis(row, j)
                for row in current.basis.entries for j in range(L.dim)]
        nxt = Subspace.from_vectors(L.dim, vecs)
        if nxt.dim >= current.dim and not current.is_zero:
            raise NotNilpotent(
                f"{L.name}: lower central series stabilises at dimension {current.dim}")
        series.append(nxt)
        current = nxt
    return tuple(series)


def _upper_series(L: LieAlgebra) -> tuple[Subspace, ...]:
    series = [Subspace.zero(L.dim)]
    current = series[0]
    while current.dim < L.dim:
        # Z_{next} = {x : [x, e_j] in Z_current for all j}; each constraint
        # row asks one quotient coordinate of [x, e_j] to vanish.
        full = Subspace.full(L.dim)
        rows = []
        for j in range(L.dim):
            images = [L.bracket_basis(l, j) for l in range(L.dim)]
            coords = [full.coords_in_quotient(current, img) for img in images]
            qdim = L.dim - current.dim
            for t in range(qdim):
                rows.append([coords[l][t] for l in range(L.dim)])
        nxt = kernel_basis(Matrix.from_rows(rows, L.dim)) if rows else Subspace.full(L.dim)
        if nxt.dim <= current.dim:
            raise NotNilpotent(f"{L.name}: upper central series stabilises below L")
        series.append(nxt)
        current = nxt
    return tuple(series)


def series_profile(L: LieAlgebra) -> SeriesProfile:
    """Both central series plus the (n, m, c) bookkeeping."""
    lower = _lower_series(L)
    upper = _upper_series(L)
    c = len(lower) - 1
    m = lower[1].dim if len(lower) > 1 else 0
    return SeriesProfile(lower=lower, upper=upper, nilpotency_class=c,
                         derived_dim=m, gen_count=L.dim - m)


def minimal_generators(L: LieAlgebra) -> list[Vector]:
    """Lifts of a basis of L/gamma_2: the non-pivot coordinate vectors."""
    gamma2 = product_space(L, Subspace.full(L.dim), Subspace.full(L.dim))
    taken = set(gamma2.pivots)
    return [basis_vector(L.dim, k) for k in range(L.dim) if k not in taken]


def quotient_algebra(L: LieAlgebra, ideal: Subspace,
                     name: str | None = None) -> tuple[LieAlgebra, Callable[[Sequence[Fraction]], Vector]]:
    """Quotient L/I with its projection map.

    The quotient basis is the canonical complement of I (non-pivot
    coordinates of I's RREF), so the resulting table is deterministic.
    """
    if ideal.ambient_dim != L.dim:
        raise DimensionMismatch("ideal ambient dimension does not match algebra")
    if not ideal.contains_subspace(product_space(L, Subspace.full(L.dim), ideal)):
        raise NotAnIdeal(f"{L.name}: subspace is not an ideal")
    taken = set(ideal.pivots)
    complement = [k for k in range(L.dim) if k not in taken]
    pos = {k: t for t, k in enumerate(complement)}

    def project(v: Sequence[Fraction]) -> Vector:
        residual = ideal.reduce(v)
        return tuple(residual[k] for k in complement)

    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a, b in itertools.combinations(complement, 2):
        img = project(L.bracket_basis(a, b))
        entry = {t: c for t, c in enumerate(img) if c}
        if entry:
            table[(pos[a], pos[b])] = entry
    qname = name if name is not None else f"{L.name}/I"
    return LieAlgebra(len(complement), table, name=qname), project


def direct_sum(L1: LieAlgebra, L2: LieAlgebra, name: str | None = None) -> LieAlgebra:
    """Block-diagonal bracket table on the concatenated bases."""
    shift = L1.dim
    table: dict[tuple[int, int], dict[int, Fraction]] = {
        pair: dict(entry) for pair, entry in L1._table.items()}
    for (i, j), entry in L2._table.items():
        table[(i + shift, j + shift)] = {k + shift: c for k, c in entry}
    sname = name if name is not None else f"{L1.name}+{L2.name}"
    return LieAlgebra(L1.dim + L2.dim, table, name=sname)
