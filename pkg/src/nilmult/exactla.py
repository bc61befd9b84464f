"""Exact linear algebra over the rationals.

Every scalar is a ``fractions.Fraction`` (arbitrary precision, always in
lowest terms, positive denominator), so no floating point ever enters a
computation.  Matrices and subspaces are immutable; a subspace is stored
as the reduced row-echelon basis of its span, which makes equality,
membership and quotient coordinates canonical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class DimensionMismatch(ValueError):
    """Operands disagree on dimensions."""


def rational(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vector(xs: Iterable) -> tuple[Fraction, ...]:
    """Coerce a sequence of scalars to an immutable rational vector."""
    return tuple(rational(x) for x in xs)


def basis_vector(n: int, k: int) -> tuple[Fraction, ...]:
    return tuple(_ONE if i == k else _ZERO for i in range(n))


def zero_vector(n: int) -> tuple[Fraction, ...]:
    return (_ZERO,) * n


def is_zero_vector(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise DimensionMismatch("row count does not match entries")
        if any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch("ragged rows")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int | None = None) -> "Matrix":
        data = tuple(vector(r) for r in rows)
        if cols is None:
            if not data:
                raise DimensionMismatch("cannot infer column count of empty matrix")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple((_ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(basis_vector(n, i) for i in range(n)))

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(zip(*self.entries)) if self.entries else tuple(() for _ in range(self.cols)))

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise DimensionMismatch("column counts differ")
        return Matrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def apply(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise DimensionMismatch("vector length does not match columns")
        return tuple(sum((a * b for a, b in zip(row, v) if b), _ZERO) for row in self.entries)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions differ")
        tcols = other.transpose().entries
        data = tuple(tuple(sum((a * b for a, b in zip(row, col) if a and b), _ZERO)
                           for col in tcols)
                     for row in self.entries)
        return Matrix(self.rows, other.cols, data)

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row-echelon form and rank.

    Plain rational Gauss-Jordan; pivots are normalised to 1 and cleared
    above and below, so the result is the canonical RREF.
    """
    a = [list(r) for r in m.entries]
    rank = 0
    for c in range(m.cols):
        piv = next((i for i in range(rank, m.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        lead = a[rank][c]
        if lead != 1:
            a[rank] = [x / lead for x in a[rank]]
        prow = a[rank]
        for i in range(m.rows):
            if i != rank and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y if y else x for x, y in zip(a[i], prow)]
        rank += 1
        if rank == m.rows:
            break
    return Matrix(m.rows, m.cols, tuple(tuple(r) for r in a)), rank


def rank(m: Matrix) -> int:
    return rref(m)[1]


def _pivot_cols(echelon: Matrix, nrows: int) -> tuple[int, ...]:
    pivots = []
    for i in range(nrows):
        row = echelon.entries[i]
        j = next(k for k, x in enumerate(row) if x != 0)
        pivots.append(j)
    return tuple(pivots)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n, held as an RREF basis (no zero rows)."""

    ambient_dim: int
    basis: Matrix
    pivots: tuple[int, ...]

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors: Iterable[Iterable]) -> "Subspace":
        rows = [vector(v) for v in vectors]
        if any(len(r) != ambient_dim for r in rows):
            raise DimensionMismatch("vector length does not match ambient dimension")
        if not rows:
            return cls.zero(ambient_dim)
        echelon, rk = rref(Matrix.from_rows(rows, ambient_dim))
        reduced = Matrix(rk, ambient_dim, echelon.entries[:rk])
        return cls(ambient_dim, reduced, _pivot_cols(reduced, rk))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix(0, ambient_dim, ()), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim),
                   tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    def reduce(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Residual of v after clearing this subspace's pivot coordinates."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length does not match ambient dimension")
        w = list(vector(v))
        for row, p in zip(self.basis.entries, self.pivots):
            f = w[p]
            if f:
                w = [x - f * y if y else x for x, y in zip(w, row)]
        return tuple(w)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return is_zero_vector(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.basis.entries)

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")
        return Subspace.from_vectors(
            self.ambient_dim,
            itertools.chain(self.basis.entries, other.basis.entries))

    def annihilator(self) -> "Subspace":
        """Functionals vanishing on this subspace (rows of the result)."""
        return kernel_basis(self.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        # Kernel of the stacked annihilator system.
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")
        stacked = self.annihilator().basis.vstack(other.annihilator().basis)
        return kernel_basis(stacked)

    def quotient_pivots(self, sub: "Subspace") -> tuple[int, ...]:
        """Pivot columns of self not used by the subspace sub."""
        taken = set(sub.pivots)
        return tuple(p for p in self.pivots if p not in taken)

    def quotient_basis_rows(self, sub: "Subspace") -> tuple[tuple[Fraction, ...], ...]:
        """Canonical lifts of a basis of self/sub (rows of self's RREF)."""
        taken = set(sub.pivots)
        return tuple(r for r, p in zip(self.basis.entries, self.pivots)
                     if p not in taken)

    def coords_in_quotient(self, sub: "Subspace", v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Coordinates of v + sub in self/sub.

        Requires sub <= self and v in self.  The coordinates refer to the
        canonical complement: the RREF rows of self whose pivots are not
        pivots of sub.
        """
        if not self.contains_subspace(sub):
            raise DimensionMismatch("quotient by a non-subspace")
        if not self.contains(v):
            raise DimensionMismatch("vector outside the space being quotiented")
        residual = sub.reduce(v)
        taken = set(sub.pivots)
        return tuple(residual[p] for p in self.pivots if p not in taken)


def kernel_basis(m: Matrix) -> Subspace:
    """Null space {x : m x = 0} as a subspace of Q^cols."""
    echelon, rk = rref(m)
    pivots = _pivot_cols(echelon, rk)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    rows = []
    for f in free:
        v = [_ZERO] * m.cols
        v[f] = _ONE
        for r, p in enumerate(pivots):
            v[p] = -echelon.entries[r][f]
        rows.append(v)
    return Subspace.from_vectors(m.cols, rows)
