"""Schur multiplier dimension via degree-2 homology.

For a nilpotent Lie algebra over the rationals, dim M(L) equals the
dimension of the second homology of the complex

    Λ³L --d3--> Λ²L --d2--> L

with trivial coefficients: dim M(L) = nullity(d2) - rank(d3).  Exterior
power bases are index tuples in lexicographic order, and both boundary
matrices are exact rational matrices, so the resulting dimensions are
exact integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .exactla import Matrix, rank
from .lie_core import LieAlgebra


def exterior_basis(n: int, k: int) -> list[tuple[int, ...]]:
    """Strictly increasing index k-tuples over 0..n-1, lex sorted."""
    return list(itertools.combinations(range(n), k))


@dataclass(frozen=True)
class MultiplierResult:
    """Multiplier dimension together with the two boundary ranks."""

    n: int
    rank_d2: int
    rank_d3: int
    dim_M: int

    def __post_init__(self):
        if self.dim_M != comb(self.n, 2) - self.rank_d2 - self.rank_d3:
            raise ValueError("inconsistent multiplier bookkeeping")


def d2_matrix(L: LieAlgebra) -> Matrix:
    """Boundary Λ²L → L, e_i ∧ e_j ↦ [e_i, e_j]; columns follow the pair basis."""
    pairs = exterior_basis(L.dim, 2)
    columns = [L.bracket_basis(i, j) for i, j in pairs]
    rows = [[col[r] for col in columns] for r in range(L.dim)]
    return Matrix.from_rows(rows, cols=len(pairs))


def d3_matrix(L: LieAlgebra) -> Matrix:
    """Boundary Λ³L → Λ²L, x∧y∧z ↦ [x,y]∧z − [x,z]∧y + [y,z]∧x."""
    pairs = exterior_basis(L.dim, 2)
    triples = exterior_basis(L.dim, 3)
    pair_index = {p: t for t, p in enumerate(pairs)}

    def wedge_into(col: list[Fraction], v, t: int, sign: int):
        # v ∧ e_t expanded over the pair basis
        for s, x in enumerate(v):
            if not x or s == t:
                continue
            if s < t:
                col[pair_index[(s, t)]] += sign * x
            else:
                col[pair_index[(t, s)]] -= sign * x

    columns = []
    for i, j, k in triples:
        col = [Fraction(0)] * len(pairs)
        wedge_into(col, L.bracket_basis(i, j), k, 1)
        wedge_into(col, L.bracket_basis(i, k), j, -1)
        wedge_into(col, L.bracket_basis(j, k), i, 1)
        columns.append(col)
    rows = [[col[r] for col in columns] for r in range(len(pairs))]
    return Matrix.from_rows(rows, cols=len(triples))


@lru_cache(maxsize=None)
def multiplier_dim(L: LieAlgebra) -> MultiplierResult:
    """dim M(L) = C(n,2) − rank(d2) − rank(d3), all exact."""
    r2 = rank(d2_matrix(L))
    r3 = rank(d3_matrix(L))
    return MultiplierResult(n=L.dim, rank_d2=r2, rank_d3=r3,
                            dim_M=comb(L.dim, 2) - r2 - r3)
