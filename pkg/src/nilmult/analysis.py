"""Multiplier bounds, kernel bookkeeping, and tensor witnesses.

For a nonabelian nilpotent algebra L with n = dim L, m = dim γ₂(L) and
class c, the bounds compared here are

    batten:            n(n-1)/2
    hardy_stitzinger:  n(n-1)/2 - m
    yankosky_closed:   (n+m)(n-m-1)/2
    niroomand_russo:   (n-m-1)(n+m-2)/2 + 1            (m >= 1)
    rai:               (n-m-1)(n+m)/2 - Σ_{i=2}^{min(n-m,c)} (n-m-i)

together with an informational refinement of the last one that
subtracts dim(Z(L)/(γ₂(L) ∩ Z(L))) · m.  The refinement is recorded but
never asserted: it fails on h₃ ⊕ abelian(1), where it gives 3 against
an actual multiplier dimension of 4.

The kernel bookkeeping tracks, for each 2 <= i <= c, the dimension of
the kernel of the bracket-induced map

    λ_i : L/γ₂ ⊗ γ_i/γ_{i+1}  -->  (section of weight i+1)

obtained from multiplier dimensions of the quotients L/γ_i, and the
witness machinery produces explicit kernel elements Ψ_i from the
degree-(i+1) commutator identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .exactla import Matrix, Subspace, is_zero_vector, rank
from .free_lie import BracketExpr, evaluate_in, left_normed, lemma31_term_pairs
from .homology import multiplier_dim
from .lie_core import (
    LieAlgebra,
    SeriesProfile,
    minimal_generators,
    quotient_algebra,
    series_profile,
)

Vector = tuple[Fraction, ...]


class RangeError(ValueError):
    """Index argument outside its documented range."""


class VerificationFailure(Exception):
    """A checked property failed; signals an implementation bug."""

    def __init__(self, message: str, payload=None):
        super().__init__(message)
        self.payload = payload


# -- bound formulas ----------------------------------------------------------

def batten(n: int) -> int:
    """n(n-1)/2."""
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    return n * (n - 1) // 2


def hardy_stitzinger(n: int, m: int) -> int:
    """n(n-1)/2 - m."""
    return batten(n) - m


def yankosky_closed(n: int, m: int) -> int:
    """(n+m)(n-m-1)/2."""
    return (n + m) * (n - m - 1) // 2


def niroomand_russo(n: int, m: int) -> int:
    """(n-m-1)(n+m-2)/2 + 1, for m >= 1."""
    if m < 1:
        raise ValueError("bound requires m >= 1")
    return (n - m - 1) * (n + m - 2) // 2 + 1


def rai_bound(n: int, m: int, c: int) -> int:
    """(n-m-1)(n+m)/2 - Σ_{i=2}^{min(n-m,c)} (n-m-i), for m>=1, c>=2, n-m>=2."""
    if m < 1 or c < 2 or n - m < 2:
        raise ValueError("bound requires m >= 1, c >= 2 and n - m >= 2")
    correction = sum(n - m - i for i in range(2, min(n - m, c) + 1))
    return (n - m - 1) * (n + m) // 2 - correction


def rai_refined(L: LieAlgebra) -> int:
    """rai_bound minus dim(Z/(γ₂ ∩ Z))·m.  Informational only."""
    prof = series_profile(L)
    n, m, c = L.dim, prof.derived_dim, prof.nilpotency_class
    gamma2 = prof.gamma(2)
    center = prof.center
    central_gens = center.dim - gamma2.intersect(center).dim
    return rai_bound(n, m, c) - central_gens * m


# -- bound report -------------------------------------------------------------

_SLACK_KEYS = ("batten", "hardy_stitzinger", "yankosky_closed",
               "niroomand_russo", "rai", "rai_refined")


@dataclass(frozen=True)
class BoundReport:
    """Every bound value for one algebra, with slacks against dim M(L).

    The fields niroomand_russo, rai, rai_refined and the two flags are
    None for abelian algebras (m = 0), where those bounds are not
    defined; ``to_dict`` omits them in that case.
    """

    name: str
    n: int
    m: int
    c: int
    dim_M: int
    batten: int
    hardy_stitzinger: int
    yankosky_closed: int
    niroomand_russo: int | None
    rai: int | None
    rai_refined: int | None
    slack: dict[str, int]
    theorem_holds: bool | None
    refined_holds: bool | None

    def to_dict(self) -> dict:
        out: dict = {"name": self.name, "n": self.n, "m": self.m, "c": self.c,
                     "dim_M": self.dim_M}
        for key in _SLACK_KEYS[:-1]:
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        if self.rai_refined is not None:
            out["rai_refined"] = self.rai_refined
        out["slack"] = dict(self.slack)
        if self.theorem_holds is not None:
            out["theorem_holds"] = self.theorem_holds
        if self.refined_holds is not None:
            out["refined_holds"] = self.refined_holds
        return out


def bound_report(L: LieAlgebra) -> BoundReport:
    """Assemble the full bound comparison for one algebra."""
    prof = series_profile(L)
    n, m, c = L.dim, prof.derived_dim, prof.nilpotency_class
    dim_m = multiplier_dim(L).dim_M
    values: dict[str, int | None] = {
        "batten": batten(n),
        "hardy_stitzinger": hardy_stitzinger(n, m),
        "yankosky_closed": yankosky_closed(n, m),
        "niroomand_russo": None,
        "rai": None,
        "rai_refined": None,
    }
    if m >= 1:
        values["niroomand_russo"] = niroomand_russo(n, m)
        values["rai"] = rai_bound(n, m, c)
        values["rai_refined"] = rai_refined(L)
    slack = {key: values[key] - dim_m for key in _SLACK_KEYS
             if values[key] is not None}
    return BoundReport(
        name=L.name, n=n, m=m, c=c, dim_M=dim_m,
        batten=values["batten"],
        hardy_stitzinger=values["hardy_stitzinger"],
        yankosky_closed=values["yankosky_closed"],
        niroomand_russo=values["niroomand_russo"],
        rai=values["rai"],
        rai_refined=values["rai_refined"],
        slack=slack,
        theorem_holds=None if m == 0 else dim_m <= values["rai"],
        refined_holds=None if m == 0 else dim_m <= values["rai_refined"],
    )


# -- kernel bookkeeping -------------------------------------------------------

@dataclass(frozen=True)
class KernelRow:
    """Kernel dimension of λ_i and the checks it must satisfy.

    ``satisfied`` demands both the required lower bound and membership
    in [0, domain_bound], where domain_bound = (n-m)·dim(γ_i/γ_{i+1})
    is the dimension of the λ_i domain.
    """

    i: int
    dim_gamma_i_mod_next: int
    dim_M_of_L_mod_gamma_i: int
    ker_lambda_i: int
    required_lower_bound: int
    domain_bound: int
    satisfied: bool


@dataclass(frozen=True)
class KernelProfile:
    """Rows for i = 2..c plus the surrounding dimensions."""

    name: str
    n: int
    m: int
    c: int
    dim_M: int
    rows: tuple[KernelRow, ...]

    @property
    def all_satisfied(self) -> bool:
        return all(row.satisfied for row in self.rows)


def _quotient_multipliers(L: LieAlgebra, prof: SeriesProfile) -> list[int]:
    """dim M(L/γ_i) for i = 2..c+1 (the last entry is dim M(L))."""
    dims = []
    for i in range(2, prof.nilpotency_class + 2):
        gamma = prof.gamma(i)
        if gamma.is_zero:
            dims.append(multiplier_dim(L).dim_M)
        else:
            quotient, _ = quotient_algebra(L, gamma, name=f"{L.name}/g{i}")
            dims.append(multiplier_dim(quotient).dim_M)
    return dims


def ker_lambda_dims(L: LieAlgebra) -> KernelProfile:
    """dim ker(λ_i) for 2 <= i <= c by quotient-multiplier bookkeeping.

    dim ker(λ_i) = dim M(L/γ_i) + (n-m-1)·dim(γ_i/γ_{i+1}) − dim M(L/γ_{i+1}).
    """
    prof = series_profile(L)
    n, m, c = L.dim, prof.derived_dim, prof.nilpotency_class
    if m == 0:
        raise ValueError("kernel bookkeeping requires a nonabelian algebra")
    quotient_dims = _quotient_multipliers(L, prof)
    rows = []
    for i in range(2, c + 1):
        layer = prof.gamma(i).dim - prof.gamma(i + 1).dim
        ker = quotient_dims[i - 2] + (n - m - 1) * layer - quotient_dims[i - 1]
        required = n - m - i if 2 <= i <= min(n - m, c) else 0
        required = max(0, required)
        domain = (n - m) * layer
        rows.append(KernelRow(
            i=i, dim_gamma_i_mod_next=layer,
            dim_M_of_L_mod_gamma_i=quotient_dims[i - 2],
            ker_lambda_i=ker, required_lower_bound=required,
            domain_bound=domain,
            satisfied=required <= ker <= domain))
    return KernelProfile(name=L.name, n=n, m=m, c=c,
                         dim_M=multiplier_dim(L).dim_M, rows=tuple(rows))


def eq3_consistency(L: LieAlgebra) -> bool:
    """dim M(L) = dim M(L/γ₂) + (n-m-1)m − Σ_i dim ker(λ_i), exactly."""
    profile = ker_lambda_dims(L)
    n, m = profile.n, profile.m
    total_ker = sum(row.ker_lambda_i for row in profile.rows)
    abelian_part = comb(n - m, 2)
    if profile.rows and profile.rows[0].dim_M_of_L_mod_gamma_i != abelian_part:
        return False
    return profile.dim_M == abelian_part + (n - m - 1) * m - total_ker


# -- kernel witnesses ---------------------------------------------------------

@dataclass(frozen=True)
class PsiWitness:
    """Ψ_i tensors in (L/γ₂) ⊗ (γ_i/γ_{i+1}) and their checks.

    ``y`` and ``z`` hold 1-based positions into minimal_generators(L);
    tensor coordinates are flattened with the L/γ₂ index major.  Each
    bracket image is the image of the corresponding tensor under the
    induced map into γ_{i+1}/γ_{i+2} and must be the zero vector.
    """

    i: int
    y: tuple[int, ...]
    z: tuple[int, ...]
    tensors: tuple[Vector, ...]
    independence_rank: int
    bracket_images: tuple[Vector, ...]


def witness_commutator(L: LieAlgebra, i: int) -> tuple[BracketExpr, Vector]:
    """A left-normed bracket of i minimal generators outside γ_{i+1}.

    Symbols in the returned expression are 1-based positions into
    minimal_generators(L); repeats are allowed.  Tuples are searched in
    lexicographic order and the first hit is returned.
    """
    expr, value, _ = _witness_tuple(L, i, series_profile(L), minimal_generators(L))
    return expr, value


def _witness_tuple(L: LieAlgebra, i: int, prof: SeriesProfile,
                   gens: Sequence[Vector]) -> tuple[BracketExpr, Vector, tuple[int, ...]]:
    if not 2 <= i <= prof.nilpotency_class:
        raise RangeError(f"witness weight {i} outside 2..{prof.nilpotency_class}")
    next_term = prof.gamma(i + 1)
    for tup in itertools.product(range(1, len(gens) + 1), repeat=i):
        value = gens[tup[0] - 1]
        for t in tup[1:]:
            value = L.bracket(value, gens[t - 1])
        if not next_term.contains(value):
            return left_normed(tup), value, tup
    raise RangeError(f"no weight-{i} generator bracket found outside γ_{i + 1}")


def psi_witnesses(L: LieAlgebra, i: int) -> PsiWitness:
    """Build and check the Ψ_i kernel witnesses.

    Takes the witness commutator (y_1..y_i), picks each z_j from the
    minimal generators outside {y_1..y_i}, and evaluates the i+1 terms
    of the degree-(i+1) identity: for a term [W, x_t], the class of the
    evaluated W goes into the γ_i/γ_{i+1} slot and the class of x_t
    into the L/γ₂ slot.  Verifies that every tensor is nonzero, that
    together they have rank n-m-i, and that the induced bracket map
    u̅ ⊗ w̅ ↦ [w, u] mod γ_{i+2} kills each of them.
    """
    prof = series_profile(L)
    n, m, c = L.dim, prof.derived_dim, prof.nilpotency_class
    if m < 1:
        raise RangeError("witnesses are defined for nonabelian algebras")
    if not 2 <= i <= min(n - m, c):
        raise RangeError(f"witness index {i} outside 2..min(n-m, c) = "
                         f"2..{min(n - m, c)}")
    gens = minimal_generators(L)
    _, _, y = _witness_tuple(L, i, prof, gens)
    z = tuple(g for g in range(1, len(gens) + 1) if g not in set(y))[:n - m - i]

    full = Subspace.full(n)
    gamma2 = prof.gamma(2)
    gi, gi1, gi2 = prof.gamma(i), prof.gamma(i + 1), prof.gamma(i + 2)
    q = gi.dim - gi1.dim
    pairs = lemma31_term_pairs(i)

    tensors = []
    for zj in z:
        values = {k + 1: gens[yk - 1] for k, yk in enumerate(y)}
        values[i + 1] = gens[zj - 1]
        tensor = [Fraction(0)] * ((n - m) * q)
        for w_expr, t_sym in pairs:
            w_val = evaluate_in(w_expr, L.bracket, values)
            u_coords = full.coords_in_quotient(gamma2, values[t_sym])
            w_coords = gi.coords_in_quotient(gi1, w_val)
            for a, ua in enumerate(u_coords):
                if not ua:
                    continue
                for b, wb in enumerate(w_coords):
                    tensor[a * q + b] += ua * wb
        if is_zero_vector(tensor):
            raise VerificationFailure(f"{L.name}: Ψ_{i} tensor for z={zj} is zero")
        tensors.append(tuple(tensor))

    independence = rank(Matrix.from_rows(tensors, cols=(n - m) * q)) if tensors else 0
    if independence != len(z):
        raise VerificationFailure(
            f"{L.name}: Ψ_{i} witnesses have rank {independence}, expected {len(z)}")

    reps_u = full.quotient_basis_rows(gamma2)
    reps_w = gi.quotient_basis_rows(gi1)
    beta_cols = [gi1.coords_in_quotient(gi2, L.bracket(reps_w[b], reps_u[a]))
                 for a in range(n - m) for b in range(q)]
    out_dim = gi1.dim - gi2.dim
    beta = Matrix.from_rows(
        [[col[r] for col in beta_cols] for r in range(out_dim)],
        cols=(n - m) * q)
    images = tuple(beta.apply(t) for t in tensors)
    for zj, image in zip(z, images):
        if not is_zero_vector(image):
            raise VerificationFailure(
                f"{L.name}: Ψ_{i} witness for z={zj} escapes the kernel")
    return PsiWitness(i=i, y=y, z=z, tensors=tuple(tensors),
                      independence_rank=independence, bracket_images=images)


# -- full verification --------------------------------------------------------

@dataclass(frozen=True)
class TheoremVerification:
    """Everything checked for one algebra, for reporting."""

    report: BoundReport
    kernel: KernelProfile
    witnesses: tuple[PsiWitness, ...]
    eq3_ok: bool
    yankosky_step_bound: int
    yankosky_step_ok: bool


def verify_theorem(L: LieAlgebra) -> TheoremVerification:
    """Check every asserted property on one nonabelian algebra.

    Raises VerificationFailure if dim M(L) exceeds the rai bound, a
    kernel row misses its required range, eq3 fails, the class-c
    quotient inequality fails, or a witness check fails.  A violated
    refined bound is recorded in the report, never raised.
    """
    prof = series_profile(L)
    if prof.derived_dim == 0:
        raise RangeError("theorem applies to nonabelian algebras")
    report = bound_report(L)
    kernel = ker_lambda_dims(L)
    n, m, c = report.n, report.m, report.c
    witnesses = tuple(psi_witnesses(L, i) for i in range(2, min(n - m, c) + 1))

    gamma_c = prof.gamma(c)
    quotient, _ = quotient_algebra(L, gamma_c, name=f"{L.name}/g{c}")
    step = (multiplier_dim(quotient).dim_M
            + (n - gamma_c.dim) * gamma_c.dim - gamma_c.dim)
    verification = TheoremVerification(
        report=report, kernel=kernel, witnesses=witnesses,
        eq3_ok=eq3_consistency(L),
        yankosky_step_bound=step,
        yankosky_step_ok=report.dim_M <= step)

    if not report.theorem_holds:
        raise VerificationFailure(
            f"{L.name}: dim M = {report.dim_M} exceeds bound {report.rai}",
            verification)
    if not kernel.all_satisfied:
        bad = [row.i for row in kernel.rows if not row.satisfied]
        raise VerificationFailure(
            f"{L.name}: kernel dimension check fails at i = {bad}", verification)
    if not verification.eq3_ok:
        raise VerificationFailure(f"{L.name}: telescoping identity fails",
                                  verification)
    if not verification.yankosky_step_ok:
        raise VerificationFailure(
            f"{L.name}: class-c quotient inequality fails "
            f"({report.dim_M} > {step})", verification)
    return verification
