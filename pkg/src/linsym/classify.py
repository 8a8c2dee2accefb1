"""Classification of canonical systems by their admitted point symmetries.

For A = diag(0, 4*lam) every admitted field outside the generic pair lies in
the span of

    Xbar1 = e^(-2 lam x) (h2 (d_x - lam (y d_y - z d_z)) - 2 lam b12 z d_y)
    X2    = e^(-lam x) (2 d_x - lam (y d_y - 3 z d_z))

and the coefficients (C1, C2) of that span obey six linear equations whose
coefficients are polynomials in the entries of B and in lam.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

from .canonical import CanonicalForm, CaseJ1, CaseJ2, CaseJ3, Commuting, normalize_j1, swap_orientation
from .errors import InternalInconsistency, UnsupportedDiscriminant
from .expoly import ExpPoly
from .linalg import JordanResult, Mat2, nullspace, rref, real_jordan
from .reduction import TransformChain, pullback_vf
from .scalar import ONE, ZERO, Scalar
from .vectorfield import VectorField


class Label(str, Enum):
    COMMUTING_REDUCIBLE = "COMMUTING_REDUCIBLE"
    J1_NO_EXTENSION = "J1_NO_EXTENSION"
    J1_ONE_EXTRA = "J1_ONE_EXTRA"
    J1_TWO_EXTRA = "J1_TWO_EXTRA"
    J2_NO_EXTENSION = "J2_NO_EXTENSION"
    J3_NO_EXTENSION = "J3_NO_EXTENSION"


LITERATURE_MARKER = "see literature: y'' = M y with constant M is classified elsewhere"


@dataclass(frozen=True)
class HPair:
    h1: Scalar
    h2: Scalar

    def to_json(self) -> dict[str, object]:
        return {"h1": self.h1.to_json(), "h2": self.h2.to_json()}


def h_values(B: Mat2, lam: Scalar) -> HPair:
    L = lam * lam
    return HPair(B.a11 + B.a22 + 2 * L, B.a22 - B.a11 + 4 * L)


class DeterminingResiduals(NamedTuple):
    c1_cubic: Scalar
    c1_h1h2: Scalar
    c1_quadratic: Scalar
    c2_b21: Scalar
    c2_b22: Scalar
    c2_b11: Scalar


def determining_residuals(B: Mat2, lam: Scalar, c1: object, c2: object) -> DeterminingResiduals:
    """Left-hand sides of the reduced determining equations at (C1, C2)."""
    c1, c2 = Scalar.coerce(c1), Scalar.coerce(c2)
    b11, b12, b21, b22 = B.a11, B.a12, B.a21, B.a22
    L = lam * lam
    h = h_values(B, lam)
    cubic = (b11 ** 3 - 2 * b11 ** 2 * b22 + 7 * b11 ** 2 * L + 2 * b11 * b12 * b21
             + b11 * b22 ** 2 - 6 * b11 * b22 * L - 56 * b11 * L ** 2
             - 2 * b12 * b21 * b22 - b22 ** 2 * L + 8 * b22 * L ** 2 + 48 * L ** 3)
    quadratic = (24 * L ** 2 + 14 * b22 * L - 6 * b11 * L - 2 * b11 * b22
                 + b12 * b21 + 2 * b22 ** 2)
    return DeterminingResiduals(
        c1 * cubic,
        h.h1 * h.h2 * c1,
        quadratic * c1,
        c2 * b21,
        (4 * b22 + 15 * L) * c2,
        (4 * b11 - L) * c2,
    )


# ---------------------------------------------------------------------------
# Generators


def x1_field(lam: Scalar) -> VectorField:
    """e^(-2 lam x) z d_y"""
    e = ExpPoly.exp(-2 * lam)
    z = ExpPoly.zero()
    return VectorField(M=Mat2(z, e, z, z), name="X1")


def x2_field(lam: Scalar) -> VectorField:
    """e^(-lam x) (2 d_x - lam (y d_y - 3 z d_z))"""
    e = ExpPoly.exp(-lam)
    z = ExpPoly.zero()
    return VectorField(xi=e * 2, M=Mat2(e * (-lam), z, z, e * (3 * lam)), name="X2")


def x1bar_field(B: Mat2, lam: Scalar) -> VectorField:
    """Internal basis element; reduces to -2 lam b12 X1 when h2 = 0."""
    h2 = h_values(B, lam).h2
    e = ExpPoly.exp(-2 * lam)
    z = ExpPoly.zero()
    return VectorField(xi=e * h2,
                       M=Mat2(e * (-lam * h2), e * (-2 * lam * B.a12), z, e * (lam * h2)),
                       name="Xbar1")


def generic_fields() -> list[VectorField]:
    return [VectorField.d_x(), VectorField.scaling()]


# ---------------------------------------------------------------------------
# Coefficient space


@dataclass(frozen=True)
class CoeffSpace:
    """Admitted part of span{Xbar1, X2}.

    ``dim`` counts linearly independent nonzero fields; a coefficient is
    reported free only when the equations leave it unconstrained *and* its
    basis field is not the zero field.
    """

    dim: int
    c1_free: bool
    c2_free: bool


def _coefficient_rows(B: Mat2, lam: Scalar) -> list[list[Scalar]]:
    # every residual is linear in (C1, C2): evaluate on the unit vectors
    col1 = determining_residuals(B, lam, 1, 0)
    col2 = determining_residuals(B, lam, 0, 1)
    return [[p, q] for p, q in zip(col1, col2)]


def _field_rank(fields: list[VectorField]) -> int:
    keys = sorted({k for f in fields for k in f.coefficient_vector()}, key=repr)
    if not keys:
        return 0
    rows = [[f.coefficient_vector().get(k, ZERO) for f in fields] for k in keys]
    return len(rref(rows)[1])


def solve_coeff_space(B: Mat2, lam: Scalar) -> CoeffSpace:
    """Exact rank analysis of the (C1, C2) system."""
    rows = _coefficient_rows(B, lam)
    kernel = nullspace(rows, 2)
    basis = (x1bar_field(B, lam), x2_field(lam))
    fields = [basis[0] * v[0] + basis[1] * v[1] for v in kernel]
    dim = _field_rank(fields)
    col_zero = [all(r[j].is_zero() for r in rows) for j in range(2)]
    return CoeffSpace(dim,
                      col_zero[0] and not basis[0].is_zero(),
                      col_zero[1] and not basis[1].is_zero())


def branch_coeff_space(B: Mat2, lam: Scalar) -> CoeffSpace:
    """Closed-form branch conditions of the J1 classification."""
    L = lam * lam
    c2 = B.a21.is_zero() and B.a11 == L / 4 and B.a22 == -15 * L / 4
    # b12 != 0 is the standing non-commutation assumption once b21 = 0
    c1 = B.a21.is_zero() and B.a11 == B.a22 + 4 * L and not B.a12.is_zero()
    return CoeffSpace(int(c1) + int(c2), c1, c2)


def checked_coeff_space(B: Mat2, lam: Scalar) -> CoeffSpace:
    rank = solve_coeff_space(B, lam)
    branch = branch_coeff_space(B, lam)
    if rank != branch:
        raise InternalInconsistency(
            f"rank analysis {rank} disagrees with branch logic {branch} for B={B}, lambda={lam}")
    return rank


# ---------------------------------------------------------------------------
# Reports


@dataclass(frozen=True)
class ClassificationReport:
    label: Label
    canonical: CanonicalForm
    chain: TransformChain
    generators: tuple[VectorField, ...]
    generators_original: tuple[VectorField, ...]
    h: HPair | None = None
    coeff_space: CoeffSpace | None = None
    jordan_M: JordanResult | None = None
    notes: tuple[str, ...] = ()
    verification: dict[str, object] | None = field(default=None, compare=False)

    @property
    def extras(self) -> int:
        return len(self.generators) - 2


_NO_EXTENSION = {CaseJ2: Label.J2_NO_EXTENSION, CaseJ3: Label.J3_NO_EXTENSION}


def classify_canonical(cf: CanonicalForm, chain: TransformChain = TransformChain(),
                       normalize_lambda: bool = False) -> ClassificationReport:
    """Label a canonical form and list its generators in both coordinate systems.

    ``chain`` leads from the user's coordinates to ``cf``; a J1 form may be
    re-oriented (y <-> z) when only the mirrored orientation shows the
    extension, and the extra steps are appended to the chain.
    """
    generic = generic_fields()
    if isinstance(cf, Commuting):
        try:
            jordan = real_jordan(cf.M)
        except UnsupportedDiscriminant:
            jordan = None
        return _report(Label.COMMUTING_REDUCIBLE, cf, chain, generic, jordan_M=jordan,
                       notes=(LITERATURE_MARKER,))
    if isinstance(cf, (CaseJ2, CaseJ3)):
        return _report(_NO_EXTENSION[type(cf)], cf, chain, generic)

    space = checked_coeff_space(cf.B, cf.lam)
    if space.dim == 0:
        mirrored, mchain = swap_orientation(cf, chain)
        mspace = checked_coeff_space(mirrored.B, mirrored.lam)
        if mspace.dim:
            cf, chain, space = mirrored, mchain, mspace
    if normalize_lambda and cf.lam != ONE:
        cf, chain = normalize_j1(cf, chain)
        space = checked_coeff_space(cf.B, cf.lam)

    extras: list[VectorField] = []
    if space.c1_free:
        extras.append(x1_field(cf.lam))
    if space.c2_free:
        extras.append(x2_field(cf.lam))
    label = (Label.J1_NO_EXTENSION, Label.J1_ONE_EXTRA, Label.J1_TWO_EXTRA)[space.dim]
    return _report(label, cf, chain, generic + extras, h=h_values(cf.B, cf.lam), coeff_space=space)


def _report(label: Label, cf: CanonicalForm, chain: TransformChain, gens: list[VectorField],
            **extra) -> ClassificationReport:
    original = tuple(pullback_vf(chain, g) for g in gens)
    return ClassificationReport(label, cf, chain, tuple(gens), original, **extra)
