"""Drive a homogeneous pair (A, B) to one of four canonical branches."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import InternalInconsistency
from .linalg import JordanKind, Mat2, commutator, real_jordan
from .reduction import (
    ExpShift,
    LinearChange,
    ScaleX,
    TransformChain,
    TransformStep,
    apply_step,
    commute_test,
    reduce_to_M,
)
from .scalar import ONE, ZERO, Scalar

SWAP = Mat2.from_rows([[0, 1], [1, 0]])


@dataclass(frozen=True)
class Commuting:
    M: Mat2
    case = "commuting"

    def to_json(self) -> dict[str, object]:
        return {"case": self.case, "M": self.M.to_json()}


@dataclass(frozen=True)
class CaseJ1:
    """A = diag(0, 4*lam)."""

    lam: Scalar
    B: Mat2
    case = "J1"

    @property
    def A(self) -> Mat2:
        return Mat2.diag(ZERO, 4 * self.lam)

    def to_json(self) -> dict[str, object]:
        return {"case": self.case, "lambda": self.lam.to_json(), "A": self.A.to_json(),
                "B": self.B.to_json()}


@dataclass(frozen=True)
class CaseJ2:
    """A = [[0, 1], [-1, 0]]."""

    B: Mat2
    case = "J2"

    @property
    def A(self) -> Mat2:
        return Mat2.from_rows([[0, 1], [-1, 0]])

    def to_json(self) -> dict[str, object]:
        return {"case": self.case, "A": self.A.to_json(), "B": self.B.to_json()}


@dataclass(frozen=True)
class CaseJ3:
    """A = [[0, 1], [0, 0]]."""

    B: Mat2
    case = "J3"

    @property
    def A(self) -> Mat2:
        return Mat2.from_rows([[0, 1], [0, 0]])

    def to_json(self) -> dict[str, object]:
        return {"case": self.case, "A": self.A.to_json(), "B": self.B.to_json()}


CanonicalForm = Union[Commuting, CaseJ1, CaseJ2, CaseJ3]


def canonical_system(cf: CanonicalForm) -> tuple[Mat2, Mat2]:
    """The (A, B) pair a canonical form stands for."""
    if isinstance(cf, Commuting):
        return Mat2.zero(), cf.M
    return cf.A, cf.B


def noncommute_guard(cf: CanonicalForm) -> bool:
    """True iff the canonical pair does not commute, from the closed-form
    commutator entries of each Jordan branch."""
    B = cf.B if not isinstance(cf, Commuting) else None
    if isinstance(cf, CaseJ1):
        b = 4 * cf.lam
        return not (b * B.a12).is_zero() or not (b * B.a21).is_zero()
    if isinstance(cf, CaseJ2):
        s, t = B.a12 + B.a21, B.a22 - B.a11
        return not (s * s + t * t).is_zero()
    if isinstance(cf, CaseJ3):
        t = B.a22 - B.a11
        return not (B.a21 * B.a21 + t * t).is_zero()
    return False


def _push(A: Mat2, B: Mat2, chain: TransformChain, step: TransformStep,
          skip_identity: bool = True) -> tuple[Mat2, Mat2, TransformChain]:
    if skip_identity and _is_identity(step):
        return A, B, chain
    A, B = apply_step(A, B, step)
    return A, B, chain.then(step)


def _is_identity(step: TransformStep) -> bool:
    if isinstance(step, LinearChange):
        return step.P == Mat2.identity()
    if isinstance(step, ExpShift):
        return step.tau.is_zero()
    if isinstance(step, ScaleX):
        return step.sigma == ONE
    return False


def canonicalize(A: Mat2, B: Mat2, normalize_lambda: bool = False,
                 d: int | None = None) -> tuple[CanonicalForm, TransformChain]:
    """Canonical form of the homogeneous system u'' = A u' + B u.

    Commuting pairs reduce to M = B + A^2/4.  Otherwise A goes to its real
    Jordan form, an exponential shift clears the diagonal part, and for a
    complex pair an x-dilation sets c = 1.  Identity steps are omitted.
    """
    chain = TransformChain()
    A0, B0 = A, B
    if commute_test(A, B):
        return Commuting(reduce_to_M(A, B)), chain
    jr = real_jordan(A, d)
    A, B, chain = _push(A, B, chain, LinearChange(jr.P))
    a = jr.eigen[0]
    A, B, chain = _push(A, B, chain, ExpShift(-a / 2))
    if jr.kind is JordanKind.J1:
        cf: CanonicalForm = CaseJ1(A.a22 / 4, B)
        if normalize_lambda:
            cf, chain = normalize_j1(cf, chain)
    elif jr.kind is JordanKind.J2:
        A, B, chain = _push(A, B, chain, ScaleX(jr.eigen[1]))
        cf = CaseJ2(B)
    else:
        cf = CaseJ3(B)
    if not noncommute_guard(cf):
        raise InternalInconsistency(
            f"commutator test and Jordan branch disagree for {cf.to_json()}")
    if canonical_system(cf) != chain.apply(A0, B0):
        raise InternalInconsistency("canonical form differs from the replayed chain")
    return cf, chain


def normalize_j1(cf: CaseJ1, chain: TransformChain) -> tuple[CaseJ1, TransformChain]:
    """Dilate x by lambda so that lambda becomes 1."""
    A, B, chain = _push(cf.A, cf.B, chain, ScaleX(cf.lam))
    return CaseJ1(A.a22 / 4, B), chain


def swap_orientation(cf: CaseJ1, chain: TransformChain) -> tuple[CaseJ1, TransformChain]:
    """Exchange y and z, then re-zero the (1,1) entry of A.

    Maps lambda -> -lambda and (b12, b21) -> (b21, b12) up to diagonal shifts.
    """
    A, B, chain = _push(cf.A, cf.B, chain, LinearChange(SWAP))
    A, B, chain = _push(A, B, chain, ExpShift(-A.a11 / 2))
    out = CaseJ1(A.a22 / 4, B)
    if commutator(out.A, out.B).is_zero() == noncommute_guard(out):
        raise InternalInconsistency("swap produced an inconsistent J1 form")
    return out, chain
