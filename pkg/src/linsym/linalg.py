"""2x2 exact linear algebra: matrices, commutators, real Jordan forms, exp(tA).

Entries of :class:`Mat2` and :class:`Vec2` may be anything with ring
operations, so the same classes carry Scalar matrices and matrices of
exp-polynomials.  Determinants and inverses require Scalar entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Sequence

import numpy as np

from .errors import MalformedInput, SingularP, UnsupportedDiscriminant
from .scalar import ONE, ZERO, Scalar


@dataclass(frozen=True)
class Vec2:
    v1: Any
    v2: Any

    @classmethod
    def zero(cls) -> Vec2:
        return cls(ZERO, ZERO)

    @classmethod
    def parse(cls, obj: object) -> Vec2:
        if not isinstance(obj, (list, tuple)) or len(obj) != 2:
            raise MalformedInput(f"expected a 2-vector, got {obj!r}")
        return cls(Scalar.parse(obj[0]), Scalar.parse(obj[1]))

    def __iter__(self):
        yield self.v1
        yield self.v2

    def __add__(self, other: Vec2) -> Vec2:
        return Vec2(self.v1 + other.v1, self.v2 + other.v2)

    def __sub__(self, other: Vec2) -> Vec2:
        return Vec2(self.v1 - other.v1, self.v2 - other.v2)

    def __neg__(self) -> Vec2:
        return Vec2(-self.v1, -self.v2)

    def __mul__(self, k: Any) -> Vec2:
        return Vec2(self.v1 * k, self.v2 * k)

    def __rmul__(self, k: Any) -> Vec2:
        return Vec2(k * self.v1, k * self.v2)

    def map(self, fn: Callable[[Any], Any]) -> Vec2:
        return Vec2(fn(self.v1), fn(self.v2))

    def is_zero(self) -> bool:
        return all(_is_zero(v) for v in self)

    def to_json(self) -> list:
        return [_entry_json(v) for v in self]

    def to_float(self) -> np.ndarray:
        return np.array([float(self.v1), float(self.v2)])


@dataclass(frozen=True)
class Mat2:
    """Row-major [[a11, a12], [a21, a22]]."""

    a11: Any
    a12: Any
    a21: Any
    a22: Any

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> Mat2:
        (a, b), (c, d) = rows
        return cls(Scalar.coerce(a), Scalar.coerce(b), Scalar.coerce(c), Scalar.coerce(d))

    @classmethod
    def parse(cls, obj: object) -> Mat2:
        if (not isinstance(obj, (list, tuple)) or len(obj) != 2
                or any(not isinstance(r, (list, tuple)) or len(r) != 2 for r in obj)):
            raise MalformedInput(f"expected a 2x2 array, got {obj!r}")
        return cls(*(Scalar.parse(v) for row in obj for v in row))

    @classmethod
    def identity(cls) -> Mat2:
        return cls(ONE, ZERO, ZERO, ONE)

    @classmethod
    def zero(cls) -> Mat2:
        return cls(ZERO, ZERO, ZERO, ZERO)

    @classmethod
    def diag(cls, a: Any, b: Any) -> Mat2:
        return cls(Scalar.coerce(a), ZERO, ZERO, Scalar.coerce(b))

    @classmethod
    def scalar(cls, k: Any) -> Mat2:
        return cls.diag(k, k)

    def __iter__(self):
        yield from (self.a11, self.a12, self.a21, self.a22)

    def rows(self) -> tuple[tuple[Any, Any], tuple[Any, Any]]:
        return (self.a11, self.a12), (self.a21, self.a22)

    def map(self, fn: Callable[[Any], Any]) -> Mat2:
        return Mat2(*(fn(v) for v in self))

    def __add__(self, other: Mat2) -> Mat2:
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(*(p + q for p, q in zip(self, other)))

    def __sub__(self, other: Mat2) -> Mat2:
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(*(p - q for p, q in zip(self, other)))

    def __neg__(self) -> Mat2:
        return self.map(lambda v: -v)

    def __mul__(self, other: Any) -> Any:
        if isinstance(other, Mat2):
            return Mat2(
                self.a11 * other.a11 + self.a12 * other.a21,
                self.a11 * other.a12 + self.a12 * other.a22,
                self.a21 * other.a11 + self.a22 * other.a21,
                self.a21 * other.a12 + self.a22 * other.a22,
            )
        if isinstance(other, Vec2):
            return Vec2(self.a11 * other.v1 + self.a12 * other.v2,
                        self.a21 * other.v1 + self.a22 * other.v2)
        return self.map(lambda v: v * other)

    def __rmul__(self, k: Any) -> Mat2:
        return self.map(lambda v: k * v)

    def __truediv__(self, k: Any) -> Mat2:
        return self.map(lambda v: v / k)

    @property
    def T(self) -> Mat2:
        return Mat2(self.a11, self.a21, self.a12, self.a22)

    def trace(self) -> Any:
        return self.a11 + self.a22

    def det(self) -> Any:
        return self.a11 * self.a22 - self.a12 * self.a21

    def inv(self) -> Mat2:
        det = self.det()
        if _is_zero(det):
            raise SingularP(f"matrix {self.to_json()} is singular")
        return Mat2(self.a22 / det, -self.a12 / det, -self.a21 / det, self.a11 / det)

    def is_zero(self) -> bool:
        return all(_is_zero(v) for v in self)

    def is_diagonal(self) -> bool:
        return _is_zero(self.a12) and _is_zero(self.a21)

    def to_json(self) -> list:
        return [[_entry_json(self.a11), _entry_json(self.a12)],
                [_entry_json(self.a21), _entry_json(self.a22)]]

    def to_float(self) -> np.ndarray:
        return np.array([[float(self.a11), float(self.a12)],
                         [float(self.a21), float(self.a22)]])

    def __str__(self) -> str:
        return f"[[{self.a11}, {self.a12}], [{self.a21}, {self.a22}]]"


def _is_zero(v: Any) -> bool:
    if hasattr(v, "is_zero"):
        return v.is_zero()
    return v == 0


def _entry_json(v: Any) -> Any:
    return v.to_json() if hasattr(v, "to_json") else str(v)


def commutator(A: Mat2, B: Mat2) -> Mat2:
    """AB - BA."""
    return A * B - B * A


# ---------------------------------------------------------------------------
# Real Jordan form


class JordanKind(str, Enum):
    J1 = "J1"  # real diagonalizable
    J2 = "J2"  # complex pair a +- ic, c > 0
    J3 = "J3"  # defective


@dataclass(frozen=True)
class JordanResult:
    """``J = P A P^-1``.  ``eigen`` is (a, b) for J1, (a, c) for J2/J3."""

    kind: JordanKind
    J: Mat2
    P: Mat2
    eigen: tuple[Scalar, Scalar]

    def to_json(self) -> dict[str, object]:
        return {"kind": self.kind.value, "J": self.J.to_json(), "P": self.P.to_json(),
                "eigen": [e.to_json() for e in self.eigen]}


def _context_d(A: Mat2, d: int | None) -> int | None:
    ds = {v.d for v in A if v.d is not None}
    if d is not None:
        ds.add(Scalar(0, 1, d).d)
    if len(ds) > 1:
        raise UnsupportedDiscriminant(f"matrix mixes extensions {sorted(ds)}")
    return ds.pop() if ds else None


def real_jordan(A: Mat2, d: int | None = None) -> JordanResult:
    """Real Jordan form of a 2x2 matrix with an exact similarity.

    Already-diagonal input is returned untouched.  Otherwise the columns of
    ``P^-1`` are (generalized / real and imaginary parts of) eigenvectors.
    Distinct real eigenvalues are ordered ``(tr + sqrt(disc))/2`` first.
    ``d`` optionally fixes the one square root the result may use.
    """
    d = _context_d(A, d)
    a, b, c, dd = A.a11, A.a12, A.a21, A.a22
    if A.is_diagonal():
        return JordanResult(JordanKind.J1, A, Mat2.identity(), (a, dd))
    tr, det = A.trace(), A.det()
    disc = tr * tr - 4 * det
    half = Scalar(1) / 2
    if disc.sign() > 0:
        root = disc.sqrt(d)
        l1, l2 = (tr + root) * half, (tr - root) * half
        R = Mat2(*_columns(_eigvec(A, l1), _eigvec(A, l2)))
        P = R.inv()
        return JordanResult(JordanKind.J1, Mat2.diag(l1, l2), P, (l1, l2))
    m = tr * half
    if disc.is_zero():
        N = A - Mat2.scalar(m)
        r2 = (ONE, ZERO) if not (N.a11.is_zero() and N.a21.is_zero()) else (ZERO, ONE)
        r1 = (N.a11 * r2[0] + N.a12 * r2[1], N.a21 * r2[0] + N.a22 * r2[1])
        P = Mat2(*_columns(r1, r2)).inv()
        return JordanResult(JordanKind.J3, Mat2(m, ONE, ZERO, m), P, (m, ONE))
    # complex pair; b != 0 because b*c < 0
    cc = (-disc).sqrt(d) * half
    # both basis vectors divided by c, so a matrix already in block form gets P = I
    vr, vi = (b / cc, (m - a) / cc), (ZERO, ONE)
    P = Mat2(*_columns(vr, vi)).inv()
    return JordanResult(JordanKind.J2, Mat2(m, cc, -cc, m), P, (m, cc))


def _eigvec(A: Mat2, lam: Scalar) -> tuple[Scalar, Scalar]:
    v = (A.a12, lam - A.a11)
    if v[0].is_zero() and v[1].is_zero():
        v = (lam - A.a22, A.a21)
    return v


def _columns(c1: tuple[Any, Any], c2: tuple[Any, Any]) -> tuple[Any, Any, Any, Any]:
    return c1[0], c2[0], c1[1], c2[1]


# ---------------------------------------------------------------------------
# Numeric matrix exponential


def _cosh_sinhc(z: float) -> tuple[float, float]:
    """(cosh(sqrt z), sinh(sqrt z)/sqrt z), analytic in z of either sign."""
    if abs(z) < 1.0:
        c = s = 0.0
        term = 1.0
        for k in range(30):
            c += term / math.factorial(2 * k)
            s += term / math.factorial(2 * k + 1)
            term *= z
        return c, s
    if z > 0:
        w = math.sqrt(z)
        return math.cosh(w), math.sinh(w) / w
    w = math.sqrt(-z)
    return math.cos(w), math.sin(w) / w


def mat_exp_numeric(A: Mat2 | np.ndarray, t: float) -> np.ndarray:
    """Floating ``exp(tA)`` via the closed 2x2 form.

    With ``X = tA = m I + N`` and ``N^2 = z I`` (N traceless):
    ``exp(X) = e^m (cosh(sqrt z) I + sinh(sqrt z)/sqrt z N)``.
    """
    X = (A.to_float() if isinstance(A, Mat2) else np.asarray(A, dtype=float)) * float(t)
    m = 0.5 * (X[0, 0] + X[1, 1])
    N = X - m * np.eye(2)
    z = N[0, 0] ** 2 + N[0, 1] * N[1, 0]
    c, s = _cosh_sinhc(z)
    return math.exp(m) * (c * np.eye(2) + s * N)


# ---------------------------------------------------------------------------
# Exact linear systems over Scalars


def rref(rows: list[list[Scalar]]) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(M)) if not M[i][col].is_zero()), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = M[r][col].inverse()
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and not M[i][col].is_zero():
                k = M[i][col]
                M[i] = [vi - k * vr for vi, vr in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == len(M):
            break
    return M, pivots


def nullspace(rows: list[list[Scalar]], ncols: int) -> list[list[Scalar]]:
    """Basis of {v : rows v = 0}."""
    if not rows:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][fc]
        basis.append(v)
    return basis


def solve_linear(rows: list[list[Scalar]], rhs: list[Scalar]) -> list[Scalar] | None:
    """One exact solution of rows x = rhs (free variables set to 0), or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = R[i][ncols]
    return x
