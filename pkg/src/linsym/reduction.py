"""Homogenization, the commutation criterion, and equivalence transformations.

Every transformation step maps a system ``u'' = A u' + B u + f`` in
coordinates (x, u) to one in new coordinates (X, U):

=================  ===========================  ================================
step               change of variables          effect on (A, B)
=================  ===========================  ================================
LinearChange(P)    U = P u                      (P A P^-1, P B P^-1)
ExpShift(tau)      U = e^(tau x) u              (A + 2 tau I, B - tau A - tau^2 I)
ScaleX(sigma)      X = sigma x                  (A / sigma, B / sigma^2)
ShiftX(x0)         X = x + x0                   unchanged
ParticularShift    U = u - y_p(x)               unchanged, f removed
=================  ===========================  ================================
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

import numpy as np

from .errors import MalformedInput, NoPolynomialParticularSolution, NotCommuting, SingularP
from .expoly import ExpPoly
from .linalg import Mat2, Vec2, commutator, mat_exp_numeric, solve_linear
from .scalar import ONE, ZERO, Scalar
from .vectorfield import VectorField

QUARTER = Scalar(1) / 4


@dataclass(frozen=True)
class SystemSpec:
    """``u'' = A u' + B u + f`` with constant f; ``d`` fixes the square root
    allowed for exact eigenvalues (None: the first one needed)."""

    A: Mat2
    B: Mat2
    f: Vec2 = field(default_factory=Vec2.zero)
    d: int | None = None

    @property
    def homogeneous(self) -> bool:
        return self.f.is_zero()

    def to_json(self) -> dict[str, object]:
        out: dict[str, object] = {"A": self.A.to_json(), "B": self.B.to_json(), "f": self.f.to_json()}
        if self.d is not None:
            out["d"] = self.d
        return out


# ---------------------------------------------------------------------------
# Steps


@dataclass(frozen=True)
class LinearChange:
    P: Mat2

    def __post_init__(self) -> None:
        if self.P.det().is_zero():
            raise SingularP(f"LinearChange needs a nonsingular P, got {self.P}")

    def inverse(self) -> LinearChange:
        return LinearChange(self.P.inv())

    def to_json(self) -> dict[str, object]:
        return {"step": "linear_change", "P": self.P.to_json()}


@dataclass(frozen=True)
class ExpShift:
    tau: Scalar

    def inverse(self) -> ExpShift:
        return ExpShift(-self.tau)

    def to_json(self) -> dict[str, object]:
        return {"step": "exp_shift", "tau": self.tau.to_json()}


@dataclass(frozen=True)
class ScaleX:
    sigma: Scalar

    def __post_init__(self) -> None:
        if self.sigma.is_zero():
            raise SingularP("ScaleX needs sigma != 0")

    def inverse(self) -> ScaleX:
        return ScaleX(self.sigma.inverse())

    def to_json(self) -> dict[str, object]:
        return {"step": "scale_x", "sigma": self.sigma.to_json()}


@dataclass(frozen=True)
class ShiftX:
    x0: Scalar

    def inverse(self) -> ShiftX:
        return ShiftX(-self.x0)

    def to_json(self) -> dict[str, object]:
        return {"step": "shift_x", "x0": self.x0.to_json()}


@dataclass(frozen=True)
class ParticularShift:
    """``coeffs[k]`` is the vector coefficient of x**k in y_p (degree <= 3)."""

    coeffs: tuple[Vec2, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) > 4:
            raise MalformedInput("particular solutions are limited to degree 3")

    def inverse(self) -> ParticularShift:
        return ParticularShift(tuple(-c for c in self.coeffs))

    def components(self) -> Vec2:
        """y_p as a Vec2 of ExpPoly."""
        return Vec2(ExpPoly.polynomial(c.v1 for c in self.coeffs),
                    ExpPoly.polynomial(c.v2 for c in self.coeffs))

    def to_json(self) -> dict[str, object]:
        return {"step": "particular_shift", "y_p": [c.to_json() for c in self.coeffs]}


TransformStep = Union[LinearChange, ExpShift, ScaleX, ShiftX, ParticularShift]


def step_from_json(data: dict) -> TransformStep:
    kind = data.get("step")
    if kind == "linear_change":
        return LinearChange(Mat2.parse(data["P"]))
    if kind == "exp_shift":
        return ExpShift(Scalar.parse(data["tau"]))
    if kind == "scale_x":
        return ScaleX(Scalar.parse(data["sigma"]))
    if kind == "shift_x":
        return ShiftX(Scalar.parse(data["x0"]))
    if kind == "particular_shift":
        return ParticularShift(tuple(Vec2.parse(c) for c in data["y_p"]))
    raise MalformedInput(f"unknown transform step {kind!r}")


@dataclass(frozen=True)
class TransformChain:
    """Steps in application order, original coordinates first."""

    steps: tuple[TransformStep, ...] = ()

    def __iter__(self) -> Iterator[TransformStep]:
        return iter(self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def then(self, *steps: TransformStep) -> TransformChain:
        return TransformChain(self.steps + tuple(steps))

    def inverse(self) -> TransformChain:
        return TransformChain(tuple(s.inverse() for s in reversed(self.steps)))

    def apply(self, A: Mat2, B: Mat2) -> tuple[Mat2, Mat2]:
        for s in self.steps:
            A, B = apply_step(A, B, s)
        return A, B

    def apply_system(self, spec: SystemSpec) -> SystemSpec:
        for s in self.steps:
            spec = apply_step_system(spec, s)
        return spec

    def to_json(self) -> list[dict[str, object]]:
        return [s.to_json() for s in self.steps]

    @classmethod
    def from_json(cls, data: list[dict]) -> TransformChain:
        return cls(tuple(step_from_json(d) for d in data))


# ---------------------------------------------------------------------------
# Operations


def commute_test(A: Mat2, B: Mat2) -> bool:
    return commutator(A, B).is_zero()


def reduce_to_M(A: Mat2, B: Mat2) -> Mat2:
    """Constant matrix of the reduced system y'' = M y when AB = BA."""
    if not commute_test(A, B):
        raise NotCommuting("reduce_to_M requires AB = BA")
    return B + A * A * QUARTER


def bbar_of_t(A: Mat2, B: Mat2, t: float) -> np.ndarray:
    """C(t)^-1 (B + A^2/4) C(t) with C(t) = exp(tA/2), in floating point."""
    C = mat_exp_numeric(A, 0.5 * t)
    Cinv = mat_exp_numeric(A, -0.5 * t)
    return Cinv @ (B + A * A * QUARTER).to_float() @ C


def apply_step(A: Mat2, B: Mat2, s: TransformStep) -> tuple[Mat2, Mat2]:
    if isinstance(s, LinearChange):
        Pinv = s.P.inv()
        return s.P * A * Pinv, s.P * B * Pinv
    if isinstance(s, ExpShift):
        t = s.tau
        return A + Mat2.scalar(2 * t), B - A * t - Mat2.scalar(t * t)
    if isinstance(s, ScaleX):
        return A / s.sigma, B / (s.sigma * s.sigma)
    if isinstance(s, (ShiftX, ParticularShift)):
        return A, B
    raise TypeError(f"not a transform step: {s!r}")


def apply_step_system(spec: SystemSpec, s: TransformStep) -> SystemSpec:
    """Like :func:`apply_step` but also transports the constant forcing."""
    A, B = apply_step(spec.A, spec.B, s)
    f = spec.f
    if isinstance(s, LinearChange):
        f = s.P * f
    elif isinstance(s, ExpShift):
        if not f.is_zero() and not s.tau.is_zero():
            raise MalformedInput("an exponential shift makes constant forcing x-dependent")
    elif isinstance(s, ScaleX):
        f = f * (s.sigma * s.sigma).inverse()
    elif isinstance(s, ParticularShift):
        # U = u - y_p  =>  forcing becomes f - (y_p'' - A y_p' - B y_p)
        yp = s.components()
        d1, d2 = yp.map(ExpPoly.derive), yp.map(lambda p: p.derive().derive())
        residual = d2 - A * d1 - B * yp
        new = Vec2(*(ExpPoly.const(fi) - ri for fi, ri in zip(f, residual)))
        consts = [p.constant_value() for p in new]
        if any(c is None for c in consts):
            raise MalformedInput("particular shift leaves x-dependent forcing")
        f = Vec2(*consts)
    return SystemSpec(A, B, f, spec.d)


def homogenize(spec: SystemSpec) -> tuple[Mat2, Mat2, TransformChain]:
    """Remove constant forcing with a polynomial particular solution.

    Tries degrees 0..3 in turn; the first solvable degree is minimal.
    """
    A, B, f = spec.A, spec.B, spec.f
    if f.is_zero():
        return A, B, TransformChain()
    for deg in range(4):
        coeffs = _particular_polynomial(A, B, f, deg)
        if coeffs is not None:
            return A, B, TransformChain((ParticularShift(coeffs),))
    raise NoPolynomialParticularSolution(
        f"no particular solution of degree <= 3 for A={A}, B={B}, f={f.to_json()}")


def _particular_polynomial(A: Mat2, B: Mat2, f: Vec2, deg: int) -> tuple[Vec2, ...] | None:
    # unknowns c_0..c_deg (2 each); matching x^j for j = 0..deg:
    # (j+2)(j+1) c_{j+2} - (j+1) A c_{j+1} - B c_j = f [j == 0]
    n = 2 * (deg + 1)
    rows: list[list[Scalar]] = []
    rhs: list[Scalar] = []
    for j in range(deg + 1):
        for i in range(2):
            row = [ZERO] * n
            for col in range(2):
                row[2 * j + col] = row[2 * j + col] - _entry(B, i, col)
                if j + 1 <= deg:
                    row[2 * (j + 1) + col] = row[2 * (j + 1) + col] - (j + 1) * _entry(A, i, col)
            if j + 2 <= deg:
                row[2 * (j + 2) + i] = row[2 * (j + 2) + i] + (j + 2) * (j + 1)
            rows.append(row)
            rhs.append((f.v1, f.v2)[i] if j == 0 else ZERO)
    sol = solve_linear(rows, rhs)
    if sol is None:
        return None
    return tuple(Vec2(sol[2 * k], sol[2 * k + 1]) for k in range(deg + 1))


def _entry(M: Mat2, i: int, j: int) -> Scalar:
    return M.rows()[i][j]


# ---------------------------------------------------------------------------
# Pulling generators back to earlier coordinates


def pullback_step(s: TransformStep, vf: VectorField) -> VectorField:
    """Express a field given in the step's new coordinates in its old ones."""
    xi, M, g = vf.xi, vf.M, vf.g
    if isinstance(s, LinearChange):
        P, Pinv = s.P, s.P.inv()
        return VectorField(xi, Pinv * M * P, Pinv * g, vf.name)
    if isinstance(s, ExpShift):
        # u = e^(-tau x) U
        back = ExpPoly.exp(-s.tau)
        return VectorField(xi, M - Mat2.identity() * (xi * s.tau), g.map(lambda p: p * back), vf.name)
    if isinstance(s, ScaleX):
        sig = s.sigma
        sub = lambda p: p.scale_x(sig)  # noqa: E731
        return VectorField(sub(xi) * sig.inverse(), M.map(sub), g.map(sub), vf.name)
    if isinstance(s, ShiftX):
        sub = lambda p: p.shift_x(s.x0)  # noqa: E731
        return VectorField(sub(xi), M.map(sub), g.map(sub), vf.name)
    if isinstance(s, ParticularShift):
        yp = s.components()
        new_g = g - M * yp + yp.map(ExpPoly.derive) * xi
        return VectorField(xi, M, new_g, vf.name)
    raise TypeError(f"not a transform step: {s!r}")


def pullback_vf(chain: TransformChain, vf: VectorField) -> VectorField:
    for s in reversed(chain.steps):
        vf = pullback_step(s, vf)
    return vf


# ---------------------------------------------------------------------------
# Numeric transport of trajectories


def transform_states(s: TransformStep, xs: np.ndarray, states: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Map sampled (x, y, z, y', z') through a step's change of variables."""
    xs = np.asarray(xs, dtype=float)
    u, du = states[:, :2], states[:, 2:]
    if isinstance(s, LinearChange):
        P = s.P.to_float()
        return xs, np.hstack([u @ P.T, du @ P.T])
    if isinstance(s, ExpShift):
        tau = float(s.tau)
        w = np.exp(tau * xs)[:, None]
        return xs, np.hstack([w * u, w * (du + tau * u)])
    if isinstance(s, ScaleX):
        sig = float(s.sigma)
        return sig * xs, np.hstack([u, du / sig])
    if isinstance(s, ShiftX):
        return xs + float(s.x0), states.copy()
    if isinstance(s, ParticularShift):
        yp = s.components()
        p = np.stack([c(xs) for c in yp], axis=1)
        dp = np.stack([c.derive()(xs) for c in yp], axis=1)
        return xs, np.hstack([u - p, du - dp])
    raise TypeError(f"not a transform step: {s!r}")
