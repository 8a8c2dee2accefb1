"""Symbolic and numeric checks that a vector field is an admitted symmetry.

Symbolic route.  For ``u'' = A u' + B u + f`` and
``X = xi(x) d_x + (M(x) u + g(x)) . d_u`` the second prolongation gives

    zeta1 = M' u + M u' + g' - xi' u'
    zeta2 = M'' u + 2 M' u' + M u'' + g'' - xi'' u' - 2 xi' u''

and the symmetry condition ``zeta2 = A zeta1 + B (M u + g)`` on solutions,
after substituting u'', splits by powers of u', u and 1 into

    R1 = 2 M' - [A, M] - xi'' I - xi' A
    R2 = M'' - A M' - [B, M] - 2 xi' B
    R0 = M f + g'' - 2 xi' f - A g' - B g

X is admitted iff all three vanish identically.

Numeric route.  Solutions are integrated with classical RK4, moved along
the prolonged flow of X, and compared with a fresh integration started from
the moved initial data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NonFiniteState, NonlinearAnsatz, NonMonotoneReparametrization
from .expoly import ExpPoly
from .linalg import Mat2, Vec2, commutator
from .vectorfield import VectorField, emat


@dataclass(frozen=True)
class AdmittanceResidual:
    r1: Mat2  # coefficient of u'
    r2: Mat2  # coefficient of u
    r0: Vec2  # u-free part; zero for homogeneous systems and linear fields

    def is_zero(self) -> bool:
        return self.r1.is_zero() and self.r2.is_zero() and self.r0.is_zero()

    def max_abs_at(self, x: float) -> float:
        vals = [abs(p(x)) for p in (*self.r1, *self.r2, *self.r0)]
        return float(max(vals))

    def to_json(self) -> dict[str, object]:
        return {"R1": self.r1.to_json(), "R2": self.r2.to_json(), "R0": self.r0.to_json()}


def admittance_residual(A: Mat2, B: Mat2, vf: VectorField, f: Vec2 | None = None) -> AdmittanceResidual:
    if not isinstance(vf, VectorField) or not isinstance(vf.xi, ExpPoly):
        raise NonlinearAnsatz("expected xi(x) d_x + (M(x) u + g(x)) d_u with exp-polynomial entries")
    d = ExpPoly.derive
    xi, M, g = vf.xi, vf.M, vf.g
    A_, B_ = emat(A), emat(B)
    I = emat(Mat2.identity())
    dxi, ddxi = d(xi), d(d(xi))
    dM, ddM = M.map(d), M.map(d).map(d)
    r1 = dM * 2 - commutator(A_, M) - I * ddxi - A_ * dxi
    r2 = ddM - A_ * dM - commutator(B_, M) - B_ * (dxi * 2)
    if f is None:
        f = Vec2.zero()
    fe = f.map(ExpPoly.const)
    r0 = M * fe + g.map(d).map(d) - fe * (dxi * 2) - A_ * g.map(d) - B_ * g
    return AdmittanceResidual(r1, r2, r0)


def is_admitted(A: Mat2, B: Mat2, vf: VectorField, f: Vec2 | None = None) -> bool:
    return admittance_residual(A, B, vf, f).is_zero()


# ---------------------------------------------------------------------------
# RK4


@dataclass(frozen=True)
class Trajectory:
    """Nodes ``xs`` and states (y, z, y', z') per node."""

    xs: np.ndarray
    states: np.ndarray

    @property
    def h(self) -> float:
        return float(self.xs[1] - self.xs[0])


def _generator(A: Mat2 | np.ndarray, B: Mat2 | np.ndarray, f: Vec2 | np.ndarray | None) -> np.ndarray:
    """First-order form w' = K w on w = (u, u', 1)."""
    A = A.to_float() if isinstance(A, Mat2) else np.asarray(A, dtype=float)
    B = B.to_float() if isinstance(B, Mat2) else np.asarray(B, dtype=float)
    fv = np.zeros(2) if f is None else (f.to_float() if isinstance(f, Vec2) else np.asarray(f, float))
    K = np.zeros((5, 5))
    K[0:2, 2:4] = np.eye(2)
    K[2:4, 0:2] = B
    K[2:4, 2:4] = A
    K[2:4, 4] = fv
    return K


def rk4_on_grid(A, B, init: Sequence[float], xs: np.ndarray, f=None) -> np.ndarray:
    """Classical RK4 through the nodes ``xs`` (any monotone spacing).

    For a constant-coefficient linear field the four stages collapse to the
    step propagator I + hK + (hK)^2/2 + (hK)^3/6 + (hK)^4/24, which is what
    is applied here.
    """
    K = _generator(A, B, f)
    hs = np.diff(np.asarray(xs, dtype=float))
    K2 = K @ K
    K3 = K2 @ K
    K4 = K3 @ K
    H = hs[:, None, None]
    T = np.eye(5) + H * K + H ** 2 / 2 * K2 + H ** 3 / 6 * K3 + H ** 4 / 24 * K4
    w = np.empty((len(xs), 5))
    w[0, :4] = init
    w[0, 4] = 1.0
    for i in range(len(hs)):
        w[i + 1] = T[i] @ w[i]
    if not np.all(np.isfinite(w)):
        raise NonFiniteState("RK4 state overflowed")
    return w[:, :4]


def rk4_solve(A, B, init: Sequence[float], x0: float, x1: float, h: float, f=None) -> Trajectory:
    """Uniform RK4 from x0 to x1; the step is adjusted so it divides the interval."""
    if not (h > 0 and x1 > x0):
        raise ValueError("need h > 0 and x1 > x0")
    n = max(1, int(round((x1 - x0) / h)))
    xs = np.linspace(x0, x1, n + 1)
    return Trajectory(xs, rk4_on_grid(A, B, init, xs, f))


# ---------------------------------------------------------------------------
# Flows


class _NumericField:
    """Float evaluator for a field together with its first prolongation.

    All component exp-polynomials share one basis of x**k e^(mu x + nu); the
    basis is evaluated once per call and combined with a coefficient matrix.
    """

    def __init__(self, vf: VectorField) -> None:
        d = ExpPoly.derive
        comps = [vf.xi, d(vf.xi), *vf.M, *(d(p) for p in vf.M), *vf.g, *(d(p) for p in vf.g)]
        keys = sorted({key for p in comps for key in p.as_dict()})
        index = {key: i for i, key in enumerate(keys)}
        self.coef = np.zeros((len(comps), max(1, len(keys))))
        for row, p in enumerate(comps):
            for key, c in p.as_dict().items():
                self.coef[row, index[key]] = float(c)
        self.basis = [(float(mu), k, float(nu)) for mu, k, nu in keys]

    def components(self, x: np.ndarray) -> np.ndarray:
        if not self.basis:
            return np.zeros((self.coef.shape[0],) + x.shape)
        vals = np.empty((len(self.basis),) + x.shape)
        for i, (mu, k, nu) in enumerate(self.basis):
            v = np.exp(mu * x + nu) if (mu or nu) else np.ones_like(x)
            vals[i] = v * x ** k if k else v
        return self.coef @ vals

    def __call__(self, x: np.ndarray, u: np.ndarray, du: np.ndarray):
        c = self.components(x)
        xi, dxi = c[0], c[1]
        M, dM, g, dg = c[2:6], c[6:10], c[10:12], c[12:14]
        u0, u1, d0, d1 = u[:, 0], u[:, 1], du[:, 0], du[:, 1]
        vu = np.stack([M[0] * u0 + M[1] * u1 + g[0], M[2] * u0 + M[3] * u1 + g[1]], axis=1)
        vdu = np.stack([
            dM[0] * u0 + dM[1] * u1 + M[0] * d0 + M[1] * d1 + dg[0] - dxi * d0,
            dM[2] * u0 + dM[3] * u1 + M[2] * d0 + M[3] * d1 + dg[1] - dxi * d1,
        ], axis=1)
        return xi, vu, vdu


def _flow_fixed(field: _NumericField, x: np.ndarray, u: np.ndarray, du: np.ndarray,
                eps: float, substeps: int) -> tuple[np.ndarray, np.ndarray]:
    k = eps / substeps
    for _ in range(substeps):
        a = field(x, u, du)
        b = field(x + k / 2 * a[0], u + k / 2 * a[1], du + k / 2 * a[2])
        c = field(x + k / 2 * b[0], u + k / 2 * b[1], du + k / 2 * b[2])
        e = field(x + k * c[0], u + k * c[1], du + k * c[2])
        x = x + k / 6 * (a[0] + 2 * b[0] + 2 * c[0] + e[0])
        u = u + k / 6 * (a[1] + 2 * b[1] + 2 * c[1] + e[1])
        du = du + k / 6 * (a[2] + 2 * b[2] + 2 * c[2] + e[2])
    return x, np.hstack([u, du])


def flow_points(vf: VectorField, xs: np.ndarray, states: np.ndarray, eps: float,
                substeps: int | None = None, tol: float = 1e-9,
                max_substeps: int = 4096) -> tuple[np.ndarray, np.ndarray]:
    """Move every (x, u, u') along the prolonged one-parameter group to parameter eps.

    RK4 in the group parameter.  With ``substeps=None`` the count starts at 16
    and doubles until two successive results agree to ``tol`` (relative to
    max(1, |state|) per node).
    """
    field = _NumericField(vf)
    x = np.array(xs, dtype=float)
    u = np.array(states[:, :2], dtype=float)
    du = np.array(states[:, 2:], dtype=float)
    if eps == 0:
        return x, np.hstack([u, du])
    if substeps is not None:
        xb, sb = _flow_fixed(field, x, u, du, eps, substeps)
    else:
        n = 16
        xb, sb = _flow_fixed(field, x, u, du, eps, n)
        while n < max_substeps:
            n *= 2
            xb2, sb2 = _flow_fixed(field, x, u, du, eps, n)
            scale = np.maximum(1.0, np.max(np.abs(sb2), axis=1))
            gap = max(float(np.max(np.abs(xb2 - xb))),
                      float(np.max(np.max(np.abs(sb2 - sb), axis=1) / scale)))
            xb, sb = xb2, sb2
            if gap < tol:
                break
    if not (np.all(np.isfinite(xb)) and np.all(np.isfinite(sb))):
        raise NonFiniteState("flow left the finite range")
    return xb, sb


def curve_discrepancy(A, B, xs: np.ndarray, states: np.ndarray, f=None) -> float:
    """How far a sampled curve is from being a solution.

    The curve is re-integrated from its left-endpoint data through the same
    nodes.  The gap at each node is measured in the max norm relative to
    max(1, |state|) there, matching the relative error model of RK4 on
    exponentially growing solutions; the largest such gap is returned.
    """
    xs = np.asarray(xs, dtype=float)
    steps = np.diff(xs)
    if np.all(steps < 0):
        xs, states = xs[::-1], states[::-1]
    elif not np.all(steps > 0):
        raise NonMonotoneReparametrization("transformed abscissae are not strictly monotone")
    ref = rk4_on_grid(A, B, states[0], xs, f)
    scale = np.maximum(1.0, np.max(np.abs(states), axis=1))
    return float(np.max(np.max(np.abs(ref - states), axis=1) / scale))


def flow_check(A, B, vf: VectorField, eps: float, traj: Trajectory, f=None,
               substeps: int | None = None) -> float:
    """Discrepancy between the eps-image of a solution and a true solution."""
    xbar, sbar = flow_points(vf, traj.xs, traj.states, eps, substeps)
    if not np.all(np.diff(xbar) > 0):
        raise NonMonotoneReparametrization(f"x-flow of {vf.name or vf} folds the grid at eps={eps}")
    return curve_discrepancy(A, B, xbar, sbar, f)


DEFAULT_EPSILONS = (-0.1, -0.05, 0.05, 0.1)


def verify_generator(A: Mat2, B: Mat2, vf: VectorField, traj: Trajectory, f: Vec2 | None = None,
                     epsilons: Sequence[float] = DEFAULT_EPSILONS, numeric: bool = True) -> dict[str, object]:
    """Per-generator verification record."""
    symbolic = admittance_residual(A, B, vf, f).is_zero()
    out: dict[str, object] = {"symbolic": "zero" if symbolic else "nonzero"}
    if numeric:
        worst = max(flow_check(A, B, vf, e, traj, f) for e in epsilons)
        out["numeric_residual"] = worst
        out["epsilons"] = list(epsilons)
    return out
