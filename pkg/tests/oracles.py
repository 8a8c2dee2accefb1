"""Independent oracles built on sympy, sharing no code with the package.

``symmetry_dimension`` counts linear point symmetries of y'' = A y' + B y
directly from the second prolongation: generators
xi(x) d_x + (M(x) u) . d_u are expanded in truncated Taylor series and the
determining equations are solved coefficient by coefficient.
"""

from __future__ import annotations

from functools import lru_cache

import sympy as sp

x = sp.Symbol("x")


def _as_sympy(m) -> sp.Matrix:
    """Exact sympy copy of a Mat2 or nested list, via the printed entries."""
    flat = [v for row in m for v in row] if isinstance(m, (list, tuple)) else list(m)
    return sp.Matrix(2, 2, [sp.sympify(str(v)) for v in flat])


@lru_cache(maxsize=None)
def _determining(A: tuple, B: tuple) -> tuple:
    """Determining equations as expressions in xi(x), m_ij(x)."""
    A_, B_ = sp.Matrix(2, 2, A), sp.Matrix(2, 2, B)
    xi = sp.Function("xi")(x)
    M = sp.Matrix(2, 2, lambda i, j: sp.Function(f"m{i}{j}")(x))
    u = sp.Matrix(sp.symbols("y z"))
    p = sp.Matrix(sp.symbols("p q"))  # u'
    eta = M * u

    def total(expr, upp):
        return (sp.diff(expr, x) + sum(sp.diff(expr, u[k]) * p[k] for k in range(2))
                + sum(sp.diff(expr, p[k]) * upp[k] for k in range(2)))

    upp = A_ * p + B_ * u
    eta1 = sp.Matrix([total(eta[k], upp) - p[k] * sp.diff(xi, x) for k in range(2)])
    eta2 = sp.Matrix([total(eta1[k], upp) - upp[k] * sp.diff(xi, x) for k in range(2)])
    cond = eta2 - A_ * eta1 - B_ * eta
    eqs = []
    for c in cond:
        poly = sp.Poly(sp.expand(c), *u, *p)
        eqs.extend(poly.coeffs())
    return tuple(eqs), xi, tuple(M)


def symmetry_dimension(A, B, order: int = 14, keep: int = 4) -> int:
    """Dimension of the linear point-symmetry algebra (superposition excluded).

    The determining equations form a constant-coefficient linear ODE system,
    so formal power series solutions are genuine solutions.  The rank of the
    nullspace projected onto the low Taylor coefficients gives the dimension.
    """
    A_, B_ = _as_sympy(A), _as_sympy(B)
    eqs, xi, M = _determining(tuple(A_), tuple(B_))
    funcs = (xi, *M)
    coeffs = [[sp.Symbol(f"c{n}_{k}") for k in range(order + 3)] for n in range(len(funcs))]
    series = {f: sum(c[k] * x**k for k in range(order + 3)) for f, c in zip(funcs, coeffs)}
    lin = []
    for e in eqs:
        s = sp.expand(e.subs(series).doit())
        for j in range(order + 1):
            lin.append(s.coeff(x, j))
    unknowns = [v for c in coeffs for v in c]
    mat, _ = sp.linear_eq_to_matrix(lin, unknowns)
    null = mat.nullspace()
    if not null:
        return 0
    low = [i for i, v in enumerate(unknowns) if int(v.name.split("_")[1]) < keep]
    proj = sp.Matrix.hstack(*null)[low, :]
    return proj.rank()


def prolongation_residuals(A, B, xi_expr, M_expr) -> list:
    """Determining-equation residuals for explicit sympy xi(x), M(x)."""
    A_, B_ = _as_sympy(A), _as_sympy(B)
    eqs, xi, M = _determining(tuple(A_), tuple(B_))
    subs = {xi: xi_expr, **{m: e for m, e in zip(M, M_expr)}}
    return [sp.simplify(e.subs(subs).doit()) for e in eqs]


def j1_span_expr(B, lam):
    """C1 Xbar1 + C2 X2 for A = diag(0, 4 lam), written out by hand in sympy."""
    b11, b12, b21, b22 = _as_sympy(B)
    lam = sp.sympify(str(lam))
    C1, C2 = sp.symbols("C1 C2")
    h2 = b22 - b11 + 4 * lam**2
    e1, e2 = sp.exp(-2 * lam * x), sp.exp(-lam * x)
    xi = C1 * h2 * e1 + 2 * C2 * e2
    M = [-C1 * lam * h2 * e1 - C2 * lam * e2, -2 * C1 * lam * b12 * e1,
         0, C1 * lam * h2 * e1 + 3 * C2 * lam * e2]
    return xi, M, (C1, C2)
