"""Exp-polynomials: finite sums  c * x**k * exp(mu*x + nu)  with exact c, mu, nu.

``nu`` is a constant exponent offset.  It only appears after substituting
``x -> x + x0`` and keeps coefficients such as e^-2 exact.  Terms are keyed
by (mu, k, nu).  The zero test is exact because the functions
x**k e^(mu x) are independent and, by Lindemann-Weierstrass, so are the
constants e^nu for distinct algebraic nu.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .scalar import ONE, ZERO, Scalar

Key = tuple[Scalar, int, Scalar]


class ExpPoly:
    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[Scalar, int, Scalar, Scalar]] | dict[Key, Scalar] = ()) -> None:
        acc: dict[Key, Scalar] = {}
        items = terms.items() if isinstance(terms, dict) else (
            ((mu, k, nu), c) for c, k, mu, nu in terms)
        for (mu, k, nu), c in items:
            if k < 0:
                raise ValueError("negative power of x")
            key = (Scalar.coerce(mu), int(k), Scalar.coerce(nu))
            acc[key] = acc.get(key, ZERO) + Scalar.coerce(c)
        ordered = sorted(((k, c) for k, c in acc.items() if not c.is_zero()), key=lambda kc: kc[0])
        object.__setattr__(self, "_terms", tuple(ordered))

    def __setattr__(self, name, value):
        raise AttributeError("ExpPoly is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls) -> ExpPoly:
        return _ZERO

    @classmethod
    def const(cls, c: object) -> ExpPoly:
        return cls([(Scalar.coerce(c), 0, ZERO, ZERO)])

    @classmethod
    def exp(cls, mu: object, c: object = 1) -> ExpPoly:
        """c * e^(mu x)"""
        return cls([(Scalar.coerce(c), 0, Scalar.coerce(mu), ZERO)])

    @classmethod
    def monomial(cls, k: int, c: object = 1, mu: object = 0) -> ExpPoly:
        return cls([(Scalar.coerce(c), k, Scalar.coerce(mu), ZERO)])

    @classmethod
    def polynomial(cls, coeffs: Iterable[object]) -> ExpPoly:
        """sum coeffs[k] x**k"""
        return cls([(Scalar.coerce(c), k, ZERO, ZERO) for k, c in enumerate(coeffs)])

    # -- structure -----------------------------------------------------

    def terms(self) -> Iterator[tuple[Scalar, int, Scalar, Scalar]]:
        """Yields (c, k, mu, nu) in canonical (mu, k, nu) order."""
        for (mu, k, nu), c in self._terms:
            yield c, k, mu, nu

    def as_dict(self) -> dict[Key, Scalar]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, Scalar)) and not isinstance(other, bool):
            other = ExpPoly.const(other)
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def constant_value(self) -> Scalar | None:
        """The value if this is a plain constant (no x, no exponentials)."""
        if self.is_zero():
            return ZERO
        if len(self._terms) == 1:
            (mu, k, nu), c = self._terms[0]
            if mu.is_zero() and k == 0 and nu.is_zero():
                return c
        return None

    # -- ring ----------------------------------------------------------

    @staticmethod
    def _lift(other: object) -> ExpPoly | None:
        if isinstance(other, ExpPoly):
            return other
        if isinstance(other, (int, Fraction, Scalar)) and not isinstance(other, bool):
            return ExpPoly.const(other)
        return None

    def __add__(self, other: object) -> ExpPoly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        acc = dict(self._terms)
        for key, c in o._terms:
            acc[key] = acc.get(key, ZERO) + c
        return ExpPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> ExpPoly:
        return ExpPoly({key: -c for key, c in self._terms})

    def __sub__(self, other: object) -> ExpPoly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> ExpPoly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> ExpPoly:
        if isinstance(other, (int, Fraction, Scalar)) and not isinstance(other, bool):
            k = Scalar.coerce(other)
            return ExpPoly({key: c * k for key, c in self._terms})
        if not isinstance(other, ExpPoly):
            return NotImplemented
        acc: dict[Key, Scalar] = {}
        for (m1, k1, n1), c1 in self._terms:
            for (m2, k2, n2), c2 in other._terms:
                key = (m1 + m2, k1 + k2, n1 + n2)
                acc[key] = acc.get(key, ZERO) + c1 * c2
        return ExpPoly(acc)

    __rmul__ = __mul__

    def __truediv__(self, k: object) -> ExpPoly:
        return self * Scalar.coerce(k).inverse()

    # -- calculus and substitution -------------------------------------

    def derive(self) -> ExpPoly:
        """d/dx: (c, k, mu) -> (c*mu, k, mu) + (c*k, k-1, mu)."""
        acc: dict[Key, Scalar] = {}
        for (mu, k, nu), c in self._terms:
            if not mu.is_zero():
                acc[(mu, k, nu)] = acc.get((mu, k, nu), ZERO) + c * mu
            if k:
                key = (mu, k - 1, nu)
                acc[key] = acc.get(key, ZERO) + c * k
        return ExpPoly(acc)

    def scale_x(self, sigma: object) -> ExpPoly:
        """p(sigma * x)."""
        s = Scalar.coerce(sigma)
        return ExpPoly({(mu * s, k, nu): c * s ** k for (mu, k, nu), c in self._terms})

    def shift_x(self, x0: object) -> ExpPoly:
        """p(x + x0), expanding (x + x0)**k binomially."""
        s = Scalar.coerce(x0)
        acc: dict[Key, Scalar] = {}
        for (mu, k, nu), c in self._terms:
            nu2 = nu + mu * s
            for j in range(k + 1):
                key = (mu, j, nu2)
                acc[key] = acc.get(key, ZERO) + c * math.comb(k, j) * s ** (k - j)
        return ExpPoly(acc)

    def __call__(self, x: float | np.ndarray) -> float | np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for (mu, k, nu), c in self._terms:
            out = out + float(c) * x ** k * np.exp(float(mu) * x + float(nu))
        return out if out.ndim else float(out)

    # -- output ----------------------------------------------------------

    def to_json(self) -> list[list[object]]:
        """[c, k, mu] triples; a fourth entry nu appears only when nonzero."""
        out = []
        for (mu, k, nu), c in self._terms:
            item: list[object] = [c.to_json(), k, mu.to_json()]
            if not nu.is_zero():
                item.append(nu.to_json())
            out.append(item)
        return out

    @classmethod
    def from_json(cls, data: list[list[object]]) -> ExpPoly:
        terms = []
        for item in data:
            c, k, mu, *rest = item
            nu = Scalar.parse(rest[0]) if rest else ZERO
            terms.append((Scalar.parse(c), int(k), Scalar.parse(mu), nu))
        return cls(terms)

    def __repr__(self) -> str:
        return f"ExpPoly({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (mu, k, nu), c in self._terms:
            factors = []
            if k:
                factors.append("x" if k == 1 else f"x^{k}")
            expo = _exponent_str(mu, nu)
            if expo:
                factors.append(f"e^({expo})")
            body = "*".join(factors)
            cs = str(c)
            if not body:
                parts.append(cs if " " not in cs else f"({cs})")
            elif c == ONE:
                parts.append(body)
            elif c == -ONE:
                parts.append("-" + body)
            else:
                parts.append((cs if " " not in cs else f"({cs})") + "*" + body)
        return " + ".join(parts).replace("+ -", "- ")


def _exponent_str(mu: Scalar, nu: Scalar) -> str:
    bits = []
    if not mu.is_zero():
        ms = str(mu)
        if mu == ONE:
            bits.append("x")
        elif mu == -ONE:
            bits.append("-x")
        else:
            bits.append((ms if " " not in ms else f"({ms})") + "*x")
    if not nu.is_zero():
        bits.append(str(nu))
    return " + ".join(bits).replace("+ -", "- ")


_ZERO = ExpPoly()
