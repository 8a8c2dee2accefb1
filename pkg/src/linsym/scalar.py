"""Exact elements of Q or Q(sqrt(d)) for a single square-free d > 1."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Union

from .errors import ConflictingDiscriminant, MalformedInput, UnsupportedDiscriminant

Number = Union[int, Fraction, "Scalar"]


def _square_free(n: int) -> tuple[int, int]:
    """Split n > 0 as k**2 * m with m square-free; returns (k, m)."""
    k, m, p = 1, n, 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            k *= p
        p += 1
    return k, m


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def _parse_fraction(obj: object) -> Fraction:
    if isinstance(obj, bool):
        raise MalformedInput(f"not a rational: {obj!r}")
    if isinstance(obj, (int, Fraction)):
        return Fraction(obj)
    if isinstance(obj, str):
        try:
            return Fraction(obj.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"unparseable rational {obj!r}") from exc
    raise MalformedInput(f"rational literals must be strings, got {obj!r}")


@total_ordering
class Scalar:
    """``rat + ext*sqrt(d)`` with exact rational parts.

    ``d`` is ``None`` whenever ``ext == 0``, so plain rationals mix freely
    with any extension.  Mixing two different extensions raises.
    """

    __slots__ = ("rat", "ext", "d")

    rat: Fraction
    ext: Fraction
    d: int | None

    def __init__(self, rat: int | Fraction | str = 0, ext: int | Fraction | str = 0,
                 d: int | None = None) -> None:
        rat = _parse_fraction(rat) if not isinstance(rat, Fraction) else rat
        ext = _parse_fraction(ext) if not isinstance(ext, Fraction) else ext
        if ext != 0:
            if d is None:
                raise UnsupportedDiscriminant("extension part given without a discriminant")
            if d < 2:
                raise UnsupportedDiscriminant(f"discriminant must be > 1, got {d}")
            k, m = _square_free(d)
            if m == 1:
                rat, ext, d = rat + ext * k, Fraction(0), None
            else:
                ext, d = ext * k, m
        else:
            d = None
        object.__setattr__(self, "rat", rat)
        object.__setattr__(self, "ext", ext)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def coerce(cls, value: object) -> Scalar:
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return cls(Fraction(value))
        return cls.parse(value)

    @classmethod
    def parse(cls, obj: object) -> Scalar:
        """Read ``"p/q"`` or ``{"rat": "p/q", "ext": "r/s", "d": n}``."""
        if isinstance(obj, Scalar):
            return obj
        if isinstance(obj, dict):
            unknown = set(obj) - {"rat", "ext", "d"}
            if unknown:
                raise MalformedInput(f"unknown scalar keys {sorted(unknown)}")
            d = obj.get("d")
            if d is not None and (isinstance(d, bool) or not isinstance(d, int)):
                raise MalformedInput(f"discriminant must be an integer, got {d!r}")
            return cls(_parse_fraction(obj.get("rat", "0")), _parse_fraction(obj.get("ext", "0")), d)
        return cls(_parse_fraction(obj))

    # -- structure -----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.ext == 0

    def is_zero(self) -> bool:
        return self.rat == 0 and self.ext == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def conjugate(self) -> Scalar:
        return Scalar(self.rat, -self.ext, self.d)

    def norm(self) -> Fraction:
        if self.d is None:
            return self.rat * self.rat
        return self.rat * self.rat - self.ext * self.ext * self.d

    def sign(self) -> int:
        p, r = self.rat, self.ext
        if r == 0:
            return (p > 0) - (p < 0)
        sp, sr = (p > 0) - (p < 0), (r > 0) - (r < 0)
        if sp == 0 or sp == sr:
            return sr
        # opposite signs: the larger magnitude wins
        return sp if p * p > r * r * self.d else sr

    # -- arithmetic ----------------------------------------------------

    @staticmethod
    def _join(a: int | None, b: int | None) -> int | None:
        if a is not None and b is not None and a != b:
            raise ConflictingDiscriminant(f"cannot mix sqrt({a}) and sqrt({b})")
        return a if a is not None else b

    def _other(self, other: object) -> Scalar | None:
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Scalar(Fraction(other))
        return None

    def __add__(self, other: object) -> Scalar:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Scalar(self.rat + o.rat, self.ext + o.ext, self._join(self.d, o.d))

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar(-self.rat, -self.ext, self.d)

    def __pos__(self) -> Scalar:
        return self

    def __sub__(self, other: object) -> Scalar:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> Scalar:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> Scalar:
        o = self._other(other)
        if o is None:
            return NotImplemented
        d = self._join(self.d, o.d)
        rat = self.rat * o.rat + (self.ext * o.ext * d if d is not None else 0)
        ext = self.rat * o.ext + self.ext * o.rat
        return Scalar(rat, ext, d)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if self.is_zero():
            raise ZeroDivisionError("Scalar division by zero")
        n = self.norm()
        return Scalar(self.rat / n, -self.ext / n, self.d)

    def __truediv__(self, other: object) -> Scalar:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> Scalar:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> Scalar:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Scalar(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __abs__(self) -> Scalar:
        return -self if self.sign() < 0 else self

    def sqrt(self, d_hint: int | None = None) -> Scalar:
        """Exact square root inside Q(sqrt(d)).

        A rational non-square opens the extension ``sqrt(squarefree part)``;
        that must agree with ``d_hint`` (or with ``self.d``) when one is set.
        """
        if self.sign() < 0:
            raise UnsupportedDiscriminant(f"square root of negative value {self}")
        fixed = self._join(self.d, d_hint)
        if self.is_rational:
            q = self.rat
            root = _rational_sqrt(q)
            if root is not None:
                return Scalar(root)
            # q = k^2 * m / n^2 style: sqrt(q) = sqrt(num*den)/den
            k, m = _square_free(q.numerator * q.denominator)
            if fixed is not None and fixed != m:
                raise UnsupportedDiscriminant(
                    f"sqrt({q}) needs sqrt({m}) but the context fixes sqrt({fixed})")
            return Scalar(0, Fraction(k, q.denominator), m)
        # (x + y sqrt d)^2 = p + r sqrt d  =>  x^2 + d y^2 = p, 2xy = r
        p, r, d = self.rat, self.ext, self.d
        n = _rational_sqrt(self.norm())
        if n is not None:
            for x2 in ((p + n) / 2, (p - n) / 2):
                x = _rational_sqrt(x2)
                if x:
                    return Scalar(x, r / (2 * x), d)
        raise UnsupportedDiscriminant(f"sqrt({self}) is a nested radical")

    # -- comparison ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.rat == o.rat and self.ext == o.ext and (self.ext == 0 or self.d == o.d)

    def __lt__(self, other: object) -> bool:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self) -> int:
        if self.ext == 0:
            return hash(self.rat)
        return hash((self.rat, self.ext, self.d))

    # -- conversion ----------------------------------------------------

    def __float__(self) -> float:
        if self.d is None:
            return float(self.rat)
        return float(self.rat) + float(self.ext) * math.sqrt(self.d)

    def to_json(self) -> str | dict[str, object]:
        if self.d is None:
            return str(self.rat)
        return {"rat": str(self.rat), "ext": str(self.ext), "d": self.d}

    def __repr__(self) -> str:
        if self.d is None:
            return f"Scalar({str(self.rat)!r})"
        return f"Scalar({str(self.rat)!r}, {str(self.ext)!r}, {self.d})"

    def __str__(self) -> str:
        if self.d is None:
            return str(self.rat)
        root = f"sqrt({self.d})" if self.ext == 1 else f"{self.ext}*sqrt({self.d})"
        if self.rat == 0:
            return root if self.ext != -1 else f"-sqrt({self.d})"
        sign = "-" if self.ext < 0 else "+"
        mag = -self.ext if self.ext < 0 else self.ext
        mag_s = f"sqrt({self.d})" if mag == 1 else f"{mag}*sqrt({self.d})"
        return f"{self.rat} {sign} {mag_s}"


ZERO = Scalar(0)
ONE = Scalar(1)


def S(value: object) -> Scalar:
    """Shorthand constructor used throughout tests and fixtures."""
    return Scalar.coerce(value)
