"""Point-symmetry candidates  xi(x) d/dx + (M(x) u + g(x)) . d/du  for u = (y, z)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .expoly import ExpPoly
from .linalg import Mat2, Vec2
from .scalar import Scalar

_Z = ExpPoly.zero()


def _zero_mat() -> Mat2:
    return Mat2(_Z, _Z, _Z, _Z)


def _zero_vec() -> Vec2:
    return Vec2(_Z, _Z)


def emat(m: Mat2) -> Mat2:
    """Lift a Scalar matrix to a constant ExpPoly matrix."""
    return m.map(lambda v: v if isinstance(v, ExpPoly) else ExpPoly.const(v))


@dataclass(frozen=True)
class VectorField:
    """``g`` is the inhomogeneous part; it is zero except after pulling a field
    back through a particular-solution shift."""

    xi: ExpPoly = field(default_factory=ExpPoly.zero)
    M: Mat2 = field(default_factory=_zero_mat)
    g: Vec2 = field(default_factory=_zero_vec)
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "M", emat(self.M))
        object.__setattr__(self, "g", self.g.map(lambda v: v if isinstance(v, ExpPoly) else ExpPoly.const(v)))

    @classmethod
    def d_x(cls) -> VectorField:
        return cls(xi=ExpPoly.const(1), name="d_x")

    @classmethod
    def scaling(cls) -> VectorField:
        return cls(M=Mat2.identity(), name="y*d_y + z*d_z")

    def is_zero(self) -> bool:
        return self.xi.is_zero() and self.M.is_zero() and self.g.is_zero()

    @property
    def is_linear(self) -> bool:
        return self.g.is_zero()

    def named(self, name: str) -> VectorField:
        return VectorField(self.xi, self.M, self.g, name)

    def __add__(self, other: VectorField) -> VectorField:
        return VectorField(self.xi + other.xi, self.M + other.M, self.g + other.g)

    def __sub__(self, other: VectorField) -> VectorField:
        return VectorField(self.xi - other.xi, self.M - other.M, self.g - other.g)

    def __mul__(self, k: object) -> VectorField:
        k = Scalar.coerce(k)
        return VectorField(self.xi * k, self.M * k, self.g * k, self.name)

    __rmul__ = __mul__

    def bracket(self, other: VectorField) -> VectorField:
        """Lie bracket [self, other]."""
        xi, chi = self.xi, other.xi
        M, N = self.M, other.M
        g, k = self.g, other.g
        d = lambda p: p.derive()  # noqa: E731
        new_xi = xi * d(chi) - chi * d(xi)
        new_M = N.map(d) * xi - M.map(d) * chi + N * M - M * N
        new_g = k.map(d) * xi - g.map(d) * chi + N * g - M * k
        return VectorField(new_xi, new_M, new_g)

    def coefficient_vector(self) -> dict[tuple[str, tuple], Scalar]:
        """Flat exact coordinates, for linear-independence tests."""
        out: dict[tuple[str, tuple], Scalar] = {}
        comps = {"xi": self.xi, "M11": self.M.a11, "M12": self.M.a12, "M21": self.M.a21,
                 "M22": self.M.a22, "g1": self.g.v1, "g2": self.g.v2}
        for label, p in comps.items():
            for key, c in p.as_dict().items():
                out[(label, key)] = c
        return out

    def to_json(self) -> dict[str, object]:
        out: dict[str, object] = {"xi": self.xi.to_json(), "M": self.M.to_json()}
        if not self.g.is_zero():
            out["g"] = self.g.to_json()
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, data: dict) -> VectorField:
        M = data["M"]
        g = data.get("g")
        return cls(
            xi=ExpPoly.from_json(data["xi"]),
            M=Mat2(*(ExpPoly.from_json(v) for row in M for v in row)),
            g=Vec2(*(ExpPoly.from_json(v) for v in g)) if g else _zero_vec(),
            name=data.get("name", ""),
        )

    def __str__(self) -> str:
        """ASCII rendering, e.g. ``(e^(-2*x))*z*d_y``."""
        parts = []
        if not self.xi.is_zero():
            parts.append(f"({self.xi})*d_x")
        for target, (cy, cz), cg in (("d_y", (self.M.a11, self.M.a12), self.g.v1),
                                     ("d_z", (self.M.a21, self.M.a22), self.g.v2)):
            bits = []
            if not cy.is_zero():
                bits.append(f"({cy})*y")
            if not cz.is_zero():
                bits.append(f"({cz})*z")
            if not cg.is_zero():
                bits.append(f"({cg})")
            if bits:
                inner = " + ".join(bits)
                parts.append(f"({inner})*{target}" if len(bits) > 1 else f"{inner}*{target}")
        return " + ".join(parts) if parts else "0"
