"""Exact scalar fields: the rationals and single simple extensions Q[x]/(p).

Rational scalars are plain ``fractions.Fraction`` values. Elements of an
extension are :class:`FieldElement` instances, which interoperate with
``int`` and ``Fraction`` operands so that generic linear algebra code never
needs to know which field it runs over.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..errors import NotMonic, Reducible
from . import poly as P


@dataclass(frozen=True)
class FieldSpec:
    kind: str = "rationals"
    minpoly: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in ("rationals", "extension"):
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def degree(self) -> int:
        return 1 if self.kind == "rationals" else len(self.minpoly) - 1

    def zero(self):
        return Fraction(0) if self.kind == "rationals" else FieldElement(self, ())

    def one(self):
        return Fraction(1) if self.kind == "rationals" else FieldElement(self, (Fraction(1),))

    def gen(self):
        """The class of ``x``; only meaningful for extensions."""
        if self.kind == "rationals":
            raise ValueError("the rationals have no adjoined generator")
        return FieldElement(self, (Fraction(0), Fraction(1)))

    def __call__(self, value):
        if self.kind == "rationals":
            if isinstance(value, FieldElement):
                raise TypeError("cannot coerce an extension element into Q")
            return P.parse_rational(value)
        if isinstance(value, FieldElement):
            if value.field != self:
                raise TypeError("element belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, tuple(P.parse_rational(c) for c in value))
        return FieldElement(self, (P.parse_rational(value),))

    def to_json(self) -> dict:
        if self.kind == "rationals":
            return {"kind": "rationals"}
        return {"kind": "extension", "minpoly": [P.format_rational(c) for c in self.minpoly]}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        if obj.get("kind", "rationals") == "rationals":
            return QQ
        return field_extension([P.parse_rational(c) for c in obj["minpoly"]])

    def __repr__(self):
        if self.kind == "rationals":
            return "QQ"
        return f"FieldSpec(extension, minpoly={[str(c) for c in self.minpoly]})"


QQ = FieldSpec("rationals")


def field_extension(minpoly: Sequence) -> FieldSpec:
    """Build Q[x]/(minpoly); coefficients are given constant term first.

    Irreducibility is checked by the rational-root test for degree <= 3 and
    is a caller precondition above that.
    """
    coeffs = P.normalize([P.parse_rational(c) for c in minpoly])
    if len(coeffs) < 3:
        raise ValueError("an extension needs a minimal polynomial of degree >= 2")
    if coeffs[-1] != 1:
        raise NotMonic(f"minimal polynomial must be monic, leading coefficient {coeffs[-1]}")
    if len(coeffs) - 1 <= 3:
        roots = P.rational_roots(coeffs)
        if roots:
            raise Reducible(f"minimal polynomial has the rational root {roots[0]}", root=roots[0])
    return FieldSpec("extension", coeffs)


class FieldElement:
    """Element of ``Q[x]/(p)`` stored as reduced coefficients, constant first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, fld: FieldSpec, coeffs):
        c = P.normalize(coeffs)
        if len(c) > fld.degree:
            c = P.divmod_(c, fld.minpoly)[1]
        self.field = fld
        self.coeffs = c

    def _lift(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise TypeError("mixed fields")
            return other.coeffs
        if isinstance(other, (int, Fraction)):
            return P.normalize([other])
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, P.add(self.coeffs, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, P.sub(self.coeffs, o))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, P.sub(o, self.coeffs))

    def __neg__(self):
        return FieldElement(self.field, P.scale(self.coeffs, -1))

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, P.mul(self.coeffs, o))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self.coeffs:
            raise ZeroDivisionError("zero has no inverse")
        g, s, _ = P.gcdex(self.coeffs, self.field.minpoly)
        if g != (Fraction(1),):
            raise Reducible("minimal polynomial is reducible: found a zero divisor")
        return FieldElement(self.field, s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, P.scale(self.coeffs, 1 / Fraction(other)))
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * FieldElement(self.field, o).inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, o) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.coeffs == o

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else Fraction(0))
        return hash((self.field, self.coeffs))

    def to_json(self):
        return [P.format_rational(c) for c in self.coeffs]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else f"{c}*x" if i == 1 else f"{c}*x^{i}")
        return " + ".join(terms)


def is_zero(x) -> bool:
    return not x


def scalar_to_json(x):
    if isinstance(x, FieldElement):
        return x.to_json()
    return P.format_rational(x)


def scalar_from_json(obj, fld: FieldSpec = QQ):
    return fld(obj)
