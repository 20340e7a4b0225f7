"""Exact arithmetic in the golden-ratio ring Z[phi] and its fraction field.

Elements are stored as a + b*phi with integer a, b, where phi^2 = phi + 1.
The conjugate swaps phi and 1 - phi, and phi * (1 - phi) = -1, which makes
phi a unit: negative powers stay inside the ring. sqrt(5) is the element
2*phi - 1, so the Binet formulas evaluate with no floating point at all.

LaurentPoly3 adds sparse Laurent polynomials in three invertible formal
symbols with GoldenRat coefficients; it is the canonical-form carrier for
the symbolic identity prover.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping, Union

from .errors import InternalFault

__all__ = [
    "GoldenInt",
    "GoldenRat",
    "LaurentPoly3",
    "PHI",
    "ONE",
    "SQRT5",
    "INV_SQRT5",
    "HALF",
    "phi_pow",
    "binet_fib",
    "binet_lucas",
]

Scalar = Union["GoldenInt", int]


@dataclass(frozen=True)
class GoldenInt:
    """Ring element a + b*phi of Z[phi]."""

    a: int
    b: int

    def __add__(self, other: Scalar) -> GoldenInt:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GoldenInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> GoldenInt:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GoldenInt(self.a - other.a, self.b - other.b)

    def __rsub__(self, other: Scalar) -> GoldenInt:
        return -self + other

    def __neg__(self) -> GoldenInt:
        return GoldenInt(-self.a, -self.b)

    def __mul__(self, other: Scalar) -> GoldenInt:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # (a + b phi)(c + d phi) = ac + bd + (ad + bc + bd) phi, from phi^2 = phi + 1
        a, b, c, d = self.a, self.b, other.a, other.b
        bd = b * d
        return GoldenInt(a * c + bd, a * d + b * c + bd)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> GoldenInt:
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> GoldenInt:
        """Galois conjugate, sending phi to 1 - phi."""
        return GoldenInt(self.a + self.b, -self.b)

    def norm(self) -> int:
        """Field norm self * conj(self) = a^2 + a*b - b^2, a rational integer."""
        return self.a * self.a + self.a * self.b - self.b * self.b

    def inverse(self) -> GoldenInt:
        """Inverse within Z[phi]; defined only for units (norm +-1)."""
        n = self.norm()
        if n == 1:
            return self.conj()
        if n == -1:
            return -self.conj()
        raise ZeroDivisionError(f"{self!r} is not a unit of Z[phi] (norm {n})")

    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self) -> str:
        return f"GoldenInt({self.a}, {self.b})"

    def __str__(self) -> str:
        return f"{self.a}{self.b:+}φ"


def _coerce(value: Scalar) -> GoldenInt:
    if isinstance(value, GoldenInt):
        return value
    if isinstance(value, int):
        return GoldenInt(value, 0)
    return NotImplemented


ZERO = GoldenInt(0, 0)
ONE = GoldenInt(1, 0)
PHI = GoldenInt(0, 1)
SQRT5 = GoldenInt(-1, 2)  # sqrt(5) = 2*phi - 1


def phi_pow(n: int) -> GoldenInt:
    """phi^n for any integer n; equals F(n-1) + F(n)*phi.

    phi is a unit (norm -1), so negative powers remain in Z[phi] with
    phi^-1 = phi - 1.
    """
    return PHI ** n


RatScalar = Union["GoldenRat", GoldenInt, int]


@dataclass(frozen=True)
class GoldenRat:
    """Element of the fraction field Q(phi), stored as num / den.

    Normalized on construction: den > 0 and gcd(num.a, num.b, den) = 1.
    """

    num: GoldenInt
    den: int = 1

    def __post_init__(self) -> None:
        num, den = self.num, self.den
        if den == 0:
            raise ZeroDivisionError("GoldenRat with zero denominator")
        if den < 0:
            num, den = -num, -den
        g = gcd(gcd(abs(num.a), abs(num.b)), den)
        if g > 1:
            num = GoldenInt(num.a // g, num.b // g)
            den //= g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __add__(self, other: RatScalar) -> GoldenRat:
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return GoldenRat(self.num * other.den + other.num * self.den,
                         self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other: RatScalar) -> GoldenRat:
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return GoldenRat(self.num * other.den - other.num * self.den,
                         self.den * other.den)

    def __rsub__(self, other: RatScalar) -> GoldenRat:
        return -self + other

    def __neg__(self) -> GoldenRat:
        return GoldenRat(-self.num, self.den)

    def __mul__(self, other: RatScalar) -> GoldenRat:
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return GoldenRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: RatScalar) -> GoldenRat:
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: RatScalar) -> GoldenRat:
        return _coerce_rat(other) * self.inverse()

    def inverse(self) -> GoldenRat:
        # 1 / (z / d) = d * conj(z) / norm(z); normalization fixes signs
        n = self.num.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(phi)")
        return GoldenRat(self.num.conj() * self.den, n)

    def __pow__(self, n: int) -> GoldenRat:
        if n < 0:
            return self.inverse() ** (-n)
        result = GoldenRat(ONE)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return self.num == ZERO

    def is_integer(self) -> bool:
        """True when the value is a rational integer (no phi part, unit denominator)."""
        return self.num.b == 0 and self.den == 1

    def as_integer(self) -> int:
        if not self.is_integer():
            raise InternalFault(f"{self} is not a rational integer")
        return self.num.a

    def __repr__(self) -> str:
        return f"GoldenRat({self.num!r}, {self.den})"

    def __str__(self) -> str:
        return f"({self.num})/{self.den}" if self.den != 1 else str(self.num)


def _coerce_rat(value: RatScalar) -> GoldenRat:
    if isinstance(value, GoldenRat):
        return value
    if isinstance(value, GoldenInt):
        return GoldenRat(value)
    if isinstance(value, int):
        return GoldenRat(GoldenInt(value, 0))
    return NotImplemented


INV_SQRT5 = GoldenRat(SQRT5, 5)  # 1/sqrt(5) = (2*phi - 1)/5
HALF = GoldenRat(ONE, 2)

RAT_ZERO = GoldenRat(ZERO)
RAT_ONE = GoldenRat(ONE)


def binet_fib(n: int) -> int:
    """F(n) evaluated through the exact Binet formula (phi^n - (1-phi)^n)/sqrt(5).

    The quotient must land on a rational integer; any phi residue or
    leftover denominator is an InternalFault, not a rounding concern.
    """
    z = phi_pow(n)
    value = GoldenRat(z - z.conj()) * INV_SQRT5
    if not value.is_integer():
        raise InternalFault(f"Binet F({n}) left residue {value}")
    return value.as_integer()


def binet_lucas(n: int) -> int:
    """L(n) evaluated through the exact Binet formula phi^n + (1-phi)^n."""
    z = phi_pow(n)
    value = z + z.conj()
    if value.b != 0:
        raise InternalFault(f"Binet L({n}) left phi component {value}")
    return value.a


Exps = tuple[int, int, int]


class LaurentPoly3:
    """Sparse Laurent polynomial in three invertible symbols X, Y, Z.

    Coefficients are GoldenRat; exponent triples range over all of Z^3.
    Canonical form stores no zero coefficient, so two polynomials are
    equal exactly when their coefficient maps are equal.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[Exps, GoldenRat] | Iterable[tuple[Exps, GoldenRat]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        self._coeffs = {e: c for e, c in items if not c.is_zero()}

    @classmethod
    def zero(cls) -> LaurentPoly3:
        return cls()

    @classmethod
    def scalar(cls, value: RatScalar) -> LaurentPoly3:
        return cls({(0, 0, 0): _coerce_rat(value)})

    @classmethod
    def monomial(cls, exps: Exps, coeff: RatScalar = 1) -> LaurentPoly3:
        return cls({exps: _coerce_rat(coeff)})

    def coefficients(self) -> dict[Exps, GoldenRat]:
        return dict(self._coeffs)

    def coefficient(self, exps: Exps) -> GoldenRat:
        return self._coeffs.get(exps, RAT_ZERO)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __add__(self, other: LaurentPoly3) -> LaurentPoly3:
        if not isinstance(other, LaurentPoly3):
            return NotImplemented
        merged = dict(self._coeffs)
        for e, c in other._coeffs.items():
            merged[e] = merged.get(e, RAT_ZERO) + c
        return LaurentPoly3(merged)

    def __sub__(self, other: LaurentPoly3) -> LaurentPoly3:
        if not isinstance(other, LaurentPoly3):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> LaurentPoly3:
        return LaurentPoly3({e: -c for e, c in self._coeffs.items()})

    def __mul__(self, other: LaurentPoly3 | RatScalar) -> LaurentPoly3:
        if not isinstance(other, LaurentPoly3):
            scaled = _coerce_rat(other)
            if scaled is NotImplemented:
                return NotImplemented
            return LaurentPoly3({e: c * scaled for e, c in self._coeffs.items()})
        product: dict[Exps, GoldenRat] = {}
        for (i1, j1, k1), c1 in self._coeffs.items():
            for (i2, j2, k2), c2 in other._coeffs.items():
                e = (i1 + i2, j1 + j2, k1 + k2)
                product[e] = product.get(e, RAT_ZERO) + c1 * c2
        return LaurentPoly3(product)

    def __rmul__(self, other: RatScalar) -> LaurentPoly3:
        return self * other

    def __pow__(self, n: int) -> LaurentPoly3:
        if n < 0:
            raise ValueError("LaurentPoly3 power requires n >= 0")
        result = LaurentPoly3.scalar(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly3):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __repr__(self) -> str:
        if not self._coeffs:
            return "LaurentPoly3(0)"
        # lexicographic exponent order keeps output deterministic
        parts = []
        for exps in sorted(self._coeffs):
            mono = "*".join(
                f"{sym}^{e}" for sym, e in zip("XYZ", exps) if e != 0
            )
            coeff = str(self._coeffs[exps])
            parts.append(f"({coeff})*{mono}" if mono else f"({coeff})")
        return "LaurentPoly3(" + " + ".join(parts) + ")"
