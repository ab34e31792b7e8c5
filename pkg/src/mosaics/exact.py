"""Exact scalars: rationals and elements of real quadratic fields.

Rationals are ``gmpy2.mpq``; they hash and compare like :class:`fractions.Fraction`.
Quadratic numbers ``a + b*sqrt(r)`` with rational ``a, b`` cover the coordinates
of the hexagonal family (r = 3), the octagonal tilings (r = 2) and icosahedral
solids (r = 5).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC

import gmpy2
from gmpy2 import mpq

__all__ = [
    "mpq",
    "QuadraticNumber",
    "rational",
    "quad",
    "sqrt_of",
    "is_exact",
    "sign",
    "floor_exact",
    "to_float",
    "format_number",
    "parse_number",
    "format_rational",
]

_MPQ = type(mpq(0))
_MPZ = type(gmpy2.mpz(0))
_ZERO = mpq(0)


def rational(x) -> mpq:
    """Convert ints, Fractions, mpq and 'p/q' or decimal strings to mpq."""
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, (int, _MPZ)):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, _RationalABC):
        return mpq(int(x.numerator), int(x.denominator))
    if isinstance(x, float):
        return mpq(Fraction(x))
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


class QuadraticNumber:
    """a + b*sqrt(r) with rational a, b and a square-free integer r > 1.

    Instances always have b != 0; arithmetic that cancels the irrational part
    returns a plain mpq, so equal values always have equal types and hashes.
    """

    __slots__ = ("a", "b", "r")

    def __init__(self, a, b, r: int):
        self.a = rational(a)
        self.b = rational(b)
        self.r = int(r)
        if self.b == 0:
            raise ValueError("use quad() so that rational values normalize to mpq")

    # -- helpers ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.r != self.r:
                raise ValueError(f"mixing sqrt({self.r}) and sqrt({other.r})")
            return other.a, other.b
        if isinstance(other, _MPQ):
            return other, _ZERO
        if isinstance(other, (int, _MPZ, Fraction)):
            return rational(other), _ZERO
        return None

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return quad(self.a + c[0], self.b + c[1], self.r)

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return quad(self.a - c[0], self.b - c[1], self.r)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return quad(c[0] - self.a, c[1] - self.b, self.r)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        a, b = c
        return quad(self.a * a + self.b * b * self.r, self.a * b + self.b * a, self.r)

    __rmul__ = __mul__

    def _inverse(self):
        norm = self.a * self.a - self.b * self.b * self.r
        return quad(self.a / norm, -self.b / norm, self.r)

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        if isinstance(other, QuadraticNumber):
            return self * other._inverse()
        return quad(self.a / c[0], self.b / c[0], self.r)

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return self._inverse() * c[0]

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.r)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- ordering --------------------------------------------------------
    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sa == 0:
            return sb
        # opposite signs: compare a^2 with r b^2
        d = self.a * self.a - self.b * self.b * self.r
        return sa if d > 0 else sb

    def _cmp(self, other):
        c = self._coerce(other)
        if c is None:
            return None
        diff = quad(self.a - c[0], self.b - c[1], self.r)
        return sign(diff)

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return self.r == other.r and self.a == other.a and self.b == other.b
        return False

    def __ne__(self, other):
        return not self.__eq__(other)

    def __lt__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s < 0

    def __le__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s <= 0

    def __gt__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s > 0

    def __ge__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s >= 0

    def __hash__(self):
        return hash((self.a, self.b, self.r))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.r)

    def __repr__(self):
        return f"QuadraticNumber({self.a}, {self.b}, {self.r})"

    def __str__(self):
        return format_number(self)


def quad(a, b, r: int):
    """Build a + b*sqrt(r), returning an mpq when b == 0."""
    if type(a) is _MPQ and type(b) is _MPQ:
        # fast path for internal arithmetic: skip conversions
        if b == 0:
            return a
        x = object.__new__(QuadraticNumber)
        x.a, x.b, x.r = a, b, r
        return x
    b = rational(b)
    if b == 0:
        return rational(a)
    return QuadraticNumber(a, b, r)


def sqrt_of(r: int):
    """sqrt(r) as an exact number (r square-free, or a perfect square)."""
    s = math.isqrt(r)
    if s * s == r:
        return mpq(s)
    return QuadraticNumber(0, 1, r)


def is_exact(x) -> bool:
    return isinstance(x, (_MPQ, QuadraticNumber, int, _MPZ, Fraction))


def sign(x, tol: float = 0.0) -> int:
    """Sign of x; floats use the given absolute tolerance."""
    if isinstance(x, QuadraticNumber):
        return x.sign()
    if isinstance(x, float):
        if x > tol:
            return 1
        if x < -tol:
            return -1
        return 0
    return (x > 0) - (x < 0)


def floor_exact(x) -> int:
    """Exact floor for rationals and quadratic numbers."""
    if isinstance(x, _MPQ):
        return int(x.numerator // x.denominator)
    if isinstance(x, (int, _MPZ)):
        return int(x)
    if isinstance(x, QuadraticNumber):
        f = math.floor(float(x))
        while x < f:
            f -= 1
        while x >= f + 1:
            f += 1
        return f
    return math.floor(x)


def to_float(x) -> float:
    return float(x)


def format_rational(x) -> str:
    """Always 'p/q', including integers ('3/1')."""
    x = rational(x)
    return f"{x.numerator}/{x.denominator}"


def format_number(x) -> str:
    """'p/q' for rationals, 'p/q+r/s*sqrt(k)' for quadratic numbers."""
    if isinstance(x, QuadraticNumber):
        return f"{format_rational(x.a)}+{format_rational(x.b)}*sqrt({x.r})"
    return format_rational(x)


_QUAD_RE = re.compile(
    r"^\s*([+-]?\d+(?:/\d+)?)\s*\+\s*([+-]?\d+(?:/\d+)?)\s*\*\s*sqrt\((\d+)\)\s*$"
)


def parse_number(s: str):
    """Inverse of :func:`format_number`; also accepts plain integers and decimals."""
    m = _QUAD_RE.match(s)
    if m:
        return quad(mpq(m.group(1)), mpq(m.group(2)), int(m.group(3)))
    return mpq(s.strip())
