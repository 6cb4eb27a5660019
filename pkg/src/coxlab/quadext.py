"""Exact arithmetic in a real quadratic field Q(sqrt(d))."""

from __future__ import annotations

from fractions import Fraction

SUPPORTED_RADICANDS = (1, 2, 3, 5)


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    if isinstance(x, (int, Fraction)):
        return x
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class QuadExt:
    """The number ``a + b*sqrt(d)`` with rational ``a``, ``b``.

    ``d`` is fixed per Coxeter system. Mixing two different radicands is an
    error. Integral components are kept as ``int`` to keep the common case
    fast.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 1):
        if d not in SUPPORTED_RADICANDS:
            raise ValueError(f"unsupported radicand {d}")
        a, b = _norm(a), _norm(b)
        if d == 1 and b != 0:
            raise ValueError("radicand 1 requires b = 0")
        self.a = a
        self.b = b
        self.d = d

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d and other.b != 0 and self.b != 0:
                raise ValueError(f"mixed radicands {self.d} and {other.d}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.d)
        return None

    def _d(self, other):
        if self.d == other.d:
            return self.d
        # one side is rational (b == 0); use the irrational one's radicand
        return self.d if self.b else other.d

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self._d(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self._d(o))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._d(o)
        if d == 1:
            return QuadExt(self.a * o.a, 0, 1)
        return QuadExt(self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def conjugate(self) -> QuadExt:
        return QuadExt(self.a, -self.b, self.d)

    def norm(self):
        """Field norm ``a^2 - d b^2`` (a rational)."""
        return _norm(Fraction(self.a) ** 2 - self.d * Fraction(self.b) ** 2)

    def inverse(self) -> QuadExt:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadExt division by zero")
        c = self.conjugate()
        return QuadExt(Fraction(c.a) / n, Fraction(c.b) / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return QuadExt(other, 0, self.d) * self.inverse()

    def sign(self) -> int:
        """Exact sign of the real number ``a + b*sqrt(d)``."""
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with d b^2
        diff = Fraction(self.a) ** 2 - self.d * Fraction(self.b) ** 2
        return sa * _sign(diff)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, QuadExt) else other
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __repr__(self):
        if self.b == 0:
            return f"QuadExt({self.a})"
        return f"QuadExt({self.a} + {self.b}*sqrt({self.d}))"
