"""Immutable univariate polynomials with arbitrary-precision integer coefficients."""

from __future__ import annotations

from itertools import zip_longest

from .errors import ParseError


class IntPoly:
    """A polynomial ``c0 + c1*q + c2*q^2 + ...`` over the integers.

    Coefficients are stored lowest degree first with trailing zeros removed,
    so two equal polynomials always have equal ``coeffs``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPoly:
        return cls([0] * k + [c])

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls([c])

    # -- basic queries ---------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def padded(self, n: int) -> tuple:
        """Coefficient vector ``(a_0, ..., a_n)``, zero padded."""
        if n < self.degree:
            raise ValueError(f"degree bound {n} below degree {self.degree}")
        return self.coeffs + (0,) * (n + 1 - len(self.coeffs))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return IntPoly(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-a for a in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return IntPoly(a - b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(a * other for a in self.coeffs)
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> IntPoly:
        """Multiply by ``q^k`` (k >= 0)."""
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def reversed(self, n: int) -> IntPoly:
        """``q^n * p(1/q)``; requires ``n >= degree``."""
        return IntPoly(tuple(reversed(self.padded(n))))

    def derivative(self) -> IntPoly:
        return IntPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def leq(self, other: IntPoly) -> bool:
        """Coefficientwise comparison ``self <= other``."""
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self[k] <= other[k] for k in range(n))

    def nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    # -- identity ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == IntPoly((other,)).coeffs
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        return self.render()

    def render(self, var: str = "q") -> str:
        """Text like ``1+q^2`` or ``3t-t^3``."""
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if abs(c) == 1 else f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def to_csv(self) -> str:
        """The ``c0,c1,...`` wire format (``0`` for the zero polynomial)."""
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    @classmethod
    def from_csv(cls, text: str) -> IntPoly:
        text = text.strip()
        if not text:
            raise ParseError("empty coefficient list")
        try:
            return cls(int(tok) for tok in text.split(","))
        except ValueError as exc:
            raise ParseError(f"bad coefficient list {text!r}") from exc


ZERO = IntPoly()
ONE = IntPoly((1,))
Q = IntPoly((0, 1))
Q_MINUS_1 = IntPoly((-1, 1))
