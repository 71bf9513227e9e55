"""Exact scalars: rationals, quadratic extensions Q(sqrt(delta)), and Q(c)."""

from __future__ import annotations

from enum import IntEnum
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import sympy
from sympy import QQ


class Parity(IntEnum):
    EVEN = 0
    ODD = 1

    def __add__(self, other):
        return Parity((int(self) + int(other)) % 2)

    __radd__ = __add__

    def __str__(self):
        return "even" if self == Parity.EVEN else "odd"


def is_scalar_zero(x) -> bool:
    return x == 0


def squarefree_part(n: int) -> tuple[int, int]:
    """Write n = k**2 * m with m squarefree; return (k, m). Sign stays on m."""
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    k, m = 1, 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            k *= p
        if n % p == 0:
            n //= p
            m *= p
        p += 1
    return k, sign * m * n


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    x = Fraction(x)
    if x < 0:
        return None
    a, b = x.numerator, x.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


class QuadraticNumber:
    """An element a + b*sqrt(delta) of Q(sqrt(delta)), delta a squarefree integer != 0, 1."""

    __slots__ = ("a", "b", "delta")

    def __init__(self, a, b, delta: int):
        if delta in (0, 1) or squarefree_part(delta)[0] != 1:
            raise ValueError(f"delta must be squarefree and not 0 or 1, got {delta}")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.delta = delta

    @classmethod
    def sqrt(cls, x) -> "Fraction | QuadraticNumber":
        """sqrt(x) for rational x, in Q when possible, else in Q(sqrt(squarefree(x)))."""
        x = Fraction(x)
        r = rational_sqrt(x) if x >= 0 else None
        if r is not None:
            return r
        k_num, m_num = squarefree_part(x.numerator * x.denominator)
        # sqrt(p/q) = sqrt(p*q)/q
        return cls(0, Fraction(k_num, x.denominator), m_num)

    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.delta != self.delta:
                raise ValueError("mixing different quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(other, 0, self.delta)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.delta)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.delta)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a - o.a, self.b - o.b, self.delta)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(
            self.a * o.a + self.delta * self.b * o.b, self.a * o.b + self.b * o.a, self.delta
        )

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadraticNumber(1, 0, self.delta)
        for _ in range(k):
            out = out * self
        return out

    def norm(self) -> Fraction:
        return self.a * self.a - self.delta * self.b * self.b

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.delta)

    def inverse(self) -> "QuadraticNumber":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(%d))" % self.delta)
        c = self.conjugate()
        return QuadraticNumber(c.a / n, c.b / n, self.delta)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return (self.a, self.b, self.delta) == (other.a, other.b, other.delta) or (
                self.b == 0 and other.b == 0 and self.a == other.a
            )
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.delta))

    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self):
        return f"QuadraticNumber({self.a}, {self.b}, {self.delta})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = f"sqrt({self.delta})"
        b = self.b
        if b == 1:
            tail = root
        elif b == -1:
            tail = "-" + root
        else:
            tail = f"{b}*{root}"
        if self.a == 0:
            return tail
        sign = "" if tail.startswith("-") else "+"
        return f"{self.a}{sign}{tail}"


@lru_cache(maxsize=None)
def symbolic_field():
    """The rational function field Q(c) and its generator c."""
    c = sympy.Symbol("c")
    field = QQ.frac_field(c)
    return field, field.gens[0]


def is_symbolic(x) -> bool:
    return type(x).__name__ == "FracElement"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_scalar(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    if is_symbolic(x):
        return str(x.as_expr()).replace(" ", "")
    return str(x)


def field_name(values) -> str:
    """Name of the smallest supported field containing all values."""
    for v in values:
        if isinstance(v, QuadraticNumber) and not v.is_rational():
            return f"Q(sqrt({v.delta}))"
    return "Q"
