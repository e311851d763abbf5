"""Gaussian-rational complex numbers.

``ExactComplex`` is the exact coefficient field used wherever zero-testing
has to be meaningful (the polynomial critical-values discriminant).  It
interoperates with ``int`` and ``fractions.Fraction`` operands exactly; like
``Fraction``, an operation with a ``float`` or ``complex`` operand degrades
to a floating ``complex`` result.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["ExactComplex", "as_exact", "parse_exact_token"]


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class ExactComplex:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _rat(re))
        object.__setattr__(self, "im", _rat(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactComplex is immutable")

    @classmethod
    def _coerce(cls, other) -> "ExactComplex | None":
        if isinstance(other, ExactComplex):
            return other
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, bool):
            return cls(other, 0)
        return None

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) + other
            return NotImplemented
        return ExactComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) - other
            return NotImplemented
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return other - complex(self)
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) * other
            return NotImplemented
        return ExactComplex(self.re * o.re - self.im * o.im,
                            self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) / other
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("ExactComplex division by zero")
        return ExactComplex((self.re * o.re + self.im * o.im) / d,
                            (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return other / complex(self)
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ExactComplex(1) / (self ** -n)
        result = ExactComplex(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # comparisons / conversions ------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self) -> float:
        return abs(complex(self))

    def __repr__(self):
        return f"ExactComplex({self.re}, {self.im})"

    def __str__(self):
        return self.to_token()

    # serialization -------------------------------------------------------
    def to_token(self) -> str:
        """``"p/q"`` when real, otherwise ``"p/q+r/si"``."""
        re_s = f"{self.re.numerator}/{self.re.denominator}"
        if self.im == 0:
            return re_s
        sign = "+" if self.im >= 0 else "-"
        im = abs(self.im)
        return f"{re_s}{sign}{im.numerator}/{im.denominator}i"

    def to_json(self) -> dict:
        return {"re": f"{self.re.numerator}/{self.re.denominator}",
                "im": f"{self.im.numerator}/{self.im.denominator}"}

    @classmethod
    def from_json(cls, obj: dict) -> "ExactComplex":
        return cls(Fraction(obj["re"]), Fraction(obj["im"]))


def as_exact(x) -> ExactComplex:
    if isinstance(x, ExactComplex):
        return x
    if isinstance(x, str):
        return parse_exact_token(x)
    c = ExactComplex._coerce(x)
    if c is None:
        raise TypeError(f"cannot convert {x!r} to ExactComplex without rounding")
    return c


_RAT = r"[+-]?\d+(?:/\d+)?"
_TOKEN = re.compile(
    rf"^(?:(?P<re>{_RAT})(?:(?P<im>[+-]\d+(?:/\d+)?)i)?|(?P<pure>{_RAT})i)$"
)


def parse_exact_token(token: str) -> ExactComplex:
    """Parse ``"p"``, ``"p/q"``, ``"p/q+r/si"`` or ``"r/si"``.

    Decimal points are rejected: exact inputs must be written as rationals.
    """
    t = token.strip().replace(" ", "")
    m = _TOKEN.match(t)
    if not m:
        raise ValueError(f"not an exact rational-complex token: {token!r}")
    if m.group("pure") is not None:
        return ExactComplex(0, Fraction(m.group("pure")))
    im = m.group("im")
    return ExactComplex(Fraction(m.group("re")), Fraction(im) if im else 0)
