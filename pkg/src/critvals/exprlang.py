"""Closed-form entire functions ``sum_i c_i * z^k_i * exp(Q_i(z))``.

Coefficients are exact: Gaussian rationals, optionally multiplied by powers
of ``pi`` which stays symbolic until numeric evaluation.  Exponent
polynomials ``Q`` carry no constant term; a constant inside ``exp`` is
folded into the coefficient (numerically, since ``exp`` of a constant is
not exact in general).

Text grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor | factor)*        # juxtaposition multiplies
    factor := ('+'|'-') factor | power
    power  := atom ['^' INTEGER]
    atom   := NUMBER | 'i' | 'pi' | 'z' | 'exp' '(' expr ')'
            | '(' expr ')' | '(' expr ',' expr ')'      # (re, im) literal

Division is only allowed by a nonzero constant free of ``pi``.
"""

from __future__ import annotations

import cmath
import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable

import numpy as np

from .algebra import Poly
from .errors import ExprSyntaxError, NonPolynomialExponent, OverflowToInfinity
from .exact import ExactComplex

__all__ = [
    "Coef",
    "Term",
    "EntireExpr",
    "OrderType",
    "parse_expr",
    "differentiate",
    "evaluate",
    "order_and_type",
    "in_class",
]

_LOG_MAX = math.log(np.finfo(float).max)


# ---------------------------------------------------------------------------
# Coefficient ring Q(i)[pi]
# ---------------------------------------------------------------------------

class Coef:
    """Polynomial in ``pi`` with Gaussian-rational coefficients."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable = ()):
        ps = [p if isinstance(p, ExactComplex) else ExactComplex(p) for p in parts]
        while ps and ps[-1] == 0:
            ps.pop()
        object.__setattr__(self, "parts", tuple(ps))

    def __setattr__(self, name, value):
        raise AttributeError("Coef is immutable")

    @classmethod
    def of(cls, x) -> "Coef":
        if isinstance(x, Coef):
            return x
        if isinstance(x, (float, complex)):
            x = complex(x)
            return cls([ExactComplex(Fraction(x.real), Fraction(x.imag))])
        return cls([x])

    @classmethod
    def pi(cls) -> "Coef":
        return cls([0, 1])

    @property
    def is_zero(self) -> bool:
        return not self.parts

    @property
    def is_rational(self) -> bool:
        """Free of ``pi``."""
        return len(self.parts) <= 1

    @property
    def exact(self) -> ExactComplex:
        if not self.is_rational:
            raise ValueError("coefficient involves pi")
        return self.parts[0] if self.parts else ExactComplex(0)

    def __add__(self, other: "Coef") -> "Coef":
        other = Coef.of(other)
        n = max(len(self.parts), len(other.parts))
        return Coef(self._at(k) + other._at(k) for k in range(n))

    __radd__ = __add__

    def __sub__(self, other: "Coef") -> "Coef":
        return self + (-Coef.of(other))

    def __rsub__(self, other) -> "Coef":
        return Coef.of(other) - self

    def __neg__(self) -> "Coef":
        return Coef(-p for p in self.parts)

    def __mul__(self, other) -> "Coef":
        other = Coef.of(other)
        if self.is_zero or other.is_zero:
            return Coef()
        out = [ExactComplex(0)] * (len(self.parts) + len(other.parts) - 1)
        for i, a in enumerate(self.parts):
            for j, b in enumerate(other.parts):
                out[i + j] = out[i + j] + a * b
        return Coef(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Coef":
        other = Coef.of(other)
        if not other.is_rational or other.is_zero:
            raise ZeroDivisionError("division only by a nonzero constant free of pi")
        d = other.exact
        return Coef(p / d for p in self.parts)

    def _at(self, k: int) -> ExactComplex:
        return self.parts[k] if k < len(self.parts) else ExactComplex(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ExactComplex)):
            other = Coef.of(other)
        if not isinstance(other, Coef):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __complex__(self):
        acc = 0j
        for p in reversed(self.parts):
            acc = acc * math.pi + complex(p)
        return acc

    def sort_key(self) -> tuple:
        return tuple((p.re, p.im) for p in self.parts)

    def __repr__(self):
        return f"Coef({_coef_str(self)})"


def _rat_str(q: Fraction) -> str:
    d = q.denominator
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    if d != 1:
        return f"{q.numerator}/{q.denominator}"
    if q.denominator == 1:
        return str(q.numerator)
    digits = 0
    den = q.denominator
    while den != 1:
        den = den // math.gcd(den, 10)
        digits += 1
    s = f"{abs(q.numerator) * 10 ** digits // q.denominator:0{digits + 1}d}"
    s = s[:-digits] + "." + s[-digits:]
    return ("-" if q < 0 else "") + s


def _exact_str(c: ExactComplex) -> str:
    if c.im == 0:
        return _rat_str(c.re)
    return f"({_rat_str(c.re)},{_rat_str(c.im)})"


def _coef_str(c: Coef) -> str:
    if c.is_zero:
        return "0"
    pieces = []
    for k, p in enumerate(c.parts):
        if p == 0:
            continue
        s = _exact_str(p)
        if k:
            pw = "pi" if k == 1 else f"pi^{k}"
            s = pw if p == 1 else ("-" + pw if p == -1 else f"{s}*{pw}")
        pieces.append(s)
    return pieces[0] if len(pieces) == 1 else "(" + " + ".join(pieces) + ")"


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=False)
class Term:
    coef: Coef
    power: int
    exponent: tuple = ()  # Q coefficients from degree 1 upward

    @property
    def exp_degree(self) -> int:
        return len(self.exponent)


def _trim(q: Iterable) -> tuple:
    qs = [Coef.of(c) for c in q]
    while qs and qs[-1].is_zero:
        qs.pop()
    return tuple(qs)


def _term_key(t: Term) -> tuple:
    if t.exponent:
        lead = complex(t.exponent[-1])
        lead_key = (lead.real, lead.imag)
    else:
        lead_key = (0.0, 0.0)
    return (t.exp_degree, lead_key, t.power, tuple(c.sort_key() for c in t.exponent))


@dataclass(frozen=True)
class OrderType:
    rho: int
    p: float


@dataclass(frozen=True)
class EntireExpr:
    """Canonical finite sum of ``c * z^k * exp(Q)`` terms."""

    terms: tuple = field(default=())

    @classmethod
    def from_terms(cls, terms: Iterable) -> "EntireExpr":
        acc: dict = {}
        for t in terms:
            if isinstance(t, Term):
                c, k, q = t.coef, t.power, t.exponent
            else:
                c, k, q = t
            key = (int(k), _trim(q))
            if key[0] < 0:
                raise ValueError("negative power of z")
            acc[key] = acc.get(key, Coef()) + Coef.of(c)
        out = [Term(c, k, q) for (k, q), c in acc.items() if not c.is_zero]
        out.sort(key=_term_key)
        return cls(tuple(out))

    @classmethod
    def constant(cls, c) -> "EntireExpr":
        return cls.from_terms([(c, 0, ())])

    @classmethod
    def variable(cls) -> "EntireExpr":
        return cls.from_terms([(1, 1, ())])

    @classmethod
    def from_poly(cls, p: Poly) -> "EntireExpr":
        return cls.from_terms((c, k, ()) for k, c in enumerate(p.coeffs))

    # algebra ------------------------------------------------------------
    def __add__(self, other) -> "EntireExpr":
        other = _lift(other)
        return EntireExpr.from_terms(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> "EntireExpr":
        return EntireExpr.from_terms(Term(-t.coef, t.power, t.exponent) for t in self.terms)

    def __sub__(self, other) -> "EntireExpr":
        return self + (-_lift(other))

    def __rsub__(self, other) -> "EntireExpr":
        return _lift(other) - self

    def __mul__(self, other) -> "EntireExpr":
        other = _lift(other)
        prods = []
        for a in self.terms:
            for b in other.terms:
                n = max(len(a.exponent), len(b.exponent))
                q = [_qat(a.exponent, j) + _qat(b.exponent, j) for j in range(n)]
                prods.append((a.coef * b.coef, a.power + b.power, q))
        return EntireExpr.from_terms(prods)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "EntireExpr":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out = EntireExpr.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def divide_by_constant(self, c) -> "EntireExpr":
        c = Coef.of(c)
        return EntireExpr.from_terms(Term(t.coef / c, t.power, t.exponent) for t in self.terms)

    # structure ------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_polynomial(self) -> bool:
        return all(not t.exponent for t in self.terms)

    @property
    def is_constant(self) -> bool:
        return all(not t.exponent and t.power == 0 for t in self.terms)

    def exponent_groups(self) -> dict:
        """Map ``Q -> {k: coef}`` so that ``f = sum_Q P_Q(z) exp(Q(z))``."""
        groups: dict = {}
        for t in self.terms:
            groups.setdefault(t.exponent, {})[t.power] = t.coef
        return groups

    def as_poly(self) -> Poly:
        """The polynomial itself; exact coefficients unless ``pi`` occurs."""
        if not self.is_polynomial:
            raise ValueError("expression is not a polynomial")
        n = max((t.power for t in self.terms), default=-1) + 1
        cs = [Coef() for _ in range(n)]
        for t in self.terms:
            cs[t.power] = t.coef
        if all(c.is_rational for c in cs):
            return Poly(c.exact for c in cs)
        return Poly(complex(c) for c in cs)

    def derivative(self) -> "EntireExpr":
        return differentiate(self)

    def __call__(self, z):
        return evaluate(self, z)

    @cached_property
    def _numeric(self) -> list:
        out = []
        for q, ps in self.exponent_groups().items():
            kmax = max(ps)
            p_desc = np.array([complex(ps.get(k, Coef())) for k in range(kmax, -1, -1)])
            q_desc = np.array([complex(c) for c in reversed(q)] + [0j])
            out.append((q_desc if q else None, p_desc))
        return out

    # printing / serialization ---------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for i, t in enumerate(self.terms):
            s = _term_str(t)
            if i == 0:
                out = s
            elif s.startswith("-"):
                out += " - " + s[1:]
            else:
                out += " + " + s
        return out

    def to_json(self) -> dict:
        def pair(c):
            v = complex(c)
            return [v.real, v.imag]
        return {"terms": [{"c": pair(t.coef), "k": t.power, "Q": [pair(q) for q in t.exponent]}
                          for t in self.terms]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj) -> "EntireExpr":
        if isinstance(obj, str):
            obj = json.loads(obj)

        def coef(pair):
            return Coef([ExactComplex(Fraction(pair[0]), Fraction(pair[1]))])
        return cls.from_terms((coef(t["c"]), int(t["k"]), [coef(q) for q in t["Q"]])
                              for t in obj["terms"])


def _qat(q: tuple, j: int) -> Coef:
    return q[j] if j < len(q) else Coef()


def _lift(x) -> EntireExpr:
    if isinstance(x, EntireExpr):
        return x
    return EntireExpr.constant(Coef.of(x))


def _poly_str(q: tuple) -> str:
    parts = []
    for j, c in enumerate(q, start=1):
        if c.is_zero:
            continue
        zp = "z" if j == 1 else f"z^{j}"
        cs = _coef_str(c)
        if c == 1:
            s = zp
        elif c == -1:
            s = "-" + zp
        else:
            s = f"{cs}*{zp}"
        parts.append(s)
    out = parts[0]
    for s in parts[1:]:
        out += (" - " + s[1:]) if s.startswith("-") else (" + " + s)
    return out


def _term_str(t: Term) -> str:
    factors = []
    if t.power:
        factors.append("z" if t.power == 1 else f"z^{t.power}")
    if t.exponent:
        factors.append(f"exp({_poly_str(t.exponent)})")
    cs = _coef_str(t.coef)
    if not factors:
        return cs
    body = "*".join(factors)
    if t.coef == 1:
        return body
    if t.coef == -1:
        return "-" + body
    return f"{cs}*{body}"


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def differentiate(f: EntireExpr) -> EntireExpr:
    """Term-wise ``d/dz [c z^k e^Q] = c k z^(k-1) e^Q + c z^k Q'(z) e^Q``."""
    out = []
    for t in f.terms:
        if t.power:
            out.append((t.coef * t.power, t.power - 1, t.exponent))
        for j, qj in enumerate(t.exponent, start=1):
            if not qj.is_zero:
                out.append((t.coef * qj * j, t.power + j - 1, t.exponent))
    return EntireExpr.from_terms(out)


def evaluate(f: EntireExpr, z, *, check_overflow: bool = True):
    """Value of ``f`` at a scalar or an array of points.

    Raises :class:`OverflowToInfinity` when ``Re Q(z)`` exceeds the double
    exponent range for any term, unless ``check_overflow`` is false, in which
    case the non-finite values are returned as computed.
    """
    scalar = np.ndim(z) == 0
    zz = np.asarray(z, dtype=complex)
    acc = np.zeros_like(zz)
    for q_desc, p_desc in f._numeric:
        pv = np.polyval(p_desc, zz)
        if q_desc is None:
            acc = acc + pv
            continue
        qv = np.polyval(q_desc, zz)
        if check_overflow and np.any(qv.real > _LOG_MAX):
            worst = float(np.max(qv.real))
            raise OverflowToInfinity(f"Re Q(z) = {worst:.6g} exceeds the exponent range")
        with np.errstate(over="ignore", invalid="ignore"):
            acc = acc + pv * np.exp(qv)
    return complex(acc) if scalar else acc


def order_and_type(f: EntireExpr) -> OrderType:
    rho = max((t.exp_degree for t in f.terms), default=0)
    if rho == 0:
        return OrderType(0, 0.0)
    p = max(abs(complex(t.exponent[-1])) for t in f.terms if t.exp_degree == rho)
    return OrderType(rho, p)


def in_class(f: EntireExpr, rho: int, p: float) -> bool:
    """Whether ``f`` has order below ``rho``, or order ``rho`` and type at most ``p``."""
    ot = order_and_type(f)
    return ot.rho < rho or (ot.rho == rho and ot.p <= p)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]+)|(?P<op>[-+*/^(),]))"
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.cur
        if t.text != text or t.kind == "end":
            raise ExprSyntaxError(f"unexpected {t.text or 'end of input'!r}", t.pos, repr(text))
        return self.take()

    def parse(self) -> EntireExpr:
        e = self.expr()
        if self.cur.kind != "end":
            raise ExprSyntaxError(f"unexpected {self.cur.text!r}", self.cur.pos, "operator or end")
        return e

    def expr(self) -> EntireExpr:
        e = self.term()
        while self.cur.text in ("+", "-") and self.cur.kind == "op":
            op = self.take().text
            rhs = self.term()
            e = e + rhs if op == "+" else e - rhs
        return e

    def _starts_atom(self) -> bool:
        t = self.cur
        return t.kind in ("num", "name") or t.text == "("

    def term(self) -> EntireExpr:
        e = self.factor()
        while True:
            t = self.cur
            if t.kind == "op" and t.text == "*":
                self.take()
                e = e * self.factor()
            elif t.kind == "op" and t.text == "/":
                self.take()
                d = self.factor()
                if not d.is_constant or d.is_zero:
                    raise ExprSyntaxError("division only by a nonzero constant", t.pos)
                c = d.terms[0].coef
                if not c.is_rational:
                    raise ExprSyntaxError("division by an expression involving pi", t.pos)
                e = e.divide_by_constant(c)
            elif self._starts_atom():
                e = e * self.factor()
            else:
                return e

    def factor(self) -> EntireExpr:
        t = self.cur
        if t.kind == "op" and t.text in ("+", "-"):
            self.take()
            inner = self.factor()
            return inner if t.text == "+" else -inner
        return self.power()

    def power(self) -> EntireExpr:
        base = self.atom()
        if self.cur.kind == "op" and self.cur.text == "^":
            self.take()
            t = self.cur
            if t.kind != "num" or not t.text.isdigit():
                raise ExprSyntaxError("exponent must be a nonnegative integer", t.pos, "integer")
            self.take()
            return base ** int(t.text)
        return base

    def atom(self) -> EntireExpr:
        t = self.cur
        if t.kind == "num":
            self.take()
            return EntireExpr.constant(Fraction(t.text))
        if t.kind == "name":
            self.take()
            name = t.text
            if name == "z":
                return EntireExpr.variable()
            if name == "i":
                return EntireExpr.constant(ExactComplex(0, 1))
            if name == "pi":
                return EntireExpr.constant(Coef.pi())
            if name == "exp":
                self.expect("(")
                arg_pos = self.cur.pos
                arg = self.expr()
                self.expect(")")
                return _exp_of(arg, arg_pos)
            raise ExprSyntaxError(f"unknown name {name!r}", t.pos, "z, i, pi or exp")
        if t.kind == "op" and t.text == "(":
            self.take()
            first = self.expr()
            if self.cur.text == ",":
                comma = self.take()
                second = self.expr()
                self.expect(")")
                if not (first.is_constant and second.is_constant):
                    raise ExprSyntaxError("complex literal needs constant parts", comma.pos)
                return first + second * EntireExpr.constant(ExactComplex(0, 1))
            self.expect(")")
            return first
        raise ExprSyntaxError(f"unexpected {t.text or 'end of input'!r}", t.pos,
                              "number, z, i, pi, exp or '('")


def _exp_of(arg: EntireExpr, pos: int) -> EntireExpr:
    if not arg.is_polynomial:
        raise NonPolynomialExponent(f"argument of exp at position {pos} is not a polynomial in z",
                                    position=pos)
    n = max((t.power for t in arg.terms), default=0)
    q = [Coef() for _ in range(n + 1)]
    for t in arg.terms:
        q[t.power] = t.coef
    c0 = q[0]
    coef = Coef.of(1)
    if not c0.is_zero:
        coef = Coef.of(cmath.exp(complex(c0)))
    return EntireExpr.from_terms([(coef, 0, q[1:])])


def parse_expr(text: str) -> EntireExpr:
    """Parse ``text`` into canonical form; see the module docstring for the grammar."""
    return _Parser(text).parse()
