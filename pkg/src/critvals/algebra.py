"""Field-generic dense polynomials and square matrices.

Everything here works over any field whose elements support ``+ - * /`` and
comparison with ``0``: :class:`~critvals.exact.ExactComplex` for exact work
and Python ``complex`` for floating-point work.  Plain ``int`` and
``Fraction`` coefficients are promoted to ``ExactComplex`` on construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DegreeTooSmall, DegreeZero, NotMonic, ZeroPolynomial
from .exact import ExactComplex

__all__ = [
    "Poly",
    "SquareMatrix",
    "companion",
    "monic_derivative",
    "resultant",
    "discriminant",
    "determinant",
    "matpoly_eval",
    "charpoly",
    "cvd",
    "disc_variety_member",
    "monic_from_coeffs",
    "poly_gcd",
    "squarefree_decomposition",
]


def _field(x):
    if isinstance(x, bool):
        raise TypeError("bool is not a field element")
    if isinstance(x, (int, Fraction)):
        return ExactComplex(x)
    if isinstance(x, (float, np.floating)):
        return complex(x)
    if isinstance(x, np.complexfloating):
        return complex(x)
    return x


def _unify(xs: list) -> list:
    """Promote everything to ``complex`` as soon as one element is inexact."""
    if any(isinstance(x, complex) for x in xs):
        return [complex(x) for x in xs]
    return xs


def _is_exact(x) -> bool:
    return isinstance(x, ExactComplex)


@dataclass(frozen=True)
class Poly:
    """Dense univariate polynomial, coefficients in ascending degree."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable = ()):
        cs = _unify([_field(c) for c in coeffs])
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # structure ------------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(c) for c in self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    # arithmetic -----------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self), len(other))
        return Poly(self[k] + other[k] for k in range(n))

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self), len(other))
        return Poly(self[k] - other[k] for k in range(n))

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly(c * _field(other) for c in self.coeffs)
        if self.is_zero or other.is_zero:
            return Poly()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        result = Poly([1])
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, x):
        """Horner evaluation at a scalar, numpy array or square matrix."""
        if isinstance(x, SquareMatrix):
            return matpoly_eval(self, x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(c * k for k, c in enumerate(self.coeffs) if k > 0)

    def monic(self) -> "Poly":
        lc = self.lc
        return Poly(c / lc for c in self.coeffs)

    def __divmod__(self, other: "Poly") -> tuple:
        """Quotient and remainder of long division by a nonzero ``other``."""
        if other.is_zero:
            raise ZeroPolynomial("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        quo = [0] * max(0, len(rem) - dq)
        lc = other.lc
        for k in range(len(rem) - 1 - dq, -1, -1):
            q = rem[k + dq] / lc
            quo[k] = q
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - q * b
        return Poly(quo), Poly(rem[:dq])

    # conversions ------------------------------------------------------------
    def to_complex(self) -> "Poly":
        return Poly(complex(c) for c in self.coeffs)

    def to_numpy(self) -> np.ndarray:
        """Complex coefficient array, ascending degree."""
        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    @classmethod
    def from_roots(cls, roots: Sequence, lc=1) -> "Poly":
        p = cls([lc])
        for r in roots:
            p = p * cls([-_field(r), 1])
        return p

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def to_json(self) -> list:
        return [_scalar_json(c) for c in self.coeffs]


def _scalar_json(c):
    if _is_exact(c):
        return c.to_json()
    c = complex(c)
    return [c.real, c.imag]


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm; meaningful for exact coefficients."""
    while not q.is_zero:
        p, q = q, divmod(p, q)[1]
    if p.is_zero:
        raise ZeroPolynomial("gcd of two zero polynomials")
    return p.monic()


def squarefree_decomposition(p: Poly) -> list:
    """Yun's algorithm: ``[(s_1, 1), (s_2, 2), ...]`` with ``p ~ prod s_i^i``.

    Only nonconstant factors are returned; each ``s_i`` is monic and
    squarefree.  Exact coefficients are required for a meaningful result.
    """
    if p.degree < 1:
        return []
    p = p.monic()
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = divmod(p, a)[0]
    c = divmod(dp, a)[0]
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree >= 1:
        a = poly_gcd(b, d)
        if a.degree >= 1:
            out.append((a, i))
        b = divmod(b, a)[0]
        c = divmod(d, a)[0]
        d = c - b.derivative()
        i += 1
    return out


def monic_from_coeffs(a: Sequence) -> Poly:
    """``y^m + a[m-1] y^(m-1) + ... + a[0]`` from ``a = (a0, ..., a_{m-1})``."""
    return Poly(list(a) + [1])


@dataclass(frozen=True)
class SquareMatrix:
    """Dense square matrix, row-major."""

    rows: tuple

    def __init__(self, rows):
        if isinstance(rows, np.ndarray):
            rows = rows.tolist()
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise ValueError("SquareMatrix needs n >= 1 rows of length n")
        flat = _unify([_field(x) for r in rows for x in r])
        rs = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        object.__setattr__(self, "rows", rs)

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int, one=None) -> "SquareMatrix":
        one = ExactComplex(1) if one is None else one
        zero = one - one
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other: "SquareMatrix") -> "SquareMatrix":
        return SquareMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "SquareMatrix") -> "SquareMatrix":
        return SquareMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> "SquareMatrix":
        return SquareMatrix([[c * a for a in r] for r in self.rows])

    def add_scalar(self, c) -> "SquareMatrix":
        """``self + c*I``."""
        return SquareMatrix([[a + c if i == j else a for j, a in enumerate(r)]
                             for i, r in enumerate(self.rows)])

    def __matmul__(self, other: "SquareMatrix") -> "SquareMatrix":
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for col in cols:
                acc = 0
                for a, b in zip(r, col):
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return SquareMatrix(out)

    def trace(self):
        acc = 0
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(x) for r in self.rows for x in r)

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(x) for x in r] for r in self.rows], dtype=complex)

    def to_json(self) -> list:
        return [[_scalar_json(x) for x in r] for r in self.rows]


def _one_like(x):
    return ExactComplex(1) if _is_exact(x) else 1.0 + 0j


def companion(p: Poly) -> SquareMatrix:
    """Companion matrix: ones on the subdiagonal, ``-c_0 .. -c_{m-1}`` in the last column."""
    if p.is_zero or p.degree < 1:
        raise DegreeZero("companion matrix needs degree >= 1")
    if not p.is_monic:
        raise NotMonic(f"leading coefficient is {p.lc!r}, expected 1")
    m = p.degree
    one = _one_like(p.lc)
    zero = one - one
    rows = [[zero] * m for _ in range(m)]
    for i in range(1, m):
        rows[i][i - 1] = one
    for i in range(m):
        rows[i][m - 1] = -p[i] + zero
    return SquareMatrix(rows)


def monic_derivative(p: Poly) -> Poly:
    """``p' / m`` for a monic ``p`` of degree ``m >= 2``."""
    if not p.is_monic:
        raise NotMonic(f"leading coefficient is {p.lc!r}, expected 1")
    m = p.degree
    if m < 2:
        raise DegreeTooSmall(f"degree {m} < 2")
    return Poly(c * k / m for k, c in enumerate(p.coeffs) if k > 0)


def determinant(rows: Sequence[Sequence]):
    """Gaussian elimination with partial pivoting on ``|entry|``.

    Exact for ``ExactComplex`` entries; for floats the pivoting keeps the
    usual backward stability.
    """
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return ExactComplex(1)
    det = _one_like(a[0][0])
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(complex(a[r][col])))
        if a[piv][col] == 0:
            return det - det
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pv = a[col][col]
        det = det * pv
        for r in range(col + 1, n):
            f = a[r][col] / pv
            if f == 0:
                continue
            row_r, row_c = a[r], a[col]
            for c in range(col + 1, n):
                row_r[c] = row_r[c] - f * row_c[c]
    return det


def _sylvester(p: Poly, q: Poly) -> list:
    n, k = p.degree, q.degree
    size = n + k
    zero = p.lc - p.lc
    pd = list(reversed(p.coeffs))
    qd = list(reversed(q.coeffs))
    rows = []
    for i in range(k):
        rows.append([zero] * i + pd + [zero] * (size - n - 1 - i))
    for i in range(n):
        rows.append([zero] * i + qd + [zero] * (size - k - 1 - i))
    return rows


def resultant(p: Poly, q: Poly):
    """Determinant of the Sylvester matrix of ``p`` and ``q``."""
    if p.is_zero or q.is_zero:
        raise ZeroPolynomial("resultant of a zero polynomial")
    n, k = p.degree, q.degree
    if k == 0:
        return q.lc ** n if n else _one_like(q.lc)
    if n == 0:
        return p.lc ** k
    return determinant(_sylvester(p, q))


def discriminant(p: Poly):
    """``(-1)^(n(n-1)/2) Res(p, p') / lc(p)``; exactly 1 when ``deg p <= 1``."""
    if p.is_zero:
        raise ZeroPolynomial("discriminant of the zero polynomial")
    n = p.degree
    if n <= 1:
        return _one_like(p.lc)
    r = resultant(p, p.derivative()) / p.lc
    return -r if (n * (n - 1) // 2) % 2 else r


def matpoly_eval(p: Poly, c: SquareMatrix) -> SquareMatrix:
    one = _one_like(c[0, 0])
    acc = SquareMatrix.identity(c.n, one).scale(one - one)
    for coef in reversed(p.coeffs):
        acc = (acc @ c).add_scalar(coef)
    return acc


def charpoly(a: SquareMatrix) -> Poly:
    """Monic ``det(yI - A)`` by the Faddeev-LeVerrier recurrence."""
    n = a.n
    one = _one_like(a[0, 0])
    coeffs = [None] * (n + 1)
    coeffs[n] = one
    m = SquareMatrix.identity(n, one)
    am = a @ m
    for k in range(1, n + 1):
        c = -(am.trace() / k)
        coeffs[n - k] = c
        if k < n:
            m = am.add_scalar(c)
            am = a @ m
    return Poly(coeffs)


def _coeff_vector(a: Sequence) -> list:
    a = [_field(x) for x in a]
    if len(a) < 2:
        raise DegreeTooSmall(f"need m >= 2 coefficients, got {len(a)}")
    return a


def cvd(a: Sequence):
    """Critical-values discriminant of ``y^m + a_{m-1} y^{m-1} + ... + a_0``.

    The critical points are encoded as the spectrum of the companion matrix
    of the normalized derivative; the polynomial applied to that matrix has
    the critical values as eigenvalues, and the discriminant of its
    characteristic polynomial vanishes iff two critical values coincide.
    """
    p = monic_from_coeffs(_coeff_vector(a))
    u = cvd_value_poly(p)
    return discriminant(u)


def cvd_value_poly(p: Poly) -> Poly:
    """Monic polynomial whose roots are the critical values of ``p``."""
    c = companion(monic_derivative(p))
    return charpoly(matpoly_eval(p, c))


def disc_variety_member(a: Sequence) -> bool:
    """Whether the normalized derivative has a repeated root."""
    p = monic_from_coeffs(_coeff_vector(a))
    return discriminant(monic_derivative(p)) == 0
