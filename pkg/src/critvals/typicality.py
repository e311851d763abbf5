"""Structural classifiers, the finite-radius typicality probe and related constructions.

Surjectivity and finiteness of the critical set are decided from the normal
form of an expression, never by search.  The probe then inspects what can be
seen inside a disk: non-degeneracy of the critical points found there and
pairwise distinctness of their values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import Poly, squarefree_decomposition
from .contour import ContourConfig, find_zeros, truncated_cvd
from .errors import (
    ConstantInput,
    CritvalsError,
    DeltaTooLarge,
    DuplicatePoints,
    InputError,
)
from .exact import ExactComplex
from .exprlang import Coef, EntireExpr, differentiate, evaluate
from .roots import roots

__all__ = [
    "Surjectivity",
    "CriticalCardinality",
    "TypicalityReport",
    "ThetaReport",
    "SplitResult",
    "classify_surjectivity",
    "classify_critical_cardinality",
    "degeneracy_measure",
    "typicality_probe",
    "theta_value",
    "theta_bound",
    "hermite_interpolant",
    "split_zeros",
]

DEGENERACY_TOL = 1e-8
GAP_TOL = 1e-8


def _pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


# ---------------------------------------------------------------------------
# Structural classifiers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Surjectivity:
    """``NonSurjective`` carries ``f = b exp(Q) + a``; ``b`` is zero for constants."""

    kind: str
    b: EntireExpr | None = None
    Q: EntireExpr | None = None
    a: EntireExpr | None = None

    @property
    def surjective(self) -> bool:
        return self.kind == "Surjective"

    @property
    def omitted_value(self):
        """The value never taken, ``a`` (``None`` for a constant, which omits all others)."""
        if self.surjective or self.b is None or self.b.is_zero:
            return None
        return evaluate(self.a, 0j)

    def to_json(self) -> dict:
        if self.surjective:
            return {"kind": self.kind}
        return {"kind": self.kind, "b": str(self.b), "Q": str(self.Q), "a": str(self.a)}


@dataclass(frozen=True)
class CriticalCardinality:
    kind: str
    m: int | None = None

    @property
    def finite(self) -> bool:
        return self.kind == "Finite"

    def to_json(self) -> dict:
        return {"kind": self.kind, "m": self.m}


def _q_expr(q: tuple) -> EntireExpr:
    return EntireExpr.from_terms((c, j, ()) for j, c in enumerate(q, start=1))


def classify_surjectivity(f: EntireExpr) -> Surjectivity:
    """Non-surjective exactly when ``f = b exp(Q) + a`` with constants ``a, b``."""
    groups = f.exponent_groups()
    const = groups.get((), {})
    if f.is_constant:
        return Surjectivity("NonSurjective", EntireExpr.constant(0), EntireExpr.constant(0),
                            EntireExpr.constant(const.get(0, Coef())))
    exps = [q for q in groups if q]
    if len(exps) == 1 and set(const) <= {0}:
        q = exps[0]
        if set(groups[q]) == {0}:
            return Surjectivity("NonSurjective", EntireExpr.constant(groups[q][0]), _q_expr(q),
                                EntireExpr.constant(const.get(0, Coef())))
    return Surjectivity("Surjective")


def classify_critical_cardinality(f: EntireExpr) -> CriticalCardinality:
    """Finite exactly when ``f'`` is a single ``P exp(Q)``; then ``m = deg P``."""
    if f.is_constant:
        raise ConstantInput("a constant has no critical points to classify")
    groups = differentiate(f).exponent_groups()
    if len(groups) == 1:
        (ps,) = groups.values()
        return CriticalCardinality("Finite", max(ps))
    return CriticalCardinality("Infinite")


# ---------------------------------------------------------------------------
# Typicality probe
# ---------------------------------------------------------------------------

def degeneracy_measure(f: EntireExpr, c: complex, samples: int = 32) -> float:
    """``|f''(c)|`` divided by its Cauchy bound ``2 max_{|z-c|=1} |f(z) - f(c)|``.

    The ratio lies in ``[0, 1]`` and does not depend on the scale of ``f``.
    """
    z = c + np.exp(2j * np.pi * np.arange(samples) / samples)
    scale = 2.0 * float(np.max(np.abs(evaluate(f, z) - evaluate(f, c))))
    f2 = abs(evaluate(differentiate(differentiate(f)), c))
    if scale == 0.0:
        return 0.0
    return min(1.0, f2 / scale)


@dataclass
class CriticalPointInfo:
    point: complex
    value: complex
    second_derivative_modulus: float
    degeneracy: float
    multiplicity: int = 1

    def to_json(self) -> dict:
        return {
            "point": _pair(self.point),
            "value": _pair(self.value),
            "second_derivative_modulus": self.second_derivative_modulus,
            "degeneracy": self.degeneracy,
            "multiplicity": self.multiplicity,
        }


@dataclass
class TypicalityReport:
    surjectivity: Surjectivity
    critical_cardinality: CriticalCardinality
    probe_radius: float
    critical_points_in_disk: list
    min_value_gap: float | None
    verdict: str
    reasons: list = field(default_factory=list)
    degeneracy_tol: float = DEGENERACY_TOL
    gap_tol: float = GAP_TOL
    corroboration: dict = field(default_factory=dict)

    @property
    def is_typical_evidence(self) -> bool:
        return self.verdict == "TypicalEvidence"

    def to_json(self) -> dict:
        return {
            "surjectivity": self.surjectivity.to_json(),
            "critical_cardinality": self.critical_cardinality.to_json(),
            "probe_radius": self.probe_radius,
            "critical_points_in_disk": [c.to_json() for c in self.critical_points_in_disk],
            "min_value_gap": self.min_value_gap,
            "verdict": self.verdict,
            "reasons": list(self.reasons),
            "degeneracy_tol": self.degeneracy_tol,
            "gap_tol": self.gap_tol,
            "corroboration": self.corroboration,
        }


def _value_gap(values: Sequence[complex]) -> tuple:
    """Minimal pairwise gap and the scale it is measured against."""
    if len(values) < 2:
        return None, 1.0
    v = np.array(values, dtype=complex)
    d = np.abs(v[:, None] - v[None, :])
    np.fill_diagonal(d, np.inf)
    return float(d.min()), max(1.0, float(np.max(np.abs(v))))


def _normalized_cvd(value: complex, values: Sequence[complex]) -> float:
    """``|cvd|`` over the product of pair scales ``max(1, |v_i|, |v_j|)^2``."""
    scale = 1.0
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            scale *= max(1.0, abs(values[i]), abs(values[j])) ** 2
    return abs(value) / scale


def typicality_probe(f: EntireExpr, R: float, cfg: ContourConfig | None = None, *,
                     degeneracy_tol: float = DEGENERACY_TOL,
                     gap_tol: float = GAP_TOL) -> TypicalityReport:
    """Evidence for typicality of ``f`` gathered in the disk ``|z| < R``."""
    cfg = (cfg or ContourConfig()).with_radius(R)
    surj = classify_surjectivity(f)
    card = classify_critical_cardinality(f)
    fp = differentiate(f)
    fpp = differentiate(fp)
    pts, mult = find_zeros(fp, cfg)
    infos = []
    for p, k in zip(pts, mult):
        infos.append(CriticalPointInfo(p, evaluate(f, p), abs(evaluate(fpp, p)),
                                       0.0 if k > 1 else degeneracy_measure(f, p), k))
    values = [c.value for c in infos]
    gap, scale = _value_gap(values)
    # a repeated critical point carries a repeated critical value
    if any(c.multiplicity > 1 for c in infos):
        gap = 0.0

    reasons = []
    if not surj.surjective:
        reasons.append("non-surjective")
    if card.finite:
        reasons.append("no critical points" if card.m == 0 else "finite critical set")
    if any(c.degeneracy <= degeneracy_tol for c in infos):
        reasons.append("degenerate critical point")
    gap_ok = gap is None or gap > gap_tol * scale
    if not gap_ok:
        reasons.append("coincident critical values")
    verdict = "TypicalEvidence" if not reasons else "NotTypical"

    corr: dict = {"gap_criterion": gap_ok}
    try:
        rep = truncated_cvd(f, cfg)
        value = complex(rep.cvd_value)
        norm = _normalized_cvd(value, values) if values else abs(value)
        corr.update({"truncated_cvd": _pair(value), "normalized": norm,
                     "cvd_nonzero": norm > gap_tol, "agrees": (norm > gap_tol) == gap_ok})
    except CritvalsError as e:
        corr.update({"truncated_cvd": None, "error": str(e)})
    return TypicalityReport(surj, card, R, infos, gap, verdict, reasons,
                            degeneracy_tol, gap_tol, corr)


# ---------------------------------------------------------------------------
# Surjectivity bound for exp(z) - eps z
# ---------------------------------------------------------------------------

def theta_value(epsilon: float, m: int) -> float:
    t = math.pi * m
    return min(math.exp(t) - math.sqrt(2.0) * epsilon * t, epsilon * t - 1.0)


@dataclass
class ThetaReport:
    epsilon: float
    m: int
    theta: float
    vacuous: bool
    samples: int
    empirical_min: float
    argmin: complex
    holds: bool

    def to_json(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "m": self.m,
            "theta": self.theta,
            "vacuous": self.vacuous,
            "samples": self.samples,
            "empirical_min": self.empirical_min,
            "argmin": _pair(self.argmin),
            "holds": self.holds,
        }


def square_boundary(half_side: float, samples: int) -> np.ndarray:
    """``samples`` equally spaced points on ``max(|Re z|, |Im z|) = half_side``,
    counterclockwise from ``half_side``."""
    s = 8.0 * half_side * np.arange(samples) / samples
    side, t = np.divmod(s, 2.0 * half_side)
    a = half_side
    starts = np.array([a - a * 1j, a + a * 1j, -a + a * 1j, -a - a * 1j])
    dirs = np.array([1j, -1, -1j, 1])
    k = side.astype(int)
    z = starts[k] + dirs[k] * t
    # rotate so the first sample is the right-edge midpoint
    return np.roll(z, -samples // 8)


def theta_bound(epsilon: float, m: int, samples: int = 4096, slack: float = 1e-9) -> ThetaReport:
    """Compare the lower bound for ``|exp(z) - eps z|`` with its sampled minimum."""
    if not epsilon > 0:
        raise InputError("epsilon must be positive")
    if m < 1:
        raise InputError("m must be a positive integer")
    if samples < 100:
        raise InputError("at least 100 boundary samples are required")
    theta = theta_value(epsilon, m)
    z = square_boundary(math.pi * m, samples)
    vals = np.abs(np.exp(z) - epsilon * z)
    i = int(np.argmin(vals))
    emp = float(vals[i])
    holds = emp >= theta - slack * max(1.0, abs(theta))
    return ThetaReport(epsilon, m, theta, theta <= 0, samples, emp, complex(z[i]), holds)


# ---------------------------------------------------------------------------
# Interpolation with prescribed critical points
# ---------------------------------------------------------------------------

def _to_field(x):
    if isinstance(x, (int, Fraction, ExactComplex)):
        return x
    c = complex(x)
    return ExactComplex(Fraction(c.real), Fraction(c.imag))


def hermite_interpolant(points: Sequence, values: Sequence) -> Poly:
    """Polynomial of degree at most ``2m`` with ``P(z_j) = y_j`` and ``P'(z_j) = 0``.

    ``P = sum_j y_j [(z - z_j)^2 - 2 l_j'(z_j)(z - z_j) + 1] l_j(z)^2`` where
    ``l_j`` is the Lagrange basis polynomial of ``z_j``; the linear term makes
    the derivative vanish at ``z_j`` for any number of points.

    Float inputs are taken at their exact binary values and the coefficients
    are computed without rounding: the monomial form of this polynomial is
    badly conditioned for clustered points, so rounded coefficients would
    blur both conditions.
    """
    pts = [_to_field(z) for z in points]
    vals = [_to_field(y) for y in values]
    if len(pts) != len(vals):
        raise InputError(f"{len(pts)} points but {len(vals)} values")
    for i in range(len(pts)):
        for j in range(i):
            if pts[i] == pts[j]:
                raise DuplicatePoints(f"point {pts[i]} is repeated", index=i)
    node = Poly.from_roots(pts)
    total = Poly()
    for zj, yj in zip(pts, vals):
        if yj == 0:
            continue
        q = _deflate(node, zj)
        den = q(zj)
        dl = q.derivative()(zj) / den
        shift = Poly([-zj, 1])
        factor = shift * shift - shift * (2 * dl) + Poly([1])
        total = total + factor * (q * q) * (yj / (den * den))
    return total


def _deflate(p: Poly, root) -> Poly:
    """``p(z) / (z - root)`` by synthetic division, for an exact root of ``p``."""
    out = []
    acc = 0
    for c in reversed(p.coeffs[1:]):
        acc = acc * root + c
        out.append(acc)
    return Poly(reversed(out))


# ---------------------------------------------------------------------------
# Splitting multiple zeros
# ---------------------------------------------------------------------------

@dataclass
class SplitResult:
    poly: Poly
    flag: str | None
    clusters: list
    roots: np.ndarray

    @property
    def split(self) -> bool:
        return self.flag is None

    def to_json(self) -> dict:
        return {
            "poly": self.poly.to_json(),
            "flag": self.flag,
            "clusters": [{"center": _pair(c), "multiplicity": k} for c, k in self.clusters],
            "roots": [_pair(r) for r in self.roots],
        }


def _exactify(p: Poly) -> Poly:
    if p.is_exact:
        return p
    return Poly(ExactComplex(Fraction(complex(c).real), Fraction(complex(c).imag))
                for c in p.coeffs)


def _factor_roots(s: Poly) -> list:
    if s.degree == 1:
        return [-s[0] / s[1]]
    return [complex(r) for r in roots(s.to_complex())]


def _sorted_roots(r) -> np.ndarray:
    return np.array(sorted((complex(x) for x in r), key=lambda c: (c.real, c.imag)),
                    dtype=complex)


def split_zeros(p: Poly, delta) -> SplitResult:
    """Replace each ``(z - z1)^m1`` block of ``p`` by ``(z - z1)^m1 - delta``.

    The multiplicity structure comes from an exact squarefree decomposition
    (float coefficients are taken at their exact binary values).  The split
    cluster around ``z1`` consists of ``z1 + delta^(1/m1) e^(2 pi i nu/m1)``.
    """
    if p.is_zero:
        raise InputError("cannot split the zeros of the zero polynomial")
    if p.degree < 1:
        raise InputError("a constant polynomial has no zeros")
    # a float delta is read as the decimal it prints as, so 0.01 means 1/100
    d = delta if isinstance(delta, (int, Fraction)) else Fraction(repr(float(delta)))
    if not d > 0:
        raise InputError("delta must be positive")
    exact_in = p.is_exact
    pe = _exactify(p)
    parts = squarefree_decomposition(pe)
    blocks = [(z, k) for s, k in parts for z in _factor_roots(s)]
    blocks.sort(key=lambda b: (complex(b[0]).real, complex(b[0]).imag))
    clusters = [(complex(z), k) for z, k in blocks if k > 1]
    if not clusters:
        return SplitResult(p, "NoMultipleRoots", [], _sorted_roots(roots(p.to_complex())))

    distinct = [complex(z) for z, _ in blocks]
    sep = min((abs(a - b) for i, a in enumerate(distinct) for b in distinct[:i]), default=math.inf)
    for z, k in clusters:
        r = float(d) ** (1.0 / k)
        if not r < sep / 2:
            raise DeltaTooLarge(f"delta^(1/{k}) = {r:.6g} is not below half the root "
                                f"separation {sep / 2:.6g}", center=z, multiplicity=k)

    out = Poly([pe.lc])
    for s, k in parts:
        if k == 1:
            out = out * s
    predicted = []
    for z, k in blocks:
        if k == 1:
            predicted.append(complex(z))
            continue
        shift = Poly([-z, 1])
        out = out * (shift ** k - Poly([d]))
        r = float(d) ** (1.0 / k)
        predicted.extend(complex(z) + r * np.exp(2j * np.pi * np.arange(k) / k))
    if not exact_in:
        out = out.to_complex()
    return SplitResult(out, None, clusters, _sorted_roots(predicted))
