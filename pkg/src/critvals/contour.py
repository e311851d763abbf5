"""Circle quadrature and the R-truncated critical-values discriminant.

The trapezoidal rule on ``|z| = R`` converges geometrically for integrands
analytic in an annulus around the circle, so every stage here doubles the
node count until two successive results agree.  Node sums use numpy's
pairwise summation over a fixed node order, which makes a result
bit-reproducible for a given node count.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .algebra import Poly, SquareMatrix, charpoly, companion, discriminant
from .errors import (
    CritvalsError,
    NoConvergence,
    NonFiniteSample,
    NotNearInteger,
    ResolventNearSingular,
    ZeroNearContour,
)
from .exprlang import EntireExpr, differentiate, evaluate
from .roots import roots

__all__ = [
    "ContourConfig",
    "TruncatedCvdReport",
    "circle_quadrature",
    "count_zeros",
    "newton_sums",
    "newton_to_monic",
    "cauchy_matrix_fn",
    "truncated_cvd",
    "find_zeros",
]


@dataclass(frozen=True)
class ContourConfig:
    radius: float = 5.0
    nodes: int = 64
    guard_tol: float = 1e-8
    max_doublings: int = 8
    match_tol: float = 1e-10
    center: complex = 0j

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        n = self.nodes
        if n < 16 or n & (n - 1):
            raise ValueError("nodes must be a power of two >= 16")
        if not self.guard_tol > 0:
            raise ValueError("guard_tol must be positive")
        if self.max_doublings < 0 or not self.match_tol > 0:
            raise ValueError("max_doublings >= 0 and match_tol > 0 required")

    def with_radius(self, radius: float) -> "ContourConfig":
        return replace(self, radius=radius)

    def around(self, center: complex, radius: float) -> "ContourConfig":
        return replace(self, center=complex(center), radius=radius)


@dataclass
class QuadratureResult:
    value: np.ndarray | complex
    nodes: int
    change: float


def circle_nodes(radius: float, n: int, center: complex = 0j) -> np.ndarray:
    return center + radius * np.exp(2j * np.pi * np.arange(n) / n)


def _quadrature(g: Callable, cfg: ContourConfig) -> QuadratureResult:
    n = cfg.nodes
    prev = None
    change = np.inf
    for _ in range(cfg.max_doublings + 1):
        z = circle_nodes(cfg.radius, n, cfg.center)
        vals = np.asarray(g(z))
        finite = np.isfinite(vals).reshape(n, -1).all(axis=1)
        if not finite.all():
            k = int(np.argmin(finite))
            raise NonFiniteSample(f"integrand not finite at node {k} of {n}", node=k, nodes=n)
        weights = (z - cfg.center).reshape((n,) + (1,) * (vals.ndim - 1))
        cur = np.sum(vals * weights, axis=0) / n
        if prev is not None:
            change = float(np.max(np.abs(cur - prev)))
            scale = max(1.0, float(np.max(np.abs(cur))))
            if change <= cfg.match_tol * scale:
                return QuadratureResult(cur, n, change)
        prev = cur
        n *= 2
    raise NoConvergence(
        f"quadrature did not settle after {cfg.max_doublings} doublings (last change {change:.3e})",
        max_doublings=cfg.max_doublings, change=change)


def circle_quadrature(g: Callable, cfg: ContourConfig):
    """``(1/2 pi i) * contour integral of g`` over ``|z - center| = R``.

    ``g`` receives the array of nodes and returns values of shape ``(N,)`` or
    ``(N, ...)``; the result has the trailing shape.
    """
    v = _quadrature(g, cfg).value
    return complex(v) if np.ndim(v) == 0 else v


def _log_derivative(f: EntireExpr, cfg: ContourConfig) -> Callable:
    fp = differentiate(f)

    def g(z):
        fz = evaluate(f, z)
        low = np.abs(fz)
        if np.min(low) <= cfg.guard_tol:
            k = int(np.argmin(low))
            raise ZeroNearContour(
                f"|f| = {low[k]:.3e} at node {k} on |z - {cfg.center}| = {cfg.radius}; "
                "perturb the radius",
                node=k, radius=cfg.radius)
        return evaluate(fp, z) / fz

    return g


def _monomial_count(f: EntireExpr, cfg: ContourConfig) -> int | None:
    """Zero count of a single term ``c z^k exp(Q)``, read off without quadrature.

    Such a term vanishes only at the origin, so the guard on ``|f|`` would
    reject zero-free circles on which ``exp(Q)`` is merely tiny.
    """
    if len(f.terms) != 1:
        return None
    k = f.terms[0].power
    if k == 0:
        return 0
    gap = abs(cfg.center) - cfg.radius
    if abs(gap) <= cfg.guard_tol:
        raise ZeroNearContour(f"zero of order {k} at the origin lies on the circle",
                              node=0, radius=cfg.radius)
    return k if gap < 0 else 0


def _count(f: EntireExpr, cfg: ContourConfig) -> tuple:
    m = _monomial_count(f, cfg)
    if m is not None:
        return m, 0.0, 0
    res = _quadrature(_log_derivative(f, cfg), cfg)
    val = complex(res.value)
    m = int(round(val.real))
    residual = abs(val - m)
    if residual >= 0.25:
        raise NotNearInteger(f"argument-principle integral {val:.6g} is not near an integer",
                             value=[val.real, val.imag])
    return max(m, 0), residual, res.nodes


def count_zeros(f: EntireExpr, cfg: ContourConfig) -> int:
    """Number of zeros of ``f`` in ``|z| < R`` by the argument principle."""
    return _count(f, cfg)[0]


def newton_sums(f: EntireExpr, m: int, cfg: ContourConfig) -> list:
    """Power sums ``s_k = sum of z_j^k`` over the zeros of ``f`` in the disk, ``k = 1..m``."""
    if m < 1:
        return []
    logd = _log_derivative(f, cfg)
    ks = np.arange(1, m + 1)

    def g(z):
        return logd(z)[:, None] * z[:, None] ** ks[None, :]

    v = circle_quadrature(g, cfg)
    return [complex(x) for x in v]


def newton_to_monic(s) -> Poly:
    """Monic polynomial whose roots have power sums ``s`` (Newton identities)."""
    m = len(s)
    if m < 1:
        raise ValueError("need at least one power sum")
    e = [1.0 + 0j]
    for k in range(1, m + 1):
        acc = 0j
        for j in range(1, k + 1):
            acc += (-1) ** (j - 1) * e[k - j] * complex(s[j - 1])
        e.append(acc / k)
    coeffs = [(-1) ** (m - d) * e[m - d] for d in range(m)] + [1.0 + 0j]
    return Poly(coeffs)


def cauchy_matrix_fn(w: EntireExpr, c: SquareMatrix, cfg: ContourConfig) -> SquareMatrix:
    """``w(C) = -(1/2 pi i) * contour integral of w(zeta) (C - zeta I)^-1``.

    The resolvent is obtained per node by a linear solve.
    """
    a = c.to_numpy()
    n = a.shape[0]
    eye = np.eye(n, dtype=complex)

    def g(z):
        shifted = a[None, :, :] - z[:, None, None] * eye[None, :, :]
        dets = np.abs(np.linalg.det(shifted))
        if np.min(dets) <= cfg.guard_tol:
            k = int(np.argmin(dets))
            raise ResolventNearSingular(
                f"|det(C - zeta I)| = {dets[k]:.3e} at node {k}", node=k)
        res = np.linalg.solve(shifted, np.broadcast_to(eye, shifted.shape))
        return -evaluate(w, z)[:, None, None] * res

    return SquareMatrix(circle_quadrature(g, cfg))


@dataclass
class TruncatedCvdReport:
    m: int
    cvd_value: complex
    radius: float
    critical_poly: Poly | None = None
    companion: SquareMatrix | None = None
    W: SquareMatrix | None = None
    U: Poly | None = None
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def opt(x):
            return None if x is None else x.to_json()
        return {
            "m": self.m,
            "radius": self.radius,
            "cvd_value": [self.cvd_value.real, self.cvd_value.imag],
            "critical_poly": opt(self.critical_poly),
            "companion": opt(self.companion),
            "W": opt(self.W),
            "U": opt(self.U),
            "diagnostics": self.diagnostics,
        }


def _stage(name: str, fn, *args):
    try:
        return fn(*args)
    except CritvalsError as e:
        if e.stage is None:
            e.stage = name
        raise


def truncated_cvd(w: EntireExpr, cfg: ContourConfig) -> TruncatedCvdReport:
    """Discriminant of the polynomial whose roots are the critical values of
    ``w`` at its critical points in ``|z| < R``; exactly 1 when there are none.
    """
    wp = differentiate(w)
    m, residual, nodes = _stage("count_zeros", _count, wp, cfg)
    diag = {"count_residual": residual, "count_nodes": nodes}
    if m == 0:
        return TruncatedCvdReport(0, 1.0 + 0j, cfg.radius, diagnostics=diag)
    s = _stage("newton_sums", newton_sums, wp, m, cfg)
    p = newton_to_monic(s)
    c = companion(p)
    W = _stage("cauchy_matrix_fn", cauchy_matrix_fn, w, c, cfg)
    u = charpoly(W)
    value = complex(discriminant(u))
    if m > 1:
        try:
            pts = roots(p, 1e-8)
        except CritvalsError:
            diag["min_critical_point_distance"] = None
        else:
            d = np.abs(pts[:, None] - pts[None, :])
            np.fill_diagonal(d, np.inf)
            diag["min_critical_point_distance"] = float(d.min())
    diag["power_sums"] = [[x.real, x.imag] for x in s]
    return TruncatedCvdReport(m, value, cfg.radius, p, c, W, u, diag)


def _newton(f: EntireExpr, fp: EntireExpr, z: np.ndarray, iters: int = 80) -> np.ndarray:
    """Vectorized Newton; entries that fail to settle come back as ``nan``."""
    z = z.astype(complex)
    done = np.zeros(z.shape, dtype=bool)
    step = np.zeros_like(z)
    with np.errstate(all="ignore"):
        for _ in range(iters):
            step = evaluate(f, z, check_overflow=False) / evaluate(fp, z, check_overflow=False)
            step[done] = 0
            bad = ~np.isfinite(step)
            z[bad] = np.nan
            step[bad] = 0
            z = z - step
            done |= np.abs(step) <= 1e-14 * np.maximum(1.0, np.abs(z))
            if done[np.isfinite(z)].all():
                break
    # multiple zeros stall at rounding level; accept small final steps too
    settled = done | (np.abs(step) <= 1e-6 * np.maximum(1.0, np.abs(z)))
    z[~settled] = np.nan
    return z


def _grid(cfg: ContourConfig, level: int) -> np.ndarray:
    n = 8 * 2 ** level
    h = 2.0 * cfg.radius / n
    xs = -cfg.radius + h * (np.arange(n) + 0.5) + 0.0123 * h
    gx, gy = np.meshgrid(xs, xs + 0.0071 * h)
    pts = (gx + 1j * gy).ravel()
    return cfg.center + pts[np.abs(pts) < cfg.radius]


def _dedupe(z: np.ndarray, tol: float = 1e-4) -> list:
    """Cluster representatives: the mean of each cluster of nearby points."""
    clusters: list = []
    for x in sorted(z[np.isfinite(z)], key=lambda c: (c.real, c.imag)):
        for cl in clusters:
            if abs(x - cl[0]) <= tol * max(1.0, abs(x)):
                cl.append(complex(x))
                break
        else:
            clusters.append([complex(x)])
    return [complex(np.mean(cl)) for cl in clusters]


def find_zeros(f: EntireExpr, cfg: ContourConfig, max_refinements: int = 6) -> tuple:
    """Zeros of ``f`` in ``|z - center| < R`` with multiplicities.

    The argument principle fixes the count; Newton iteration from a grid that
    doubles in density locates the points, and small local contours settle
    multiplicities.  Returns ``(points, multiplicities)`` sorted by
    ``(|z - center|, arg)``.
    """
    from .errors import GridExhausted

    m = count_zeros(f, cfg)
    if m == 0:
        return [], []
    fp = differentiate(f)
    found: list = []
    mult: list = []
    for level in range(max_refinements + 1):
        cand = _newton(f, fp, _grid(cfg, level))
        cand = cand[np.abs(cand - cfg.center) < cfg.radius]
        found = _dedupe(np.concatenate([np.array(found, dtype=complex), cand]))
        if len(found) == m:
            mult = [1] * m
            break
        if len(found) < m and found:
            mult = _local_multiplicities(f, found, cfg)
            if sum(mult) == m:
                break
    else:
        raise GridExhausted(f"found {len(found)} distinct zeros, expected {m} with multiplicity",
                            found=len(found), expected=m)
    order = sorted(range(len(found)),
                   key=lambda i: (round(abs(found[i] - cfg.center), 9),
                                  np.angle(found[i] - cfg.center)))
    return [found[i] for i in order], [mult[i] for i in order]


def _local_multiplicities(f: EntireExpr, pts: list, cfg: ContourConfig) -> list:
    out = []
    for i, p in enumerate(pts):
        gaps = [abs(p - q) for j, q in enumerate(pts) if j != i]
        gaps.append(cfg.radius - abs(p - cfg.center))
        rho = 0.4 * min(min(gaps), 1.0)
        try:
            out.append(count_zeros(f, cfg.around(p, rho)))
        except CritvalsError:
            out.append(0)
    return out
