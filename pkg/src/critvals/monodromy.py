"""Monodromy of inverse functions by numerical fiber tracking.

A loop starts at a base point, follows a path to a small circle around one
critical value, goes once around it counterclockwise and returns along the
same path.  Paths are straight segments; where a segment would pass too
close to another critical value it is rerouted along an arc around that
value on the side the straight segment passes (a consistent side when the
value lies exactly on the segment), so that the loops form a standard
generating system of the fundamental group of the punctured plane.

Sheets of the base fiber are labelled ``1..m`` in lexicographic order of
``(re, im)``.  A loop permutation maps the label of a starting sheet to the
label of the sheet where its continuation ends.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .algebra import Poly, cvd, monic_derivative, monic_from_coeffs
from .contour import ContourConfig, find_zeros
from .errors import (
    DegenerateCriticalPoint,
    DuplicateValuesCollapsed,
    NewtonDivergence,
    PathCollision,
    WindowFiberUnstable,
)
from .exact import as_exact
from .exprlang import EntireExpr, differentiate, evaluate
from .groups import GroupReport, Permutation, group_analyze
from .roots import roots

__all__ = [
    "Loop",
    "LoopSystem",
    "MonodromyReport",
    "critical_data",
    "build_loops",
    "make_loop",
    "circle_loop",
    "track_fiber",
    "monodromy_group",
    "radicals_verdict",
    "entire_branch_probe",
]

COLLISION_TOL = 1e-10


@dataclass(frozen=True)
class Loop:
    base: complex
    target: complex | None
    ring_radius: float
    samples: np.ndarray = field(repr=False, compare=False)

    def reversed(self) -> "Loop":
        return Loop(self.base, self.target, self.ring_radius, self.samples[::-1].copy())


@dataclass
class LoopSystem:
    base: complex
    loops: list
    collapsed: int = 0

    def __iter__(self):
        # allows ``base, loops = build_loops(values)``
        return iter((self.base, self.loops))


# ---------------------------------------------------------------------------
# Critical data and loop construction
# ---------------------------------------------------------------------------

def _as_poly(p) -> Poly:
    return p if isinstance(p, Poly) else Poly(p)


def critical_data(p: Poly) -> tuple:
    """Critical points (roots of the normalized derivative) and the values there."""
    p = _as_poly(p)
    d = monic_derivative(p.monic() if not p.is_monic else p)
    pts = roots(d.to_complex())
    c = p.to_numpy()[::-1]
    vals = np.polyval(c, pts)
    return pts, vals


def _distinct(values: Sequence[complex], tol: float = 1e-8) -> tuple:
    reps: list = []
    for v in values:
        v = complex(v)
        if not any(abs(v - r) <= tol * max(1.0, abs(v)) for r in reps):
            reps.append(v)
    return reps, len(values) - len(reps)


def _ring_radii(values: Sequence[complex]) -> list:
    out = []
    for i, v in enumerate(values):
        d = min((abs(v - u) for j, u in enumerate(values) if j != i), default=math.inf)
        out.append(min(1.0, d / 3.0))
    return out


def _segment(a: complex, b: complex, h: float) -> np.ndarray:
    n = 1 if math.isinf(h) else max(1, int(math.ceil(abs(b - a) / h)))
    t = np.arange(n + 1) / n
    return a + (b - a) * t


def _arc(center: complex, radius: float, start_angle: float, sweep: float, h: float) -> np.ndarray:
    n = max(int(math.ceil(32 * abs(sweep) / (2 * math.pi))), int(math.ceil(abs(sweep) * radius / h)))
    t = start_angle + sweep * np.arange(n + 1) / n
    return center + radius * np.exp(1j * t)


def _routed_path(a: complex, b: complex, obstacles: Sequence[tuple], h: float) -> np.ndarray:
    """Samples from ``a`` to ``b`` keeping clear of each ``(u, r)`` obstacle disk."""
    length = abs(b - a)
    if length == 0:
        return np.array([a])
    d = (b - a) / length
    left = 1j * d
    hits = []
    for u, r in obstacles:
        rel = (u - a) / d
        t, hgt = rel.real, rel.imag
        if abs(hgt) >= r:
            continue
        half = math.sqrt(r * r - hgt * hgt)
        t1, t2 = t - half, t + half
        if t2 <= 0 or t1 >= length:
            continue
        hits.append((t1, t2, u, r, hgt))
    hits.sort()
    pieces = []
    cur = a
    for t1, t2, u, r, hgt in hits:
        t1, t2 = max(t1, 0.0), min(t2, length)
        p_in, p_out = a + d * t1, a + d * t2
        pieces.append(_segment(cur, p_in, h))
        # side of the obstacle the segment passes; exactly collinear -> left
        side = left if abs(hgt) < 1e-12 * max(1.0, r) else (-left if hgt > 0 else left)
        ang_in = cmath.phase(p_in - u)
        ang_out = cmath.phase(p_out - u)
        ang_side = cmath.phase(side)
        ccw = (ang_out - ang_in) % (2 * math.pi)
        if (ang_side - ang_in) % (2 * math.pi) < ccw:
            sweep = ccw
        else:
            sweep = ccw - 2 * math.pi
        pieces.append(_arc(u, r, ang_in, sweep, h))
        cur = p_out
    pieces.append(_segment(cur, b, h))
    return np.concatenate(pieces)


def make_loop(base: complex, center: complex, ring_radius: float,
              obstacles: Sequence[tuple] = (), target: complex | None = None,
              step: float | None = None) -> Loop:
    """Path from ``base`` to the circle ``|z - center| = ring_radius``, once around
    counterclockwise, and back along the same path.

    Straight parts carry only their end points unless ``step`` is given;
    arcs get at least 32 samples per turn.  The tracker refines between
    samples wherever the fiber requires it.
    """
    h = step if step is not None else math.inf
    base = complex(base)
    if base == center:
        raise ValueError("base must differ from the loop center")
    entry = center + ring_radius * (base - center) / abs(base - center)
    others = [(u, r) for u, r in obstacles if abs(u - center) > 1e-14]
    path = _routed_path(base, entry, others, h)
    ang0 = cmath.phase(entry - center)
    ring = _arc(center, ring_radius, ang0, 2 * math.pi, ring_radius / 8.0)
    ring[-1] = entry
    samples = np.concatenate([path, ring[1:], path[::-1][1:]])
    samples[0] = samples[-1] = base
    return Loop(base, target, ring_radius, samples)


def circle_loop(radius: float, center: complex = 0j, turns: int = 1, step: float | None = None) -> Loop:
    """Counterclockwise circle based at its rightmost point."""
    h = step if step is not None else radius / 16.0
    samples = _arc(center, radius, 0.0, 2 * math.pi * turns, h)
    base = center + radius
    samples[0] = samples[-1] = base
    return Loop(base, None, radius, samples)


def build_loops(values: Sequence[complex], strict: bool = False) -> LoopSystem:
    """One loop per distinct critical value, ordered by argument as seen from the base."""
    reps, collapsed = _distinct(values)
    if collapsed and strict:
        raise DuplicateValuesCollapsed(f"{collapsed} critical value(s) coincide", collapsed=collapsed)
    radii = _ring_radii(reps)
    base = complex(2.0 * max(abs(v) for v in reps) + 1.0)
    if any(abs(base - v) < 1e-12 for v in reps):
        base += 1j * min(radii) / 2
    # every value lies to the left of the base, so cutting angles along the
    # positive direction keeps the ordering counterclockwise without a jump
    order = sorted(range(len(reps)),
                   key=lambda i: (cmath.phase(reps[i] - base) % (2 * math.pi),
                                  abs(reps[i] - base)))
    obstacles = list(zip(reps, radii))
    loops = [make_loop(base, reps[i], radii[i], obstacles, target=reps[i]) for i in order]
    return LoopSystem(base, loops, collapsed)


# ---------------------------------------------------------------------------
# Fiber tracking
# ---------------------------------------------------------------------------

def _min_sep(w: np.ndarray) -> float:
    if len(w) < 2:
        return math.inf
    d = np.abs(w[:, None] - w[None, :])
    np.fill_diagonal(d, np.inf)
    return float(d.min())


def _step(F: Callable, dF: Callable, w: np.ndarray, z0: complex, z1: complex) -> tuple:
    """Euler prediction and Newton correction from ``F(w) = z0`` to ``F(w) = z1``.

    Newton has converged once the correction is negligible, or once it stops
    shrinking at a size attributable to rounding.
    """
    with np.errstate(all="ignore"):
        wp = w + (z1 - z0) / dF(w)
        prev = math.inf
        for _ in range(12):
            corr = (F(wp) - z1) / dF(wp)
            if not np.all(np.isfinite(corr)):
                return wp, False
            wp = wp - corr
            size = float(np.max(np.abs(corr)))
            scale = 1.0 + float(np.max(np.abs(wp)))
            if size <= 1e-13 * scale or (size > 0.5 * prev and size <= 1e-9 * scale):
                return wp, True
            prev = size
    return wp, False


def _track(F: Callable, dF: Callable, w0: np.ndarray, samples: np.ndarray,
           min_step: float = 1e-13) -> np.ndarray:
    """Continue the solutions ``w0`` of ``F(w) = samples[0]`` along the polyline ``samples``.

    Euler prediction with ``dw/dz = 1/F'(w)`` and Newton correction on
    ``F(w) = z``.  A step is accepted only when Newton converges and no point
    moves more than a third of the current minimal separation of the fiber;
    otherwise it is halved.  Accepted steps double the next trial step.
    """
    w = np.array(w0, dtype=complex)
    h = math.inf
    for a, b in zip(samples[:-1], samples[1:]):
        length = abs(b - a)
        if length == 0:
            continue
        t = 0.0
        while t < length:
            dt = min(h, length - t)
            z0 = a + (b - a) * (t / length)
            z1 = b if t + dt >= length else a + (b - a) * ((t + dt) / length)
            sep = _min_sep(w)
            wp, ok = _step(F, dF, w, z0, z1)
            if ok and np.max(np.abs(wp - w)) <= sep / 3.0:
                w = wp
                t += dt
                h = 2.0 * dt
                continue
            h = dt / 2.0
            if h < min_step * (1.0 + abs(z0)):
                if not ok:
                    raise NewtonDivergence(f"Newton correction failed near z = {z0:.6g}")
                raise PathCollision(f"step control failed near z = {z0:.6g} "
                                    f"(separation {sep:.3e})")
    if _min_sep(w) <= COLLISION_TOL:
        raise PathCollision("tracked sheets collided")
    return w


def _match(start: np.ndarray, end: np.ndarray) -> Permutation:
    sep = _min_sep(start)
    images = []
    for e in end:
        d = np.abs(start - e)
        j = int(np.argmin(d))
        if d[j] >= sep / 3.0:
            raise PathCollision(f"end point {e:.6g} is not near any start sheet")
        images.append(j + 1)
    if len(set(images)) != len(images):
        raise PathCollision("two sheets ended on the same start sheet")
    return Permutation(images)


def _sorted_fiber(w: np.ndarray) -> np.ndarray:
    return np.array(sorted(w, key=lambda c: (c.real, c.imag)), dtype=complex)


def base_fiber(p: Poly, base: complex) -> np.ndarray:
    p = _as_poly(p).to_complex()
    return _sorted_fiber(roots(p - Poly([base])))


def track_fiber(p: Poly, loop: Loop) -> Permutation:
    """Permutation of the base fiber of ``p`` induced by continuation along ``loop``."""
    p = _as_poly(p).to_complex()
    c = p.to_numpy()[::-1]
    dc = np.polyder(c)
    start = base_fiber(p, loop.base)

    def F(w):
        return np.polyval(c, w)

    def dF(w):
        return np.polyval(dc, w)

    end = _track(F, dF, start, loop.samples)
    return _match(start, end)


# ---------------------------------------------------------------------------
# Group-level reports
# ---------------------------------------------------------------------------

@dataclass
class MonodromyReport:
    group: GroupReport
    critical_points: list
    critical_values: list
    base: complex
    loop_targets: list
    collapsed: int = 0

    @property
    def verdict(self) -> str:
        return self.group.verdict

    @property
    def permutations(self) -> list:
        return self.group.generators

    def to_json(self) -> dict:
        def pairs(xs):
            return [[complex(x).real, complex(x).imag] for x in xs]
        out = self.group.to_json()
        out.update({
            "critical_points": pairs(self.critical_points),
            "critical_values": pairs(self.critical_values),
            "base": [self.base.real, self.base.imag],
            "loop_targets": pairs(self.loop_targets),
            "collapsed": self.collapsed,
        })
        return out


def monodromy_group(p: Poly, order_cap: int = 100_000) -> MonodromyReport:
    p = _as_poly(p)
    pts, vals = critical_data(p)
    system = build_loops(vals)
    perms = [track_fiber(p, lp) for lp in system.loops]
    rep = group_analyze(perms, p.degree, order_cap)
    if system.collapsed:
        rep.verdict = "Inconclusive"
        rep.notes.append(f"{system.collapsed} critical value(s) coincide; loops enclose several "
                         "critical points")
    return MonodromyReport(rep, list(pts), list(vals), system.base,
                           [lp.target for lp in system.loops], system.collapsed)


@dataclass
class RadicalsReport:
    m: int
    cvd: object
    verdict: str
    reason: str
    monodromy: MonodromyReport | None = None
    agrees: bool | None = None

    def to_json(self) -> dict:
        out = {
            "m": self.m,
            "cvd": self.cvd.to_token() if hasattr(self.cvd, "to_token") else str(self.cvd),
            "verdict": self.verdict,
            "reason": self.reason,
        }
        if self.monodromy is not None:
            out["monodromy"] = self.monodromy.to_json()
            out["agrees"] = self.agrees
        return out


NOT_BY_RADICALS = "not expressed by radicals"


def radicals_verdict(a: Sequence, cross_check: bool = False,
                     order_cap: int = 100_000) -> RadicalsReport:
    """Radicals verdict for the roots ``w(z)`` of ``P(w) = z`` from the exact CVD."""
    a = [as_exact(x) for x in a]
    m = len(a)
    value = cvd(a)
    if value == 0:
        verdict = "no conclusion (CVD vanishes)"
        reason = "two critical values coincide or a critical point is degenerate"
    elif m < 5:
        verdict = "no conclusion (degree below 5)"
        reason = f"S({m}) is solvable"
    else:
        verdict = NOT_BY_RADICALS
        reason = (f"nonzero CVD forces the monodromy group of the inverse to be S({m}), "
                  f"which is not solvable for m >= 5")
    rep = RadicalsReport(m, value, verdict, reason)
    if cross_check:
        mono = monodromy_group(monic_from_coeffs(a), order_cap)
        rep.monodromy = mono
        rep.agrees = (mono.group.equals_symmetric if value != 0 else None)
    return rep


# ---------------------------------------------------------------------------
# Local probe for entire functions
# ---------------------------------------------------------------------------

@dataclass
class BranchProbeReport:
    critical_point: complex
    critical_value: complex
    second_derivative: complex
    loop_center: complex
    loop_radius: float
    base: complex
    window_radius: float
    window_fiber: list
    permutation: Permutation

    @property
    def is_transposition(self) -> bool:
        return self.permutation.is_transposition

    def to_json(self) -> dict:
        def pair(x):
            return [complex(x).real, complex(x).imag]
        return {
            "critical_point": pair(self.critical_point),
            "critical_value": pair(self.critical_value),
            "second_derivative": pair(self.second_derivative),
            "loop_center": pair(self.loop_center),
            "loop_radius": self.loop_radius,
            "base": pair(self.base),
            "window_radius": self.window_radius,
            "window_fiber": [pair(w) for w in self.window_fiber],
            "permutation": self.permutation.to_json(),
            "is_transposition": self.is_transposition,
        }


def entire_branch_probe(f: EntireExpr, k: int = 0, window_radius: float = 2.0, *,
                        search_radius: float | None = None, center_offset: complex = 0j,
                        loop_radius: float | None = None, degeneracy_tol: float = 1e-8,
                        cfg: ContourConfig | None = None) -> BranchProbeReport:
    """Local monodromy of ``f^{-1}`` around the critical value at critical point ``k``.

    Critical points are those of ``f`` in ``|w| < search_radius`` (default
    ``window_radius``) ordered by modulus then argument.  The sheets are the
    solutions of ``f(w) = base`` within ``window_radius`` of the critical
    point, labelled lexicographically; a non-degenerate critical point should
    give a single transposition.
    """
    from .typicality import degeneracy_measure

    cfg = cfg or ContourConfig()
    fp = differentiate(f)
    fpp = differentiate(fp)
    search = search_radius if search_radius is not None else window_radius
    pts, mult = find_zeros(fp, cfg.around(0j, search))
    if not 0 <= k < len(pts):
        raise ValueError(f"critical point index {k} out of range (found {len(pts)})")
    wk = pts[k]
    if mult[k] > 1 or degeneracy_measure(f, wk) <= degeneracy_tol:
        raise DegenerateCriticalPoint(f"critical point {wk:.6g} is degenerate (f'' ~ 0)")
    zk = evaluate(f, wk)
    others = [evaluate(f, w) for i, w in enumerate(pts) if i != k]
    center = zk + center_offset
    gaps = [abs(v - center) for v in others] + ([abs(zk - center)] if center_offset else [])
    rho = loop_radius if loop_radius is not None else min([0.5] + [0.3 * g for g in gaps])
    base = center + rho

    shifted = f - EntireExpr.constant(complex(base))
    window = cfg.around(wk, window_radius)
    fiber, fmult = find_zeros(shifted, window)
    if any(x > 1 for x in fmult):
        raise WindowFiberUnstable("window fiber has a repeated point; base is a critical value")
    start = _sorted_fiber(np.array(fiber, dtype=complex))

    def F(w):
        return evaluate(f, w, check_overflow=False)

    def dF(w):
        return evaluate(fp, w, check_overflow=False)

    loop = circle_loop(rho, center, step=rho / 16.0)
    end = _track(F, dF, start, loop.samples)
    if np.any(np.abs(end - wk) >= window_radius):
        raise WindowFiberUnstable("a sheet left the probe window during tracking")
    try:
        perm = _match(start, end)
    except PathCollision as e:
        raise WindowFiberUnstable(f"window fiber not restored: {e}") from e
    return BranchProbeReport(wk, zk, evaluate(fpp, wk), center, rho, base, window_radius,
                             list(start), perm)
