"""Simultaneous polynomial root finding (Aberth-Ehrlich) with Newton polish."""

from __future__ import annotations

import numpy as np

from .algebra import Poly
from .errors import DegreeZero, NoConvergence

__all__ = ["roots", "residual_bound"]

_EPS = np.finfo(float).eps


def _horner_with_derivative(c_desc: np.ndarray, z: np.ndarray):
    p = np.full_like(z, c_desc[0])
    dp = np.zeros_like(z)
    for c in c_desc[1:]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def residual_bound(p: Poly, r, tol: float = 1e-12):
    c = p.to_numpy()
    scale = np.linalg.norm(c, np.inf)
    return tol * scale * np.maximum(1.0, np.abs(r)) ** p.degree


def roots(p: Poly, tol: float = 1e-12, max_iters: int = 500) -> np.ndarray:
    """All ``deg p`` complex roots, with multiplicity.

    Start values lie on the circle of radius ``1 + max|a_i|`` (coefficients
    of the monic normalization) at equally spaced angles offset by 0.4 rad.
    Iteration continues until the corrections stop shrinking, so clusters
    around multiple roots tighten as far as rounding allows.  Raises
    :class:`NoConvergence` when a root misses the residual bound
    ``|p(r)| <= tol * ||p|| * max(1, |r|)^deg``.
    """
    if p.is_zero or p.degree < 1:
        raise DegreeZero("roots need degree >= 1")
    c = p.to_numpy()
    c = c / c[-1]
    n = p.degree
    if n == 1:
        return np.array([-c[0]])
    c_desc = c[::-1].copy()
    radius = 1.0 + np.max(np.abs(c[:-1]))
    z = radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))
    floor = _EPS * radius
    cnorm = np.linalg.norm(c, np.inf)
    best = np.inf
    stall = 0
    for _ in range(max_iters):
        pv, dpv = _horner_with_derivative(c_desc, z)
        active = pv != 0
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        recip = 1.0 / diff
        np.fill_diagonal(recip, 0.0)
        s = recip.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(active, pv / dpv, 0.0)
            step = np.where(active, ratio / (1.0 - ratio * s), 0.0)
        bad = ~np.isfinite(step)
        if bad.any():
            # p'(z) = 0 exactly: nudge off the stationary point
            step[bad] = 1e-3 * radius * np.exp(1j * np.arange(bad.sum()))
        z = z - step
        size = np.max(np.abs(step))
        if size <= floor:
            break
        converged = np.all(np.abs(pv) <= tol * cnorm * np.maximum(1.0, np.abs(z)) ** n)
        if size < 0.5 * best:
            best = size
            stall = 0
        else:
            stall += 1
        if converged and stall >= 10:
            break
    z = _polish(c_desc, z)
    res = np.abs(np.polyval(c_desc, z))
    lim = tol * cnorm * np.maximum(1.0, np.abs(z)) ** n
    if np.any(res > lim):
        raise NoConvergence(
            f"root residuals {res.max():.3e} exceed bound after {max_iters} iterations",
            max_iters=max_iters, residuals=res.tolist())
    return z


def _polish(c_desc: np.ndarray, z: np.ndarray, steps: int = 3) -> np.ndarray:
    z = z.copy()
    for _ in range(steps):
        pv, dpv = _horner_with_derivative(c_desc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = z - pv / dpv
        ok = np.isfinite(cand)
        new_res = np.abs(np.polyval(c_desc, np.where(ok, cand, z)))
        take = ok & (new_res < np.abs(pv))
        z = np.where(take, cand, z)
    return z
