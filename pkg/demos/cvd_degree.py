"""Measure the degree of the critical values discriminant as a polynomial in
the coefficients.

Along a line ``a(t) = u + t v`` in coefficient space the CVD is a polynomial
in ``t`` whose degree equals the total degree for generic ``u, v``.  Exact
values at ``t = 0..N`` and repeated finite differences give that degree
without any rounding.  ``a0`` shifts every critical value by the same amount,
so it is left out of ``v``; a second measurement weights the coefficients
(``a_k`` scaled by ``t^(m-k)``) to show weighted homogeneity.

    python3 demos/cvd_degree.py --max-degree 5
"""

from __future__ import annotations

import argparse
from fractions import Fraction

import numpy as np

from critvals.algebra import cvd
from critvals.exact import ExactComplex


def _rand(rng: np.random.Generator) -> ExactComplex:
    return ExactComplex(Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5))),
                        Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5))))


def degree_from_samples(values: list) -> int:
    """Largest ``k`` with a nonzero ``k``-th forward difference (-1 for all zeros)."""
    deg = -1
    diff = list(values)
    for k in range(len(values)):
        if any(x != 0 for x in diff):
            deg = k
        diff = [b - a for a, b in zip(diff, diff[1:])]
    return deg


def degree_along_line(m: int, rng: np.random.Generator, weighted: bool = False) -> int:
    u = [_rand(rng) for _ in range(m)]
    v = [ExactComplex(0)] + [_rand(rng) for _ in range(m - 1)]
    n = m * (m - 1) ** 2 + 3
    samples = []
    for t in range(n + 1):
        if weighted:
            a = [u[k] * t ** (m - k) for k in range(m)]
        else:
            a = [u[k] + v[k] * t for k in range(m)]
        samples.append(cvd(a))
    if degree_from_samples(samples) >= n - 1:
        raise RuntimeError("sample budget too small to pin the degree")
    return degree_from_samples(samples)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=5)
    ap.add_argument("--lines", type=int, default=2, help="random lines per degree")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    print(f"{'m':>3} {'coarse m(m-1)^2':>16} {'measured':>9} {'weighted':>9}")
    for m in range(3, args.max_degree + 1):
        measured = {degree_along_line(m, rng) for _ in range(args.lines)}
        weighted = {degree_along_line(m, rng, weighted=True) for _ in range(args.lines)}
        fmt = lambda s: ",".join(map(str, sorted(s)))
        print(f"{m:>3} {m * (m - 1) ** 2:>16} {fmt(measured):>9} {fmt(weighted):>9}")


if __name__ == "__main__":
    main()
