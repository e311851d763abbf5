"""Polynomials with prescribed critical points and values, and splitting of
multiple zeros.

A Hermite interpolant puts critical points at chosen ``z_j`` with chosen
values ``y_j``.  Equal ``y_j`` make the discriminant vanish; nudging one value
apart makes it nonzero again.  The second half splits a repeated zero into a
ring of simple ones.

    python3 demos/prescribed_critical_values.py
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from critvals.algebra import Poly, cvd
from critvals.exact import ExactComplex
from critvals.typicality import hermite_interpolant, split_zeros


def show_interpolant(points, values) -> None:
    P = hermite_interpolant(points, values)
    monic = P * (ExactComplex(1) / P.lc)
    d = cvd(list(monic.coeffs[:-1]))
    dP = P.derivative()
    print(f"  values {[str(v) for v in values]}: degree {P.degree}, "
          f"P'(z_j) = {[str(dP(z)) for z in points]}, CVD {'= 0' if d == 0 else '!= 0'}")


def main() -> None:
    pts = [ExactComplex(0), ExactComplex(1), ExactComplex(0, 1)]
    print("critical points 0, 1, i")
    show_interpolant(pts, [ExactComplex(2), ExactComplex(2), ExactComplex(-1)])
    show_interpolant(pts, [ExactComplex(2), ExactComplex(Fraction(21, 10)), ExactComplex(-1)])

    print("\nsplitting (z - 1)^3 (z + 2) with delta = 1/1000")
    p = Poly.from_roots([ExactComplex(1)] * 3 + [ExactComplex(-2)])
    res = split_zeros(p, Fraction(1, 1000))
    print(f"  clusters {res.clusters}")
    print(f"  new polynomial {[c.to_token() for c in res.poly.coeffs]}")
    found = np.sort_complex(np.roots(res.poly.to_complex().to_numpy()[::-1]))
    for r in found:
        print(f"  root {r:.12f}   |r - 1| = {abs(r - 1):.6f}")


if __name__ == "__main__":
    main()
