"""Monodromy of the inverse of a quintic, step by step.

Critical values, the loop around each one, the sheet permutation each loop
induces, the group they generate, and the exact discriminant that predicts it.

    python3 demos/quintic_monodromy.py --coeffs 12,-5,0,0,0
"""

from __future__ import annotations

import argparse
from functools import reduce

from critvals.algebra import monic_from_coeffs
from critvals.cli import parse_exact_list
from critvals.monodromy import build_loops, circle_loop, critical_data, radicals_verdict, track_fiber


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--coeffs", default="12,-5,0,0,0", help="a0,...,a_{m-1} as exact tokens")
    args = ap.parse_args()

    a = parse_exact_list(args.coeffs)
    p = monic_from_coeffs(a).to_complex()
    pts, vals = critical_data(p)
    print(f"degree {p.degree}")
    for w, v in zip(pts, vals):
        print(f"  critical point {complex(w):.6g}  ->  value {complex(v):.6g}")

    system = build_loops(vals)
    print(f"\nbase point {system.base:.6g}")
    perms = []
    for lp in system.loops:
        g = track_fiber(p, lp)
        perms.append(g)
        print(f"  loop around {lp.target:.6g} (ring {lp.ring_radius:.3g}, "
              f"{len(lp.samples)} samples): {g}")

    big = track_fiber(p, circle_loop(abs(system.base)))
    prod = reduce(lambda x, y: x.then(y), perms)
    print(f"\nbig circle: {big}   product of loops: {prod}")

    rep = radicals_verdict(a, cross_check=True)
    grp = rep.monodromy.group
    print(f"\nexact CVD = {rep.cvd.to_token()}")
    print(f"group: transitive={grp.is_transitive} transpositions={grp.all_transpositions} "
          f"order={grp.order} solvable={grp.solvable}")
    print(f"verdict: {rep.verdict} ({rep.reason})")


if __name__ == "__main__":
    main()
