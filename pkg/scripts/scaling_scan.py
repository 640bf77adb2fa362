#!/usr/bin/env python3
"""Residuals of the exact error against the two-, three- and four-copy laws on a geometric j grid."""

import argparse
import math

from spinframe import Spin, leading_integral, residual_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--j-min", type=int, default=100)
    ap.add_argument("--j-max", type=int, default=20000)
    ap.add_argument("--factor", type=float, default=2.0)
    args = ap.parse_args()
    js = []
    j = args.j_min
    while j <= args.j_max:
        js.append(int(j))
        j *= args.factor
    for n in (2, 3, 4):
        print(f"n = {n}")
        for row in residual_scan(n, [Spin(2 * j) for j in js]):
            jj = row.twice_j / 2
            extra = ""
            if n in (3, 4) and jj >= 10:
                extra = f"  (exact - integral) j^2 = {(row.error - leading_integral(n, Spin(row.twice_j))) * jj * jj:+.3e}"
            print(f"  j = {jj:8g}  err = {row.error:.6e}  ratio = {row.error / row.leading_term:.5f}  residual = {row.residual:+.5f}{extra}")
        if n == 3:
            print(f"  (residual is 8 j^2 err - ln j; ln j itself ranges up to {math.log(js[-1]):.2f})")


if __name__ == "__main__":
    main()
