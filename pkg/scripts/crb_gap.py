#!/usr/bin/env python3
"""Exact error against the Cramer-Rao bound 3/(2 n j(j+1)), cross-checked by quadrature."""

import argparse

from spinframe import Spin, coefficient_vector, crb_gap_report, error_via_quadrature


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--j", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    ap.add_argument("--n", type=int, nargs="+", default=[1, 10, 50, 100, 500])
    args = ap.parse_args()
    print(f"{'j':>5} {'n':>5} {'exact':>14} {'bound':>14} {'ratio':>9} {'quad ratio':>11}")
    for j in args.j:
        spin = Spin.from_j(j)
        for n in args.n:
            gap = crb_gap_report(n, spin)
            quad = error_via_quadrature(coefficient_vector(n, spin)).value / gap.crb_bound
            print(f"{j:5g} {n:5d} {gap.exact_error:14.8e} {gap.crb_bound:14.8e} {gap.ratio:9.5f} {quad:11.5f}")


if __name__ == "__main__":
    main()
