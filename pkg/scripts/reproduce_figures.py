#!/usr/bin/env python3
"""Write the data behind every figure as CSV into an output directory."""

import argparse
import time
from pathlib import Path

from spinframe.figures import FIGURES, figure_rows
from spinframe.reports import write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("figures"))
    ap.add_argument("--only", choices=FIGURES, nargs="*", default=list(FIGURES))
    ap.add_argument("--stride", type=int, default=1, help="keep every stride-th grid point")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for which in args.only:
        t0 = time.perf_counter()
        rows = figure_rows(which, args.stride)
        path = args.out / f"{which}.csv"
        write_csv(rows, path)
        print(f"{which:11s} {len(rows):6d} rows  {time.perf_counter() - t0:6.1f}s  -> {path}")


if __name__ == "__main__":
    main()
