"""Command-line front end.

Exit status: 0 on success, 1 on invalid parameters (one-line diagnostic on
stderr), 2 when an internal tolerance check fails.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import reports
from .asymptotics import residual_scan
from .covariant import error_via_quadrature, exact_error
from .decomposition import coefficient_vector, multiplicity_table
from .errors import ToleranceError
from .figures import FIGURES, figure_rows, ordered_map
from .filters import conditional_error, design_filter
from .fisher import crb_gap_report, qfi_matrix
from .locc import locc_single_pair_bound
from .montecarlo import DEFAULT_GRID, chebyshev_check, simulate_protocol
from .su2 import Spin

COMMANDS = ("error", "scan", "filter", "qfi", "crb", "mc", "multiplicities", "locc", "figures")
_RECORD_COMMANDS = {"mc", "locc"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    parameters: dict = field(default_factory=dict)
    output_path: Optional[str] = None
    format: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format is None:
            self.format = "json" if self.command in _RECORD_COMMANDS else "csv"
        if self.format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _twice_j_range(ns) -> list[Spin]:
    if ns.twice_j_step < 1:
        raise UsageError("--twice-j-step must be >= 1")
    return [Spin(t) for t in range(ns.twice_j_start, ns.twice_j_stop + 1, ns.twice_j_step)]


def _add_range(p, start=2, stop=20, step=2):
    p.add_argument("--twice-j-start", type=int, default=start)
    p.add_argument("--twice-j-stop", type=int, default=stop)
    p.add_argument("--twice-j-step", type=int, default=step)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spinframe", description="Reference-frame alignment with spin-j singlets.", allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, help_):
        p = sub.add_parser(name, help=help_, allow_abbrev=False)
        p.add_argument("--output", "-o", default=None, help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        return p

    p = command("error", "exact error for n copies")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--twice-j", type=int, required=True)
    p.add_argument("--method", choices=("closed_form", "quadrature"), default="closed_form")

    p = command("scan", "residual scan against the leading law")
    p.add_argument("--n", type=int, required=True, choices=(2, 3, 4))
    _add_range(p, 4, 200, 2)

    p = command("filter", "filter success probability and branch errors")
    _add_range(p, 1, 20, 1)

    p = command("qfi", "quantum Fisher information of one singlet")
    p.add_argument("--twice-j", type=int, nargs="+", required=True)
    p.add_argument("--method", choices=("trace", "vector"), default="trace")

    p = command("crb", "exact error against the Cramer-Rao bound")
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--twice-j", type=int, nargs="+", required=True)

    p = command("mc", "Monte Carlo simulation of the protocol")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--twice-j", type=int, required=True)
    p.add_argument("--trials", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilons", type=float, nargs="*", default=None)
    p.add_argument("--grid-size", type=int, default=DEFAULT_GRID)

    p = command("multiplicities", "sector multiplicity table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--twice-j", type=int, required=True)

    p = command("locc", "single-pair bound without invariant assistance")
    p.add_argument("--twice-j", type=int, default=1)

    p = command("figures", "data for a figure")
    p.add_argument("--which", choices=FIGURES, required=True)
    p.add_argument("--stride", type=int, default=1)
    return parser


def parse_config(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(list(argv))
    params = {k: v for k, v in vars(ns).items() if k not in ("command", "output", "format")}
    return RunConfig(ns.command, params, ns.output, ns.format)


def _rows(config: RunConfig):
    p = argparse.Namespace(**config.parameters)
    cmd = config.command
    if cmd == "error":
        c = coefficient_vector(p.n, Spin(p.twice_j))
        report = exact_error(c) if p.method == "closed_form" else error_via_quadrature(c)
        return [{"n": p.n, "twice_j": p.twice_j, "error": report.value, "method": report.method.value}], None
    if cmd == "scan":
        with ordered_map() as m:
            rows = residual_scan(p.n, _twice_j_range(p), map_fn=m)
        return [r.as_dict() for r in rows], ["n", "twice_j", "error", "leading_term", "residual"]
    if cmd == "filter":
        with ordered_map() as m:
            designs = list(m(design_filter, _twice_j_range(p)))
        rows = [
            {
                "j": d.j.j,
                "p_yes": d.p_yes,
                "argmin_twice_k": d.argmin_twice_k,
                "err_yes": conditional_error(d, "yes").value,
                "err_no": conditional_error(d, "no").value,
            }
            for d in designs
        ]
        return rows, None
    if cmd == "qfi":
        rows = []
        for t in p.twice_j:
            q = qfi_matrix(Spin(t), p.method)
            e = q.entries
            rows.append({
                "twice_j": t,
                "f_xx": e[0, 0],
                "f_yy": e[1, 1],
                "f_zz": e[2, 2],
                "max_offdiag": float(np.abs(e - np.diag(np.diag(e))).max()),
                "closed_form": q.closed_form()[0, 0],
                "max_deviation": q.max_deviation(),
            })
        return rows, None
    if cmd == "crb":
        return [crb_gap_report(n, Spin(t)).as_dict() for n, t in itertools.product(p.n, p.twice_j)], None
    if cmd == "multiplicities":
        table = multiplicity_table(p.n, Spin(p.twice_j))
        rows = [
            {"twice_k": int(t), "multiplicity": int(m), "p_k": w}
            for t, m, w in zip(table.twice_k, table.counts, table.weights())
        ]
        return rows, None
    if cmd == "figures":
        return figure_rows(p.which, p.stride), None
    raise AssertionError(cmd)


def _record(config: RunConfig) -> dict:
    p = argparse.Namespace(**config.parameters)
    if config.command == "mc":
        j = Spin(p.twice_j)
        if p.epsilons:
            res = chebyshev_check(coefficient_vector(p.n, j), p.epsilons, p.trials, p.seed, p.grid_size)
        else:
            res = simulate_protocol(p.n, j, p.trials, p.seed, p.grid_size)
        return {"n": p.n, "twice_j": p.twice_j, **res.as_dict()}
    if config.command == "locc":
        return locc_single_pair_bound(Spin(p.twice_j)).as_dict()
    raise AssertionError(config.command)


def _flatten(record: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in record.items():
        if isinstance(v, dict):
            out.update(_flatten(v, f"{prefix}{k}_"))
        else:
            out[f"{prefix}{k}"] = v
    return out


def run(config: RunConfig, stdout=None) -> int:
    """Execute ``config``; returns the process exit status."""
    out = config.output_path if config.output_path else (stdout or sys.stdout)
    try:
        if config.command in _RECORD_COMMANDS:
            rec = _record(config)
            if config.format == "json":
                reports.write_json(rec, out)
            else:
                reports.write_csv([_flatten(rec)], out)
        else:
            rows, columns = _rows(config)
            if config.format == "csv":
                reports.write_csv(rows, out, columns)
            else:
                reports.write_json(rows, out)
    except ToleranceError as exc:
        print(f"spinframe: tolerance failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError, UsageError) as exc:
        print(f"spinframe: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config = parse_config(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"spinframe: {str(exc).splitlines()[0] if str(exc) else 'invalid arguments'}", file=sys.stderr)
        return 1
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
