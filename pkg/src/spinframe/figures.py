"""Data behind each figure, on its plotted j grid."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager

from .asymptotics import C_FOUR_COPY
from .covariant import n_copy_error
from .decomposition import coefficient_vector
from .filters import conditional_error, design_filter
from .montecarlo import thread_count
from .su2 import Spin

FIGURES = ("fig3", "fig4", "fig5", "supp_nogo", "supp_3copy", "supp_4copy")
DISTRIBUTION_J = (10, 20, 50, 100)


@contextmanager
def ordered_map():
    """A ``map`` that may run in threads but always returns results in input order."""
    workers = thread_count()
    if workers == 1:
        yield map
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        yield pool.map


def integer_grid(start: int, stop: int, step: int, stride: int = 1) -> list[int]:
    return list(range(start, stop + 1, step))[::stride]


def _fig3_row(j: int) -> dict:
    return {"j": j, "twice_j": 2 * j, "p_yes": design_filter(Spin(2 * j)).p_yes}


def _fig4_row(j: int) -> dict:
    err = n_copy_error(4, Spin(2 * j)).value
    return {"j": j, "twice_j": 2 * j, "error": err, "scaled": j * j * err, "limit": C_FOUR_COPY}


def _fig5_row(j: int) -> dict:
    err = n_copy_error(3, Spin(2 * j)).value
    return {"j": j, "twice_j": 2 * j, "error": err, "residual": 8.0 * j * j * err - math.log(j)}


def _nogo_row(j: int) -> dict:
    err = conditional_error(design_filter(Spin(2 * j)), "no").value
    return {"j": j, "twice_j": 2 * j, "error_no": err, "scaled": j * err}


def rescaled_distribution(n: int, j: int) -> list[dict]:
    """Sector weights in units where ``x = k/j`` and the density is ``j p_k``."""
    c = coefficient_vector(n, Spin(2 * j))
    return [
        {"j": j, "twice_j": 2 * j, "k_over_j": tk / (2.0 * j), "rescaled_p": j * p}
        for tk, p in zip(c.twice_k, c.probabilities)
    ]


def figure_rows(which: str, stride: int = 1) -> list[dict]:
    if stride < 1:
        raise ValueError("stride must be >= 1")
    if which in ("supp_3copy", "supp_4copy"):
        n = 3 if which == "supp_3copy" else 4
        return [row for j in DISTRIBUTION_J[::stride] for row in rescaled_distribution(n, j)]
    grids = {
        "fig3": (_fig3_row, integer_grid(10, 1000, 1, stride)),
        "fig4": (_fig4_row, integer_grid(100, 10000, 100, stride)),
        "fig5": (_fig5_row, integer_grid(100, 10000, 100, stride)),
        "supp_nogo": (_nogo_row, integer_grid(10, 10000, 1, stride)),
    }
    if which not in grids:
        raise ValueError(f"unknown figure {which!r}; choose from {', '.join(FIGURES)}")
    fn, js = grids[which]
    with ordered_map() as m:
        return list(m(fn, js))
