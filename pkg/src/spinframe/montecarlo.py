"""Monte Carlo simulation of the covariant estimation protocol.

Only the class angle of the relative rotation is drawn (the error does
not depend on the axis).  Draws use inverse-CDF sampling from a tabulated
CDF.  Uniforms come from Philox keyed by the seed, with trial ``i``
taking the ``i``-th 64-bit output, so any chunking or thread count gives
the same numbers.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .covariant import exact_error, outcome_density
from .decomposition import CoefficientVector, coefficient_vector
from .errors import ToleranceError
from .su2 import TWO_PI, Spin, squared_axis_distance

DEFAULT_GRID = 2**16 + 1
MAX_GRID = 2**20 + 1
DEFECT_LIMIT = 1e-6
MIN_TRIALS = 10**4
CHUNK = 2**16
_PHILOX_BLOCK = 4


def thread_count() -> int:
    """Worker cap from ``SPINFRAME_THREADS`` (default: CPU count)."""
    raw = os.environ.get("SPINFRAME_THREADS")
    if raw:
        return max(1, int(raw))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class SamplerTable:
    coefficients: CoefficientVector = field(repr=False)
    omega: np.ndarray = field(repr=False)
    cdf: np.ndarray = field(repr=False)
    defect: float = 0.0

    @property
    def grid_size(self) -> int:
        return len(self.omega)

    def sample(self, u: np.ndarray) -> np.ndarray:
        return np.interp(u, self.cdf, self.omega)


def _tabulate(c: CoefficientVector, grid_size: int):
    omega = np.linspace(0.0, TWO_PI, grid_size)
    q = outcome_density(c, omega)
    h = omega[1] - omega[0]
    steps = 0.5 * h * (q[1:] + q[:-1])
    cdf = np.concatenate([[0.0], np.cumsum(steps)])
    defect = abs(cdf[-1] - 1.0)
    return omega, cdf / cdf[-1], defect


def build_sampler(c: CoefficientVector, grid_size: int = DEFAULT_GRID, refine: bool = True) -> SamplerTable:
    """Tabulate the CDF of the outcome density with the trapezoid rule.

    The table is renormalized to end at exactly 1; the pre-normalization
    defect must stay below 1e-6.  The CDF is non-decreasing; it is strictly
    increasing wherever the increments are representable next to 1.  With ``refine`` the grid is doubled (up to
    2^20 intervals) until it does.
    """
    if grid_size < 4096:
        raise ValueError("grid_size must be >= 4096")
    if not c.normalized:
        raise ValueError("coefficient vector must be normalized")
    while True:
        omega, cdf, defect = _tabulate(c, grid_size)
        if defect <= DEFECT_LIMIT:
            break
        if not refine or grid_size >= MAX_GRID:
            raise ToleranceError(f"CDF defect {defect:.3e} with {grid_size} nodes", defect)
        grid_size = 2 * (grid_size - 1) + 1
    # q > 0 away from isolated zeros, but for sharply peaked densities the tail
    # increments drop below one ulp of 1.0, so only monotonicity is checkable
    if np.any(np.diff(cdf) < 0.0) or abs(cdf[-1] - 1.0) > 1e-9:
        raise ToleranceError("tabulated CDF is not monotone from 0 to 1")
    return SamplerTable(c, omega, cdf, defect)


def counter_uniforms(seed: int, start: int, count: int) -> np.ndarray:
    """Uniforms on [0, 1) for trials ``start .. start+count-1`` under ``seed``."""
    offset = start % _PHILOX_BLOCK
    gen = np.random.Philox(key=seed)
    gen.advance((start - offset) // _PHILOX_BLOCK)
    raw = gen.random_raw(count + offset)[offset:]
    return (raw >> np.uint64(11)).astype(np.float64) * (1.0 / 2.0**53)


def sample_angles(table: SamplerTable, trials: int, seed: int, threads: Optional[int] = None) -> np.ndarray:
    starts = range(0, trials, CHUNK)

    def chunk(start):
        return table.sample(counter_uniforms(seed, start, min(CHUNK, trials - start)))

    workers = threads or thread_count()
    if workers == 1 or trials <= CHUNK:
        parts = [chunk(s) for s in starts]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(chunk, starts))
    return np.concatenate(parts)


@dataclass(frozen=True)
class McResult:
    trials: int
    seed: int
    mean_d2: float
    std_error: float
    tail_frequencies: Optional[dict] = None
    tail_bounds: Optional[dict] = None
    exact_d2: Optional[float] = None
    grid_size: Optional[int] = None

    def __post_init__(self):
        if not math.isfinite(self.std_error):
            raise ValueError("std_error must be finite")

    def as_dict(self) -> dict:
        out = {"trials": self.trials, "seed": self.seed, "mean_d2": self.mean_d2, "std_error": self.std_error}
        if self.exact_d2 is not None:
            out["exact_d2"] = self.exact_d2
        if self.grid_size is not None:
            out["grid_size"] = self.grid_size
        if self.tail_frequencies is not None:
            out["tail_frequencies"] = {repr(float(e)): f for e, f in self.tail_frequencies.items()}
            out["tail_bounds"] = {repr(float(e)): b for e, b in self.tail_bounds.items()}
        return out


def _check_seed(seed: int):
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")


def _mean_and_se(d2: np.ndarray):
    n = len(d2)
    mean = math.fsum(d2.tolist()) / n
    var = math.fsum(((d2 - mean) ** 2).tolist()) / (n - 1)
    return mean, math.sqrt(var / n)


def simulate_state(
    c: CoefficientVector, trials: int, seed: int, grid_size: int = DEFAULT_GRID, threads: Optional[int] = None
):
    _check_seed(seed)
    if trials < 2:
        raise ValueError("need at least two trials")
    table = build_sampler(c, grid_size)
    d2 = squared_axis_distance(sample_angles(table, trials, seed, threads))
    return table, d2


def simulate_protocol(
    n: int, j: Spin, trials: int, seed: int, grid_size: int = DEFAULT_GRID, threads: Optional[int] = None
) -> McResult:
    """Sample-mean estimate of the error for n singlet copies."""
    if trials < MIN_TRIALS:
        raise ValueError(f"trials must be >= {MIN_TRIALS}")
    c = coefficient_vector(n, j)
    table, d2 = simulate_state(c, trials, seed, grid_size, threads)
    mean, se = _mean_and_se(d2)
    return McResult(trials, seed, mean, se, exact_d2=exact_error(c).value, grid_size=table.grid_size)


def chebyshev_check(
    c: CoefficientVector,
    epsilons: Sequence[float],
    trials: int,
    seed: int,
    grid_size: int = DEFAULT_GRID,
    threads: Optional[int] = None,
) -> McResult:
    """Empirical ``P[d^2 > eps^2]`` next to the Markov bound ``<d^2> / eps^2``."""
    if any(e <= 0 for e in epsilons):
        raise ValueError("epsilons must be positive")
    table, d2 = simulate_state(c, trials, seed, grid_size, threads)
    mean, se = _mean_and_se(d2)
    exact = exact_error(c).value
    freqs = {float(e): float(np.count_nonzero(d2 > e * e)) / trials for e in epsilons}
    bounds = {float(e): exact / (e * e) for e in epsilons}
    return McResult(trials, seed, mean, se, freqs, bounds, exact, table.grid_size)


def binomial_std_error(p: float, trials: int) -> float:
    return math.sqrt(max(p * (1.0 - p), 0.0) / trials)
