"""Leading-order error laws, the Euler-Maclaurin leading integrals, and residual scans.

The leading integrals treat the amplitude ``c(k) = sqrt(g(k)) / D`` as a smooth
function of k, where ``g(k) = (2k+1) m(k)`` is the piecewise polynomial from
the closed-form multiplicities and ``D = (2j+1)^(n/2)``.  Then
``c c'' = (g''/2 - g'^2 / (4 g)) / D^2`` in closed form.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .covariant import n_copy_error
from .su2 import QuadratureSpec, Spin, class_nodes

C_TWO_COPY = 2.0 / 3.0
C_UNFAVOURABLE = 1.189
C_FOUR_COPY = 11.0 * math.log(2.0) / 18.0


class Regime(str, Enum):
    N1 = "n1"
    N2 = "n2"
    N2_UNFAVOURABLE = "n2_unfavourable"
    N3 = "n3"
    N4 = "n4"
    OPTIMAL_STATE = "optimal_state"
    LARGE_N = "large_n"


_FIXED_N = {Regime.N1: 1, Regime.N2: 2, Regime.N2_UNFAVOURABLE: 2, Regime.N3: 3, Regime.N4: 4, Regime.OPTIMAL_STATE: 2}


@dataclass(frozen=True)
class AsymptoticFormula:
    regime: Regime
    evaluate: Callable[[int, float], float]


FORMULAS = {
    Regime.N1: AsymptoticFormula(Regime.N1, lambda n, j: 4.0 / 3.0),
    Regime.N2: AsymptoticFormula(Regime.N2, lambda n, j: C_TWO_COPY / j),
    Regime.N2_UNFAVOURABLE: AsymptoticFormula(Regime.N2_UNFAVOURABLE, lambda n, j: C_UNFAVOURABLE / j),
    Regime.N3: AsymptoticFormula(Regime.N3, lambda n, j: math.log(j) / (8.0 * j * j)),
    Regime.N4: AsymptoticFormula(Regime.N4, lambda n, j: C_FOUR_COPY / (j * j)),
    Regime.OPTIMAL_STATE: AsymptoticFormula(Regime.OPTIMAL_STATE, lambda n, j: math.pi**2 / (6.0 * j * j)),
    Regime.LARGE_N: AsymptoticFormula(Regime.LARGE_N, lambda n, j: 3.0 / (2.0 * n * j * (j + 1.0))),
}

COPY_REGIME = {1: Regime.N1, 2: Regime.N2, 3: Regime.N3, 4: Regime.N4}


def leading_term(regime, n: Optional[int], j: Spin) -> float:
    """Leading asymptotic error for ``regime``.

    ``n`` may be ``None`` for the fixed-copy regimes; if given it must match.
    """
    regime = Regime(regime)
    if j.twice_j < 1:
        raise ValueError("leading terms need j >= 1/2")
    fixed = _FIXED_N.get(regime)
    if fixed is None:
        if n is None or n < 1:
            raise ValueError("large_n regime needs a copy number n >= 1")
    elif n is not None and n != fixed:
        raise ValueError(f"regime {regime.value} describes n={fixed}, got n={n}")
    if regime is Regime.N3 and j.j <= 1.0:
        raise ValueError("the n3 law ln(j)/(8 j^2) is only positive for j > 1")
    return FORMULAS[regime].evaluate(n if n is not None else fixed, j.j)


def _poly_g(n: int, j: float, k: float, upper: Optional[bool] = None):
    """``g = (2k+1) m(k)`` and its first two derivatives in k.

    ``upper`` pins the polynomial branch; by default it follows k.
    """
    if n == 4:
        if (k <= 2 * j) if upper is None else not upper:
            m, dm, ddm = -1.5 * k * k + 4 * k * j + 0.5 * k + 2 * j + 1, -3 * k + 4 * j + 0.5, -3.0
        else:
            # factored so precision survives next to the root at k = 4j+1
            d = 4 * j + 1 - k
            m, dm, ddm = 0.5 * d * (d + 1), -(d + 0.5), 1.0
    elif n == 3:
        if (k <= j) if upper is None else not upper:
            m, dm, ddm = 2 * k + 1, 2.0, 0.0
        else:
            m, dm, ddm = 3 * j + 1 - k, -1.0, 0.0
    else:
        raise ValueError(f"leading integrals are defined for n in {{3,4}}, got {n}")
    a = 2 * k + 1
    return a * m, 2 * m + a * dm, 4 * dm + a * ddm


def continuous_amplitude(n: int, j: Spin, k: float, upper: Optional[bool] = None) -> float:
    g, _, _ = _poly_g(n, j.j, k, upper)
    return math.sqrt(g / (j.twice_j + 1) ** n)


def amplitude_curvature(n: int, j: Spin, k: float, method: str = "analytic", upper: Optional[bool] = None) -> float:
    """``c(k) c''(k)`` for the continuous amplitude, analytic or by central difference."""
    if method == "analytic":
        g, g1, g2 = _poly_g(n, j.j, k, upper)
        return (0.5 * g2 - g1 * g1 / (4.0 * g)) / (j.twice_j + 1) ** n
    if method == "central":
        # g vanishes at k = -1/2 and, on the upper branch, at k = n j + 1
        on_upper = (k > (2 * j.j if n == 4 else j.j)) if upper is None else upper
        room = min(k + 0.5, (n * j.j + 1.0 - k) if on_upper else math.inf)
        h = 1e-3 * min(j.j, room)
        amp = lambda x: continuous_amplitude(n, j, x, upper)  # noqa: E731
        c = amp(k)
        # Richardson-extrapolated second difference, O(h^4)
        d1 = (amp(k + h) - 2 * c + amp(k - h)) / (h * h)
        h2 = 2 * h
        d2 = (amp(k + h2) - 2 * c + amp(k - h2)) / (h2 * h2)
        return c * (4 * d1 - d2) / 3.0
    raise ValueError(f"unknown derivative method {method!r}")


def integration_ranges(n: int, j: Spin) -> list[tuple[float, float, bool]]:
    """``(a, b, upper_branch)`` for each piece of the leading integral."""
    jj = j.j
    if n == 4:
        return [(1.0, 2 * jj, False), (2 * jj + 1.0, 4 * jj - 1.0, True)]
    if n == 3:
        return [(jj + 1.0, 3 * jj - 1.0, True)]
    raise ValueError(f"leading integrals are defined for n in {{3,4}}, got {n}")


def leading_integral(n: int, j: Spin, quad: Optional[QuadratureSpec] = None, method: str = "analytic") -> float:
    """``-(2/3) int c(k) c''(k) dk`` over the split ranges for three or four copies.

    Each range gets its own copy of the ``quad`` rule (Gauss-Legendre, 4096
    nodes by default).
    """
    if j.twice_j < 20:
        raise ValueError("leading integrals need twice_j >= 20")
    if quad is None:
        quad = QuadratureSpec(4096)
    total = []
    for a, b, upper in integration_ranges(n, j):
        x, w = class_nodes(quad, a, b)
        if method == "analytic":
            vals = _curvature_array(n, j, x, upper)
        else:
            vals = np.array([amplitude_curvature(n, j, xi, method, upper) for xi in x])
        total.append(math.fsum((w * vals).tolist()))
    return -(2.0 / 3.0) * math.fsum(total)


def _curvature_array(n: int, j: Spin, k: np.ndarray, upper: bool) -> np.ndarray:
    g, g1, g2 = _poly_g(n, j.j, k, upper)
    return (0.5 * g2 - g1 * g1 / (4.0 * g)) / (j.twice_j + 1) ** n


@dataclass(frozen=True)
class ScanRow:
    n: int
    twice_j: int
    error: float
    leading_term: float
    residual: float
    method: str = "closed_form"

    def as_dict(self) -> dict:
        return asdict(self)


def scaled_residual(n: int, j: float, error: float) -> float:
    if n == 2:
        return j * error - C_TWO_COPY
    if n == 3:
        return 8.0 * j * j * error - math.log(j)
    if n == 4:
        return j * j * error - C_FOUR_COPY
    raise ValueError(f"residuals are defined for n in {{2,3,4}}, got {n}")


def residual_row(n: int, j: Spin) -> ScanRow:
    error = n_copy_error(n, j).value
    return ScanRow(n, j.twice_j, error, leading_term(COPY_REGIME[n], n, j), scaled_residual(n, j.j, error))


def residual_scan(n: int, j_values: Iterable[Spin], map_fn=map) -> list[ScanRow]:
    """Exact error and scaled residual against the regime's leading law, per j.

    ``map_fn`` lets callers plug in a parallel map; row order always follows
    ``j_values``.
    """
    if n not in (2, 3, 4):
        raise ValueError(f"residual scans are defined for n in {{2,3,4}}, got {n}")
    return list(map_fn(lambda j: residual_row(n, j), list(j_values)))


def least_squares_slope(x: Sequence[float], y: Sequence[float]) -> float:
    return float(np.polyfit(np.asarray(x, float), np.asarray(y, float), 1)[0])
