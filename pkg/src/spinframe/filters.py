"""Probabilistic filter turning two singlet copies into the optimal probe state.

Bob applies ``F_yes = lambda * sum_k (c_k^opt / c_k) P_k``.  Being a
contraction caps ``lambda^2`` at ``min_k p_k / p_k^opt``; the failure
branch ``F_no = sqrt(I - F_yes^2)`` leaves the weights
``(p_k - p_yes p_k^opt) / (1 - p_yes)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .covariant import ErrorReport, exact_error, optimal_state_coefficients
from .decomposition import CoefficientVector, coefficient_vector
from .su2 import Spin

P_YES_LIMIT = 0.4393
_CLAMP = 1e-15


@dataclass(frozen=True)
class FilterDesign:
    j: Spin
    lam: float
    p_yes: float
    argmin_twice_k: int
    two_copy: CoefficientVector
    yes_branch: CoefficientVector
    no_branch: CoefficientVector

    @property
    def argmin_k(self) -> Spin:
        return Spin(self.argmin_twice_k)

    def attenuation(self) -> np.ndarray:
        """Per-sector filter eigenvalues ``lambda c_k^opt / c_k``; all <= 1."""
        return self.lam * self.yes_branch.values / self.two_copy.values

    def reconstructed_weights(self) -> np.ndarray:
        return self.p_yes * self.yes_branch.probabilities + (1.0 - self.p_yes) * self.no_branch.probabilities


def design_filter(j: Spin) -> FilterDesign:
    """Largest-success filter; the bound is found by scanning all ``2j+1`` sectors."""
    if j.twice_j < 1:
        raise ValueError("filter needs j >= 1/2")
    two = coefficient_vector(2, j)
    opt = optimal_state_coefficients(j)
    p = two.probabilities
    p_opt = opt.probabilities
    ratio = p / p_opt
    i = int(np.argmin(ratio))
    p_yes = float(ratio[i])
    rest = p - p_yes * p_opt
    if np.any(rest < -_CLAMP):
        raise ArithmeticError("negative failure-branch weight beyond rounding")
    rest = np.clip(rest, 0.0, None)
    no_values = np.sqrt(rest / (1.0 - p_yes))
    no_values = no_values / math.sqrt(math.fsum((no_values**2).tolist()))
    no_branch = CoefficientVector(j, None, 0, no_values)
    return FilterDesign(j, math.sqrt(p_yes), p_yes, int(two.twice_k[i]), two, opt, no_branch)


def conditional_error(design: FilterDesign, branch: str) -> ErrorReport:
    if branch == "yes":
        return exact_error(design.yes_branch)
    if branch == "no":
        return exact_error(design.no_branch)
    raise ValueError(f"branch must be 'yes' or 'no', got {branch!r}")


def repeated_filter_success(pair_batches: int, p_yes: float = P_YES_LIMIT) -> float:
    """Chance that at least one of ``pair_batches`` independent filters succeeds.

    Uses the large-j success probability, so this is the asymptotic figure,
    not an exact finite-j value (compose with ``design_filter`` for that).
    """
    if pair_batches < 1:
        raise ValueError("pair_batches must be >= 1")
    return 1.0 - (1.0 - p_yes) ** pair_batches
