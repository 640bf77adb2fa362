"""Expected alignment error of the optimal covariant measurement.

For a signal state ``sum_k c_k |S_{k,g}>`` the optimal measurement
induces a class density ``q(omega) = weight(omega) [sum_k c_k chi_k(omega)]^2``
on the relative rotation, and the error is the average of the squared axis
distance under ``q``.  The closed form is evaluated as a sum of squared
adjacent differences, which avoids the cancellation in ``4 - 4 sum c_k c_{k-1}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .decomposition import CoefficientVector, coefficient_vector
from .errors import ToleranceError
from .su2 import QuadratureSpec, Spin, _as_angles, class_nodes, squared_axis_distance

MAX_ERROR = 8.0 / 3.0
_RANGE_SLACK = 1e-12


class Method(str, Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class ErrorReport:
    n: Optional[int]
    j: Spin
    value: float
    method: Method
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        if not (-_RANGE_SLACK <= self.value <= MAX_ERROR + _RANGE_SLACK):
            raise ValueError(f"error value {self.value} outside [0, 8/3]")
        if self.method is Method.MONTE_CARLO and "std_error" not in self.detail:
            raise ValueError("Monte Carlo reports need a std_error entry")

    def as_dict(self) -> dict:
        return {
            "n": "custom" if self.n is None else self.n,
            "twice_j": self.j.twice_j,
            "value": self.value,
            "method": self.method.value,
            **self.detail,
        }


def _require_normalized(c: CoefficientVector):
    if not c.normalized or abs(c.norm_squared() - 1.0) > 1e-10:
        raise ValueError("coefficient vector must be normalized")


def exact_error(c: CoefficientVector, literal: bool = False) -> ErrorReport:
    """Closed-form error of the optimal covariant measurement.

    The production path is ``(2/3)[sum (c_k - c_{k-1})^2 + c_min^2 + c_max^2
    + c_0^2]`` over adjacent sectors, with the ``c_0^2`` term present only when
    the lowest sector is k = 0.  ``literal=True`` evaluates
    ``(1/3)(4 + 2 c_0^2 - 4 sum c_k c_{k-1})`` instead, for comparison.
    """
    _require_normalized(c)
    v = c.values
    c0_sq = v[0] ** 2 if c.twice_k_min == 0 else 0.0
    if literal:
        value = (4.0 + 2.0 * c0_sq - 4.0 * math.fsum((v[1:] * v[:-1]).tolist())) / 3.0
    else:
        value = (2.0 / 3.0) * math.fsum(np.concatenate([np.diff(v) ** 2, [v[0] ** 2, v[-1] ** 2, c0_sq]]).tolist())
    return ErrorReport(c.n, c.j, value, Method.CLOSED_FORM, {"literal": literal} if literal else {})


def _sine_amplitude(c: CoefficientVector, omega: np.ndarray) -> np.ndarray:
    # sin(w/2) * sum_k c_k chi_k(w) == sum_k c_k sin((2k+1) w/2), no singularity
    half = 0.5 * omega
    out = np.zeros_like(half)
    for t, ck in zip(c.twice_k, c.values):
        if ck:
            out += ck * np.sin((t + 1) * half)
    return out


def outcome_density(c: CoefficientVector, omega):
    """Class density ``weight(omega) * [sum_k c_k chi_k(omega)]^2`` of the relative rotation."""
    w = _as_angles(omega)
    amp = _sine_amplitude(c, np.atleast_1d(w))
    out = amp * amp / np.pi
    return float(out[0]) if np.ndim(w) == 0 else out


def default_quadrature_nodes(c: CoefficientVector) -> int:
    return max(4096, 8 * (c.twice_k_max + 2))


def _integrate(c: CoefficientVector, spec: QuadratureSpec):
    omega, w = class_nodes(spec)
    q = outcome_density(c, omega)
    return math.fsum((w * q * squared_axis_distance(omega)).tolist()), math.fsum((w * q).tolist())


def error_via_quadrature(c: CoefficientVector, quad: Optional[QuadratureSpec] = None) -> ErrorReport:
    """Error by direct integration of the squared axis distance against the outcome density.

    Accuracy is estimated from a second run with twice the nodes and from
    the normalization of the density.
    """
    _require_normalized(c)
    if quad is None:
        quad = QuadratureSpec(default_quadrature_nodes(c))
    value, mass = _integrate(c, quad)
    fine, _ = _integrate(c, quad.doubled())
    achieved = max(abs(value - fine), abs(mass - 1.0))
    if achieved > quad.abs_tolerance:
        raise ToleranceError(f"quadrature accuracy {achieved:.3e} > {quad.abs_tolerance:.3e}", achieved)
    detail = {"node_count": quad.node_count, "rule": quad.rule.value, "density_mass": mass, "achieved_accuracy": achieved}
    return ErrorReport(c.n, c.j, value, Method.QUADRATURE, detail)


def optimal_state_coefficients(j: Spin) -> CoefficientVector:
    """Amplitudes ``sin(pi (k+1) / (2(j+1))) / sqrt(j+1)`` for ``k = 0..2j``, integer steps."""
    if j.twice_j < 1:
        raise ValueError("optimal state needs j >= 1/2")
    jj = j.j
    k = np.arange(j.twice_j + 1)
    values = np.sin(np.pi * (k + 1) / (2.0 * (jj + 1.0))) / math.sqrt(jj + 1.0)
    values = values / math.sqrt(math.fsum((values * values).tolist()))
    return CoefficientVector(j, None, 0, values)


def n_copy_error(n: int, j: Spin) -> ErrorReport:
    """Exact error for ``n`` copies of the spin-j singlet."""
    return exact_error(coefficient_vector(n, j))
