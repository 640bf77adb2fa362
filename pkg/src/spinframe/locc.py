"""Single-pair bound without rotation-invariant assistance.

Evaluates ``(2j+1) int dmu(h) d^2(h) |<psi|U_h|psi>|^2`` over SU(2), with the
Haar measure factorised as ``sin^2(omega/2) domega / pi`` times the uniform
measure on the rotation axis.  Writing ``n.J = V diag(m) V^dag`` gives
``<psi|U_h|psi> = sum_m |<v_m|psi>|^2 exp(-i omega m)``, so each axis needs one
eigendecomposition and the angle integral is a short trigonometric sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from .errors import ToleranceError
from .su2 import TWO_PI, QuadratureSpec, Spin, angular_momentum_matrices, class_nodes, haar_class_weight, squared_axis_distance

ASSISTED_VALUE = 4.0 / 3.0
MAX_TWICE_J = 20
MIN_ANGLE_NODES = 512


@dataclass(frozen=True)
class SingleSpinState:
    j: Spin
    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex)
        if a.shape != (self.j.dimension(),):
            raise ValueError(f"need {self.j.dimension()} amplitudes, got shape {a.shape}")
        if abs(np.vdot(a, a).real - 1.0) > 1e-12:
            raise ValueError("state must have unit norm")
        object.__setattr__(self, "amplitudes", a)

    @classmethod
    def basis(cls, j: Spin, m_index: int) -> "SingleSpinState":
        """``|j, j - m_index>``; index 0 is the highest weight state."""
        a = np.zeros(j.dimension(), dtype=complex)
        a[m_index] = 1.0
        return cls(j, a)

    @classmethod
    def from_vector(cls, j: Spin, vec) -> "SingleSpinState":
        v = np.asarray(vec, dtype=complex)
        return cls(j, v / np.linalg.norm(v))


def sphere_nodes(n_theta: int):
    """Product rule on the unit sphere: Gauss-Legendre in cos(theta), uniform in phi.

    Weights sum to 1 (uniform probability measure).
    """
    x, w = np.polynomial.legendre.leggauss(n_theta)
    n_phi = 2 * n_theta
    phi = TWO_PI * np.arange(n_phi) / n_phi
    st = np.sqrt(1.0 - x * x)
    axes = np.stack(
        [np.outer(st, np.cos(phi)).ravel(), np.outer(st, np.sin(phi)).ravel(), np.repeat(x, n_phi)], axis=1
    )
    weights = np.repeat(w / 2.0, n_phi) / n_phi
    return axes, weights


def _axis_nodes(j: Spin) -> int:
    return max(24, 2 * j.twice_j + 4)


def _angle_spec(quad: QuadratureSpec) -> QuadratureSpec:
    return quad if quad.node_count >= MIN_ANGLE_NODES else QuadratureSpec(MIN_ANGLE_NODES, quad.rule, quad.abs_tolerance)


def _overlap_weights(psi: SingleSpinState, axes: np.ndarray) -> np.ndarray:
    """``|<v_m(n)|psi>|^2`` for each axis n and eigenvalue m (ascending)."""
    jx, jy, jz = angular_momentum_matrices(psi.j)
    gen = axes[:, 0, None, None] * jx + axes[:, 1, None, None] * jy + axes[:, 2, None, None] * jz
    _, vecs = np.linalg.eigh(gen)
    amps = np.einsum("aim,i->am", vecs.conj(), psi.amplitudes)
    return np.abs(amps) ** 2


def _integrals(psi: SingleSpinState, quad: QuadratureSpec, n_theta: Optional[int] = None):
    j = psi.j
    axes, aw = sphere_nodes(n_theta or _axis_nodes(j))
    weights = _overlap_weights(psi, axes)
    m = -j.j + np.arange(j.dimension())
    omega, ow = class_nodes(_angle_spec(quad))
    phase = np.exp(-1j * np.outer(m, omega))
    fidelity = np.abs(weights @ phase) ** 2  # axes x angles
    axis_avg = aw @ fidelity
    base = ow * haar_class_weight(omega) * axis_avg
    dim = j.dimension()
    return dim * math.fsum((base * squared_axis_distance(omega)).tolist()), dim * math.fsum(base.tolist())


def single_spin_state_error(psi: SingleSpinState, quad: Optional[QuadratureSpec] = None) -> float:
    """Error bound achievable from the single-spin probe ``psi``.

    The Schur-orthogonality identity ``(2j+1) int |<psi|U|psi>|^2 = 1`` is
    checked alongside; a miss beyond ``quad.abs_tolerance`` raises.
    """
    if psi.j.twice_j > MAX_TWICE_J:
        raise ValueError(f"twice_j must be <= {MAX_TWICE_J}")
    if psi.j.twice_j == 0:
        raise ValueError("spin 0 carries no direction")
    quad = quad or QuadratureSpec(MIN_ANGLE_NODES)
    value, norm = _integrals(psi, quad)
    if abs(norm - 1.0) > quad.abs_tolerance:
        raise ToleranceError(f"normalization self-test off by {abs(norm - 1.0):.3e}", abs(norm - 1.0))
    return value


def normalization_integral(psi: SingleSpinState, quad: Optional[QuadratureSpec] = None) -> float:
    """``(2j+1) int dmu |<psi|U_h|psi>|^2`` (equals 1)."""
    return _integrals(psi, quad or QuadratureSpec(MIN_ANGLE_NODES))[1]


def spin_half_error_analytic_axis(psi: SingleSpinState, quad: Optional[QuadratureSpec] = None) -> float:
    """Spin-1/2 path with the axis average done by hand.

    ``|<psi|U|psi>|^2 = cos^2(omega/2) + (n.r)^2 sin^2(omega/2)`` for Bloch
    vector r, and ``(n.r)^2`` averages to 1/3 over the sphere.
    """
    if psi.j.twice_j != 1:
        raise ValueError("analytic axis average is implemented for j = 1/2 only")
    omega, ow = class_nodes(_angle_spec(quad or QuadratureSpec(MIN_ANGLE_NODES)))
    half = omega / 2.0
    fid = np.cos(half) ** 2 + np.sin(half) ** 2 / 3.0
    return 2.0 * math.fsum((ow * haar_class_weight(omega) * squared_axis_distance(omega) * fid).tolist())


@dataclass(frozen=True)
class LoccBound:
    j: Spin
    value: float
    certified: bool

    @property
    def gap(self) -> float:
        return self.value - ASSISTED_VALUE

    def as_dict(self) -> dict:
        return {
            "twice_j": self.j.twice_j,
            "locc_bound": self.value,
            "assisted_value": ASSISTED_VALUE,
            "gap": self.gap,
            "certified": self.certified,
        }


def _random_state(j: Spin, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=j.dimension()) + 1j * rng.normal(size=j.dimension())
    return v / np.linalg.norm(v)


def locc_single_pair_bound(j: Spin, quad: Optional[QuadratureSpec] = None, restarts: int = 4, seed: int = 0) -> LoccBound:
    """Minimum over probe states of ``single_spin_state_error``.

    For j = 1/2 every pure state is a rotation of ``|up>``, so the value is
    exact (``certified``).  For larger j a local search from the weight
    states and a few random starts gives a heuristic minimum only.
    """
    quad = quad or QuadratureSpec(MIN_ANGLE_NODES)
    if j.twice_j == 1:
        return LoccBound(j, single_spin_state_error(SingleSpinState.basis(j, 0), quad), True)
    d = j.dimension()
    rng = np.random.default_rng(seed)

    def cost(x):
        v = x[:d] + 1j * x[d:]
        return single_spin_state_error(SingleSpinState.from_vector(j, v), quad)

    starts = [np.eye(d)[i].astype(complex) for i in range((d + 1) // 2)]
    starts += [_random_state(j, rng) for _ in range(restarts)]
    best = math.inf
    for s in starts:
        res = minimize(cost, np.concatenate([s.real, s.imag]), method="Nelder-Mead", options={"maxiter": 200 * d})
        best = min(best, float(res.fun))
    return LoccBound(j, best, False)
