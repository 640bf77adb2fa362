"""SU(2) primitives: spin labels, characters, the Haar class measure,
spin matrices and the axis-averaged squared distance of a rotation.

Spins are stored as the integer ``twice_j = 2j`` so half-integers never
touch floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

TWO_PI = 2.0 * np.pi
_ANGLE_SLACK = 1e-12
_GUARD = 1e-6


@dataclass(frozen=True, order=True)
class Spin:
    """A spin label ``j`` held as ``twice_j = 2j``."""

    twice_j: int

    def __post_init__(self):
        if isinstance(self.twice_j, bool) or not isinstance(self.twice_j, (int, np.integer)):
            raise TypeError(f"twice_j must be an integer, got {self.twice_j!r}")
        if self.twice_j < 0:
            raise ValueError(f"twice_j must be non-negative, got {self.twice_j}")
        object.__setattr__(self, "twice_j", int(self.twice_j))

    @classmethod
    def from_j(cls, j: float) -> "Spin":
        twice = 2 * j
        if abs(twice - round(twice)) > 1e-12:
            raise ValueError(f"j={j} is not a multiple of 1/2")
        return cls(int(round(twice)))

    @property
    def j(self) -> float:
        return self.twice_j / 2

    @property
    def is_half_integer(self) -> bool:
        return self.twice_j % 2 == 1

    def dimension(self) -> int:
        return self.twice_j + 1

    def __str__(self):
        return str(self.twice_j // 2) if self.twice_j % 2 == 0 else f"{self.twice_j}/2"


@dataclass(frozen=True)
class ClassAngle:
    """Rotation angle of an SU(2) element, in ``[0, 2pi]``."""

    omega: float

    def __post_init__(self):
        if not (-_ANGLE_SLACK <= self.omega <= TWO_PI + _ANGLE_SLACK):
            raise ValueError(f"class angle {self.omega} outside [0, 2pi]")

    def __float__(self):
        return float(self.omega)


class QuadratureRule(str, Enum):
    TRAPEZOID = "trapezoid"
    GAUSS_LEGENDRE = "gauss-legendre"


@dataclass(frozen=True)
class QuadratureSpec:
    node_count: int = 4096
    rule: QuadratureRule = QuadratureRule.GAUSS_LEGENDRE
    abs_tolerance: float = 1e-9

    def __post_init__(self):
        if self.node_count < 16:
            raise ValueError(f"node_count must be >= 16, got {self.node_count}")
        object.__setattr__(self, "rule", QuadratureRule(self.rule))
        if not self.abs_tolerance > 0:
            raise ValueError("abs_tolerance must be positive")

    def doubled(self) -> "QuadratureSpec":
        return QuadratureSpec(2 * self.node_count, self.rule, self.abs_tolerance)


@lru_cache(maxsize=32)
def _legendre(node_count: int):
    x, w = roots_legendre(node_count)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def class_nodes(spec: QuadratureSpec, a: float = 0.0, b: float = TWO_PI):
    """Nodes and weights of ``spec`` mapped onto ``[a, b]``.

    The trapezoid rule is the periodic one (endpoint dropped), which is
    spectrally accurate for the trigonometric integrands used here.
    """
    n = spec.node_count
    if spec.rule is QuadratureRule.GAUSS_LEGENDRE:
        x, w = _legendre(n)
        half = 0.5 * (b - a)
        return a + half * (x + 1.0), half * w
    h = (b - a) / n
    return a + h * np.arange(n), np.full(n, h)


def _check_angles(omega):
    w = np.asarray(omega, dtype=float)
    if np.any(w < -_ANGLE_SLACK) or np.any(w > TWO_PI + _ANGLE_SLACK):
        raise ValueError("class angle outside [0, 2pi]")
    return w


def _as_angles(omega):
    if isinstance(omega, ClassAngle):
        omega = omega.omega
    return _check_angles(omega)


def character(k: Spin, omega):
    """Character ``chi_k(omega) = sin((2k+1) omega/2) / sin(omega/2)``.

    Vectorised over ``omega``. Near the removable singularities at 0 and
    2pi a Taylor expansion in the distance to the nearest endpoint is used;
    next to 2pi the value picks up the sign ``(-1)^(2k)``.
    """
    w = _as_angles(omega)
    dim = k.twice_j + 1
    # reflect into [0, pi]: chi_k(2pi - x) = (-1)^(2k) chi_k(x), and the
    # reflected argument keeps full relative precision next to 2pi
    delta = np.minimum(w, TWO_PI - w)
    sign = np.where((w > np.pi) & (k.twice_j % 2 == 1), -1.0, 1.0)
    s = np.sin(delta / 2.0)
    near = np.abs(s) < _GUARD
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.sin(dim * delta / 2.0) / s
    d2 = delta * delta
    n2 = dim * dim - 1.0
    series = dim * (1.0 - n2 * d2 / 24.0 + n2 * (3.0 * dim * dim - 7.0) * d2 * d2 / 5760.0)
    out = sign * np.where(near, series, out)
    return float(out) if np.ndim(out) == 0 else out


def haar_class_weight(omega):
    """Density ``sin^2(omega/2)/pi`` of the rotation angle under Haar measure."""
    w = _as_angles(omega)
    out = np.sin(w / 2.0) ** 2 / np.pi
    return float(out) if np.ndim(out) == 0 else out


def angular_momentum_matrices(j: Spin):
    """Spin-j matrices ``(Jx, Jy, Jz)`` in the basis ``|j, m>``, m = j..-j."""
    if j.twice_j == 0:
        raise ValueError("spin 0 has no nonzero angular momentum generators")
    jj = j.j
    m = jj - np.arange(j.twice_j + 1)
    # <m+1|J+|m> on the superdiagonal (rows ordered by decreasing m)
    raising = np.sqrt(jj * (jj + 1.0) - m[1:] * (m[1:] + 1.0))
    jp = np.diag(raising, k=1).astype(complex)
    jm = jp.conj().T
    jx = 0.5 * (jp + jm)
    jy = -0.5j * (jp - jm)
    jz = np.diag(m).astype(complex)
    return jx, jy, jz


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """SO(3) matrix of a right-handed rotation by ``angle`` about ``axis``."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    k = np.array([[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]])
    return np.eye(3) + np.sin(angle) * k + (1.0 - np.cos(angle)) * (k @ k)


def frame_distance(r: np.ndarray) -> float:
    """Mean squared displacement of the three unit axes under ``r``."""
    eye = np.eye(3)
    return float(np.sum((r @ eye - eye) ** 2) / 3.0)


def squared_axis_distance(omega):
    """Axis-averaged squared distance ``(4/3)(1 - cos omega)``."""
    w = _as_angles(omega)
    out = (8.0 / 3.0) * np.sin(w / 2.0) ** 2
    return float(out) if np.ndim(out) == 0 else out
