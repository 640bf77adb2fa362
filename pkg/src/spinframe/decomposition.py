"""Sector decomposition of n copies of the spin-j singlet.

The n-fold power of ``|S_j>`` splits into spin-k singlets with weights
``p_{n,k} = (2k+1) m_{n,k} / (2j+1)^n`` where ``m_{n,k}`` is the number of
times spin k appears in ``j^{(x) n}``.  Multiplicities come from an exact
integer recursion; the character integral is kept as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ToleranceError
from .su2 import QuadratureSpec, Spin, character, class_nodes

MAX_SECTOR_SPAN = 10**6
_INT64_SAFE = 2**62
_ORACLE_ZERO_FLOOR = 1e-13
_FLOAT_EXACT = 2**53


def _k_min_twice(n: int, j: Spin) -> int:
    return 1 if (n % 2 == 1 and j.is_half_integer) else 0


@dataclass(frozen=True)
class MultiplicityTable:
    """Multiplicities ``m_{n,k}`` for ``twice_k = twice_k_min, twice_k_min+2, ..., n*twice_j``."""

    n: int
    j: Spin
    twice_k_min: int
    counts: np.ndarray = field(repr=False)

    @property
    def twice_k_max(self) -> int:
        return self.n * self.j.twice_j

    @property
    def twice_k(self) -> np.ndarray:
        return np.arange(self.twice_k_min, self.twice_k_max + 1, 2)

    @property
    def total_dimension(self) -> int:
        return (self.j.twice_j + 1) ** self.n

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, twice_k: int) -> int:
        if twice_k < self.twice_k_min or twice_k > self.twice_k_max or (twice_k - self.twice_k_min) % 2:
            raise KeyError(twice_k)
        return int(self.counts[(twice_k - self.twice_k_min) // 2])

    def as_dict(self) -> dict[int, int]:
        return {int(t): int(m) for t, m in zip(self.twice_k, self.counts)}

    def dimension_sum(self) -> int:
        """Exact ``sum_k (2k+1) m_k``; equals ``(2j+1)^n``."""
        return sum((int(t) + 1) * int(m) for t, m in zip(self.twice_k, self.counts))

    def weights(self) -> np.ndarray:
        """Sector probabilities ``p_k`` as floats, each correctly rounded."""
        total = self.total_dimension
        if total < _FLOAT_EXACT and self.counts.dtype != object:
            # every operand is an exact float64 integer, so one division rounds once
            return ((self.twice_k + 1) * self.counts).astype(float) / float(total)
        return np.array([(int(t) + 1) * int(m) / total for t, m in zip(self.twice_k, self.counts)])


@dataclass(frozen=True)
class CoefficientVector:
    """Non-negative amplitudes ``c_k`` over consecutive sectors starting at ``twice_k_min``.

    ``n`` is ``None`` for states not derived from copies of the singlet.
    """

    j: Spin
    n: Optional[int]
    twice_k_min: int
    values: np.ndarray = field(repr=False)
    normalized: bool = True

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 1 or v.size == 0:
            raise ValueError("coefficient vector must be a non-empty 1-d sequence")
        if np.any(v < 0) or not np.all(np.isfinite(v)):
            raise ValueError("amplitudes must be finite and non-negative")
        if self.twice_k_min < 0:
            raise ValueError("twice_k_min must be non-negative")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        if self.normalized and abs(float(v @ v) - 1.0) > 1e-10:
            raise ValueError(f"vector flagged normalized but sum c_k^2 = {self.norm_squared()!r}")

    @classmethod
    def custom(cls, j: Spin, twice_k_min: int, values, normalize: bool = True) -> "CoefficientVector":
        v = np.asarray(values, dtype=float)
        if normalize:
            v = v / math.sqrt(math.fsum((v * v).tolist()))
        return cls(j, None, twice_k_min, v, normalized=normalize)

    @classmethod
    def single_sector(cls, j: Spin, twice_k: int) -> "CoefficientVector":
        return cls(j, None, twice_k, np.array([1.0]))

    @property
    def twice_k(self) -> np.ndarray:
        return self.twice_k_min + 2 * np.arange(len(self.values))

    @property
    def twice_k_max(self) -> int:
        return self.twice_k_min + 2 * (len(self.values) - 1)

    @property
    def probabilities(self) -> np.ndarray:
        return self.values**2

    def norm_squared(self) -> float:
        return math.fsum((self.values**2).tolist())

    def __len__(self):
        return len(self.values)


def _box_convolve(counts, lo_index, hi_index):
    prefix = np.concatenate([np.zeros(1, dtype=counts.dtype), np.cumsum(counts)])
    return prefix[hi_index + 1] - prefix[lo_index]


def multiplicity_table(n: int, j: Spin) -> MultiplicityTable:
    """Exact multiplicities by repeated Clebsch-Gordan coupling with spin j.

    A spin k' coupled to j yields every k with ``|k'-j| <= k <= k'+j``, so one
    coupling step is a box sum over the previous table, done with prefix sums.
    Values stay in int64 while the total dimension allows it and switch to
    Python integers beyond that.
    """
    if n < 1:
        raise ValueError(f"copy number must be >= 1, got {n}")
    if n * j.twice_j > MAX_SECTOR_SPAN:
        raise ValueError(f"n*twice_j = {n * j.twice_j} exceeds {MAX_SECTOR_SPAN}")
    tj = j.twice_j
    dtype = np.int64 if (tj + 1) ** n < _INT64_SAFE else object
    t_min = _k_min_twice(1, j)
    counts = np.zeros((tj - t_min) // 2 + 1, dtype=dtype)
    counts[-1] = 1
    for i in range(1, n):
        t_max = i * tj
        new_min = _k_min_twice(i + 1, j)
        new_t = np.arange(new_min, (i + 1) * tj + 1, 2)
        lo = np.abs(new_t - tj)
        hi = np.minimum(new_t + tj, t_max)
        counts = _box_convolve(counts, (lo - t_min) // 2, (hi - t_min) // 2)
        t_min = new_min
    return MultiplicityTable(n, j, t_min, counts)


def closed_form_multiplicity(n: int, j: Spin, k: Spin) -> int:
    """Piecewise polynomial multiplicity for two, three or four copies."""
    if n not in (2, 3, 4):
        raise ValueError(f"closed forms exist for n in {{2,3,4}}, got {n}")
    tk, tj = k.twice_j, j.twice_j
    if tk < _k_min_twice(n, j) or tk > n * tj or (tk - n * tj) % 2:
        raise ValueError(f"k={k} is not a sector of {n} copies of spin {j}")
    if n == 2:
        return 1
    # all arithmetic in quarter units: 4*m with K = 2k, J = 2j
    K, J = tk, tj
    if n == 3:
        return K + 1 if K <= J else (3 * J + 2 - K) // 2
    if K <= 2 * J:
        quad = -3 * K * K + 8 * K * J + 2 * K + 8 * J + 8
    else:
        quad = 16 * J * J + K * K - 8 * K * J + 24 * J - 6 * K + 8
    assert quad % 8 == 0
    return quad // 8


def coefficient_vector(n: int, j: Spin) -> CoefficientVector:
    """Normalized sector amplitudes ``c_k = sqrt((2k+1) m_{n,k} / (2j+1)^n)``."""
    table = multiplicity_table(n, j)
    values = np.sqrt(table.weights())
    # renormalise away the last-ulp rounding of the individual weights
    values = values / math.sqrt(math.fsum((values * values).tolist()))
    return CoefficientVector(j, n, table.twice_k_min, values)


def default_oracle_nodes(n: int, j: Spin) -> int:
    return max(4096, 16 * n * (j.twice_j + 1))


def _character_weights(n: int, j: Spin, spec: QuadratureSpec) -> np.ndarray:
    tk_min = _k_min_twice(n, j)
    twice_k = np.arange(tk_min, n * j.twice_j + 1, 2)
    omega, w = class_nodes(spec)
    half = omega / 2.0
    s = np.sin(half)
    ratio = character(j, omega) / (j.twice_j + 1)
    base = w * s * ratio**n / np.pi
    # weight(w) * chi_k(w) = sin(w/2) sin((2k+1)w/2) / pi
    out = np.empty(len(twice_k))
    for i, t in enumerate(twice_k):
        out[i] = (t + 1) * np.dot(base, np.sin((t + 1) * half))
    return out


def coefficient_vector_via_character_integral(
    n: int, j: Spin, quad: Optional[QuadratureSpec] = None
) -> CoefficientVector:
    """Sector amplitudes from ``p_{n,k} = (2k+1) int dmu chi_k (chi_j/(2j+1))^n``.

    The achieved accuracy is estimated by repeating the integral with twice
    the nodes; a ``ToleranceError`` is raised if it exceeds
    ``quad.abs_tolerance``.
    """
    if quad is None:
        quad = QuadratureSpec(default_oracle_nodes(n, j))
    p = _character_weights(n, j, quad)
    p_fine = _character_weights(n, j, quad.doubled())
    achieved = float(np.max(np.abs(p - p_fine)))
    if achieved > quad.abs_tolerance:
        raise ToleranceError(f"character integral accuracy {achieved:.3e} > {quad.abs_tolerance:.3e}", achieved)
    # weights of empty sectors come out as +-1e-16 noise; the square root
    # would blow that up to 1e-8, so anything under the floor is an exact zero
    values = np.sqrt(np.where(p < _ORACLE_ZERO_FLOOR, 0.0, p))
    return CoefficientVector(j, n, _k_min_twice(n, j), values, normalized=abs(math.fsum(p.tolist()) - 1.0) <= 1e-10)


def gaussian_weight_approx(n: int, j: Spin, k: Spin) -> float:
    """Large-n Gaussian approximation of the sector weight ``p_{n,k}``."""
    jj, kk = j.j, k.j
    s = n * jj * (jj + 1.0)
    return 3.0 * math.sqrt(3.0) * (2 * kk + 1) ** 2 / (2.0 * math.sqrt(2 * math.pi * s**3)) * math.exp(-1.5 * kk * kk / s)
