"""Quantum Fisher information of the rotated singlet and the Cramer-Rao comparison."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .covariant import n_copy_error
from .su2 import Spin, angular_momentum_matrices

MAX_QFI_TWICE_J = 100
MAX_VECTOR_TWICE_J = 10


@dataclass(frozen=True)
class QfiMatrix:
    j: Spin
    entries: np.ndarray

    def closed_form(self) -> np.ndarray:
        jj = self.j.j
        return 4.0 * jj * (jj + 1.0) / 3.0 * np.eye(3)

    def max_deviation(self) -> float:
        return float(np.max(np.abs(self.entries - self.closed_form())))


def singlet_vector(j: Spin) -> np.ndarray:
    """``|S_j>`` in the product basis ``|j,m>|j,m'>`` with m, m' running from j down to -j."""
    d = j.twice_j + 1
    psi = np.zeros((d, d))
    for a in range(d):
        # row a is m = j - a; partner -m sits at index d - 1 - a; sign (-1)^(j-m)
        psi[a, d - 1 - a] = (-1.0) ** a
    return psi.reshape(-1) / np.sqrt(d)


def _singlet_expectation(op: np.ndarray, j: Spin, method: str) -> complex:
    if method == "trace":
        return np.trace(op) / op.shape[0]
    psi = singlet_vector(j)
    big = np.kron(op, np.eye(op.shape[0]))
    return psi.conj() @ big @ psi


def qfi_matrix(j: Spin, method: str = "trace") -> QfiMatrix:
    """QFI matrix for the three rotation generators acting on one half of the singlet.

    ``method="trace"`` uses ``<A (x) I> = Tr A / (2j+1)``; ``method="vector"``
    builds the singlet explicitly (``twice_j <= 10``).
    """
    if j.twice_j < 1:
        raise ValueError("QFI needs j >= 1/2")
    if j.twice_j > MAX_QFI_TWICE_J:
        raise ValueError(f"twice_j={j.twice_j} exceeds the dense-matrix cap {MAX_QFI_TWICE_J}")
    if method == "vector" and j.twice_j > MAX_VECTOR_TWICE_J:
        raise ValueError(f"vector path is limited to twice_j <= {MAX_VECTOR_TWICE_J}")
    if method not in ("trace", "vector"):
        raise ValueError(f"unknown method {method!r}")
    gens = angular_momentum_matrices(j)
    means = [_singlet_expectation(g, j, method) for g in gens]
    f = np.empty((3, 3))
    for a in range(3):
        for b in range(3):
            sym = 0.5 * (gens[a] @ gens[b] + gens[b] @ gens[a])
            f[a, b] = 4.0 * (_singlet_expectation(sym, j, method) - means[a] * means[b]).real
    return QfiMatrix(j, f)


def crb_error_bound(n: int, j: Spin) -> float:
    """``(2/3) Tr[(n F_Q)^-1] = 3 / (2 n j (j+1))``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if j.twice_j < 1:
        raise ValueError("bound needs j >= 1/2")
    jj = j.j
    return 3.0 / (2.0 * n * jj * (jj + 1.0))


@dataclass(frozen=True)
class CrbGap:
    n: int
    j: Spin
    exact_error: float
    crb_bound: float

    @property
    def ratio(self) -> float:
        return self.exact_error / self.crb_bound

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "twice_j": self.j.twice_j,
            "exact_error": self.exact_error,
            "crb_bound": self.crb_bound,
            "ratio": self.ratio,
        }


def crb_gap_report(n: int, j: Spin) -> CrbGap:
    return CrbGap(n, j, n_copy_error(n, j).value, crb_error_bound(n, j))
