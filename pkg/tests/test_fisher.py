import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinframe.fisher import crb_error_bound, crb_gap_report, qfi_matrix, singlet_vector
from spinframe.su2 import Spin, angular_momentum_matrices


@pytest.mark.parametrize("twice_j", range(1, 41))
def test_qfi_closed_form(twice_j):
    assert qfi_matrix(Spin(twice_j)).max_deviation() <= 1e-9


@pytest.mark.parametrize("twice_j", range(1, 11))
def test_qfi_vector_path(twice_j):
    j = Spin(twice_j)
    np.testing.assert_allclose(qfi_matrix(j, "vector").entries, qfi_matrix(j).entries, atol=1e-10)


@pytest.mark.parametrize("twice_j", [1, 2, 3, 4])
def test_singlet_is_invariant(twice_j):
    j = Spin(twice_j)
    psi = singlet_vector(j)
    eye = np.eye(twice_j + 1)
    assert np.vdot(psi, psi).real == pytest.approx(1.0)
    for g in angular_momentum_matrices(j):
        # U (x) U fixes the singlet, so the total generators annihilate it
        total = np.kron(g, eye) + np.kron(eye, g)
        assert np.linalg.norm(total @ psi) < 1e-12


def test_qfi_limits():
    with pytest.raises(ValueError):
        qfi_matrix(Spin(0))
    with pytest.raises(ValueError):
        qfi_matrix(Spin(101))
    with pytest.raises(ValueError):
        qfi_matrix(Spin(12), "vector")
    with pytest.raises(ValueError):
        qfi_matrix(Spin(2), "magic")


@given(st.integers(1, 60))
def test_single_copy_ratio(twice_j):
    j = Spin(twice_j).j
    assert crb_gap_report(1, Spin(twice_j)).ratio == pytest.approx(8 * j * (j + 1) / 9, abs=1e-9)


def test_bound_formula():
    assert crb_error_bound(3, Spin(2)) == pytest.approx(0.25)
    with pytest.raises(ValueError):
        crb_error_bound(0, Spin(2))


def test_ratio_approaches_one_in_n():
    gaps = [abs(crb_gap_report(n, Spin(2)).ratio - 1.0) for n in (10, 50, 100, 500)]
    assert gaps == sorted(gaps, reverse=True)
    assert crb_gap_report(500, Spin(2)).ratio <= 1.05
    assert crb_gap_report(100, Spin(2)).ratio <= 1.15


def test_bound_is_asymptotic_only():
    # at finite n the exact optimum sits just below 3/(2 n j(j+1)), which is
    # therefore not a strict lower bound; the same holds for n = 1, j = 1/2
    assert crb_gap_report(10, Spin(2)).ratio < 1.0
    assert crb_gap_report(1, Spin(1)).ratio == pytest.approx(2.0 / 3.0)


def test_report_dict():
    d = crb_gap_report(10, Spin(2)).as_dict()
    assert list(d) == ["n", "twice_j", "exact_error", "crb_bound", "ratio"]
