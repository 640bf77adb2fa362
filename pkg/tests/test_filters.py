import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinframe.covariant import n_copy_error
from spinframe.filters import P_YES_LIMIT, conditional_error, design_filter, repeated_filter_success
from spinframe.su2 import Spin


@pytest.fixture(scope="module")
def p_yes_curve():
    js = np.arange(10, 1001)
    return js, np.array([design_filter(Spin(2 * int(j))).p_yes for j in js])


def test_spin_half_by_hand():
    # two-copy weights (1/4, 3/4) against the optimal (1/2, 1/2)
    d = design_filter(Spin(1))
    assert d.p_yes == pytest.approx(0.5, abs=1e-15)
    assert d.argmin_twice_k == 0
    np.testing.assert_allclose(d.no_branch.values, [0.0, 1.0], atol=1e-15)
    assert conditional_error(d, "no").value == pytest.approx(4.0 / 3.0)


@given(st.integers(1, 120))
def test_contraction_is_tight(twice_j):
    att = design_filter(Spin(twice_j)).attenuation()
    assert np.all(att <= 1.0 + 1e-12)
    assert att.max() == pytest.approx(1.0, abs=1e-9)


@given(st.integers(1, 120))
def test_probability_bookkeeping(twice_j):
    d = design_filter(Spin(twice_j))
    assert d.p_yes + (1.0 - d.p_yes) * d.no_branch.norm_squared() == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(d.reconstructed_weights(), d.two_copy.probabilities, atol=1e-12, rtol=0)


def test_p_yes_band(p_yes_curve):
    _, p = p_yes_curve
    assert p.min() >= 0.439
    assert p.max() <= 0.50


def test_p_yes_tail_settles(p_yes_curve):
    _, p = p_yes_curve
    assert np.max(np.abs(p[-100:] - P_YES_LIMIT)) <= 0.001


def test_p_yes_above_44_percent_at_small_j(p_yes_curve):
    # the limit 0.4393 sits below 0.44, so this can only hold up to some j; it
    # does through j = 199 and fails from j = 200 on
    js, p = p_yes_curve
    assert np.all(p[js < 200] > 0.44)
    assert p[js == 200][0] <= 0.44


@pytest.mark.parametrize("twice_j", range(2, 201))
def test_yes_branch_beats_unfiltered(twice_j):
    j = Spin(twice_j)
    assert conditional_error(design_filter(j), "yes").value < n_copy_error(2, j).value


def test_no_branch_stays_standard_quantum_limited():
    for j in (1000, 10000):
        err = conditional_error(design_filter(Spin(2 * j)), "no").value
        assert 1.17 <= j * err <= 1.20


def test_branch_name_checked():
    with pytest.raises(ValueError):
        conditional_error(design_filter(Spin(2)), "maybe")


@pytest.mark.parametrize("n", range(1, 11))
def test_repeated_filter(n):
    assert repeated_filter_success(n) == pytest.approx(1.0 - 0.561**n, abs=1e-3)


def test_repeated_filter_validation():
    with pytest.raises(ValueError):
        repeated_filter_success(0)
