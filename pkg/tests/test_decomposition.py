import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinframe.decomposition import (
    CoefficientVector,
    closed_form_multiplicity,
    coefficient_vector,
    coefficient_vector_via_character_integral,
    gaussian_weight_approx,
    multiplicity_table,
)
from spinframe.errors import ToleranceError
from spinframe.figures import rescaled_distribution
from spinframe.su2 import QuadratureSpec, Spin


def weight_count_multiplicities(n: int, twice_j: int) -> dict:
    """Oracle: m_k = N(M = k) - N(M = k + 1) from the weight multiset of the tensor power."""
    counts = np.ones(twice_j + 1, dtype=object)
    for _ in range(n - 1):
        counts = np.convolve(counts, np.ones(twice_j + 1, dtype=object))
    # counts[i] is the number of states with 2M = n*twice_j - 2i
    top = n * twice_j
    number = {top - 2 * i: int(c) for i, c in enumerate(counts)}
    return {t: number[t] - number.get(t + 2, 0) for t in range(top % 2, top + 1, 2)}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("twice_j", [1, 2, 3, 4, 7])
def test_recursion_matches_weight_counting(n, twice_j):
    table = multiplicity_table(n, Spin(twice_j))
    oracle = weight_count_multiplicities(n, twice_j)
    assert table.as_dict() == {t: m for t, m in oracle.items() if t >= table.twice_k_min}


def test_small_tables():
    assert multiplicity_table(2, Spin(1)).as_dict() == {0: 1, 2: 1}
    assert multiplicity_table(3, Spin(1)).as_dict() == {1: 2, 3: 1}
    assert multiplicity_table(3, Spin(2)).as_dict() == {0: 1, 2: 3, 4: 2, 6: 1}
    assert multiplicity_table(1, Spin(4)).as_dict() == {0: 0, 2: 0, 4: 1}


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("twice_j", range(1, 41))
def test_closed_forms(n, twice_j):
    j = Spin(twice_j)
    table = multiplicity_table(n, j)
    for t in table.twice_k:
        assert closed_form_multiplicity(n, j, Spin(int(t))) == table[int(t)]


def test_closed_form_rejects_foreign_sector():
    with pytest.raises(ValueError):
        closed_form_multiplicity(3, Spin(1), Spin(2))
    with pytest.raises(ValueError):
        closed_form_multiplicity(5, Spin(2), Spin(2))


@given(st.integers(1, 8), st.integers(0, 12))
def test_dimension_identity(n, twice_j):
    table = multiplicity_table(n, Spin(twice_j))
    assert table.dimension_sum() == (twice_j + 1) ** n


def test_dimension_identity_beyond_int64():
    table = multiplicity_table(40, Spin(5))
    assert table.counts.dtype == object
    assert table.dimension_sum() == 6**40


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("twice_j", range(1, 21))
def test_character_integral_oracle(n, twice_j):
    j = Spin(twice_j)
    a = coefficient_vector(n, j)
    b = coefficient_vector_via_character_integral(n, j)
    assert a.twice_k_min == b.twice_k_min
    np.testing.assert_allclose(a.probabilities, b.probabilities, rtol=0, atol=1e-9)
    np.testing.assert_allclose(a.values, b.values, rtol=0, atol=1e-9)


def test_character_integral_reports_poor_resolution():
    with pytest.raises(ToleranceError) as info:
        coefficient_vector_via_character_integral(4, Spin(40), QuadratureSpec(16))
    assert info.value.achieved > 1e-9


@given(st.integers(1, 6), st.integers(1, 30))
def test_coefficients_normalized(n, twice_j):
    c = coefficient_vector(n, Spin(twice_j))
    assert c.norm_squared() == pytest.approx(1.0, abs=1e-14)
    assert np.all(c.values >= 0)
    assert c.twice_k_max == n * twice_j


def test_coefficient_vector_validation():
    with pytest.raises(ValueError):
        CoefficientVector(Spin(2), None, 0, [0.5, 0.5])
    with pytest.raises(ValueError):
        CoefficientVector(Spin(2), None, 0, [-1.0])
    c = CoefficientVector.custom(Spin(2), 0, [1.0, 1.0])
    assert c.values == pytest.approx([math.sqrt(0.5)] * 2)
    assert CoefficientVector.single_sector(Spin(2), 2).twice_k.tolist() == [2]


@pytest.mark.parametrize("n", [3, 4])
def test_rescaled_distributions_converge(n):
    def curve(j):
        rows = rescaled_distribution(n, j)
        return np.array([r["k_over_j"] for r in rows]), np.array([r["rescaled_p"] for r in rows])

    x50, y50 = curve(50)
    x100, y100 = curve(100)
    assert np.max(np.abs(np.interp(x100, x50, y50) - y100)) <= 0.01


def test_gaussian_approximation_at_large_n():
    j = Spin(2)
    errs = []
    for n in (100, 1000):
        table = multiplicity_table(n, j)
        p = table.weights()
        i = int(np.argmax(p))
        errs.append(abs(gaussian_weight_approx(n, j, Spin(int(table.twice_k[i]))) / p[i] - 1.0))
    assert errs[1] < errs[0]
    assert errs[1] < 0.05
