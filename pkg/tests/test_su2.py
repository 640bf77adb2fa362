import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinframe.su2 import (
    TWO_PI,
    ClassAngle,
    QuadratureRule,
    QuadratureSpec,
    Spin,
    angular_momentum_matrices,
    character,
    class_nodes,
    frame_distance,
    haar_class_weight,
    rotation_matrix,
    squared_axis_distance,
)

angles = st.floats(0.0, TWO_PI, allow_nan=False)


def direct_character(k: Spin, omega: float) -> float:
    m = -k.j + np.arange(k.dimension())
    return float(np.sum(np.cos(m * omega)))


class TestSpin:
    def test_from_j_roundtrip(self):
        assert Spin.from_j(2.5) == Spin(5)
        assert Spin(5).j == 2.5
        assert Spin(5).is_half_integer
        assert str(Spin(5)) == "5/2"
        assert str(Spin(4)) == "2"

    @pytest.mark.parametrize("bad", [-1, 1.5, True, "2"])
    def test_rejects(self, bad):
        with pytest.raises((TypeError, ValueError)):
            Spin(bad)

    def test_from_j_rejects_thirds(self):
        with pytest.raises(ValueError):
            Spin.from_j(1 / 3)


def test_class_angle_range():
    ClassAngle(0.0)
    ClassAngle(TWO_PI)
    with pytest.raises(ValueError):
        ClassAngle(7.0)


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(8)
    assert QuadratureSpec(100).doubled().node_count == 200


@pytest.mark.parametrize("rule", list(QuadratureRule))
def test_class_nodes_integrate_haar_weight(rule):
    omega, w = class_nodes(QuadratureSpec(256, rule))
    assert math.fsum(w * haar_class_weight(omega)) == pytest.approx(1.0, abs=1e-13)


@given(st.integers(0, 30), angles)
def test_character_matches_weight_sum(twice_k, omega):
    k = Spin(twice_k)
    assert character(k, omega) == pytest.approx(direct_character(k, omega), abs=1e-9 * k.dimension() ** 2)


@pytest.mark.parametrize("twice_k", [0, 1, 2, 7, 40])
def test_character_limits_at_endpoints(twice_k):
    k = Spin(twice_k)
    assert character(k, 0.0) == k.dimension()
    assert character(k, TWO_PI) == (-1) ** twice_k * k.dimension()


@pytest.mark.parametrize("twice_k", [1, 4, 9, 20])
def test_character_guard_is_smooth(twice_k):
    # either side of the switch between the guard and the ratio
    k = Spin(twice_k)
    for omega in (1.9e-6, 2.1e-6, TWO_PI - 1.9e-6, TWO_PI - 2.1e-6):
        assert character(k, omega) == pytest.approx(direct_character(k, omega), rel=1e-12)


def test_character_orthogonality():
    omega, w = class_nodes(QuadratureSpec(2048))
    chis = np.array([character(Spin(t), omega) for t in range(21)])
    gram = (chis * (w * haar_class_weight(omega))) @ chis.T
    assert np.max(np.abs(gram - np.eye(21))) <= 1e-9


@pytest.mark.parametrize("twice_k", range(0, 12))
def test_character_reflection(twice_k):
    k = Spin(twice_k)
    omega = np.linspace(0.0, TWO_PI, 513)
    sign = -1.0 if k.is_half_integer else 1.0
    np.testing.assert_allclose(character(k, TWO_PI - omega), sign * character(k, omega), atol=1e-12)


def test_character_rejects_out_of_range():
    with pytest.raises(ValueError):
        character(Spin(2), 7.0)


def test_axis_distance_matches_rotation_matrices():
    rng = np.random.default_rng(7)
    for _ in range(100):
        axis = rng.normal(size=3)
        omega = rng.uniform(0.0, TWO_PI)
        r = rotation_matrix(axis, omega)
        assert frame_distance(r) == pytest.approx(squared_axis_distance(omega), abs=1e-12)


def test_rotation_matrix_is_orthogonal():
    r = rotation_matrix([1.0, 2.0, 3.0], 1.1)
    np.testing.assert_allclose(r @ r.T, np.eye(3), atol=1e-14)
    assert np.linalg.det(r) == pytest.approx(1.0)


@given(angles)
def test_axis_distance_bounds(omega):
    d2 = squared_axis_distance(omega)
    assert -1e-15 <= d2 <= 8.0 / 3.0 + 1e-15


@pytest.mark.parametrize("twice_j", [1, 2, 3, 6])
def test_angular_momentum_algebra(twice_j):
    jj = Spin(twice_j).j
    jx, jy, jz = angular_momentum_matrices(Spin(twice_j))
    np.testing.assert_allclose(jx @ jy - jy @ jx, 1j * jz, atol=1e-12)
    casimir = jx @ jx + jy @ jy + jz @ jz
    np.testing.assert_allclose(casimir, jj * (jj + 1) * np.eye(twice_j + 1), atol=1e-12)
    np.testing.assert_allclose(np.diag(jz).real, jj - np.arange(twice_j + 1))
