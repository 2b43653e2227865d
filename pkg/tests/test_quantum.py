"""Tests for iaqc/quantum.py."""
import math

import numpy as np
import pytest

from iaqc.errors import ParameterError
from iaqc.quantum import (
    Angle, PolarizationState, RotationOp, TWO_PI, bit_to_state, born_probability,
    canonical, compose, inverse, is_equivalent, measure, measure_angles,
    measure_collapse, rotate,
)


class TestAngles:

    def test_canonical_range(self) -> None:
        for value in (-7.0, -1e-18, 0.0, 3.0, TWO_PI, 20.0):
            c = canonical(value)
            assert 0.0 <= c < TWO_PI

    def test_canonical_array(self) -> None:
        out = canonical(np.array([-math.pi, TWO_PI, 1.0]))
        assert out == pytest.approx([math.pi, 0.0, 1.0])

    def test_equality_tolerance(self) -> None:
        assert Angle(0.0) == Angle(TWO_PI)
        assert Angle(1.0) == Angle(1.0 + 1e-13)
        assert Angle(1.0) != Angle(1.0 + 1e-9)

    def test_polarization_equivalence_mod_pi(self) -> None:
        assert is_equivalent(0.3, 0.3 + math.pi)
        assert Angle(0.3).is_equivalent(0.3 - math.pi)
        assert not is_equivalent(0.0, math.pi / 2)

    def test_arithmetic(self) -> None:
        assert Angle(3 * math.pi / 2) + Angle(math.pi) == Angle(math.pi / 2)
        assert -Angle(0.5) == Angle(TWO_PI - 0.5)


class TestRotations:

    def test_rotate_then_inverse_is_identity(self) -> None:
        state = PolarizationState(0.4)
        op = RotationOp(2.1)
        assert rotate(rotate(state, op), inverse(op)).psi == state.psi

    def test_composition_is_additive_and_commutes(self) -> None:
        a, b = RotationOp(0.7), RotationOp(1.1)
        assert compose(a, b).theta == Angle(1.8)
        assert compose(a, b).theta == compose(b, a).theta

    def test_rotation_order_does_not_matter(self) -> None:
        """1000 random (theta, phi) pairs on 10 random states: AB, BA and A+B agree."""
        draws = np.random.default_rng(1)
        states = [PolarizationState(float(a)) for a in draws.uniform(0.0, TWO_PI, 10)]
        for theta, phi in draws.uniform(-TWO_PI, TWO_PI, (1000, 2)):
            a, b = RotationOp(float(theta)), RotationOp(float(phi))
            both = RotationOp(float(theta + phi))
            for state in states:
                ab = rotate(rotate(state, a), b).psi
                assert ab == rotate(rotate(state, b), a).psi
                assert ab == rotate(state, both).psi

    def test_three_stage_cancellation(self) -> None:
        """B^-1 A^-1 B A applied to a bit state returns the bit state."""
        a, b = RotationOp(0.7), RotationOp(1.1)
        for bit in (0, 1):
            state = bit_to_state(bit)
            out = rotate(rotate(rotate(rotate(state, a), b), inverse(a)), inverse(b))
            assert out.psi == state.psi


class TestMeasurement:

    def test_born_probability_clamps_to_exact_values(self) -> None:
        assert born_probability(0.0, 0.0) == 1.0
        assert born_probability(math.pi / 2, 0.0) == 0.0
        assert born_probability(TWO_PI - 1e-15, 0.0) == 1.0
        assert born_probability(math.pi / 4, 0.0) == pytest.approx(0.5)

    def test_aligned_and_orthogonal_are_deterministic(self, rng) -> None:
        assert all(measure(PolarizationState(0.0), 0.0, rng) == 0 for _ in range(100))
        assert all(measure(PolarizationState(math.pi / 2), 0.0, rng) == 1 for _ in range(100))

    def test_born_frequency(self, rng) -> None:
        """cos^2(pi/3) = 0.25 within 0.02 over 20000 draws."""
        outcomes = measure_angles(np.full(20000, math.pi / 3), 0.0, rng)
        assert float(np.mean(outcomes == 0)) == pytest.approx(0.25, abs=0.02)

    def test_measure_collapse_aligns_with_basis(self, rng) -> None:
        for _ in range(20):
            bit, state = measure_collapse(PolarizationState(1.0), 0.3, rng)
            expected = 0.3 if bit == 0 else 0.3 + math.pi / 2
            assert state.psi == Angle(expected)

    def test_bit_to_state(self) -> None:
        assert bit_to_state(0).psi == Angle(0.0)
        assert bit_to_state(1).psi == Angle(math.pi / 2)
        with pytest.raises(ParameterError, match='bit'):
            bit_to_state(2)

    def test_empty_measurement(self, rng) -> None:
        assert measure_angles(np.zeros(0), 0.0, rng).size == 0
