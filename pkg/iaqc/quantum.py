"""Polarization states, planar rotations and Born-rule measurement.

States are a single real angle: psi encodes cos(psi)|0> + sin(psi)|1>. All
operators the protocol uses are rotations in one plane, so composing and
inverting them is angle addition and no matrix is ever formed.
"""
import math
from dataclasses import dataclass

import numpy as np

from iaqc.errors import ParameterError

TWO_PI = 2.0 * math.pi
ANGLE_TOLERANCE = 1e-12
PROBABILITY_CLAMP = 1e-12


def canonical(radians):
    """Map an angle (scalar or array) into [0, 2*pi)."""
    value = np.mod(radians, TWO_PI)
    if np.ndim(value) == 0:
        value = float(value)
        # np.mod can return exactly 2*pi for tiny negative inputs
        return 0.0 if value >= TWO_PI else value
    value[value >= TWO_PI] = 0.0
    return value


@dataclass(frozen=True)
class Angle:
    """An angle in radians, stored in its canonical representative."""
    radians: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'radians', canonical(float(self.radians)))

    def __add__(self, other):
        return Angle(self.radians + _radians(other))

    def __sub__(self, other):
        return Angle(self.radians - _radians(other))

    def __neg__(self):
        return Angle(-self.radians)

    def __float__(self):
        return self.radians

    def __eq__(self, other):
        if not isinstance(other, (Angle, int, float)):
            return NotImplemented
        return circular_distance(self.radians, _radians(other), TWO_PI) <= ANGLE_TOLERANCE

    def __hash__(self):
        return hash(round(self.radians, 9))

    def is_equivalent(self, other):
        """True when both angles describe the same polarization (equal mod pi)."""
        return is_equivalent(self.radians, _radians(other))


def _radians(value):
    return value.radians if isinstance(value, Angle) else float(value)


def circular_distance(a, b, period):
    """Distance between two angles on a circle of the given period."""
    d = math.fmod(abs(a - b), period)
    return min(d, period - d)


def is_equivalent(a, b):
    """Polarization equivalence: angles differing by a multiple of pi."""
    return circular_distance(_radians(a), _radians(b), math.pi) <= ANGLE_TOLERANCE


@dataclass(frozen=True)
class PolarizationState:
    """A pure linear-polarization qubit."""
    psi: Angle = Angle(0.0)

    def __post_init__(self):
        if not isinstance(self.psi, Angle):
            object.__setattr__(self, 'psi', Angle(self.psi))


@dataclass(frozen=True)
class RotationOp:
    """A planar rotation R(theta)."""
    theta: Angle = Angle(0.0)

    def __post_init__(self):
        if not isinstance(self.theta, Angle):
            object.__setattr__(self, 'theta', Angle(self.theta))


def compose(first, second):
    """Compose two rotations; R(a).R(b) = R(a + b)."""
    return RotationOp(first.theta + second.theta)


def inverse(op):
    """Inverse rotation R(-theta)."""
    return RotationOp(-op.theta)


def rotate(state, op):
    """Apply a rotation to a state."""
    return PolarizationState(state.psi + op.theta)


def born_probability(psi, basis):
    """Probability of the aligned outcome (bit 0) when measuring psi in basis.

    Works on scalars or numpy arrays. Values within PROBABILITY_CLAMP of 0 or 1
    are snapped so orthogonal and aligned states are exactly deterministic.
    """
    p = np.cos(np.asarray(psi, dtype=float) - np.asarray(basis, dtype=float)) ** 2
    p = np.where(p < PROBABILITY_CLAMP, 0.0, p)
    p = np.where(p > 1.0 - PROBABILITY_CLAMP, 1.0, p)
    return float(p) if p.ndim == 0 else p


def measure(state, basis, rng):
    """Measure a state in the given basis with one uniform draw from rng.

    Returns:
        int: 0 with probability cos^2(psi - basis), else 1
    """
    p0 = born_probability(state.psi.radians, _radians(basis))
    return 0 if rng.random() < p0 else 1


def measure_collapse(state, basis, rng):
    """Measure and also return the post-measurement state.

    Returns:
        tuple: (bit, PolarizationState aligned to basis or basis + pi/2)
    """
    bit = measure(state, basis, rng)
    collapsed = Angle(_radians(basis) + bit * math.pi / 2)
    return bit, PolarizationState(collapsed)


def bit_to_state(x):
    """Encode a classical bit as one of two orthogonal states."""
    if x not in (0, 1):
        raise ParameterError('bit', x, '{0, 1}')
    return PolarizationState(Angle(x * math.pi / 2))


def state_to_bit_angle(x):
    """Angle of the encoding state for bit x."""
    return x * math.pi / 2


def rotate_angles(angles, theta):
    """Rotate an array of polarization angles by theta."""
    return canonical(np.asarray(angles, dtype=float) + _radians(theta))


def measure_angles(angles, bases, rng):
    """Measure every angle in its basis, one uniform draw per photon in order.

    Args:
        angles: array of state angles
        bases: scalar basis or array of per-photon bases
        rng: numpy Generator

    Returns:
        numpy int8 array of outcomes
    """
    angles = np.asarray(angles, dtype=float)
    if angles.size == 0:
        return np.zeros(0, dtype=np.int8)
    p0 = born_probability(angles, bases)
    draws = rng.random(angles.size)
    return (draws >= p0).astype(np.int8)
