"""Beams of photons, beam-splitter taps and transmission loss."""
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from iaqc.errors import ParameterError, check_range
from iaqc.quantum import Angle, PolarizationState, canonical, rotate_angles

# relative slack when comparing a tap reading with its threshold
INTENSITY_TOLERANCE = 1e-9


class IntensityMode(str, Enum):
    """How beam intensity is accounted for during a session."""
    PHOTON_COUNT = 'photon'
    EXPECTED_VALUE = 'expected'


class PhotonOrigin(str, Enum):
    LEGITIMATE = 'legitimate'
    EVE_INJECTED = 'eve_injected'


class TapStage(str, Enum):
    BOB_FIRST = 'bob_first'
    ALICE_SECOND = 'alice_second'
    BOB_THIRD = 'bob_third'


@dataclass(frozen=True)
class Photon:
    """A polarization state plus hidden provenance bookkeeping."""
    state: PolarizationState
    origin: PhotonOrigin = PhotonOrigin.LEGITIMATE
    # pass on which Eve injected the photon, 0 for legitimate photons
    injected_pass: int = field(default=0, repr=False)


@dataclass(frozen=True)
class TapReading:
    """Expected and observed intensity at one of the three intensity taps."""
    stage: TapStage
    expected: float
    observed: float

    def __post_init__(self):
        check_range('expected', self.expected, 0.0, None)
        check_range('observed', self.observed, 0.0, None)


@dataclass(frozen=True, eq=False)
class Beam:
    """An ordered collection of photons stored as parallel arrays.

    ``origins`` holds 0 for legitimate photons and the pass index (1-3) for
    photons Eve injected. ``weights`` are 1.0 in photon-count accounting and
    fractional in expected-value accounting.
    """
    angles: np.ndarray
    weights: np.ndarray
    origins: np.ndarray

    @classmethod
    def empty(cls):
        return cls(np.zeros(0), np.zeros(0), np.zeros(0, dtype=np.int8))

    @classmethod
    def source(cls, n, angle=0.0, origin=0):
        """A beam of n identical photons, each of unit weight."""
        check_range('source_intensity', n, 0, None)
        return cls(
            np.full(int(n), canonical(float(angle))),
            np.ones(int(n)),
            np.full(int(n), origin, dtype=np.int8),
        )

    @classmethod
    def from_photons(cls, photons, weights=None):
        photons = list(photons)
        angles = np.array([p.state.psi.radians for p in photons], dtype=float)
        origins = np.array([p.injected_pass if p.origin == PhotonOrigin.EVE_INJECTED else 0
                            for p in photons], dtype=np.int8)
        if weights is None:
            weights = np.ones(len(photons))
        return cls(angles, np.asarray(weights, dtype=float), origins)

    def __len__(self):
        return int(self.angles.size)

    @property
    def intensity(self):
        return float(self.weights.sum())

    @property
    def photons(self):
        return [
            Photon(
                PolarizationState(Angle(a)),
                PhotonOrigin.EVE_INJECTED if o else PhotonOrigin.LEGITIMATE,
                int(o),
            )
            for a, o in zip(self.angles, self.origins)
        ]

    def rotated(self, theta):
        """Every photon rotated by theta; weights and provenance untouched."""
        return Beam(rotate_angles(self.angles, theta), self.weights.copy(), self.origins.copy())

    def select(self, mask):
        return Beam(self.angles[mask], self.weights[mask], self.origins[mask])

    def scaled(self, factor):
        return Beam(self.angles.copy(), self.weights * factor, self.origins.copy())

    def concat(self, other):
        return Beam(
            np.concatenate([self.angles, other.angles]),
            np.concatenate([self.weights, other.weights]),
            np.concatenate([self.origins, other.origins]).astype(np.int8),
        )

    def take_front(self, amount, mode):
        """Remove ``amount`` of intensity from the front of the beam.

        In photon-count mode this removes the first ``amount`` photons. In
        expected-value mode whole photons are removed until the requested
        weight is reached and the boundary photon's weight is split. Requests
        larger than the beam take all of it.

        Returns:
            tuple: (taken, remaining)
        """
        check_range('amount', amount, 0, None)
        if mode == IntensityMode.PHOTON_COUNT:
            n = min(int(amount), len(self))
            idx = np.arange(len(self))
            return self.select(idx < n), self.select(idx >= n)

        cumulative = np.cumsum(self.weights)
        before = cumulative - self.weights
        taken_weights = np.clip(amount - before, 0.0, self.weights)
        remaining_weights = self.weights - taken_weights
        taken = Beam(self.angles.copy(), taken_weights, self.origins.copy()).select(taken_weights > 0)
        remaining = Beam(self.angles.copy(), remaining_weights, self.origins.copy()).select(remaining_weights > 0)
        return taken, remaining

    def equals(self, other):
        """Bit-exact equality of contents."""
        return (
            np.array_equal(self.angles, other.angles)
            and np.array_equal(self.weights, other.weights)
            and np.array_equal(self.origins, other.origins)
        )


def split(beam, k, mode, rng):
    """Divert a fraction k of the beam to an intensity detector.

    Photon-count mode sends each photon to the tap independently with
    probability k. Expected-value mode divides every photon's weight exactly.
    k of 0 or 1 consumes no randomness.

    Returns:
        tuple: (tapped, through)
    """
    if k is None or not 0.0 <= k <= 1.0:
        raise ParameterError('tap_fraction', k, '[0, 1]')
    if k == 0.0:
        return Beam.empty(), beam
    if k == 1.0:
        return beam, Beam.empty()

    if mode == IntensityMode.PHOTON_COUNT:
        mask = rng.random(len(beam)) < k
        return beam.select(mask), beam.select(~mask)

    tapped_weights = beam.weights * k
    return (
        Beam(beam.angles.copy(), tapped_weights, beam.origins.copy()),
        Beam(beam.angles.copy(), beam.weights - tapped_weights, beam.origins.copy()),
    )


def transmit(beam, loss, mode, rng):
    """Send a beam across a lossy link."""
    if loss is None or not 0.0 <= loss <= 1.0:
        raise ParameterError('loss', loss, '[0, 1]')
    if loss == 0.0:
        return beam
    if loss == 1.0:
        return Beam.empty()

    if mode == IntensityMode.PHOTON_COUNT:
        return beam.select(rng.random(len(beam)) >= loss)
    return beam.scaled(1.0 - loss)


def intensity_check(reading, resolution):
    """Check a tap reading against its expectation.

    A detector with resolution r flags a beam only when the observed
    intensity is strictly below expected / r; r = 1 is an ideal detector.
    Readings within INTENSITY_TOLERANCE (relative) of the threshold pass,
    since expected and observed intensities are summed in different orders.

    Returns:
        bool: True when the reading passes
    """
    check_range('detector_resolution', resolution, 1.0, None)
    threshold = reading.expected / resolution
    if math.isclose(reading.observed, threshold, rel_tol=INTENSITY_TOLERANCE, abs_tol=INTENSITY_TOLERANCE):
        return True
    return not reading.observed < threshold
