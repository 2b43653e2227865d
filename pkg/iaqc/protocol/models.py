"""Round configuration, angle sets and round transcripts."""
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from iaqc.adversary.strategies import AdversarySpec, EveLog
from iaqc.channel import IntensityMode
from iaqc.errors import ParameterError, check_range
from iaqc.quantum import ANGLE_TOLERANCE, canonical, circular_distance, TWO_PI


class Variant(str, Enum):
    K06 = 'k06'
    IAQC = 'iaqc'


class AnglePolicy(str, Enum):
    FIXED = 'fixed'
    FRESH = 'fresh'


@dataclass(frozen=True)
class AngleSet:
    """The s rotation angles Alice and Bob draw from.

    Defaults to the uniform grid j*pi/s; ``custom`` replaces it.
    """
    s: int = 4
    custom: Tuple[float, ...] = ()

    @property
    def angles(self):
        if self.custom:
            return tuple(canonical(float(a)) for a in self.custom)
        return tuple(j * math.pi / self.s for j in range(self.s))

    def __len__(self):
        return len(self.angles)

    def __iter__(self):
        return iter(self.angles)

    def validate(self):
        check_range('angle_set_size', self.s, 2, None)
        angles = self.angles
        if self.custom and len(angles) != self.s:
            raise ParameterError('custom_angles', self.custom, f'exactly angle_set_size={self.s} values')
        for i, a in enumerate(angles):
            for b in angles[i + 1:]:
                if circular_distance(a, b, math.pi) <= ANGLE_TOLERANCE:
                    raise ParameterError('custom_angles', self.custom, 'angles pairwise distinct mod pi')
        return self

    def contains(self, angle):
        return any(circular_distance(canonical(float(angle)), a, TWO_PI) <= ANGLE_TOLERANCE
                   for a in self.angles)

    def nearest(self, angle):
        return min(self.angles, key=lambda a: circular_distance(a, canonical(float(angle)), TWO_PI))

    def draw(self, rng):
        return self.angles[int(rng.integers(len(self.angles)))]


@dataclass(frozen=True)
class RoundConfig:
    """All knobs for one protocol round."""
    variant: Variant = Variant.IAQC
    source_intensity: int = 1000
    tap_fraction: float = 0.1
    alice_tap_fraction: Optional[float] = None
    angle_set_size: int = 4
    custom_angles: Tuple[float, ...] = ()
    alice_angle: float = math.pi / 4
    bob_angle: float = math.pi / 2
    bit: int = 0
    loss: float = 0.0
    detector_resolution: float = 1.0
    mode: IntensityMode = IntensityMode.PHOTON_COUNT
    intensity_checks: bool = True
    record_ledger: bool = False
    adversary: AdversarySpec = field(default_factory=AdversarySpec)

    def __post_init__(self):
        object.__setattr__(self, 'variant', Variant(self.variant))
        object.__setattr__(self, 'mode', IntensityMode(self.mode))
        object.__setattr__(self, 'custom_angles', tuple(self.custom_angles))
        if isinstance(self.adversary, dict):
            object.__setattr__(self, 'adversary', AdversarySpec(**self.adversary))

    @property
    def angle_set(self):
        return AngleSet(self.angle_set_size, self.custom_angles)

    @property
    def alice_k(self):
        return self.tap_fraction if self.alice_tap_fraction is None else self.alice_tap_fraction

    def with_angles(self, alice_angle, bob_angle):
        return replace(self, alice_angle=alice_angle, bob_angle=bob_angle)

    def validate(self):
        """Raise ParameterError naming the first field outside its legal range."""
        check_range('source_intensity', self.source_intensity, 1, None)
        if int(self.source_intensity) != self.source_intensity:
            raise ParameterError('source_intensity', self.source_intensity, 'integer >= 1')
        check_range('tap_fraction', self.tap_fraction, 0.0, 1.0, high_open=True)
        if self.alice_tap_fraction is not None:
            check_range('alice_tap_fraction', self.alice_tap_fraction, 0.0, 1.0, high_open=True)
        if self.bit not in (0, 1):
            raise ParameterError('bit', self.bit, '{0, 1}')
        check_range('loss', self.loss, 0.0, 1.0)
        check_range('detector_resolution', self.detector_resolution, 1.0, None)

        angle_set = self.angle_set.validate()
        if not angle_set.contains(self.alice_angle):
            raise ParameterError('alice_angle', self.alice_angle, f'a member of {angle_set.angles}')
        if not angle_set.contains(self.bob_angle):
            raise ParameterError('bob_angle', self.bob_angle, f'a member of {angle_set.angles}')
        self.adversary.validate()
        return self


@dataclass
class RoundTranscript:
    """Everything observed (and hidden) in one round."""
    variant: Variant
    bit: int
    alice_angle: float
    bob_angle: float
    taps: List = field(default_factory=list)
    bob_outcomes: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int8))
    recovered_bit: Optional[int] = None
    intensity_alarm: bool = False
    alignment_alarm: bool = False
    final_intensity: float = 0.0
    expected_final_intensity: float = 0.0
    eve_log: EveLog = field(default_factory=EveLog)
    # hidden provenance of the photons Bob measured, aligned with bob_outcomes
    bob_photon_origins: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int8), repr=False)
    bob_photon_angles: np.ndarray = field(default_factory=lambda: np.zeros(0), repr=False)
    ledger: Optional[list] = field(default=None, repr=False)

    @property
    def detected(self):
        return self.intensity_alarm or self.alignment_alarm

    @property
    def undetermined(self):
        return self.recovered_bit is None

    def as_row(self):
        """Flat record for the transcripts CSV."""
        row = {
            'variant': self.variant.value,
            'bit': self.bit,
            'alice_angle': self.alice_angle,
            'bob_angle': self.bob_angle,
        }
        for stage in ('bob_first', 'alice_second', 'bob_third'):
            reading = next((t for t in self.taps if t.stage.value == stage), None)
            row[f'{stage}_expected'] = reading.expected if reading else None
            row[f'{stage}_observed'] = reading.observed if reading else None
        row.update({
            'photons_measured': int(self.bob_outcomes.size),
            'ones_measured': int(self.bob_outcomes.sum()),
            'recovered_bit': self.recovered_bit,
            'intensity_alarm': self.intensity_alarm,
            'alignment_alarm': self.alignment_alarm,
            'final_intensity': self.final_intensity,
            'expected_final_intensity': self.expected_final_intensity,
            'eve_siphoned': self.eve_log.total_siphoned,
            'eve_injected': self.eve_log.total_injected,
            'eve_guess': self.eve_log.best_guess,
        })
        return row
