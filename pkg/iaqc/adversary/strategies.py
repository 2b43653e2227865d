"""Eavesdropper strategies and the per-round record of what Eve did."""
import logging
import numbers
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np

from iaqc.channel import Beam, split
from iaqc.errors import ParameterError, check_range
from iaqc.quantum import TWO_PI, canonical

logger = logging.getLogger(__name__)

PASSES = (1, 2, 3)


class Strategy(str, Enum):
    NONE = 'none'
    PASSIVE = 'passive'
    SIPHON = 'siphon'
    SIPHON_INJECT = 'siphon_inject'
    DETECTOR_BANK = 'detector_bank'


class InjectPolicy(str, Enum):
    RANDOM = 'random'
    FIXED = 'fixed'


class BasisPolicy(str, Enum):
    FIXED = 'fixed'
    ADAPTIVE = 'adaptive'


@dataclass(frozen=True)
class AdversarySpec:
    """Everything that describes Eve's behaviour in a round.

    Siphoning strategies take either ``fraction`` (each photon independently
    with probability g) or ``count`` (the first n photons of the beam).
    Passive listening measures ``count`` photons. The detector bank takes
    ``count`` photons per pass, defaulting to one per candidate angle.
    """
    strategy: Strategy = Strategy.NONE
    fraction: Optional[float] = None
    count: Optional[int] = None
    passes_attacked: Tuple[int, ...] = PASSES
    inject_policy: InjectPolicy = InjectPolicy.RANDOM
    inject_angle: float = 0.0
    basis_policy: BasisPolicy = BasisPolicy.FIXED
    basis_angle: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'strategy', Strategy(self.strategy))
        object.__setattr__(self, 'inject_policy', InjectPolicy(self.inject_policy))
        object.__setattr__(self, 'basis_policy', BasisPolicy(self.basis_policy))
        object.__setattr__(self, 'passes_attacked', tuple(sorted(set(self.passes_attacked))))

    @property
    def active(self):
        return self.strategy != Strategy.NONE and bool(self.passes_attacked)

    def attacks(self, pass_index):
        return self.active and pass_index in self.passes_attacked

    def validate(self):
        """Raise ParameterError if the settings are inconsistent."""
        for p in self.passes_attacked:
            if p not in PASSES:
                raise ParameterError('adversary.passes_attacked', p, '{1, 2, 3}')
        if self.fraction is not None:
            check_range('adversary.fraction', self.fraction, 0.0, 1.0)
        if self.count is not None:
            check_range('adversary.count', self.count, 0, None)
            if not isinstance(self.count, numbers.Integral):
                raise ParameterError('adversary.count', self.count, 'integer >= 0')

        if self.strategy in (Strategy.SIPHON, Strategy.SIPHON_INJECT):
            if (self.fraction is None) == (self.count is None):
                raise ParameterError('adversary.fraction/count', (self.fraction, self.count),
                                     'exactly one of fraction in [0, 1] or count >= 0')
        elif self.strategy == Strategy.PASSIVE:
            if self.count is None:
                raise ParameterError('adversary.count', None, '>= 1 for passive listening')
        return self


@dataclass
class InterceptRecord:
    """What Eve removed from and added to one pass."""
    pass_index: int
    siphoned: Beam
    injected: Beam


@dataclass
class EveLog:
    """Eve's per-round bookkeeping, hidden from Alice and Bob."""
    siphoned: Dict[int, Beam] = field(default_factory=dict)
    injected: Dict[int, Beam] = field(default_factory=dict)
    estimates: Dict[int, object] = field(default_factory=dict)
    recovered_bit_guess: Optional[int] = None
    best_guess: Optional[int] = None

    def record(self, entry):
        self.siphoned[entry.pass_index] = entry.siphoned
        self.injected[entry.pass_index] = entry.injected

    @property
    def attacked_passes(self):
        return tuple(sorted(self.siphoned))

    @property
    def total_siphoned(self):
        return sum(b.intensity for b in self.siphoned.values())

    @property
    def total_injected(self):
        return sum(b.intensity for b in self.injected.values())

    @property
    def outcomes(self):
        """All of Eve's measurement outcomes in pass order."""
        chunks = [np.asarray(self.estimates[p].outcomes, dtype=np.int8) for p in sorted(self.estimates)]
        return np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int8)


def _injection_angles(spec, n, rng):
    if spec.inject_policy == InjectPolicy.FIXED:
        return np.full(n, canonical(float(spec.inject_angle)))
    return rng.uniform(0.0, TWO_PI, size=n)


def intercept(beam, spec, pass_index, mode, rng, bank_size=None):
    """Let Eve act on one transmission.

    Args:
        beam: The beam travelling down the link
        spec: AdversarySpec
        pass_index: 1, 2 or 3
        mode: IntensityMode of the session
        rng: numpy Generator
        bank_size: photons per pass for the detector bank when spec.count is unset

    Returns:
        tuple: (forwarded beam, InterceptRecord or None when the pass is not attacked)
    """
    if not spec.attacks(pass_index):
        return beam, None

    strategy = spec.strategy
    if strategy in (Strategy.SIPHON, Strategy.SIPHON_INJECT) and spec.fraction is not None:
        siphoned, forwarded = split(beam, spec.fraction, mode, rng)
    else:
        if strategy == Strategy.DETECTOR_BANK and spec.count is None:
            amount = bank_size or 0
        else:
            amount = spec.count
        siphoned, forwarded = beam.take_front(amount, mode)

    injected = Beam.empty()
    if strategy == Strategy.SIPHON_INJECT and len(siphoned):
        injected = Beam(
            _injection_angles(spec, len(siphoned), rng),
            siphoned.weights.copy(),
            np.full(len(siphoned), pass_index, dtype=np.int8),
        )
        forwarded = forwarded.concat(injected)

    logger.debug(f"Pass {pass_index}: Eve ({strategy.value}) siphoned {siphoned.intensity:.6g}, "
                 f"injected {injected.intensity:.6g}")
    return forwarded, InterceptRecord(pass_index, siphoned, injected)

