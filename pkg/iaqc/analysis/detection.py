"""Detection probability: Monte Carlo estimate and the exact siphoning oracle."""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import binom

from iaqc.adversary.strategies import Strategy
from iaqc.analysis.stats import DEFAULT_Z, proportion_halfwidth
from iaqc.channel import IntensityMode
from iaqc.errors import ParameterError, check_range
from iaqc.protocol.models import AnglePolicy, Variant
from iaqc.protocol.session import run_session_rounds

logger = logging.getLogger(__name__)

MIN_TRIALS = 100


@dataclass(frozen=True)
class DetectionEstimate:
    estimate: float
    halfwidth: float
    trials: int
    exact: Optional[float] = None

    def covers(self, value):
        return abs(self.estimate - value) <= self.halfwidth


def exact_siphon_detection_probability(cfg):
    """P(any intensity alarm) for Bernoulli siphoning seen by ideal detectors.

    With per-photon siphoning probability g_j on link j, the round goes
    unnoticed only if no photon is removed on any attacked link. The number
    of photons reaching link 2 and 3 depends on the honest tap splits, so the
    per-link zero terms binom.pmf(0, n_j, g_j) are averaged over the
    binomial distribution of n_2 and the conditional distribution of n_3.

    Valid for iAQC, photon-count accounting, r = 1, zero loss and non-zero
    tap fractions; other configurations raise ParameterError.
    """
    spec = cfg.adversary
    if spec.strategy != Strategy.SIPHON or spec.fraction is None:
        raise ParameterError('adversary.strategy', spec.strategy.value, 'siphon with a fraction')
    if cfg.variant != Variant.IAQC or not cfg.intensity_checks:
        raise ParameterError('variant', cfg.variant.value, 'iaqc with intensity checks')
    if cfg.mode != IntensityMode.PHOTON_COUNT:
        raise ParameterError('mode', cfg.mode.value, 'photon')
    if cfg.detector_resolution != 1.0:
        raise ParameterError('detector_resolution', cfg.detector_resolution, '1 (ideal detectors)')
    if cfg.loss != 0.0:
        raise ParameterError('loss', cfg.loss, '0')
    if cfg.tap_fraction == 0.0 or cfg.alice_k == 0.0:
        raise ParameterError('tap_fraction', cfg.tap_fraction, '(0, 1)')

    g = {p: (spec.fraction if spec.attacks(p) else 0.0) for p in (1, 2, 3)}
    n1 = int(cfg.source_intensity)
    k_bob, k_alice = cfg.tap_fraction, cfg.alice_k

    n2 = np.arange(n1 + 1)
    p_n2 = binom.pmf(n2, n1, 1.0 - k_bob)
    # E[(1 - g3)^n3 | n2] with n3 ~ Binomial(n2, 1 - k_alice)
    third = (k_alice + (1.0 - k_alice) * (1.0 - g[3])) ** n2
    unnoticed = binom.pmf(0, n1, g[1]) * float(np.sum(p_n2 * binom.pmf(0, n2, g[2]) * third))
    return 1.0 - unnoticed


def detection_probability(cfg, n_trials, seed=0, threads=1, angle_policy=AnglePolicy.FIXED, z=DEFAULT_Z):
    """Monte Carlo estimate of P(intensity alarm or alignment alarm).

    Returns:
        DetectionEstimate with a normal-approximation halfwidth and, where it
        applies, the exact siphoning probability as a cross-check
    """
    check_range('n_trials', n_trials, MIN_TRIALS, None)
    transcripts = run_session_rounds(cfg, n_trials, angle_policy, seed, threads)
    detected = sum(t.detected for t in transcripts)
    p = detected / n_trials

    try:
        exact = exact_siphon_detection_probability(cfg)
    except ParameterError:
        exact = None

    logger.info(f"Detection probability {p:.4f} over {n_trials} trials"
                + (f" (exact {exact:.4f})" if exact is not None else ""))
    return DetectionEstimate(p, proportion_halfwidth(p, n_trials, z), n_trials, exact)
