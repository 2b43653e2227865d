"""Parameter sweeps and the Monte Carlo search for Eve's photon requirement."""
import logging
from dataclasses import dataclass, field, replace
from typing import Dict, Tuple

import numpy as np

from iaqc.adversary.estimation import estimate_angle_detector_bank, estimate_angle_ml
from iaqc.adversary.strategies import BasisPolicy
from iaqc.analysis.bounds import detector_bank_budget, min_photons_info_bound
from iaqc.analysis.stats import DEFAULT_Z, aggregate
from iaqc.errors import ParameterError, check_range
from iaqc.protocol.models import AnglePolicy, AngleSet, RoundConfig
from iaqc.protocol.session import derive_seed, run_session_rounds

logger = logging.getLogger(__name__)

SWEEP_PARAMETERS = ('k', 'g', 'I', 's', 'r', 'loss', 'n')
ESTIMATORS = ('fixed', 'adaptive', 'detector_bank')
INTEGER_PARAMETERS = ('I', 's', 'n')


@dataclass(frozen=True)
class SweepSpec:
    """One parameter varied over a grid with everything else held at ``template``."""
    parameter: str
    values: Tuple[float, ...]
    rounds: int = 1000
    template: RoundConfig = field(default_factory=RoundConfig)
    angle_policy: AnglePolicy = AnglePolicy.FIXED

    def __post_init__(self):
        object.__setattr__(self, 'values', tuple(self.values))
        object.__setattr__(self, 'angle_policy', AnglePolicy(self.angle_policy))

    def validate(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise ParameterError('sweep', self.parameter, f'one of {SWEEP_PARAMETERS}')
        if not self.values:
            raise ParameterError('grid', self.values, 'at least one value')
        check_range('rounds', self.rounds, 1, None)
        for value in self.values:
            point_config(self.template, self.parameter, value)
        return self


def point_config(template, parameter, value):
    """The template with ``parameter`` set to ``value``, validated.

    Raises:
        ParameterError: naming the swept parameter and the offending value
    """
    if parameter in INTEGER_PARAMETERS:
        if float(value) != int(value):
            raise ParameterError(parameter, value, 'an integer')
        value = int(value)
    else:
        value = float(value)

    adversary = template.adversary
    if parameter == 'k':
        cfg = replace(template, tap_fraction=value)
    elif parameter == 'g':
        cfg = replace(template, adversary=replace(adversary, fraction=value, count=None))
    elif parameter == 'n':
        cfg = replace(template, adversary=replace(adversary, count=value, fraction=None))
    elif parameter == 'I':
        cfg = replace(template, source_intensity=value)
    elif parameter == 'r':
        cfg = replace(template, detector_resolution=value)
    elif parameter == 'loss':
        cfg = replace(template, loss=value)
    elif parameter == 's':
        if value < 2:
            raise ParameterError(parameter, value, '[2, inf)')
        grid = AngleSet(value)
        # secret angles move to the nearest member of the new grid
        cfg = replace(template, angle_set_size=value, custom_angles=(),
                      alice_angle=grid.nearest(template.alice_angle),
                      bob_angle=grid.nearest(template.bob_angle))
    else:
        raise ParameterError('sweep', parameter, f'one of {SWEEP_PARAMETERS}')

    try:
        return cfg.validate()
    except ParameterError as e:
        raise ParameterError(parameter, value, e.legal_range) from e


def run_sweep(spec, seed=0, threads=1, z=DEFAULT_Z):
    """Run one session per grid value.

    Point i runs on the seed derived from (seed, i), so rows are reproducible
    and independent of thread count.

    Returns:
        list of dict rows in grid order
    """
    spec.validate()
    rows = []
    for index, value in enumerate(spec.values):
        cfg = point_config(spec.template, spec.parameter, value)
        transcripts = run_session_rounds(cfg, spec.rounds, spec.angle_policy,
                                         derive_seed(seed, index), threads)
        stats = aggregate(transcripts, z)

        row = {'parameter': spec.parameter, 'value': value}
        row.update({k: v for k, v in stats.to_dict().items() if k != 'halfwidths'})
        row.update({f'{name}_halfwidth': hw for name, hw in stats.halfwidths.items()})
        if spec.parameter == 's':
            eve_photons, safe_source = detector_bank_budget(int(value))
            row['min_photons_info_bound'] = min_photons_info_bound(int(value))
            row['bank_eve_photons'] = eve_photons
            row['bank_safe_source_intensity'] = safe_source
        rows.append(row)
        logger.info(f"Sweep {spec.parameter}={value}: detection_rate={stats.detection_rate:.4f}")

    return rows


def identification_accuracy(s, m, estimator, trials, rng):
    """Fraction of trials in which Eve's argmax over the s-angle grid is the true angle.

    Each trial draws a true angle from the grid and gives Eve m photons
    polarized at it.
    """
    candidates = AngleSet(s).angles
    correct = 0
    for _ in range(trials):
        truth = candidates[int(rng.integers(s))]
        photons = np.full(m, truth)
        if estimator == 'detector_bank':
            posterior = estimate_angle_detector_bank(photons, candidates, rng)
        else:
            posterior = estimate_angle_ml(photons, candidates, BasisPolicy(estimator), rng)
        # an ambiguous posterior counts as a miss
        if not posterior.is_ambiguous and posterior.argmax == truth:
            correct += 1
    return correct / trials


def min_photons_for_identification(s, estimator='adaptive', threshold=0.95, trials=1000,
                                   seed=0, max_m=64):
    """Smallest m whose identification accuracy reaches ``threshold``.

    Args:
        s: size of the angle grid
        estimator: 'fixed', 'adaptive' or 'detector_bank'
        threshold: required accuracy
        trials: trials per m
        seed: root seed; m uses the substream derived from (seed, m)
        max_m: give up after this many photons

    Returns:
        tuple: (m or None if max_m was not enough, {m: accuracy})
    """
    check_range('s', s, 2, None)
    check_range('threshold', threshold, 0.0, 1.0, low_open=True)
    check_range('trials', trials, 1, None)
    check_range('max_m', max_m, 1, None)
    if estimator not in ESTIMATORS:
        raise ParameterError('estimator', estimator, f'one of {ESTIMATORS}')

    accuracies: Dict[int, float] = {}
    for m in range(1, max_m + 1):
        rng = np.random.default_rng(derive_seed(seed, m))
        accuracies[m] = identification_accuracy(s, m, estimator, trials, rng)
        logger.debug(f"s={s} m={m}: accuracy {accuracies[m]:.4f}")
        if accuracies[m] >= threshold:
            logger.info(f"Identification of 1 in {s} angles reaches {threshold:.0%} at m={m} ({estimator})")
            return m, accuracies

    logger.warning(f"Identification of 1 in {s} angles stayed below {threshold:.0%} up to m={max_m}")
    return None, accuracies
