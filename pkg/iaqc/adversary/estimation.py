"""Eve's angle estimation: Bayesian maximum likelihood and the detector bank.

Each pass carries photons whose polarization angle (mod pi) depends on the
secret rotations and the bit:

    pass 1: X + theta
    pass 2: X + theta + phi
    pass 3: X + phi

with X in {0, pi/2}. Eve estimates each pass's angle from the photons she
siphoned, then combines the three estimates, since
psi1 + psi3 - psi2 = X (mod pi).
"""
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.special import logsumexp
from scipy.stats import entropy

from iaqc.channel import Photon
from iaqc.errors import ParameterError
from iaqc.quantum import ANGLE_TOLERANCE, born_probability, circular_distance, measure_angles

AMBIGUITY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class AnglePosterior:
    """Posterior probability of each candidate angle, plus the raw evidence."""
    candidates: Tuple[float, ...]
    probabilities: Tuple[float, ...]
    outcomes: Tuple[int, ...] = ()
    bases: Tuple[float, ...] = ()

    @property
    def argmax(self):
        """Most probable candidate; ties go to the smallest angle."""
        probs = np.asarray(self.probabilities)
        best = probs.max()
        tied = [c for c, p in zip(self.candidates, probs) if best - p <= AMBIGUITY_TOLERANCE]
        return min(tied)

    @property
    def is_ambiguous(self):
        probs = np.sort(np.asarray(self.probabilities))[::-1]
        return len(probs) > 1 and probs[0] - probs[1] <= AMBIGUITY_TOLERANCE

    @property
    def support(self):
        """Number of candidates with non-zero mass."""
        return int(np.count_nonzero(np.asarray(self.probabilities) > 0.0))

    def probability_of(self, angle):
        for c, p in zip(self.candidates, self.probabilities):
            if circular_distance(c, float(angle), math.pi) <= ANGLE_TOLERANCE:
                return p
        return 0.0


def _candidate_angles(candidates):
    angles = getattr(candidates, 'angles', candidates)
    return np.asarray([float(a) for a in angles], dtype=float)


def _photon_angles(photons):
    """Polarization angles of a Beam, a sequence of Photon or a numeric array."""
    angles = getattr(photons, 'angles', None)
    if angles is not None:
        return np.asarray(angles, dtype=float)
    photons = list(photons) if not isinstance(photons, np.ndarray) else photons
    if len(photons) and isinstance(photons[0], Photon):
        return np.asarray([p.state.psi.radians for p in photons], dtype=float)
    return np.asarray(photons, dtype=float)


def _log_likelihoods(outcomes, bases, candidates):
    """Matrix of log P(outcome_i | candidate_c), shape (n_outcomes, n_candidates)."""
    p0 = born_probability(candidates[None, :], np.asarray(bases, dtype=float)[:, None])
    outcomes = np.asarray(outcomes)[:, None]
    likelihood = np.where(outcomes == 0, p0, 1.0 - p0)
    with np.errstate(divide='ignore'):
        return np.log(likelihood)


def _normalize(log_weights):
    total = logsumexp(log_weights)
    if not np.isfinite(total):
        # the evidence is impossible under every candidate
        return np.full(log_weights.shape, 1.0 / log_weights.size)
    return np.exp(log_weights - total)


def posterior_from_outcomes(outcomes, bases, candidates, prior=None):
    """Bayes' rule over candidate angles from Born-rule likelihoods.

    Args:
        outcomes: sequence of measured bits
        bases: measurement basis of each outcome
        candidates: AngleSet or sequence of angles
        prior: optional prior probabilities, uniform by default

    Returns:
        AnglePosterior
    """
    cands = _candidate_angles(candidates)
    if prior is None:
        log_post = np.full(cands.size, -math.log(cands.size))
    else:
        with np.errstate(divide='ignore'):
            log_post = np.log(np.asarray(prior, dtype=float))
    if len(outcomes):
        log_post = log_post + _log_likelihoods(outcomes, bases, cands).sum(axis=0)
    probs = _normalize(log_post)
    return AnglePosterior(
        tuple(cands.tolist()),
        tuple(probs.tolist()),
        tuple(int(o) for o in outcomes),
        tuple(float(b) for b in bases),
    )


def _basis_grid(candidates):
    grid = np.mod(np.concatenate([candidates, candidates + math.pi / 4]), math.pi)
    unique = []
    for b in grid:
        if all(circular_distance(b, u, math.pi) > ANGLE_TOLERANCE for u in unique):
            unique.append(float(b))
    return unique


def _expected_entropy(posterior, candidates, basis):
    p0 = born_probability(candidates, basis)
    prob_zero = float(np.dot(posterior, p0))
    result = 0.0
    for prob_outcome, likelihood in ((prob_zero, p0), (1.0 - prob_zero, 1.0 - p0)):
        if prob_outcome <= 0.0:
            continue
        result += prob_outcome * entropy(posterior * likelihood / prob_outcome, base=2)
    return result


def choose_adaptive_basis(posterior, candidates):
    """Basis minimizing the expected posterior entropy after one more photon."""
    cands = _candidate_angles(candidates)
    bases = _basis_grid(cands)
    scores = [_expected_entropy(np.asarray(posterior), cands, b) for b in bases]
    return bases[int(np.argmin(scores))]


def estimate_angle_ml(photons, candidates, basis_policy, rng, basis_angle=0.0):
    """Measure the photons and return the posterior over candidate angles.

    Args:
        photons: Beam, sequence of Photon or array of angles
        candidates: AngleSet or sequence of candidate angles
        basis_policy: 'fixed' (every photon in basis_angle) or 'adaptive'
        rng: numpy Generator
        basis_angle: basis used by the fixed policy

    Returns:
        AnglePosterior
    """
    angles = _photon_angles(photons)
    if angles.size == 0:
        raise ParameterError('photons', 0, '>= 1 photon')
    cands = _candidate_angles(candidates)

    if str(getattr(basis_policy, 'value', basis_policy)) == 'adaptive':
        posterior = np.full(cands.size, 1.0 / cands.size)
        outcomes, bases = [], []
        for psi in angles:
            basis = choose_adaptive_basis(posterior, cands)
            outcome = int(measure_angles(np.array([psi]), basis, rng)[0])
            outcomes.append(outcome)
            bases.append(basis)
            posterior = np.asarray(posterior_from_outcomes([outcome], [basis], cands, prior=posterior).probabilities)
        return posterior_from_outcomes(outcomes, bases, cands)

    bases = np.full(angles.size, float(basis_angle))
    outcomes = measure_angles(angles, bases, rng)
    return posterior_from_outcomes(outcomes, bases, cands)


def estimate_angle_detector_bank(photons, candidates, rng):
    """Feed photon i to a detector aligned with candidate i mod s.

    A candidate whose orthogonal outcome is observed in its own aligned
    detector gets zero likelihood and drops out of the posterior.
    """
    angles = _photon_angles(photons)
    if angles.size == 0:
        raise ParameterError('photons', 0, '>= 1 photon')
    cands = _candidate_angles(candidates)
    bases = cands[np.arange(angles.size) % cands.size]
    outcomes = measure_angles(angles, bases, rng)
    return posterior_from_outcomes(outcomes, bases, cands)


def state_candidates(angle_set, pass_index):
    """Hypotheses (mod pi) for the polarization angle seen on a pass."""
    base = _candidate_angles(angle_set)
    if pass_index == 2:
        base = (base[:, None] + base[None, :]).ravel()
    grid = np.mod(np.concatenate([base, base + math.pi / 2]), math.pi)
    unique = []
    for a in sorted(grid.tolist()):
        if all(circular_distance(a, u, math.pi) > ANGLE_TOLERANCE for u in unique):
            unique.append(a)
    return tuple(unique)


def eve_reconstruct_bit(log, posteriors=None) -> Optional[int]:
    """Combine the three per-pass estimates into a guess of the bit.

    Returns:
        0 or 1, or None when a pass was not attacked or an estimate is ambiguous
    """
    posteriors = posteriors if posteriors is not None else log.estimates
    if any(p not in posteriors for p in (1, 2, 3)):
        return None
    if any(posteriors[p].is_ambiguous for p in (1, 2, 3)):
        return None

    value = posteriors[1].argmax + posteriors[3].argmax - posteriors[2].argmax
    to_zero = circular_distance(value, 0.0, math.pi)
    to_one = circular_distance(value, math.pi / 2, math.pi)
    if abs(to_zero - to_one) <= ANGLE_TOLERANCE:
        return None
    return 0 if to_zero < to_one else 1


def eve_best_guess(log, rng):
    """Eve's final answer for the round, even when reconstruction fails.

    Falls back to the first outcome she measured (a single-pass reading of
    the bit) and, with nothing measured, to a coin flip.
    """
    guess = eve_reconstruct_bit(log)
    if guess is not None:
        return guess
    outcomes = log.outcomes
    if outcomes.size:
        return int(outcomes[0])
    return int(rng.integers(2))
