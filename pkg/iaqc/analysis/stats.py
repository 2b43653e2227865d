"""Session statistics aggregated from round transcripts."""
import math
from dataclasses import asdict, dataclass, field
from typing import Dict, Optional

import numpy as np

DEFAULT_Z = 1.96


def proportion_halfwidth(p, n, z=DEFAULT_Z):
    """Normal-approximation halfwidth of a proportion estimated from n trials."""
    if n <= 0:
        return 0.0
    return z * math.sqrt(max(p * (1.0 - p), 0.0) / n)


@dataclass(frozen=True)
class SessionStats:
    """Detection and information statistics over a set of rounds.

    ``eve_accuracy`` and ``eve_outcome_zero_rate`` are None when no round had
    an active eavesdropper.
    """
    rounds: int
    detection_rate: float
    intensity_alarm_rate: float
    alignment_alarm_rate: float
    bit_error_rate_undetected: float
    undetermined_rate: float
    eve_accuracy: Optional[float]
    eve_outcome_zero_rate: Optional[float]
    mean_final_intensity: float
    halfwidths: Dict[str, Optional[float]] = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)


def _rate(count, n):
    return count / n if n else 0.0


def aggregate(transcripts, z=DEFAULT_Z):
    """Fold transcripts into SessionStats.

    Bit errors are counted among undetected rounds whose bit was determined.
    Eve's accuracy uses her best guess in every round she attacked.
    """
    transcripts = list(transcripts)
    n = len(transcripts)
    if n == 0:
        raise ValueError("aggregate needs at least one transcript")

    detected = sum(t.detected for t in transcripts)
    intensity = sum(t.intensity_alarm for t in transcripts)
    alignment = sum(t.alignment_alarm for t in transcripts)
    undetermined = sum(t.undetermined for t in transcripts)

    judged = [t for t in transcripts if not t.detected and not t.undetermined]
    errors = sum(t.recovered_bit != t.bit for t in judged)

    attacked = [t for t in transcripts if t.eve_log.best_guess is not None]
    eve_correct = sum(t.eve_log.best_guess == t.bit for t in attacked)
    eve_outcomes = [t.eve_log.outcomes for t in attacked]
    eve_outcomes = np.concatenate(eve_outcomes) if eve_outcomes else np.zeros(0)

    rates = {
        'detection_rate': (_rate(detected, n), n),
        'intensity_alarm_rate': (_rate(intensity, n), n),
        'alignment_alarm_rate': (_rate(alignment, n), n),
        'bit_error_rate_undetected': (_rate(errors, len(judged)), len(judged)),
        'undetermined_rate': (_rate(undetermined, n), n),
    }
    eve_accuracy = _rate(eve_correct, len(attacked)) if attacked else None
    eve_zero = float(np.mean(eve_outcomes == 0)) if eve_outcomes.size else None
    if eve_accuracy is not None:
        rates['eve_accuracy'] = (eve_accuracy, len(attacked))
    if eve_zero is not None:
        rates['eve_outcome_zero_rate'] = (eve_zero, int(eve_outcomes.size))
    halfwidths = {name: proportion_halfwidth(p, count, z) for name, (p, count) in rates.items()}
    # same keys in every session so tables line up
    for name in ('eve_accuracy', 'eve_outcome_zero_rate'):
        halfwidths.setdefault(name, None)

    return SessionStats(
        rounds=n,
        detection_rate=rates['detection_rate'][0],
        intensity_alarm_rate=rates['intensity_alarm_rate'][0],
        alignment_alarm_rate=rates['alignment_alarm_rate'][0],
        bit_error_rate_undetected=rates['bit_error_rate_undetected'][0],
        undetermined_rate=rates['undetermined_rate'][0],
        eve_accuracy=eve_accuracy,
        eve_outcome_zero_rate=eve_zero,
        mean_final_intensity=float(np.mean([t.final_intensity for t in transcripts])),
        halfwidths=halfwidths,
    )
