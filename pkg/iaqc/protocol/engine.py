"""Three-pass round execution for the K06 and intensity-aware (iAQC) protocols.

Each link is traversed in the same order:

    sender -> Eve's intercept -> transmission loss -> receiver's tap -> receiver's rotation

Alice's photons start in the bit state, are rotated by theta, returned by
Bob rotated by phi, unwound by Alice and finally unwound and measured in the
encoding basis by Bob. The iAQC engine adds an intensity tap at each
receiver.
"""
import itertools
import logging
import math
from dataclasses import replace

import numpy as np

from iaqc.adversary.estimation import (
    eve_best_guess, eve_reconstruct_bit, estimate_angle_detector_bank,
    estimate_angle_ml, state_candidates,
)
from iaqc.adversary.strategies import AdversarySpec, EveLog, InjectPolicy, Strategy, intercept
from iaqc.channel import (
    Beam, IntensityMode, TapReading, TapStage, intensity_check, split, transmit,
)
from iaqc.errors import ParameterError
from iaqc.protocol.ledger import Ledger, ROW_CAPTIONS
from iaqc.protocol.models import RoundConfig, RoundTranscript, Variant
from iaqc.quantum import born_probability, measure_angles, state_to_bit_angle

logger = logging.getLogger(__name__)

READOUT_BASIS = 0.0


def _eve_sample(siphoned, mode):
    """Photons Eve actually gets to measure from what she siphoned."""
    if mode == IntensityMode.PHOTON_COUNT:
        return siphoned
    # expected-value beams carry fractional weights; Eve measures whole photons
    whole = int(math.floor(siphoned.intensity + 1e-9))
    taken, _ = siphoned.take_front(whole, IntensityMode.PHOTON_COUNT)
    return taken


class _Round:
    """Mutable state of one round while it executes."""

    def __init__(self, cfg, rng, tapped):
        self.cfg = cfg
        self.rng = rng
        self.tapped = tapped
        self.mode = cfg.mode
        self.taps = []
        self.eve = EveLog()
        self.expected = float(cfg.source_intensity)
        self.ledger = Ledger() if cfg.record_ledger else None

    def snapshot(self, row, beam, operators_applied):
        if self.ledger is not None:
            self.ledger.record(ROW_CAPTIONS[row], beam, operators_applied)

    def link(self, beam, pass_index, operators_applied):
        """Eve's intercept followed by transmission loss."""
        spec = self.cfg.adversary
        beam, entry = intercept(beam, spec, pass_index, self.mode, self.rng,
                                bank_size=len(self.cfg.angle_set))
        if entry is not None:
            self.eve.record(entry)
            sample = _eve_sample(entry.siphoned, self.mode)
            if len(sample):
                candidates = state_candidates(self.cfg.angle_set, pass_index)
                if spec.strategy == Strategy.DETECTOR_BANK:
                    posterior = estimate_angle_detector_bank(sample, candidates, self.rng)
                else:
                    posterior = estimate_angle_ml(sample, candidates, spec.basis_policy, self.rng,
                                                  basis_angle=spec.basis_angle)
                self.eve.estimates[pass_index] = posterior
        self.snapshot(2 * pass_index - 1, beam, operators_applied)

        self.expected *= 1.0 - self.cfg.loss
        return transmit(beam, self.cfg.loss, self.mode, self.rng)

    def tap(self, beam, stage, k):
        """Divert fraction k to the intensity detector and record the reading.

        The reading is the incoming intensity referred to the tap. The
        expectation starts at the announced source intensity and drops by
        the photons each earlier tap diverted, which the parties announce.
        """
        if not self.tapped:
            return beam
        incoming = beam.intensity
        tapped, through = split(beam, k, self.mode, self.rng)
        if self.cfg.intensity_checks:
            self.taps.append(TapReading(stage, k * self.expected, k * incoming))
        self.expected -= tapped.intensity
        return through


def _resolve_bit(outcomes):
    """Unanimous outcome, else majority vote; ties and empty beams are undetermined."""
    if outcomes.size == 0:
        return None
    ones = int(outcomes.sum())
    zeros = int(outcomes.size) - ones
    if ones == zeros:
        return None
    return 1 if ones > zeros else 0


def _execute(cfg, rng, tapped):
    state = _Round(cfg, rng, tapped)
    theta, phi = cfg.alice_angle, cfg.bob_angle

    # Step 1: Alice rotates her photons and sends them
    beam = Beam.source(cfg.source_intensity, state_to_bit_angle(cfg.bit)).rotated(theta)
    state.snapshot(0, beam, 1)
    beam = state.link(beam, 1, 1)

    # Step 2: Bob taps, rotates and returns
    beam = state.tap(beam, TapStage.BOB_FIRST, cfg.tap_fraction)
    beam = beam.rotated(phi)
    state.snapshot(2, beam, 2)
    beam = state.link(beam, 2, 2)

    # Step 3: Alice taps, undoes her rotation and forwards
    beam = state.tap(beam, TapStage.ALICE_SECOND, cfg.alice_k)
    beam = beam.rotated(-theta)
    state.snapshot(4, beam, 3)
    beam = state.link(beam, 3, 3)

    # Step 4: Bob taps, undoes his rotation and measures
    beam = state.tap(beam, TapStage.BOB_THIRD, cfg.tap_fraction)
    beam = beam.rotated(-phi)
    state.snapshot(6, beam, 4)
    outcomes = measure_angles(beam.angles, READOUT_BASIS, rng)

    eve = state.eve
    if cfg.adversary.active:
        eve.recovered_bit_guess = eve_reconstruct_bit(eve)
        eve.best_guess = eve_best_guess(eve, rng)

    recovered = _resolve_bit(outcomes)
    intensity_alarm = any(not intensity_check(t, cfg.detector_resolution) for t in state.taps)
    alignment_alarm = bool(outcomes.size) and bool(outcomes.min() != outcomes.max())
    if recovered is None:
        logger.debug(f"Undetermined bit: {int(outcomes.size)} photons measured")

    return RoundTranscript(
        variant=cfg.variant,
        bit=cfg.bit,
        alice_angle=float(theta),
        bob_angle=float(phi),
        taps=state.taps,
        bob_outcomes=outcomes,
        recovered_bit=recovered,
        intensity_alarm=intensity_alarm,
        alignment_alarm=alignment_alarm,
        final_intensity=beam.intensity,
        expected_final_intensity=max(state.expected, 0.0),
        eve_log=eve,
        bob_photon_origins=beam.origins,
        bob_photon_angles=beam.angles,
        ledger=state.ledger.rows if state.ledger is not None else None,
    )


def run_k06_round(cfg, rng):
    """One K06 round: three passes, no intensity taps."""
    if cfg.variant != Variant.K06:
        raise ParameterError('variant', cfg.variant.value, "{k06}")
    return _execute(cfg, rng, tapped=False)


def run_iaqc_round(cfg, rng):
    """One iAQC round: three passes with an intensity tap at every receiver."""
    if cfg.variant != Variant.IAQC:
        raise ParameterError('variant', cfg.variant.value, "{iaqc}")
    return _execute(cfg, rng, tapped=True)


def run_round(cfg, rng):
    """Dispatch on cfg.variant."""
    if cfg.variant == Variant.K06:
        return run_k06_round(cfg, rng)
    return run_iaqc_round(cfg, rng)


def table1_config(with_eve=True, inject_angle=None, bit=0, alice_angle=None, bob_angle=None):
    """Six photons, no taps, Eve siphoning one photon per link and injecting one.

    Args:
        with_eve: False for the honest reference run
        inject_angle: fixed injection angle, or None for random angles
        bit: the bit Alice sends
        alice_angle, bob_angle: fixed secret angles, defaults from the angle set

    Returns:
        RoundConfig
    """
    adversary = AdversarySpec()
    if with_eve:
        adversary = AdversarySpec(
            strategy=Strategy.SIPHON_INJECT,
            count=1,
            inject_policy=InjectPolicy.RANDOM if inject_angle is None else InjectPolicy.FIXED,
            inject_angle=0.0 if inject_angle is None else inject_angle,
        )
    cfg = RoundConfig(
        variant=Variant.IAQC,
        source_intensity=6,
        tap_fraction=0.0,
        bit=bit,
        mode=IntensityMode.PHOTON_COUNT,
        record_ledger=True,
        adversary=adversary,
    )
    if alice_angle is not None or bob_angle is not None:
        cfg = replace(cfg,
                      alice_angle=cfg.alice_angle if alice_angle is None else alice_angle,
                      bob_angle=cfg.bob_angle if bob_angle is None else bob_angle)
    return cfg.validate()


def alignment_alarm_probability(final_angles, basis=READOUT_BASIS):
    """Exact probability that Bob's final photons are not unanimous.

    Enumerates every outcome sequence of the photons and sums the Born
    probability of the non-unanimous ones.
    """
    p0 = np.atleast_1d(born_probability(np.asarray(final_angles, dtype=float), basis))
    total = 0.0
    for outcome in itertools.product((0, 1), repeat=p0.size):
        if len(set(outcome)) < 2:
            continue
        total += float(np.prod([p if o == 0 else 1.0 - p for p, o in zip(p0, outcome)]))
    return total
