"""Tests for bounds, statistics, detection probability and sweeps."""
from dataclasses import replace

import pytest

from iaqc.adversary.strategies import AdversarySpec, Strategy
from iaqc.analysis.bounds import detector_bank_budget, min_photons_info_bound, siphon_budget
from iaqc.analysis.detection import detection_probability, exact_siphon_detection_probability
from iaqc.analysis.stats import aggregate, proportion_halfwidth
from iaqc.analysis.sweep import SweepSpec, min_photons_for_identification, point_config, run_sweep
from iaqc.channel import IntensityMode
from iaqc.errors import ParameterError
from iaqc.protocol.models import AnglePolicy, RoundConfig, Variant
from iaqc.protocol.session import run_session_rounds


class TestBounds:

    @pytest.mark.parametrize('s, expected', [(2, 3), (4, 6), (5, 7), (8, 9)])
    def test_info_bound(self, s, expected) -> None:
        assert min_photons_info_bound(s) == expected

    @pytest.mark.parametrize('s, expected', [(2, (6, 12)), (4, (12, 24)), (10, (30, 60))])
    def test_detector_bank_budget(self, s, expected) -> None:
        assert detector_bank_budget(s) == expected

    @pytest.mark.parametrize('m, expected', [(1, (3, 6)), (10, (30, 60)), (100, (300, 600))])
    def test_siphon_budget(self, m, expected) -> None:
        assert siphon_budget(m) == expected

    def test_out_of_range(self) -> None:
        with pytest.raises(ParameterError, match='s=1'):
            min_photons_info_bound(1)
        with pytest.raises(ParameterError):
            detector_bank_budget(1)
        with pytest.raises(ParameterError):
            siphon_budget(0)


class TestStats:

    def test_halfwidth(self) -> None:
        assert proportion_halfwidth(0.5, 100) == pytest.approx(0.098)
        assert proportion_halfwidth(0.0, 100) == 0.0

    def test_rates_are_fractions(self, siphon_config) -> None:
        transcripts = run_session_rounds(siphon_config, 100, AnglePolicy.FRESH, seed=6, random_bits=True)
        stats = aggregate(transcripts)
        for name in ('detection_rate', 'intensity_alarm_rate', 'alignment_alarm_rate',
                     'bit_error_rate_undetected', 'undetermined_rate', 'eve_accuracy'):
            assert 0.0 <= getattr(stats, name) <= 1.0
        assert set(stats.halfwidths) >= {'detection_rate', 'eve_accuracy'}

    def test_empty_input_rejected(self) -> None:
        with pytest.raises(ValueError):
            aggregate([])


class TestDetection:

    def test_no_eve_is_never_detected(self, honest_config) -> None:
        estimate = detection_probability(honest_config, 200, seed=3)
        assert estimate.estimate == 0.0
        assert estimate.exact is None

    def test_exact_oracle_matches_closed_form(self, siphon_config) -> None:
        """1 - (1-g)^I (k + (1-k) w)^I with w = (1-g)(k + (1-k)(1-g))."""
        g, k, n = 0.002, 0.1, 200
        w = (1 - g) * (k + (1 - k) * (1 - g))
        closed = 1 - (1 - g) ** n * (k + (1 - k) * w) ** n
        assert exact_siphon_detection_probability(siphon_config) == pytest.approx(closed, rel=1e-12)

    def test_monte_carlo_covers_exact_value(self, siphon_config) -> None:
        estimate = detection_probability(siphon_config, 1000, seed=12)
        assert 0.3 < estimate.exact < 0.9
        assert abs(estimate.estimate - estimate.exact) <= 3 * estimate.halfwidth

    def test_interval_coverage_over_replications(self, siphon_config) -> None:
        """g = 0.1, I = 1000: the 95% interval covers the exact value in at least 95 of 100 runs."""
        cfg = replace(siphon_config, source_intensity=1000,
                      adversary=replace(siphon_config.adversary, fraction=0.1))
        exact = exact_siphon_detection_probability(cfg)
        covered = sum(detection_probability(cfg, 100, seed=seed).covers(exact) for seed in range(100))
        assert covered >= 95

    def test_single_link_attack(self, siphon_config) -> None:
        cfg = replace(siphon_config, adversary=replace(siphon_config.adversary, passes_attacked=(1,)))
        assert exact_siphon_detection_probability(cfg) == pytest.approx(1 - (1 - 0.002) ** 200)

    def test_oracle_rejects_other_settings(self, siphon_config) -> None:
        with pytest.raises(ParameterError):
            exact_siphon_detection_probability(replace(siphon_config, detector_resolution=2.0))
        with pytest.raises(ParameterError):
            exact_siphon_detection_probability(replace(siphon_config, tap_fraction=0.0))

    def test_k06_has_no_intensity_alarm(self) -> None:
        cfg = RoundConfig(variant=Variant.K06, source_intensity=100,
                          adversary=AdversarySpec(strategy=Strategy.SIPHON, fraction=0.2))
        transcripts = run_session_rounds(cfg, 50, AnglePolicy.FIXED, seed=0)
        assert not any(t.intensity_alarm for t in transcripts)

    def test_too_few_trials(self, honest_config) -> None:
        with pytest.raises(ParameterError, match='n_trials'):
            detection_probability(honest_config, 99)

    def test_halved_beam_with_taps_always_detected(self) -> None:
        cfg = RoundConfig(source_intensity=60, tap_fraction=0.1, detector_resolution=2.0,
                          mode=IntensityMode.EXPECTED_VALUE,
                          adversary=AdversarySpec(strategy=Strategy.SIPHON, count=10))
        assert detection_probability(cfg, 100, seed=1).estimate == 1.0


class TestSweep:

    def test_tap_fraction_sweep_without_eve(self, honest_config) -> None:
        spec = SweepSpec('k', (0.0, 0.05, 0.1), rounds=50, template=honest_config)
        rows = run_sweep(spec, seed=2)
        assert [row['value'] for row in rows] == [0.0, 0.05, 0.1]
        assert all(row['detection_rate'] == 0.0 for row in rows)

    def test_detection_grows_with_siphon_fraction(self, siphon_config) -> None:
        spec = SweepSpec('g', (0.0, 0.002, 0.01, 0.05), rounds=300, template=siphon_config)
        rows = run_sweep(spec, seed=4)
        rates = [row['detection_rate'] for row in rows]
        halfwidths = [row['detection_rate_halfwidth'] for row in rows]
        assert rates[0] == 0.0
        assert rates[-1] == 1.0
        for i in range(len(rates) - 1):
            assert rates[i + 1] >= rates[i] - halfwidths[i] - halfwidths[i + 1]

    def test_angle_set_sweep_has_bound_columns(self, honest_config) -> None:
        rows = run_sweep(SweepSpec('s', (2, 4, 8), rounds=10, template=honest_config), seed=1)
        assert [row['min_photons_info_bound'] for row in rows] == [3, 6, 9]
        assert [row['bank_eve_photons'] for row in rows] == [6, 12, 24]

    def test_same_seed_same_rows(self, siphon_config) -> None:
        spec = SweepSpec('I', (50, 100), rounds=30, template=siphon_config)
        assert run_sweep(spec, seed=9) == run_sweep(spec, seed=9)

    def test_bad_value_named(self, honest_config) -> None:
        with pytest.raises(ParameterError, match='k=1.5'):
            SweepSpec('k', (0.1, 1.5), template=honest_config).validate()
        with pytest.raises(ParameterError, match='s'):
            point_config(honest_config, 's', 2.5)

    def test_unknown_parameter(self, honest_config) -> None:
        with pytest.raises(ParameterError, match='sweep'):
            SweepSpec('z', (1,), template=honest_config).validate()

    def test_count_sweep_replaces_fraction(self, siphon_config) -> None:
        cfg = point_config(siphon_config, 'n', 3)
        assert cfg.adversary.count == 3 and cfg.adversary.fraction is None


class TestIdentification:

    def test_adaptive_reaches_threshold_above_floor(self) -> None:
        m, accuracies = min_photons_for_identification(4, 'adaptive', 0.95, trials=300, seed=1, max_m=24)
        assert m is not None
        assert accuracies[m] >= 0.95
        assert m >= 2
        assert 3 * m >= min_photons_info_bound(4)

    def test_fixed_basis_stalls_on_diagonals(self) -> None:
        m, accuracies = min_photons_for_identification(4, 'fixed', 0.95, trials=200, seed=1, max_m=8)
        assert m is None
        assert max(accuracies.values()) < 0.8

    def test_unknown_estimator(self) -> None:
        with pytest.raises(ParameterError, match='estimator'):
            min_photons_for_identification(4, 'psychic')

