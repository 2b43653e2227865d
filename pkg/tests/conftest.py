"""Shared fixtures."""
import numpy as np
import pytest
from click.testing import CliRunner

from iaqc.adversary.strategies import AdversarySpec, Strategy
from iaqc.channel import IntensityMode
from iaqc.protocol.models import RoundConfig, Variant


@pytest.fixture(autouse=True)
def testing_env(monkeypatch):
    monkeypatch.setenv('IAQC_ENV', 'testing')


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def honest_config():
    return RoundConfig(variant=Variant.IAQC, source_intensity=200, tap_fraction=0.1)


@pytest.fixture
def siphon_config():
    """Bernoulli siphoning on every link, ideal detectors, photon counts."""
    return RoundConfig(
        variant=Variant.IAQC,
        source_intensity=200,
        tap_fraction=0.1,
        mode=IntensityMode.PHOTON_COUNT,
        adversary=AdversarySpec(strategy=Strategy.SIPHON, fraction=0.002),
    )


@pytest.fixture
def runner(tmp_path):
    """CliRunner plus the output directory the commands should write to."""
    return CliRunner(), str(tmp_path / 'out')
