"""YAML run configuration: loading, overrides and dumping."""
import dataclasses
import logging
from dataclasses import dataclass, field
from enum import Enum

import yaml

from iaqc.adversary.strategies import AdversarySpec
from iaqc.errors import ConfigError, ParameterError
from iaqc.protocol.models import AnglePolicy, RoundConfig

logger = logging.getLogger(__name__)

SECTIONS = ('round', 'adversary', 'session')


@dataclass(frozen=True)
class RunConfig:
    """A round template plus the session settings it is run with."""
    round: RoundConfig = field(default_factory=RoundConfig)
    rounds: int = 1000
    angle_policy: AnglePolicy = AnglePolicy.FIXED
    random_bits: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'angle_policy', AnglePolicy(self.angle_policy))


SESSION_FIELDS = tuple(f.name for f in dataclasses.fields(RunConfig) if f.name != 'round')
ROUND_FIELDS = tuple(f.name for f in dataclasses.fields(RoundConfig) if f.name != 'adversary')
ADVERSARY_FIELDS = tuple(f.name for f in dataclasses.fields(AdversarySpec))


def _check_keys(section, values, allowed):
    if not isinstance(values, dict):
        raise ConfigError(f"Section '{section}' must be a mapping, got {type(values).__name__}", field=section)
    for key in values:
        if key not in allowed:
            raise ConfigError(f"Unknown key '{section}.{key}'", field=f'{section}.{key}')


def _plain(value):
    """Convert enums and tuples to YAML-friendly values."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def apply_override(document, assignment):
    """Apply one ``section.key=value`` assignment to a raw config document.

    The value is parsed as YAML so numbers, booleans and lists keep their type.
    """
    if '=' not in assignment:
        raise ConfigError(f"Override '{assignment}' is not of the form section.key=value")
    path, raw = assignment.split('=', 1)
    parts = path.strip().split('.')
    if len(parts) != 2 or parts[0] not in SECTIONS:
        raise ConfigError(f"Override key '{path}' must be one of {SECTIONS} followed by .key", field=path)
    section, key = parts
    try:
        value = yaml.safe_load(raw)
    except yaml.YAMLError as e:
        raise ConfigError(f"Override value for '{path}' is not valid: {e}", field=path)
    document.setdefault(section, {})
    document[section][key] = value
    return document


def parse_run_config(document, overrides=()):
    """Build and validate a RunConfig from a parsed YAML document.

    Args:
        document: mapping with optional 'round', 'adversary' and 'session' sections
        overrides: ``section.key=value`` strings applied before validation

    Returns:
        RunConfig
    """
    document = {k: dict(v) if isinstance(v, dict) else v for k, v in (document or {}).items()}
    for assignment in overrides:
        apply_override(document, assignment)

    _check_keys('config', document, SECTIONS)
    round_values = document.get('round') or {}
    adversary_values = document.get('adversary') or {}
    session_values = document.get('session') or {}
    _check_keys('round', round_values, ROUND_FIELDS)
    _check_keys('adversary', adversary_values, ADVERSARY_FIELDS)
    _check_keys('session', session_values, SESSION_FIELDS)

    try:
        adversary = AdversarySpec(**adversary_values)
        template = RoundConfig(adversary=adversary, **round_values)
        run = RunConfig(round=template, **session_values)
        if isinstance(run.rounds, bool) or not isinstance(run.rounds, int) or run.rounds < 1:
            raise ParameterError('session.rounds', run.rounds, '[1, inf)')
        run.round.validate()
    except (TypeError, ValueError) as e:
        if isinstance(e, ParameterError):
            raise
        raise ConfigError(f"Invalid configuration value: {e}")
    return run


def load_run_config(path, overrides=()):
    """Read a YAML run config from ``path``.

    Raises:
        ConfigError: for unknown keys, unparsable YAML or a file that is not UTF-8
        OSError: when the file cannot be read
    """
    with open(path, 'r', encoding='utf-8') as f:
        try:
            document = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError(f"Could not parse {path}: {e}")
        except UnicodeDecodeError as e:
            raise ConfigError(f"{path} is not UTF-8 text: {e}")
    logger.info(f"Loaded run config from {path}")
    return parse_run_config(document, overrides)


def run_config_document(run):
    """The YAML document for ``run``; parse_run_config inverts it field for field."""
    template = run.round
    return {
        'round': {name: _plain(getattr(template, name)) for name in ROUND_FIELDS},
        'adversary': {name: _plain(getattr(template.adversary, name)) for name in ADVERSARY_FIELDS},
        'session': {name: _plain(getattr(run, name)) for name in SESSION_FIELDS},
    }


def dump_run_config(run, path=None):
    """Serialize ``run`` to YAML, writing it to ``path`` when given."""
    text = yaml.safe_dump(run_config_document(run), sort_keys=False)
    if path is not None:
        with open(path, 'w', encoding='utf-8') as f:
            f.write(text)
        logger.info(f"Wrote run config to {path}")
    return text
