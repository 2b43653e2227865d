"""Helpers shared by the command modules."""
import logging
import secrets
import sys
from functools import wraps

import click
import numpy as np

from iaqc import __version__
from iaqc.errors import ConfigError, ParameterError
from iaqc.services.configfile import RunConfig, load_run_config, parse_run_config, run_config_document
from iaqc.services.writer import OutputWriter, RunManifest

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3

SEED_MAX = 2 ** 64 - 1


def handle_errors(f):
    """Map library exceptions to exit codes: 2 for bad parameters, 3 for I/O."""
    @wraps(f)
    def decorated(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except ParameterError as e:
            logger.error(f"Invalid parameters: {e}")
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_CONFIG)
        except OSError as e:
            logger.error(f"I/O error: {e}")
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_IO)

    return decorated


def resolve_seed(seed):
    """The given seed, or a fresh 64-bit one from system entropy."""
    if seed is None:
        seed = secrets.randbits(64)
        logger.info(f"No seed given, drew {seed}")
    return seed


def parse_grid(text):
    """Parse a sweep grid: 'a:b:step' (inclusive of b) or 'v1,v2,...'.

    Raises:
        ConfigError: for anything else, including a range without a step
    """
    text = (text or '').strip()
    if not text:
        raise ConfigError("Empty grid", field='grid')
    parts = text.split(':') if ':' in text else text.split(',')
    try:
        numbers = [float(p) for p in parts]
    except ValueError:
        raise ConfigError(f"Grid '{text}' contains a non-numeric value", field='grid')

    if ':' not in text:
        return tuple(numbers)
    if len(numbers) != 3:
        raise ConfigError(f"Grid '{text}' must be a:b:step", field='grid')
    start, stop, step = numbers
    if step <= 0 or stop < start:
        raise ConfigError(f"Grid '{text}' needs step > 0 and b >= a", field='grid')
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    # round away accumulated float error, 0.1*3 is 0.30000000000000004
    return tuple(float(round(start + i * step, 12)) for i in range(count))


def build_run_config(config_path, overrides, mode=None):
    """RunConfig from an optional YAML file, ``--set`` overrides and the global --mode."""
    if mode is not None:
        overrides = tuple(overrides) + (f'round.mode={mode}',)
    if config_path:
        return load_run_config(config_path, overrides)
    return parse_run_config({}, overrides)


def new_writer(settings):
    return OutputWriter(settings.out_dir, settings.config.CSV_SIGNIFICANT_DIGITS)


def write_manifest(writer, command, seed, run=None, extra=None):
    config = run_config_document(run) if isinstance(run, RunConfig) else {}
    if extra:
        config.update(extra)
    writer.write_manifest(RunManifest(command=command, seed=int(seed), version=__version__, config=config))

