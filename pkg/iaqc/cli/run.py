"""The run command: one session from a run config."""
import logging

import click

from iaqc.analysis.detection import exact_siphon_detection_probability
from iaqc.analysis.stats import aggregate
from iaqc.cli.utils import build_run_config, handle_errors, new_writer, resolve_seed, write_manifest
from iaqc.errors import ParameterError
from iaqc.protocol.session import run_session_rounds

logger = logging.getLogger(__name__)

SUMMARY_FIELDS = (
    'detection_rate', 'intensity_alarm_rate', 'alignment_alarm_rate',
    'bit_error_rate_undetected', 'undetermined_rate', 'eve_accuracy',
)


def format_summary(stats, exact=None):
    """One-screen text summary of a session."""
    lines = [f"rounds: {stats.rounds}"]
    for name in SUMMARY_FIELDS:
        value = getattr(stats, name)
        if value is None:
            lines.append(f"{name}: n/a")
            continue
        lines.append(f"{name}: {value:.6g} ± {stats.halfwidths.get(name, 0.0):.3g}")
    lines.append(f"mean_final_intensity: {stats.mean_final_intensity:.6g}")
    if exact is not None:
        lines.append(f"exact_detection_probability: {exact:.6g}")
    return '\n'.join(lines)


@click.command('run')
@click.option('--config', 'config_path', type=click.Path(dir_okay=False), default=None,
              help='YAML run config.')
@click.option('--set', 'overrides', multiple=True, metavar='SECTION.KEY=VALUE',
              help='Override one config value; repeatable.')
@click.pass_obj
@handle_errors
def run_cmd(settings, config_path, overrides):
    """Run a session and write stats.json, transcripts.csv and manifest.json."""
    run = build_run_config(config_path, overrides, settings.mode)
    seed = resolve_seed(settings.seed)

    transcripts = run_session_rounds(run.round, run.rounds, run.angle_policy, seed,
                                     settings.threads, run.random_bits)
    stats = aggregate(transcripts, settings.config.CONFIDENCE_Z)
    try:
        exact = exact_siphon_detection_probability(run.round)
    except ParameterError:
        exact = None

    writer = new_writer(settings)
    payload = stats.to_dict()
    payload['exact_detection_probability'] = exact
    writer.write_json('stats.json', payload)
    writer.write_csv('transcripts.csv', [t.as_row() for t in transcripts])
    write_manifest(writer, 'run', seed, run)

    click.echo(format_summary(stats, exact))
