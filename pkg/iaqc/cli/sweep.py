"""The sweep command: one session per grid value of a parameter."""
import click

from iaqc.analysis.sweep import SWEEP_PARAMETERS, SweepSpec, run_sweep
from iaqc.cli.utils import build_run_config, handle_errors, new_writer, parse_grid, resolve_seed, write_manifest


@click.command('sweep')
@click.option('--config', 'config_path', type=click.Path(dir_okay=False), default=None)
@click.option('--set', 'overrides', multiple=True, metavar='SECTION.KEY=VALUE')
@click.option('--sweep', 'parameter', type=click.Choice(SWEEP_PARAMETERS), required=True,
              help='Parameter to vary.')
@click.option('--grid', required=True, help='"a:b:step" (inclusive) or "v1,v2,...".')
@click.option('--rounds', type=click.IntRange(min=1), default=None,
              help='Rounds per point; defaults to session.rounds.')
@click.pass_obj
@handle_errors
def sweep_cmd(settings, config_path, overrides, parameter, grid, rounds):
    """Sweep a parameter and write sweep.csv and manifest.json."""
    values = parse_grid(grid)
    run = build_run_config(config_path, overrides, settings.mode)
    seed = resolve_seed(settings.seed)

    spec = SweepSpec(parameter, values, rounds or run.rounds, run.round, run.angle_policy)
    rows = run_sweep(spec, seed, settings.threads, settings.config.CONFIDENCE_Z)

    writer = new_writer(settings)
    writer.write_csv('sweep.csv', rows)
    write_manifest(writer, 'sweep', seed, run,
                   extra={'sweep': {'parameter': parameter, 'grid': list(values), 'rounds': spec.rounds}})
    click.echo(f"{len(rows)} points written to {writer.path('sweep.csv')}")
