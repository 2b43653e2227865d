"""The identify command: photons Eve needs to single out one of s angles."""
import click

from iaqc.analysis.bounds import min_photons_info_bound
from iaqc.analysis.sweep import ESTIMATORS, min_photons_for_identification
from iaqc.cli.utils import handle_errors, new_writer, resolve_seed, write_manifest


@click.command('identify')
@click.option('--s', 's', type=int, default=4, show_default=True)
@click.option('--estimator', type=click.Choice(ESTIMATORS), default='adaptive', show_default=True)
@click.option('--threshold', type=float, default=None, help='Required accuracy; IDENTIFICATION_THRESHOLD by default.')
@click.option('--trials', type=click.IntRange(min=1), default=1000, show_default=True)
@click.option('--max-m', type=click.IntRange(min=1), default=64, show_default=True)
@click.pass_obj
@handle_errors
def identify_cmd(settings, s, estimator, threshold, trials, max_m):
    """Find the smallest m reaching the identification threshold; write identify.csv."""
    seed = resolve_seed(settings.seed)
    threshold = settings.config.IDENTIFICATION_THRESHOLD if threshold is None else threshold
    m, accuracies = min_photons_for_identification(s, estimator, threshold, trials, seed, max_m)

    writer = new_writer(settings)
    writer.write_csv('identify.csv', [{'m': k, 'accuracy': v} for k, v in accuracies.items()],
                     fieldnames=['m', 'accuracy'])
    write_manifest(writer, 'identify', seed, extra={
        's': s, 'estimator': estimator, 'threshold': threshold, 'trials': trials, 'max_m': max_m,
    })
    floor = min_photons_info_bound(s)
    if m is None:
        click.echo(f"s={s}: accuracy stayed below {threshold} up to m={max_m} (floor {floor} over three passes)")
    else:
        click.echo(f"s={s}: m={m} photons per pass ({3 * m} over three passes, floor {floor})")
