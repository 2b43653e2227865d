"""The bounds command: closed-form photon budgets."""
import click

from iaqc.analysis.bounds import detector_bank_budget, min_photons_info_bound, siphon_budget
from iaqc.cli.utils import handle_errors


@click.command('bounds')
@click.option('--s', 's', type=int, default=4, show_default=True, help='Size of the angle set.')
@click.option('--m', 'm', type=int, default=10, show_default=True, help="Eve's photons per pass.")
@handle_errors
def bounds_cmd(s, m):
    """Print the information bound, detector-bank budget and siphon budget."""
    bound = min_photons_info_bound(s)
    bank = detector_bank_budget(s)
    siphon = siphon_budget(m)
    click.echo(f"min_photons_info_bound(s={s}): {bound}")
    click.echo(f"detector_bank_budget(s={s}): ({bank[0]}, {bank[1]})")
    click.echo(f"siphon_budget(m={m}): ({siphon[0]}, {siphon[1]})")
