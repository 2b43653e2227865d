"""The table1 command: the six-photon siphon-and-inject walkthrough."""
import click

from iaqc.cli.utils import handle_errors, resolve_seed
from iaqc.protocol.engine import run_iaqc_round, table1_config
from iaqc.protocol.ledger import render_ledger
from iaqc.protocol.session import round_rng


def bob_verdict(transcript):
    outcomes = ''.join(str(int(o)) for o in transcript.bob_outcomes)
    if transcript.alignment_alarm:
        return f"Bob's outcomes {outcomes}: not aligned, eavesdropper detected"
    return f"Bob's outcomes {outcomes}: aligned, bit {transcript.recovered_bit}"


@click.command('table1')
@click.option('--no-eve', is_flag=True, help='Honest run without the eavesdropper.')
@click.option('--inject-angle', type=float, default=None,
              help='Fixed angle for injected photons; random when omitted.')
@click.option('--bit', type=click.IntRange(0, 1), default=0)
@click.pass_obj
@handle_errors
def table1_cmd(settings, no_eve, inject_angle, bit):
    """Print the photon ledger of the six-photon walkthrough and Bob's verdict."""
    seed = resolve_seed(settings.seed)
    cfg = table1_config(with_eve=not no_eve, inject_angle=inject_angle, bit=bit)
    transcript = run_iaqc_round(cfg, round_rng(seed, 0))
    click.echo(render_ledger(transcript.ledger, verdict=bob_verdict(transcript)))
