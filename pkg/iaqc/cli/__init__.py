"""Command-line interface: the top-level group and its subcommands."""
from dataclasses import dataclass

import click

from iaqc import __version__, create_app
from iaqc.channel import IntensityMode
from iaqc.cli.utils import SEED_MAX


@dataclass
class Settings:
    """Global options shared by every subcommand."""
    config: type
    seed: int
    out_dir: str
    threads: int
    mode: str


@click.group()
@click.version_option(__version__, prog_name='iaqc')
@click.option('--seed', type=click.IntRange(0, SEED_MAX), default=None,
              help='Root seed (u64). Drawn from system entropy when omitted.')
@click.option('--out', 'out_dir', type=click.Path(file_okay=False), default=None,
              help='Output directory.')
@click.option('--threads', type=click.IntRange(min=1), default=None, help='Worker threads.')
@click.option('--mode', type=click.Choice([m.value for m in IntensityMode]), default=None,
              help='Intensity accounting: photon counts or expected values.')
@click.option('--log-level', type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False),
              default=None)
@click.pass_context
def cli(ctx, seed, out_dir, threads, mode, log_level):
    """Simulate the three-stage protocol and its intensity-aware variant."""
    app_config = create_app(log_level=log_level)
    ctx.obj = Settings(
        config=app_config,
        seed=seed,
        out_dir=out_dir or app_config.OUTPUT_DIR,
        threads=threads or app_config.THREADS,
        mode=mode,
    )


from .run import run_cmd
from .sweep import sweep_cmd
from .table1 import table1_cmd
from .bounds import bounds_cmd
from .identify import identify_cmd

cli.add_command(run_cmd)
cli.add_command(sweep_cmd)
cli.add_command(table1_cmd)
cli.add_command(bounds_cmd)
cli.add_command(identify_cmd)
