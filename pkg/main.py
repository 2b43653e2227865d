"""Command-line entry point."""
from iaqc.cli import cli

if __name__ == '__main__':
    cli()
