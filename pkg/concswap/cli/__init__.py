import logging
import sys

import click

from concswap import __version__
from concswap.core import ConcSwapException, NumericalError, OutputError

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2


class ConcSwapGroup(click.Group):
    """
    click maps usage errors to exit code 2; here flag and parameter errors
    exit with 1, numerical and verification failures with 2.
    """

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.exceptions.Abort:
            click.echo("Aborted!", err=True)
            rv = EXIT_USAGE
        except click.ClickException as e:
            e.show()
            rv = EXIT_USAGE
        except (NumericalError, OutputError) as e:
            log.debug(f"{type(e).__name__}: {e}")
            click.echo(f"Error: {e}", err=True)
            rv = EXIT_FAILURE
        except ConcSwapException as e:
            click.echo(f"Error: {e}", err=True)
            rv = EXIT_USAGE

        rv = rv if isinstance(rv, int) else EXIT_OK
        if not standalone_mode:
            return rv
        sys.exit(rv)


@click.group(cls=ConcSwapGroup)
@click.version_option(__version__, prog_name='concswap')
@click.option('--verbose', is_flag=True, help='Debug logging on standard error.')
def cli(verbose):
    """Entanglement swapping: average concurrence, oracle vs closed form."""
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)
        log.debug("Verbose logging enabled")


def main():
    cli(prog_name='concswap')


from concswap.cli import commands  # noqa: E402,F401
