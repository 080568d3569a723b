# cli/main.py
"""
Main entry point for confext

This file defines the root Click command group 'confext' and registers the
command families from cli/core.py, cli/extensions.py, cli/wells.py,
cli/homotopy.py and cli/suite.py
"""


from __future__ import annotations
import logging
import sys
from pathlib import Path
sys.path.append(str(Path(__file__).resolve().parent.parent))
import click
from rich.logging import RichHandler

# import subcommand groups
from cli.common import console
from cli.core import cocycle, cohomology, diff, validate
from cli.extensions import ext, mc
from cli.homotopy import crossed, shac
from cli.suite import check_all, examples, schema
from cli.wells import wells


@click.group(invoke_without_command=True)
@click.option("--verbose", "-v", is_flag=True, help="Log solver progress at DEBUG level.")
@click.pass_context
def confext(ctx: click.Context, verbose: bool):
    """
    ∂ confext

    Exact checks for associative conformal algebras: Hochschild cochains,
    non-abelian extensions, Maurer-Cartan elements, Wells maps and
    2-term homotopy structures, all read from a JSON session file.

    Example usage:
        confext validate data/cur_k.json
        confext ext equivalent data/rigid.json chi1 chi2
        confext wells aut data/abelian.json --extension E --pair ident
    """
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )

    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


# -------------------------------------------------------------------
# Register the subcommand groups
# -------------------------------------------------------------------
confext.add_command(validate) # type: ignore
confext.add_command(diff) # type: ignore
confext.add_command(cocycle) # type: ignore
confext.add_command(cohomology) # type: ignore
confext.add_command(ext) # type: ignore
confext.add_command(mc) # type: ignore
confext.add_command(wells) # type: ignore
confext.add_command(crossed) # type: ignore
confext.add_command(shac) # type: ignore
confext.add_command(schema) # type: ignore
confext.add_command(examples) # type: ignore
confext.add_command(check_all) # type: ignore


def main():
    """Entry point for CLI execution"""
    confext()


if __name__ == "__main__":
    main()
