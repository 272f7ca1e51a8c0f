# controllers/l_controller.py - Kontroler pro odvození v L a překlady mezi L a DIL

import click

from contexts.derivation_context import DerivationContext
from contexts.goal_context import GoalContext
from controllers.cli_support import (EXIT_REJECTED, EXIT_USAGE, diagnose, emit, handle_errors,
                                     service_config)
from services.l_service import LService
from services.syntax_service import print_l_sequent, print_sequent


@click.command('l-check')
@click.argument('file', type=click.Path(dir_okay=False))
@click.pass_context
@handle_errors
def l_check(ctx: click.Context, file: str):
    """Zkontroluje odvození v L uložené ve stromovém formátu."""
    service = LService(service_config(ctx))
    result = service.check(DerivationContext().load_l(file))
    for diagnostic in result.diagnostics:
        diagnose(str(diagnostic))
    emit(ctx, ["valid" if result.valid else "invalid"], result.to_dict())
    if not result.valid:
        ctx.exit(EXIT_REJECTED)


@click.command('translate')
@click.argument('source')
@click.option('--to-dil', 'direction', flag_value='dil', help='Sekvent L na aktivace v DIL.')
@click.option('--to-l', 'direction', flag_value='l', help='Sekvent DIL na sekvent L.')
@click.pass_context
@handle_errors
def translate(ctx: click.Context, source: str, direction: str):
    """Přeloží sekvent (zadaný přímo nebo souborem) mezi L a DIL."""
    if direction is None:
        diagnose("Zvolte směr překladu: --to-dil nebo --to-l")
        ctx.exit(EXIT_USAGE)
    service = LService(service_config(ctx))
    goals = GoalContext()
    if direction == 'dil':
        lines = [print_sequent(seq) for seq in service.to_dil(goals.load_l_sequent(source))]
        emit(ctx, lines, {"status": "ok", "activations": lines})
    else:
        line = print_l_sequent(service.to_l(goals.load_sequent(source)))
        emit(ctx, [line], {"status": "ok", "sequent": line})


def register(cli: click.Group) -> None:
    cli.add_command(l_check)
    cli.add_command(translate)
