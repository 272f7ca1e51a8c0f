# controllers/reduction_controller.py - Kontroler pro normalizaci termů

import click

from contexts.goal_context import GoalContext
from controllers.cli_support import (EXIT_REJECTED, EXIT_USAGE, diagnose, emit, handle_errors,
                                     service_config)
from services.reduction_service import BudgetExceeded, ReductionService, parse_strategy
from services.syntax_service import print_term


@click.command('normalize')
@click.argument('file', type=click.Path(dir_okay=False))
@click.option('--trace', is_flag=True, help='Vypsat každý krok: <krok> <pravidlo> <cesta> <term>.')
@click.option('--max-steps', type=click.IntRange(min=0), default=None,
              help='Limit počtu redukčních kroků.')
@click.option('--strategy', default='lo', show_default=True,
              help='lo (zleva a zvnějšku) nebo rand:SEED.')
@click.pass_context
@handle_errors
def normalize(ctx: click.Context, file: str, trace: bool, max_steps: int, strategy: str):
    """Znormalizuje term ze souboru (samotný term nebo soubor s cílem)."""
    try:
        parse_strategy(strategy)
    except ValueError as e:
        diagnose(str(e))
        ctx.exit(EXIT_USAGE)
    service = ReductionService(service_config(ctx))
    term = GoalContext().load_term(file)
    try:
        result, steps = service.normalize(term, max_steps, strategy)
    except BudgetExceeded as e:
        diagnose(str(e))
        emit(ctx, [f"budget-exceeded {e.steps} {print_term(e.term)}"],
             {"status": "error", "message": str(e), "steps": e.steps, "term": print_term(e.term)})
        ctx.exit(EXIT_REJECTED)
    lines = [redex.to_line(index) for index, redex in enumerate(steps, 1)] if trace else []
    emit(ctx, lines + [print_term(result)], {
        "status": "ok",
        "normal_form": print_term(result),
        "steps": len(steps),
        "trace": [redex.to_line(index) for index, redex in enumerate(steps, 1)],
    })


def register(cli: click.Group) -> None:
    cli.add_command(normalize)
