# controllers/kripke_controller.py - Kontroler pro ověřování platnosti nad konečnými modely

import click

from contexts.goal_context import GoalContext
from controllers.cli_support import (EXIT_REJECTED, EXIT_USAGE, diagnose, emit, handle_errors,
                                     service_config)
from services.kripke_service import KripkeService


def _atoms(text: str):
    if text is None:
        return None
    return [atom.strip() for atom in text.split(",") if atom.strip()]


@click.command('kripke-validate')
@click.argument('sequent')
@click.option('--max-worlds', type=click.IntRange(min=1), default=None,
              help='Nejvyšší počet světů modelu.')
@click.option('--atoms', default=None, help='Abeceda atomů oddělená čárkami (atomy sekventu se přidají vždy).')
@click.option('--jobs', type=click.IntRange(min=1), default=None,
              help='Počet procesů pro paralelní vyhodnocení.')
@click.option('--l', 'l_syntax', is_flag=True, help='Sekvent je zapsán v syntaxi L.')
@click.pass_context
@handle_errors
def kripke_validate(ctx: click.Context, sequent: str, max_worlds: int, atoms: str, jobs: int,
                    l_syntax: bool):
    """Ověří sekvent ve všech modelech do zadaného počtu světů, nebo vypíše protipříklad."""
    service = KripkeService(service_config(ctx))
    goals = GoalContext()
    if max_worlds is not None and max_worlds > service.world_cap:
        diagnose(f"--max-worlds {max_worlds} překračuje strop {service.world_cap}")
        ctx.exit(EXIT_USAGE)
    if l_syntax:
        result = service.validate_l(goals.load_l_sequent(sequent), max_worlds, _atoms(atoms), jobs)
    else:
        result = service.validate(goals.load_sequent(sequent), max_worlds, _atoms(atoms), jobs)
    lines = result.to_lines() + [f"trace {line}" for line in result.trace]
    emit(ctx, lines, result.to_dict())
    if not result.valid:
        ctx.exit(EXIT_REJECTED)


def register(cli: click.Group) -> None:
    cli.add_command(kripke_validate)
