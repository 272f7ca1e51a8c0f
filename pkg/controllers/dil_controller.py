# controllers/dil_controller.py - Kontroler pro kontrolu a hledání odvození v DIL

import click

from contexts.derivation_context import DerivationContext, dumps_derivation
from contexts.goal_context import GoalContext
from controllers.cli_support import (EXIT_REJECTED, diagnose, emit, handle_errors,
                                     service_config)
from services.dil_service import MODES, DilService, NotFound


@click.command('dil-check')
@click.argument('file', type=click.Path(dir_okay=False))
@click.option('--mode', type=click.Choice(list(MODES)), default='general',
              show_default=True, help='axiom povoluje jen axiomové řezy.')
@click.pass_context
@handle_errors
def dil_check(ctx: click.Context, file: str, mode: str):
    """Zkontroluje odvození DIL uložené ve stromovém formátu."""
    service = DilService(service_config(ctx))
    derivation = DerivationContext().load_dil(file)
    result = service.check(derivation, mode)
    for diagnostic in result.diagnostics:
        diagnose(str(diagnostic))
    emit(ctx, ["valid" if result.valid else "invalid"], result.to_dict())
    if not result.valid:
        ctx.exit(EXIT_REJECTED)


@click.command('dil-prove')
@click.argument('sequent')
@click.option('--depth', type=click.IntRange(min=0), default=None, help='Hloubka hledání.')
@click.option('--out', type=click.Path(dir_okay=False), default=None,
              help='Uložit nalezené odvození do souboru.')
@click.pass_context
@handle_errors
def dil_prove(ctx: click.Context, sequent: str, depth: int, out: str):
    """Hledá odvození sekventu (zadaného přímo nebo souborem) v režimu axiomových řezů."""
    service = DilService(service_config(ctx))
    seq = GoalContext().load_sequent(sequent)
    try:
        derivation = service.prove(seq, depth)
    except NotFound as e:
        diagnose(str(e))
        emit(ctx, [f"not-found {e.depth}"], {"status": "error", "message": str(e),
                                              "depth": e.depth})
        ctx.exit(EXIT_REJECTED)
    text = dumps_derivation(derivation)
    if out:
        path = DerivationContext().save(derivation, out)
        lines = [f"saved {path}"]
    else:
        lines = text.rstrip("\n").split("\n")
    emit(ctx, lines, {"status": "ok", "depth": derivation.depth(), "rules": derivation.rules(),
                      "derivation": text})


def register(cli: click.Group) -> None:
    cli.add_command(dil_check)
    cli.add_command(dil_prove)
