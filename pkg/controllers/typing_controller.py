# controllers/typing_controller.py - Kontroler pro typovou kontrolu a rozvinutí eliminátoru case

import click

from contexts.goal_context import GoalContext
from controllers.cli_support import (EXIT_REJECTED, diagnose, emit, handle_errors,
                                     service_config)
from models.formula_model import Polarity
from models.term_model import count_cuts
from services.syntax_service import parse_formula, parse_term, print_term
from services.typing_service import (TypingError, TypingGoal, TypingService, classical_check,
                                     elaborate_case, erase_worlds)


@click.command('check')
@click.argument('file', type=click.Path(dir_okay=False))
@click.option('--trace', is_flag=True, help='Vypsat použitá pravidla se svědky.')
@click.option('--classical', is_flag=True, help='Ověřit i klasické typování po vymazání světů.')
@click.pass_context
@handle_errors
def check(ctx: click.Context, file: str, trace: bool, classical: bool):
    """Typová kontrola souboru s cílem (sekvent a pod ním `|- term`)."""
    service = TypingService(service_config(ctx))
    seq, term = GoalContext().load_goal(file)
    goal = TypingGoal(seq.graph, seq.ctx, term, seq.pol, seq.formula, seq.node)
    try:
        result = service.check(goal)
    except TypingError as e:
        diagnose(str(e))
        emit(ctx, ["rejected"], {"status": "error", "message": str(e), "rule": e.rule})
        ctx.exit(EXIT_REJECTED)
    lines = result.to_lines() if trace else []
    data = {"status": "ok", "trace": result.to_lines()}
    if classical:
        accepted = classical_check(erase_worlds(seq.ctx), term, seq.pol, seq.formula)
        lines.append(f"classical {'ok' if accepted else 'rejected'}")
        data["classical"] = accepted
    emit(ctx, lines + ["ok"], data)


@click.command('case-elab')
@click.option('--scrutinee', required=True, help='Rozebíraný term t.')
@click.option('--var', 'var', required=True, help='Proměnná vázaná ve větvích.')
@click.option('--left', 'left', required=True, help='Větev t1.')
@click.option('--right', 'right', required=True, help='Větev t2.')
@click.option('--pol', type=click.Choice(['+', '-']), default='+', show_default=True)
@click.option('-a', 'a_text', required=True, help='Formule A.')
@click.option('-b', 'b_text', required=True, help='Formule B.')
@click.option('-c', 'c_text', required=True, help='Výsledná formule C.')
@click.option('--node', default='n', show_default=True)
@click.pass_context
@handle_errors
def case_elab(ctx: click.Context, scrutinee: str, var: str, left: str, right: str, pol: str,
              a_text: str, b_text: str, c_text: str, node: str):
    """Rozvine odvozený eliminátor disjunkce na term s řezy."""
    term = elaborate_case(parse_term(scrutinee), var, parse_term(left), parse_term(right),
                          Polarity.from_symbol(pol), parse_formula(a_text), parse_formula(b_text),
                          parse_formula(c_text), node)
    emit(ctx, [print_term(term)], {"status": "ok", "term": print_term(term),
                                   "cuts": count_cuts(term)})


def register(cli: click.Group) -> None:
    cli.add_command(check)
    cli.add_command(case_elab)
