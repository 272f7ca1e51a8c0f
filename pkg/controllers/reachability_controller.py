# controllers/reachability_controller.py - Kontroler pro dotazy na dosažitelnost

import click

from controllers.cli_support import EXIT_REJECTED, emit, handle_errors, service_config
from models.formula_model import Polarity
from models.sequent_model import ReachQuery
from services.reachability_service import ReachabilityService
from services.syntax_service import parse_graph


@click.command('reach')
@click.argument('graph')
@click.argument('source')
@click.argument('pol', type=click.Choice(['+', '-']))
@click.argument('target')
@click.pass_context
@handle_errors
def reach(ctx: click.Context, graph: str, source: str, pol: str, target: str):
    """Rozhodne G |- SOURCE <=*[POL] TARGET; graf je čárkami oddělený seznam hran."""
    service = ReachabilityService(service_config(ctx))
    query = ReachQuery(parse_graph(graph), source, Polarity.from_symbol(pol), target)
    result = service.decide(query)
    path = service.witness_path(query) if result else None
    lines = ["true", "path " + " ".join(path)] if result else ["false"]
    emit(ctx, lines, {"status": "ok" if result else "error", "reachable": result, "path": path})
    if not result:
        ctx.exit(EXIT_REJECTED)


def register(cli: click.Group) -> None:
    cli.add_command(reach)
