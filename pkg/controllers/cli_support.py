# controllers/cli_support.py - Společné pomocné funkce kontrolerů (výstup, chyby, návratové kódy)

import functools
import json
from typing import Any, Callable, Dict, Iterable, Optional

import click

from contexts.derivation_context import DerivationFormatError
from services.kripke_service import UnknownAtomError
from services.syntax_service import ParseError

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_USAGE = 2


def service_config(ctx: click.Context) -> Dict[str, Any]:
    return (ctx.obj or {}).get('config', {})


def is_machine(ctx: click.Context) -> bool:
    return (ctx.obj or {}).get('format') == 'machine'


def emit(ctx: click.Context, lines: Iterable[str], data: Optional[Dict[str, Any]] = None) -> None:
    """
    Vypíše výsledek na standardní výstup.

    Args:
        ctx: Kontext příkazu (nese zvolený formát)
        lines: Řádky textového výstupu
        data: Slovník pro strojový výstup (jeden JSON objekt na řádek)
    """
    if is_machine(ctx) and data is not None:
        click.echo(json.dumps(data, ensure_ascii=False, sort_keys=True))
        return
    for line in lines:
        click.echo(line)


def diagnose(message: str) -> None:
    """Diagnostika jde vždy na standardní chybový výstup."""
    click.secho(message, err=True, fg='red')


def handle_errors(command: Callable) -> Callable:
    """Převede chyby vstupu na návratový kód 2 a zbytek nechá projít."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except ParseError as e:
            diagnose(f"Chyba syntaxe: {e}")
            raise click.exceptions.Exit(EXIT_USAGE)
        except (DerivationFormatError, UnknownAtomError) as e:
            diagnose(f"Chybný vstup: {e}")
            raise click.exceptions.Exit(EXIT_USAGE)
        except OSError as e:
            diagnose(f"Soubor nelze načíst: {e}")
            raise click.exceptions.Exit(EXIT_USAGE)

    return wrapper
