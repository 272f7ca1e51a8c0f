# app.py - Vstupní bod příkazové řádky

import logging
import sys

import click
from dotenv import load_dotenv

# Načtení proměnných prostředí z .env souboru (před importem konfigurace)
load_dotenv()

import config

# Import kontrolerů
from controllers import (dil_controller, kripke_controller, l_controller,
                         reachability_controller, reduction_controller, typing_controller)

logging.basicConfig(stream=sys.stderr, level=config.LOG_LEVEL,
                    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')


@click.group()
@click.option('--format', 'output_format', type=click.Choice(['text', 'machine']),
              default=config.OUTPUT_FORMAT, show_default=True,
              help='Lidsky čitelný nebo řádkový strojový výstup.')
@click.pass_context
def cli(ctx: click.Context, output_format: str):
    """Nástroje pro dualizovanou intuicionistickou logiku a teorii typů."""
    ctx.ensure_object(dict)
    ctx.obj['config'] = config.as_dict()
    ctx.obj['format'] = output_format


# Registrace kontrolerů
typing_controller.register(cli)
reduction_controller.register(cli)
reachability_controller.register(cli)
dil_controller.register(cli)
l_controller.register(cli)
kripke_controller.register(cli)


def main():
    cli(obj={})


if __name__ == '__main__':
    main()
