# config.py - Konfigurace nástroje (hodnoty lze přepsat proměnnými prostředí nebo souborem .env)

import os
from typing import Any, Dict

# Logování (výstup jde vždy na standardní chybový výstup)
LOG_LEVEL = os.environ.get('LOG_LEVEL', 'WARNING')

# Redukce termů
DEFAULT_MAX_STEPS = int(os.environ.get('DEFAULT_MAX_STEPS', 100000))
CONFLUENCE_SAMPLES = int(os.environ.get('CONFLUENCE_SAMPLES', 10))
DEFAULT_SEED = int(os.environ.get('DEFAULT_SEED', 0))

# Generátor typovatelných soudů pro vlastnostní testy
GENERATOR_DEPTH = int(os.environ.get('GENERATOR_DEPTH', 6))
GENERATOR_BUDGET = int(os.environ.get('GENERATOR_BUDGET', 400))
GENERATOR_ATOMS = tuple(atom.strip() for atom in os.environ.get('GENERATOR_ATOMS', 'a,b').split(',')
                        if atom.strip())

# Hledání důkazů v DIL
DEFAULT_PROVE_DEPTH = int(os.environ.get('DEFAULT_PROVE_DEPTH', 8))

# Kripkeho modely
KRIPKE_MAX_WORLDS = int(os.environ.get('KRIPKE_MAX_WORLDS', 3))
KRIPKE_WORLD_CAP = int(os.environ.get('KRIPKE_WORLD_CAP', 4))  # pevný strop výčtu
KRIPKE_JOBS = int(os.environ.get('KRIPKE_JOBS', 1))

# Výstup příkazové řádky: text nebo machine
OUTPUT_FORMAT = os.environ.get('OUTPUT_FORMAT', 'text')


def as_dict() -> Dict[str, Any]:
    """Vrátí konfiguraci jako slovník pro konstruktory služeb."""
    return {name: value for name, value in globals().items() if name.isupper()}
