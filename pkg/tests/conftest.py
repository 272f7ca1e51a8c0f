# tests/conftest.py - Společné fixtury testů

import pytest
from click.testing import CliRunner

from app import cli
from models.formula_model import And, Atom, Imp, NEG, POS, Unit
from services.syntax_service import parse_sequent


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


@pytest.fixture
def invoke(runner):
    """Spustí příkaz CLI s prázdným kontextovým objektem."""
    def run(*args):
        return runner.invoke(cli, list(args), obj={})
    return run


@pytest.fixture
def excluded_middle():
    """Formule a /\\[-] (a ->[-] <+>), tedy A ∨ ∼A pro A = a."""
    return And(NEG, Atom("a"), Imp(NEG, Atom("a"), Unit(POS)))


@pytest.fixture
def excluded_middle_sequent():
    return parse_sequent("; |- + a /\\[-] (a ->[-] <+>) @ n")


# Sekventy, které prove_dil dokáže do hloubky 8 a které platí ve všech malých modelech
PROVABLE = [
    "; |- + <+> @ n",
    "; |- - <-> @ n",
    "; + a @ n |- + a @ n",
    "; - a @ n |- - a @ n",
    "; |- + a ->[+] a @ n",
    "; |- + a ->[+] <+> @ n",
    "; |- + <+> /\\[+] <+> @ n",
    "; + a @ n, + b @ n |- + a /\\[+] b @ n",
    "; + a @ n |- + a /\\[+] a @ n",
    "; + a @ n |- + <+> /\\[+] a @ n",
    "; + a @ n |- + a /\\[-] b @ n",
    "; + b @ n |- + a /\\[-] b @ n",
    "; - a @ n |- - a /\\[+] b @ n",
    "; - a @ n, - b @ n |- - a /\\[-] b @ n",
    "; + a /\\[+] b @ n |- + b /\\[+] a @ n",
    "; + a /\\[-] b @ n |- + b /\\[-] a @ n",
    "; + <-> @ n |- + a @ n",
    "; - <+> @ n |- + a @ n",
    "; + a @ n |- - a ->[+] <-> @ n",
    "; + a @ n |- + b ->[+] a @ n",
    "n <=[+] m ; + a @ n |- + a @ m",
    "m <=[-] n ; + a @ n |- + a @ m",
    "n <=[+] m, m <=[+] k ; + a @ n |- + a @ k",
    "n <=[+] m ; + a ->[+] b @ n, + a @ m |- + b @ m",
    "; |- + a ->[+] b ->[+] a @ n",
    "; |- + a /\\[+] b ->[+] a @ n",
    "; |- + a ->[+] a /\\[-] b @ n",
    "; |- + a /\\[+] b ->[+] b /\\[+] a @ n",
    "; |- + <-> ->[+] a @ n",
    "; |- - <+> ->[-] a @ n",
    "; |- + a /\\[-] (a ->[-] <+>) @ n",
    "; |- - a /\\[+] (a ->[+] <->) @ n",
]

# Sekventy s protipříkladem nejvýše o dvou světech
INVALID = [
    "; |- + a @ n",
    "; |- + b @ n",
    "; |- - a @ n",
    "; |- + <-> @ n",
    "; |- - <+> @ n",
    "; |- + a /\\[+] b @ n",
    "; |- + a /\\[-] b @ n",
    "; |- - a /\\[+] b @ n",
    "; |- - a /\\[-] b @ n",
    "; |- + a /\\[+] <-> @ n",
    "; |- + a ->[-] b @ n",
    "; |- - a ->[+] b @ n",
    "; |- + <+> ->[-] a @ n",
    "; |- + a /\\[-] (b ->[-] <+>) @ n",
    "; + a @ n |- + b @ n",
    "; - a @ n |- + a @ n",
    "; + a @ n |- - a @ n",
    "; - a @ n |- - b @ n",
    "; + a /\\[-] b @ n |- + a @ n",
    "n <=[+] m ; + a @ m |- + a @ n",
    "n <=[-] m ; + a @ n |- + a @ m",
]


@pytest.fixture(params=PROVABLE)
def provable(request):
    return parse_sequent(request.param)


@pytest.fixture(params=INVALID)
def invalid(request):
    return parse_sequent(request.param)
