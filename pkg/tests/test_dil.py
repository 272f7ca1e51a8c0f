# tests/test_dil.py - Testy kontroly a hledání odvození v DIL

import pytest

from contexts.derivation_context import (DerivationContext, DerivationFormatError,
                                         dumps_derivation, loads_dil)
from models.derivation_model import DILDerivation
from models.formula_model import Atom, Imp, NEG, POS, Unit
from models.sequent_model import Hypothesis
from services.dil_service import (DerivationError, DilService, NotFound, check_dil, exchange,
                                  left_to_right, premises, prove_dil, weaken)
from services.syntax_service import ParseError, parse_formula, parse_sequent

EXCLUDED_MIDDLE = parse_formula("a /\\[-] (a ->[-] <+>)")
AXIOM_FILE = """; identita
(rule ax
  :conclusion ". ; + a @ n |- + a @ n"
  :witness (index 0)
  :children ())
"""


def node(rule, text, children=(), **witnesses):
    return DILDerivation(rule, parse_sequent(text), list(children), witnesses)


def excluded_middle_derivation() -> DILDerivation:
    """Dvouvrstvé odvození A ∨ ∼A: vnější axiomový řez nad blokem andBar/impBar/řez."""
    inner = node("axCut", "; - a /\\[-] (a ->[-] <+>) @ n |- - a @ n", [
        node("andBar", "; - a /\\[-] (a ->[-] <+>) @ n, + a @ n |- + a /\\[-] (a ->[-] <+>) @ n", [
            node("ax", "; - a /\\[-] (a ->[-] <+>) @ n, + a @ n |- + a @ n", index=1),
        ], index=1),
    ], index=0, formula=EXCLUDED_MIDDLE, node="n")
    return node("axCutBar", "; |- + a /\\[-] (a ->[-] <+>) @ n", [
        node("andBar", "; - a /\\[-] (a ->[-] <+>) @ n |- + a /\\[-] (a ->[-] <+>) @ n", [
            node("impBar", "; - a /\\[-] (a ->[-] <+>) @ n |- + a ->[-] <+> @ n", [
                inner,
                node("unit", "; - a /\\[-] (a ->[-] <+>) @ n |- + <+> @ n"),
            ], node="n"),
        ], index=2),
    ], index=0, formula=EXCLUDED_MIDDLE, node="n")


def general_cut_derivation() -> DILDerivation:
    return node("cut", "; |- + <+> @ n", [
        node("unit", "; - <+> @ n |- + <+> @ n"),
        node("ax", "; - <+> @ n |- - <+> @ n", index=0),
    ], formula=Unit(POS), node="n")


def test_axiom_and_unit():
    assert check_dil(node("ax", "; + a @ n |- + a @ n", index=0)).valid
    assert check_dil(node("unit", "; |- + <+> @ n")).valid


def test_axiom_follows_reachability():
    assert check_dil(node("ax", "n <=[+] m ; + a @ n |- + a @ m", index=0)).valid
    result = check_dil(node("ax", "m <=[+] n ; + a @ n |- + a @ m", index=0))
    assert not result.valid
    assert result.diagnostics[0].rule == "ax"


def test_excluded_middle_in_both_modes():
    derivation = excluded_middle_derivation()
    assert check_dil(derivation, "general").valid
    assert check_dil(derivation, "axiom").valid
    assert derivation.depth() == 6


def test_general_cut_only_in_general_mode():
    derivation = general_cut_derivation()
    assert check_dil(derivation, "general").valid
    result = check_dil(derivation, "axiom")
    assert not result.valid
    assert result.diagnostics[0].path == "/"
    assert result.diagnostics[0].rule == "cut"


def test_imp_freshness():
    bad = node("imp", "; + a @ m |- + a ->[+] a @ n", [
        node("ax", "n <=[+] m ; + a @ m, + a @ m |- + a @ m", index=1),
    ], node="m")
    result = check_dil(bad)
    assert not result.valid
    assert result.diagnostics[0].rule == "imp"
    assert "m" in result.diagnostics[0].message


def test_wrong_premise_is_reported_with_path():
    bad = node("and", "; |- + <+> /\\[+] <+> @ n", [
        node("unit", "; |- + <+> @ n"),
        node("unit", "; |- + <-> @ n"),
    ])
    result = check_dil(bad)
    assert not result.valid
    paths = [d.path for d in result.diagnostics]
    assert "/" in paths and "/1" in paths


def test_missing_children_are_reported():
    result = check_dil(node("and", "; |- + <+> /\\[+] <+> @ n"))
    assert not result.valid
    assert "premis" in result.diagnostics[0].message


def test_unknown_mode():
    with pytest.raises(ValueError):
        check_dil(node("unit", "; |- + <+> @ n"), "classical")


def test_premises_of_imp():
    d = node("imp", "; |- + a ->[+] a @ n", node="n%0")
    assert premises(d) == [parse_sequent("n <=[+] n%0 ; + a @ n%0 |- + a @ n%0")]


def test_prove_identity():
    derivation = prove_dil(parse_sequent("; |- + a ->[+] a @ n"), 3)
    assert derivation.rules() == ["imp", "ax"]
    assert check_dil(derivation, "axiom").valid


def test_prove_excluded_middle():
    seq = parse_sequent("; |- + a /\\[-] (a ->[-] <+>) @ n")
    derivation = prove_dil(seq, 8)
    assert derivation.conclusion == seq
    assert check_dil(derivation, "axiom").valid
    assert "cut" not in derivation.rules()


def test_bare_atom_is_not_found():
    for depth in (0, 1, 4, 8):
        with pytest.raises(NotFound) as info:
            prove_dil(parse_sequent("; |- + a @ n"), depth)
        assert info.value.depth == depth


def test_negative_depth():
    with pytest.raises(ValueError):
        prove_dil(parse_sequent("; |- + <+> @ n"), -1)


def test_proven_corpus_checks_in_axiom_mode(provable):
    derivation = prove_dil(provable, 8)
    assert derivation.conclusion == provable
    assert check_dil(derivation, "axiom").valid


@pytest.mark.parametrize("hyp", [
    Hypothesis(POS, Atom("b"), "n"),
    Hypothesis(NEG, Atom("a"), "m"),
    Hypothesis(POS, Imp(POS, Atom("a"), Atom("b")), "n%0"),
])
def test_weakening_keeps_proven_derivations_valid(provable, hyp):
    derivation = prove_dil(provable, 8)
    weakened = weaken(derivation, hyp)
    assert check_dil(weakened, "axiom").valid
    assert weakened.conclusion.ctx == provable.ctx.extend(hyp)
    assert weakened.rules() == derivation.rules()


def test_weakening_axiom():
    weakened = weaken(node("ax", "; + a @ n |- + a @ n", index=0), Hypothesis(NEG, Atom("b"), "m"))
    assert weakened.conclusion == parse_sequent("; + a @ n, - b @ m |- + a @ n")
    assert check_dil(weakened).valid


def test_weakening_renames_clashing_fresh_node():
    derivation = prove_dil(parse_sequent("; |- + a ->[+] a @ n"), 3)
    weakened = weaken(derivation, Hypothesis(POS, Atom("b"), derivation.witnesses["node"]))
    assert weakened.witnesses["node"] != derivation.witnesses["node"]
    assert check_dil(weakened).valid


def test_exchange():
    d = node("ax", "; + b @ n, + a @ n |- + a @ n", index=1)
    assert exchange(d, [0, 1]) == d
    swapped = exchange(d, [1, 0])
    assert swapped.conclusion == parse_sequent("; + a @ n, + b @ n |- + a @ n")
    assert swapped.witnesses["index"] == 0
    assert check_dil(swapped).valid


def test_exchange_through_proven_derivation():
    derivation = prove_dil(parse_sequent("; + a @ n, + b @ n |- + a /\\[+] b @ n"), 4)
    swapped = exchange(derivation, [1, 0])
    assert check_dil(swapped, "axiom").valid


def test_exchange_rejects_non_permutation():
    with pytest.raises(DerivationError):
        exchange(node("ax", "; + a @ n |- + a @ n", index=0), [0, 0])


def test_left_to_right():
    moved = left_to_right(node("ax", "; + a @ n |- + a @ n", index=0), 0)
    assert moved.rule == "axCut"
    assert moved.conclusion == parse_sequent("; - a @ n |- - a @ n")
    assert moved.depth() == 2
    assert check_dil(moved, "axiom").valid


def test_left_to_right_on_proven_derivation():
    derivation = prove_dil(parse_sequent("; + a @ n, + b @ n |- + a /\\[+] b @ n"), 4)
    moved = left_to_right(derivation, 1)
    assert moved.conclusion == parse_sequent("; + a @ n, - a /\\[+] b @ n |- - b @ n")
    assert check_dil(moved, "axiom").valid


def test_left_to_right_index_out_of_range():
    with pytest.raises(DerivationError):
        left_to_right(node("unit", "; |- + <+> @ n"), 0)


def test_derivation_file_round_trip(tmp_path):
    derivation = excluded_middle_derivation()
    assert loads_dil(dumps_derivation(derivation)) == derivation
    path = DerivationContext(str(tmp_path)).save(derivation, "em.dil")
    assert DerivationContext().load_dil(path) == derivation


def test_hand_written_file():
    derivation = loads_dil(AXIOM_FILE)
    assert derivation.rule == "ax"
    assert derivation.witnesses == {"index": 0}
    assert check_dil(derivation).valid


@pytest.mark.parametrize("text, error", [
    ("(rule ax :conclusion \". ; . |- + a @ n\"", DerivationFormatError),
    ("(rule magic :conclusion \". ; . |- + a @ n\")", DerivationFormatError),
    ("(rule ax :witness (index 0))", DerivationFormatError),
    ("(rule ax :conclusion \". ; . |- + @ n\")", ParseError),
])
def test_malformed_files(text, error):
    with pytest.raises(error):
        loads_dil(text)


def test_service_uses_configured_depth():
    service = DilService({"DEFAULT_PROVE_DEPTH": 1})
    with pytest.raises(NotFound):
        service.prove(parse_sequent("; |- + a ->[+] a @ n"))
    assert service.prove(parse_sequent("; |- + a ->[+] a @ n"), 3).rules() == ["imp", "ax"]
