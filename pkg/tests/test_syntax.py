# tests/test_syntax.py - Testy parseru, tiskárny a operací nad termy

import pytest
from hypothesis import given, settings, strategies as st

from models.formula_model import (And, Atom, Imp, LAnd, LAtom, LBot, LImp, LOr, LSub, LTop, NEG,
                                  POS, Unit, flip)
from models.sequent_model import Context, Edge, Graph, Hypothesis, LLabelled, LSequent, Sequent
from models.term_model import CoPair, Cut, CutAnnotation, In, Lam, Pair, Triv, Var
from services.syntax_service import (ParseError, parse_formula, parse_goal, parse_graph,
                                     parse_l_formula, parse_l_sequent, parse_sequent, parse_term,
                                     print_formula, print_l_formula, print_l_sequent,
                                     print_sequent, print_term)
from services.term_service import (alpha_eq, free_vars, fresh_node, fresh_var, nodes_of,
                                   subst_node, subst_term)

formulas = st.recursive(
    st.sampled_from([Atom("a"), Atom("b"), Unit(POS), Unit(NEG)]),
    lambda inner: st.one_of(
        st.builds(Imp, st.sampled_from([POS, NEG]), inner, inner),
        st.builds(And, st.sampled_from([POS, NEG]), inner, inner)),
    max_leaves=12)

l_formulas = st.recursive(
    st.sampled_from([LAtom("a"), LAtom("b"), LTop(), LBot()]),
    lambda inner: st.one_of(st.builds(LImp, inner, inner), st.builds(LSub, inner, inner),
                            st.builds(LAnd, inner, inner), st.builds(LOr, inner, inner)),
    max_leaves=12)

names = st.sampled_from(["x", "y", "z"])
nodes = st.sampled_from(["n", "m", "k"])
annotations = st.one_of(st.none(), st.builds(CutAnnotation, formulas, nodes))

terms = st.recursive(
    st.one_of(st.builds(Var, names), st.just(Triv())),
    lambda inner: st.one_of(
        st.builds(Pair, inner, inner),
        st.builds(CoPair, inner, inner),
        st.builds(In, st.sampled_from([1, 2]), inner),
        st.builds(Lam, names, inner),
        st.builds(Cut, names, inner, annotations, inner)),
    max_leaves=10)

edges = st.builds(Edge, nodes, st.sampled_from([POS, NEG]), nodes)
graphs = st.lists(edges, max_size=3).map(lambda es: Graph(tuple(es)))
hypotheses = st.builds(Hypothesis, st.sampled_from([POS, NEG]), formulas, nodes,
                       st.one_of(st.none(), names))
sequents = st.builds(Sequent, graphs, st.lists(hypotheses, max_size=3).map(
    lambda hs: Context(tuple(hs))), st.sampled_from([POS, NEG]), formulas, nodes)

l_items = st.lists(st.builds(LLabelled, nodes, l_formulas), max_size=2).map(tuple)
l_sequents = st.builds(LSequent, l_items,
                       st.lists(st.tuples(nodes, nodes), max_size=2).map(tuple), l_items)


def test_flip():
    assert flip(POS) is NEG
    assert flip(NEG) is POS
    assert flip(flip(POS)) is POS


def test_parse_examples():
    assert parse_formula("<+>") == Unit(POS)
    assert parse_formula("a ->[-] <+>") == Imp(NEG, Atom("a"), Unit(POS))
    assert parse_term("\\x. x") == Lam("x", Var("x"))


def test_implication_is_right_associative():
    a, b, c = Atom("a"), Atom("b"), Atom("c")
    assert parse_formula("a ->[+] b ->[+] c") == Imp(POS, a, Imp(POS, b, c))
    assert parse_formula("a /\\[+] b /\\[-] c") == And(NEG, And(POS, a, b), c)
    assert parse_formula("a /\\[+] b ->[+] c") == Imp(POS, And(POS, a, b), c)


def test_parse_terms():
    assert parse_term("(x, <y, triv>)") == Pair(Var("x"), CoPair(Var("y"), Triv()))
    assert parse_term("in2 in1 x") == In(2, In(1, Var("x")))
    term = parse_term("nu x . y * x : [a @ n]")
    assert term == Cut("x", Var("y"), CutAnnotation(Atom("a"), "n"), Var("x"))
    assert parse_term("nu x . y * x").annotation is None


def test_parse_sequent_with_empty_graph_and_context():
    seq = parse_sequent("; |- + a @ n")
    assert seq == Sequent(Graph(), Context(), POS, Atom("a"), "n")
    assert parse_sequent(". ; . |- + a @ n") == seq
    assert print_sequent(seq) == ". ; . |- + a @ n"


def test_parse_sequent_with_graph_and_hypotheses():
    seq = parse_sequent("n <=[+] m, m <=[-] k ; x : + a @ n, - b @ m |- - <-> @ k")
    assert seq.graph == Graph((Edge("n", POS, "m"), Edge("m", NEG, "k")))
    assert seq.ctx == Context((Hypothesis(POS, Atom("a"), "n", "x"),
                               Hypothesis(NEG, Atom("b"), "m")))
    assert (seq.pol, seq.formula, seq.node) == (NEG, Unit(NEG), "k")


def test_parse_goal_file():
    seq, term = parse_goal("; |- + <+> @ n\n|- triv\n")
    assert seq.formula == Unit(POS)
    assert term == Triv()


def test_parse_l_syntax():
    assert parse_l_formula("a & b | c => d") == LImp(
        LOr(LAnd(LAtom("a"), LAtom("b")), LAtom("c")), LAtom("d"))
    assert parse_l_formula("top -< bot") == LSub(LTop(), LBot())
    lseq = parse_l_sequent("n : a |-[(n, m)] m : a, n : top")
    assert lseq.left == (LLabelled("n", LAtom("a")),)
    assert lseq.graph == (("n", "m"),)
    assert len(lseq.right) == 2
    assert print_l_sequent(parse_l_sequent(". |-[.] n : top")) == ". |-[.] n : top"


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_formula("a ->[+]")
    assert info.value.line == 1
    assert info.value.column == 8
    assert "IDENT" in info.value.expected


def test_parse_error_on_second_line():
    with pytest.raises(ParseError) as info:
        parse_goal("; |- + <+> @ n\n|- triv triv")
    assert info.value.line == 2


def test_atoms_must_be_lowercase():
    with pytest.raises(ParseError) as info:
        parse_formula("a ->[+] Bc")
    assert info.value.column == 9
    with pytest.raises(ParseError):
        parse_l_formula("top => A")
    with pytest.raises(ParseError):
        parse_sequent("; |- + A @ n")
    assert parse_sequent("N <=[+] m ; |- + a1 @ N").node == "N"


def test_unknown_character_is_rejected():
    with pytest.raises(ParseError):
        parse_term("x $ y")


@given(formulas)
def test_formula_print_parse(formula):
    assert parse_formula(print_formula(formula)) == formula


@given(terms)
def test_term_print_parse(term):
    assert parse_term(print_term(term)) == term


@given(sequents)
def test_sequent_print_parse(seq):
    assert parse_sequent(print_sequent(seq)) == seq


@given(l_formulas)
def test_l_formula_print_parse(formula):
    assert parse_l_formula(print_l_formula(formula)) == formula


@given(l_sequents)
def test_l_sequent_print_parse(lseq):
    assert parse_l_sequent(print_l_sequent(lseq)) == lseq


def test_substitution_examples():
    assert subst_term(Var("x"), "x", Triv()) == Triv()
    assert subst_term(Lam("x", Var("x")), "x", Triv()) == Lam("x", Var("x"))


def test_substitution_avoids_capture():
    result = subst_term(Lam("y", Var("x")), "x", Var("y"))
    assert isinstance(result, Lam)
    assert result.var != "y"
    assert result.body == Var("y")


def test_substitution_under_cut_binder():
    term = Cut("y", Var("x"), None, Var("y"))
    result = subst_term(term, "x", Var("y"))
    assert free_vars(result) == {"y"}
    assert result.left == Var("y")
    assert result.right == Var(result.var)


@given(terms, names)
def test_substituting_variable_for_itself(term, name):
    assert alpha_eq(subst_term(term, name, Var(name)), term)


@given(terms, names)
def test_substitution_removes_free_occurrences(term, name):
    assert name not in free_vars(subst_term(term, name, Triv()))


def test_node_substitution():
    assert subst_node("n1", "n2", "n2") == "n1"
    assert subst_node("n1", "n2", "n3") == "n3"
    assert subst_node("m", "n", parse_graph("n <=[+] k")) == parse_graph("m <=[+] k")
    seq = subst_node("m", "n", parse_sequent("n <=[-] k ; + a @ n |- + a @ n"))
    assert seq == parse_sequent("m <=[-] k ; + a @ m |- + a @ m")


def test_node_substitution_in_annotations():
    term = parse_term("nu x . y * x : [a @ n]")
    assert subst_node("m", "n", term).annotation.node == "m"


def test_nodes_of():
    assert nodes_of(Graph()) == set()
    assert nodes_of(parse_graph("n1 <=[+] n2")) == {"n1", "n2"}
    assert nodes_of(Context((Hypothesis(POS, Atom("a"), "n", "x"),))) == {"n"}
    assert nodes_of(parse_sequent("n1 <=[+] n2 ; + a @ n3 |- + a @ n4")) == {"n1", "n2", "n3", "n4"}


def test_alpha_equivalence():
    annotation = CutAnnotation(Atom("a"), "n")
    assert alpha_eq(Lam("x", Var("x")), Lam("z", Var("z")))
    assert not alpha_eq(Lam("x", Var("x")), Lam("x", Triv()))
    assert alpha_eq(Cut("x", Var("x"), annotation, Var("x")),
                    Cut("y", Var("y"), annotation, Var("y")))
    assert not alpha_eq(Lam("x", Var("y")), Lam("y", Var("y")))
    assert not alpha_eq(Var("x"), Var("y"))


def test_alpha_equivalence_and_annotations():
    first = Cut("x", Var("x"), CutAnnotation(Atom("a"), "n"), Var("x"))
    second = Cut("y", Var("y"), CutAnnotation(Atom("b"), "n"), Var("y"))
    assert alpha_eq(first, second)
    assert not alpha_eq(first, second, annotations=True)


@settings(max_examples=50)
@given(terms)
def test_alpha_equivalence_is_reflexive(term):
    assert alpha_eq(term, term, annotations=True)


def test_fresh_names():
    assert fresh_var([]) == "x%0"
    assert fresh_var({"x%3", "x", "y%7"}) == "x%4"
    assert fresh_node(["n", "n%1"]) == "n%2"
