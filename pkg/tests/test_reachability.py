# tests/test_reachability.py - Testy rozhodování dosažitelnosti a operace raise

import itertools

from hypothesis import given, strategies as st

from models.formula_model import NEG, POS
from models.sequent_model import Edge, Graph, ReachQuery
from services.generator_service import enumerate_graphs
from services.reachability_service import (ReachabilityService, closure_oracle, raise_graph,
                                           reachable_set, reaches)
from services.syntax_service import parse_graph

NODES = ["a", "b", "c", "d"]

polarities = st.sampled_from([POS, NEG])
graphs = st.lists(st.builds(Edge, st.sampled_from(NODES), polarities, st.sampled_from(NODES)),
                  max_size=5).map(lambda es: Graph(tuple(es)))
nodes = st.sampled_from(NODES)


def test_reaches_examples():
    assert reaches(parse_graph("n1 <=[+] n2"), "n1", POS, "n2")
    assert reaches(Graph(), "n", POS, "n")
    assert reaches(Graph(), "n", NEG, "n")
    assert reaches(parse_graph("n1 <=[+] n2"), "n2", NEG, "n1")


def test_reaches_through_flipped_edge():
    graph = parse_graph("n1 <=[-] n2, n3 <=[+] n2")
    assert reaches(graph, "n3", POS, "n1")
    assert not reaches(graph, "n1", POS, "n3")
    assert reaches(graph, "n2", POS, "n1")
    assert reaches(graph, "n1", NEG, "n3")


def test_reaches_along_a_chain():
    graph = parse_graph("n1 <=[+] n2, n3 <=[-] n2")
    assert reaches(graph, "n1", POS, "n3")
    assert reaches(graph, "n3", NEG, "n1")
    assert not reaches(graph, "n3", POS, "n1")


def test_closure_oracle_examples():
    assert closure_oracle(Graph(), ["n"]) == {("n", POS, "n"), ("n", NEG, "n")}
    closure = closure_oracle(parse_graph("a <=[+] b"))
    assert {("a", POS, "b"), ("b", NEG, "a"), ("a", POS, "a")} <= closure
    assert ("b", POS, "a") not in closure


def test_reaches_agrees_with_closure_on_all_small_graphs():
    checked = 0
    for graph in enumerate_graphs(NODES, 4):
        oracle = closure_oracle(graph, NODES)
        for source, target in itertools.product(NODES, NODES):
            for pol in (POS, NEG):
                assert reaches(graph, source, pol, target) == ((source, pol, target) in oracle), \
                    (graph, source, pol, target)
                checked += 1
    assert checked == 2517 * 32


@given(graphs, nodes, polarities, nodes)
def test_flip(graph, source, pol, target):
    assert reaches(graph, source, pol, target) == reaches(graph, target, pol.flip(), source)


@given(graphs, nodes, polarities, nodes, nodes)
def test_transitivity(graph, first, pol, second, third):
    if reaches(graph, first, pol, second) and reaches(graph, second, pol, third):
        assert reaches(graph, first, pol, third)


@given(graphs, graphs, nodes, polarities, nodes)
def test_weakening(graph, extra, source, pol, target):
    if reaches(graph, source, pol, target):
        assert reaches(graph + extra, source, pol, target)
        assert reaches(extra + graph, source, pol, target)


@given(graphs, nodes, polarities)
def test_reachable_set_matches_reaches(graph, source, pol):
    found = reachable_set(graph, source, pol)
    for target in NODES:
        assert (target in found) == reaches(graph, source, pol, target)


def test_raise_examples():
    assert raise_graph("n1", "n2", Graph()) == Graph()
    assert raise_graph("n1", "n2", parse_graph("n1 <=[+] m")) == parse_graph("n2 <=[+] m")
    assert raise_graph("n1", "n2", parse_graph("m <=[-] n1")) == parse_graph("m <=[-] n2")
    assert raise_graph("n1", "n2", parse_graph("m <=[+] k")) == parse_graph("m <=[+] k")


def test_raise_negative_polarity():
    assert raise_graph("n1", "n2", parse_graph("n1 <=[-] m"), NEG) == parse_graph("n2 <=[-] m")
    assert raise_graph("n1", "n2", parse_graph("m <=[+] n1"), NEG) == parse_graph("m <=[+] n2")
    assert raise_graph("n1", "n2", parse_graph("n1 <=[+] m"), NEG) == parse_graph("n1 <=[+] m")


@given(graphs, graphs, nodes, nodes, polarities, nodes, polarities, nodes)
def test_raising_the_lower_bound_keeps_reachability(graph, other, n1, n2, pol, source, qpol, target):
    if not reaches(graph, n1, pol, n2):
        return
    if reaches(graph + other, source, qpol, target):
        assert reaches(graph + raise_graph(n1, n2, other, pol), source, qpol, target)


def test_service_witness_path():
    service = ReachabilityService()
    graph = parse_graph("n1 <=[+] n2, n3 <=[-] n2")
    assert service.decide(ReachQuery(graph, "n1", POS, "n3"))
    path = service.witness_path(ReachQuery(graph, "n1", POS, "n3"))
    assert path[0] == "n1" and path[-1] == "n3"
    assert service.witness_path(ReachQuery(graph, "n3", POS, "n1")) is None
