# tests/test_typing.py - Testy typové kontroly DTT

import pytest

from models.formula_model import And, Atom, Imp, NEG, POS, Unit
from models.sequent_model import Context, Edge, Graph, Hypothesis
from models.term_model import Lam, Pair, Triv, Var, count_cuts
from services.syntax_service import parse_context, parse_goal, parse_term
from services.term_service import free_vars, subst_node
from services.typing_service import (ClassicalContext, ClassicalEntry, TypingError, TypingGoal,
                                     TypingService, TypingStep, classical_check, elaborate_case,
                                     erase_worlds, replay_trace)

EXCLUDED_MIDDLE_TERM = ("nu x . in1 (nu y . in2 <y, triv> * x : [(a /\\[-] (a ->[-] <+>)) @ n]) "
                        "* x : [(a /\\[-] (a ->[-] <+>)) @ n]")


def goal_from(text: str) -> TypingGoal:
    seq, term = parse_goal(text)
    return TypingGoal(seq.graph, seq.ctx, term, seq.pol, seq.formula, seq.node)


@pytest.fixture
def service():
    return TypingService()


def test_unit(service):
    trace = service.check(TypingGoal(Graph(), Context(), Triv(), POS, Unit(POS), "n"))
    assert trace.rules() == ["Unit"]


def test_identity(service):
    goal = TypingGoal(Graph(), Context(), Lam("z", Var("z")), POS,
                      Imp(POS, Atom("a"), Atom("a")), "n")
    trace = service.check(goal)
    assert trace.rules() == ["Imp", "Ax"]
    fresh = trace.steps[0].witnesses["node"]
    assert fresh != "n"
    assert trace.steps[1].goal.graph == Graph((Edge("n", POS, fresh),))


def test_excluded_middle(service, excluded_middle):
    goal = TypingGoal(Graph(), Context(), parse_term(EXCLUDED_MIDDLE_TERM), POS, excluded_middle,
                      "n")
    trace = service.check(goal)
    assert trace.rules() == ["Cut", "AndBar", "Cut", "AndBar", "ImpBar", "Ax", "Unit", "Ax", "Ax"]


def test_unit_polarity_mismatch(service):
    with pytest.raises(TypingError) as info:
        service.check(TypingGoal(Graph(), Context(), Triv(), POS, Unit(NEG), "n"))
    assert info.value.rule == "Unit"
    assert info.value.path == ()


def test_unbound_variable(service):
    with pytest.raises(TypingError) as info:
        service.check(goal_from("; |- + a @ n\n|- x"))
    assert info.value.rule == "Ax"


def test_error_path_points_into_term(service):
    with pytest.raises(TypingError) as info:
        service.check(goal_from("; |- + <+> /\\[+] <+> @ n\n|- (triv, \\x. x)"))
    assert info.value.rule == "Imp"
    assert info.value.path == (1,)


def test_cut_requires_annotation(service):
    with pytest.raises(TypingError) as info:
        service.check(goal_from("; |- + <+> @ n\n|- nu x . triv * x"))
    assert info.value.rule == "Cut"


def test_axiom_needs_reachable_node(service):
    assert service.accepts(goal_from("n <=[+] m ; x : + a @ n |- + a @ m\n|- x"))
    assert not service.accepts(goal_from("m <=[+] n ; x : + a @ n |- + a @ m\n|- x"))
    assert service.accepts(goal_from("m <=[+] n ; x : - a @ n |- - a @ m\n|- x"))


def test_duplicate_context_variables_are_rejected(service):
    with pytest.raises(TypingError) as info:
        service.check(goal_from("; x : + a @ n, x : + a @ n |- + a @ n\n|- x"))
    assert info.value.rule == "Context"


def test_copair_picks_reachable_witness(service):
    goal = goal_from("m <=[+] n ; x : - a @ m |- + a ->[-] <+> @ n\n|- <x, triv>")
    trace = service.check(goal)
    assert trace.steps[0].rule == "ImpBar"
    assert trace.steps[0].witnesses["node"] == "m"


def test_binder_clashing_with_context_is_renamed(service):
    goal = goal_from("; x : + a @ n |- + b ->[+] a @ n\n|- \\x. x")
    assert not service.accepts(goal)
    goal = goal_from("; x : + a @ n |- + b ->[+] b @ n\n|- \\x. x")
    trace = service.check(goal)
    assert trace.steps[0].witnesses["var"] != "x"


def test_trace_is_deterministic(service, excluded_middle):
    goal = TypingGoal(Graph(), Context(), parse_term(EXCLUDED_MIDDLE_TERM), POS, excluded_middle,
                      "n")
    assert service.check(goal).steps == service.check(goal).steps


def test_trace_lines(service):
    goal = TypingGoal(Graph(), Context(), Lam("z", Var("z")), POS,
                      Imp(POS, Atom("a"), Atom("a")), "n")
    lines = service.check(goal).to_lines()
    assert lines[0].startswith(". Imp ")
    assert lines[1] == "0 Ax index=0"


def test_replay_accepts_recorded_trace(service, excluded_middle):
    goal = TypingGoal(Graph(), Context(), parse_term(EXCLUDED_MIDDLE_TERM), POS, excluded_middle,
                      "n")
    assert replay_trace(service.check(goal)).valid


def test_replay_rejects_tampered_witness(service):
    goal = TypingGoal(Graph(), Context(), Lam("z", Var("z")), POS,
                      Imp(POS, Atom("a"), Atom("a")), "n")
    trace = service.check(goal)
    first = trace.steps[0]
    trace.steps[0] = TypingStep(first.path, first.rule, first.goal, dict(first.witnesses, node="n"))
    result = replay_trace(trace)
    assert not result.valid
    assert result.diagnostics[0].rule == "Imp"


def test_replay_rejects_truncated_trace(service):
    goal = TypingGoal(Graph(), Context(), Pair(Triv(), Triv()), POS,
                      And(POS, Unit(POS), Unit(POS)), "n")
    trace = service.check(goal)
    trace.steps.pop()
    assert not replay_trace(trace).valid


def test_inversion_of_pair(service):
    goal = TypingGoal(Graph(), Context(), Pair(Triv(), Triv()), POS,
                      And(POS, Unit(POS), Unit(POS)), "n")
    trace = service.check(goal)
    assert trace.step_at((0,)).goal == TypingGoal(Graph(), Context(), Triv(), POS, Unit(POS), "n")
    assert trace.step_at((1,)).rule == "Unit"


def test_weakening(service):
    goal = goal_from("; x : + a @ n |- + a @ n\n|- x")
    weakened = TypingGoal(goal.graph, goal.ctx.extend(Hypothesis(NEG, Atom("b"), "m", "y")),
                          goal.term, goal.pol, goal.formula, goal.node)
    assert service.accepts(goal)
    assert service.accepts(weakened)


def test_node_substitution_after_dropping_edge(service):
    goal = goal_from("n <=[+] m ; x : + a @ n |- + b ->[+] a @ m\n|- \\y. x")
    assert service.accepts(goal)
    moved = TypingGoal(Graph(), subst_node("n", "m", goal.ctx), goal.term, goal.pol,
                       goal.formula, subst_node("n", "m", goal.node))
    assert service.accepts(moved)


def test_erase_worlds():
    assert erase_worlds(Context()) == ClassicalContext()
    erased = erase_worlds(parse_context("x : + a @ n"))
    assert erased == ClassicalContext((ClassicalEntry("x", POS, Atom("a")),))


def test_classical_check_examples(excluded_middle):
    assert classical_check(ClassicalContext(), Triv(), POS, Unit(POS))
    assert classical_check(ClassicalContext(), Lam("z", Var("z")), POS,
                           Imp(POS, Atom("a"), Atom("a")))
    assert classical_check(ClassicalContext(), parse_term(EXCLUDED_MIDDLE_TERM), POS,
                           excluded_middle)
    assert not classical_check(ClassicalContext(), Triv(), NEG, Unit(POS))


def test_classical_typing_ignores_worlds():
    # intuicionisticky neplatné, klasicky bez uzlů projde
    goal = goal_from("m <=[+] n ; x : + a @ n |- + a @ m\n|- x")
    assert not TypingService().accepts(goal)
    assert classical_check(erase_worlds(goal.ctx), goal.term, goal.pol, goal.formula)


def test_case_elaboration_positive(service):
    scrutinee_type = And(NEG, Unit(POS), Unit(POS))
    ctx = Context((Hypothesis(POS, scrutinee_type, "n", "s"),))
    term = elaborate_case(Var("s"), "x", Triv(), Triv(), POS, Unit(POS), Unit(POS), Unit(POS), "n")
    assert count_cuts(term) == 5
    assert free_vars(term) == {"s"}
    assert service.accepts(TypingGoal(Graph(), ctx, term, POS, Unit(POS), "n"))


def test_case_elaboration_negative(service):
    scrutinee_type = And(POS, Atom("a"), Atom("b"))
    ctx = Context((Hypothesis(NEG, scrutinee_type, "n", "s"),))
    term = elaborate_case(Var("s"), "x", Triv(), Triv(), NEG, Atom("a"), Atom("b"), Unit(NEG), "n")
    assert count_cuts(term) == 5
    assert service.accepts(TypingGoal(Graph(), ctx, term, NEG, Unit(NEG), "n"))


def test_case_branches_see_bound_variable(service):
    scrutinee_type = And(NEG, Atom("a"), Atom("a"))
    ctx = Context((Hypothesis(POS, scrutinee_type, "n", "s"),))
    term = elaborate_case(Var("s"), "x", Var("x"), Var("x"), POS, Atom("a"), Atom("a"), Atom("a"),
                          "n")
    assert free_vars(term) == {"s"}
    assert service.accepts(TypingGoal(Graph(), ctx, term, POS, Atom("a"), "n"))
