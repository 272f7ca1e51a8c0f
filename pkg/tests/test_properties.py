# tests/test_properties.py - Vlastnosti redukce nad generovanými typovatelnými termy

import pytest

import config
from models.formula_model import POS
from models.sequent_model import Context
from services.generator_service import GeneratorService
from services.reduction_service import ReductionService, is_normal, normalize, step_all
from services.syntax_service import parse_term
from services.typing_service import TypingGoal, TypingService, classical_check, erase_worlds

GOALS = 500
BUDGET = 100000


@pytest.fixture(scope="module")
def goals():
    result = GeneratorService().generate_many(GOALS)
    assert len(result) == GOALS
    return result


def with_term(goal: TypingGoal, term) -> TypingGoal:
    return TypingGoal(goal.graph, goal.ctx, term, goal.pol, goal.formula, goal.node)


def test_generated_goals_type_check(goals):
    service = TypingService()
    for goal in goals:
        assert service.accepts(goal), goal


def test_generation_is_deterministic():
    service = GeneratorService()
    assert service.generate_many(5, seed=7) == service.generate_many(5, seed=7)


def test_type_preservation(goals):
    service = TypingService()
    for goal in goals:
        for redex in step_all(goal.term):
            assert service.accepts(with_term(goal, redex.result)), (goal, redex.path, redex.rule)


def test_normal_forms_keep_their_type(goals):
    service = TypingService()
    for goal in goals:
        result, _ = normalize(goal.term, BUDGET, "lo")
        assert service.accepts(with_term(goal, result))


def test_normalization_under_both_strategies(goals):
    for index, goal in enumerate(goals):
        normalize(goal.term, BUDGET, "lo")
        normalize(goal.term, BUDGET, f"rand:{index}")


def test_confluence(goals):
    service = ReductionService({"DEFAULT_MAX_STEPS": BUDGET})
    for goal in goals:
        verdict = service.confluence_probe(goal.term, samples=10)
        assert verdict.confluent, verdict.to_dict()


def test_erasure(goals, excluded_middle):
    for goal in goals:
        assert classical_check(erase_worlds(goal.ctx), goal.term, goal.pol, goal.formula)
    term = parse_term("nu x . in1 (nu y . in2 <y, triv> * x : [(a /\\[-] (a ->[-] <+>)) @ n]) "
                      "* x : [(a /\\[-] (a ->[-] <+>)) @ n]")
    assert classical_check(erase_worlds(Context()), term, POS, excluded_middle)


def test_normal_forms_are_stable(goals):
    for goal in goals[:50]:
        result, _ = normalize(goal.term, BUDGET, "lo")
        assert is_normal(result)
        assert normalize(result, BUDGET, "lo") == (result, [])


def test_generator_reads_config():
    settings = config.as_dict()
    assert {"GENERATOR_DEPTH", "GENERATOR_BUDGET", "GENERATOR_ATOMS", "DEFAULT_SEED"} <= set(settings)
    service = GeneratorService(settings)
    assert service.max_depth == config.GENERATOR_DEPTH
    assert service.atoms == config.GENERATOR_ATOMS
    seeded = GeneratorService({"DEFAULT_SEED": 7})
    assert seeded.generate_many(3) == GeneratorService().generate_many(3, seed=7)
