# services/reduction_service.py - Redukce termů DTT, normalizace a sondy konfluence

import logging
import random
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

from models.formula_model import And, Imp
from models.term_model import (CoPair, Cut, CutAnnotation, In, Lam, Pair, Path, Term, Var,
                               children, format_path, is_canonical, replace_at, subterm_at)
from services.syntax_service import print_term
from services.term_service import alpha_eq, free_vars, subst_term

RULE_NAMES = ("RImp", "RImpBar", "RAnd1", "RAnd2", "RAndBar1", "RAndBar2", "RRet", "RBetaL",
              "RBetaR")


class BudgetExceeded(ValueError):
    """Normalizace nedoběhla v daném počtu kroků."""

    def __init__(self, term: Term, steps: int):
        self.term = term
        self.steps = steps
        super().__init__(f"Překročen limit {steps} redukčních kroků")


@dataclass(frozen=True)
class Redex:
    """Redex na dané pozici; result je celý term po kontrakci."""
    path: Path
    rule: str
    result: Term

    def to_line(self, step: int) -> str:
        return f"{step} {self.rule} {format_path(self.path)} {print_term(self.result)}"


@dataclass
class Verdict:
    """Výsledek sondy konfluence."""
    confluent: bool
    normal_forms: List[Term] = field(default_factory=list)

    @property
    def normal_form(self) -> Optional[Term]:
        return self.normal_forms[0] if self.confluent and self.normal_forms else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": "confluent" if self.confluent else "diverged",
            "normal_forms": [print_term(t) for t in self.normal_forms],
        }


def _annotated(annotation: Optional[CutAnnotation], component: str) -> Optional[CutAnnotation]:
    # anotace se přenese na podformuli, uzel zůstává
    if annotation is None:
        return None
    formula = annotation.formula
    if component == "rhs" and isinstance(formula, Imp):
        return CutAnnotation(formula.rhs, annotation.node)
    if component in ("1", "2") and isinstance(formula, And):
        return CutAnnotation(formula.component(int(component)), annotation.node)
    return annotation


def _top_rules(term: Term) -> List[str]:
    """Pravidla použitelná na vrcholu termu, v pevném pořadí."""
    if not isinstance(term, Cut):
        return []
    left, right = term.left, term.right
    rules = []
    if isinstance(left, Lam) and isinstance(right, CoPair):
        rules.append("RImp")
    if isinstance(left, CoPair) and isinstance(right, Lam):
        rules.append("RImpBar")
    if isinstance(left, In) and isinstance(right, Pair):
        rules.append(f"RAnd{left.index}")
    if isinstance(left, Pair) and isinstance(right, In):
        rules.append(f"RAndBar{right.index}")
    if isinstance(right, Var) and right.name == term.var and term.var not in free_vars(left):
        rules.append("RRet")
    if isinstance(left, Cut) and is_canonical(right):
        rules.append("RBetaL")
    if isinstance(right, Cut) and is_canonical(left):
        rules.append("RBetaR")
    return rules


def contract_top(term: Term, rule: str) -> Term:
    """
    Provede kontrakci pravidla na vrcholu termu.

    Args:
        term: Řez, na jehož vrcholu je redex
        rule: Jméno pravidla

    Returns:
        Kontrahovaný term

    Raises:
        ValueError: Pravidlo na vrcholu termu neplatí
    """
    if rule not in _top_rules(term):
        raise ValueError(f"Pravidlo {rule} nelze na term použít")
    x, left, ann, right = term.var, term.left, term.annotation, term.right
    if rule == "RImp":
        return Cut(x, subst_term(left.body, left.var, right.fst), _annotated(ann, "rhs"), right.snd)
    if rule == "RImpBar":
        return Cut(x, left.snd, _annotated(ann, "rhs"), subst_term(right.body, right.var, left.fst))
    if rule in ("RAnd1", "RAnd2"):
        chosen = right.fst if left.index == 1 else right.snd
        return Cut(x, left.body, _annotated(ann, str(left.index)), chosen)
    if rule in ("RAndBar1", "RAndBar2"):
        chosen = left.fst if right.index == 1 else left.snd
        return Cut(x, chosen, _annotated(ann, str(right.index)), right.body)
    if rule == "RRet":
        return left
    inner, value = (left, right) if rule == "RBetaL" else (right, left)
    return Cut(x, subst_term(inner.left, inner.var, value), inner.annotation,
               subst_term(inner.right, inner.var, value))


def redex_sites(term: Term, path: Path = ()) -> Iterator[Tuple[Path, str]]:
    """Pozice a pravidla všech redexů v pořadí zleva a zvnějšku."""
    for rule in _top_rules(term):
        yield path, rule
    for index, child in enumerate(children(term)):
        yield from redex_sites(child, path + (index,))


def contract(term: Term, path: Path, rule: str) -> Term:
    """Přehraje jeden redex: kontrakce podtermu na cestě `path`."""
    return replace_at(term, path, contract_top(subterm_at(term, path), rule))


def step_all(term: Term) -> List[Redex]:
    """
    Všechny jednokrokové následníky termu, včetně kongruence.

    Args:
        term: Term

    Returns:
        Seznam redexů v pořadí zleva a zvnějšku; prázdný pro normální formu
    """
    return [Redex(path, rule, contract(term, path, rule)) for path, rule in redex_sites(term)]


def is_normal(term: Term) -> bool:
    return next(redex_sites(term), None) is None


def _choose(term: Term, rng: Optional[random.Random]) -> Optional[Tuple[Path, str]]:
    if rng is None:
        return next(redex_sites(term), None)
    sites = list(redex_sites(term))
    return rng.choice(sites) if sites else None


def parse_strategy(strategy: str) -> Optional[random.Random]:
    """
    Převede zápis strategie na generátor náhodných čísel.

    Args:
        strategy: "lo" (zleva a zvnějšku) nebo "rand:SEED"

    Returns:
        None pro "lo", jinak random.Random se zadaným semínkem
    """
    if strategy == "lo":
        return None
    if strategy.startswith("rand:"):
        try:
            return random.Random(int(strategy[5:]))
        except ValueError:
            pass
    raise ValueError(f"Neznámá strategie: {strategy!r}")


def normalize(term: Term, max_steps: int, strategy: str = "lo") -> Tuple[Term, List[Redex]]:
    """
    Redukuje term zvolenou strategií, dokud existuje redex.

    Args:
        term: Výchozí term
        max_steps: Limit počtu kroků (>= 0)
        strategy: "lo" nebo "rand:SEED"

    Returns:
        Dvojici (normální forma, trasa redexů)

    Raises:
        BudgetExceeded: Limit byl vyčerpán dříve, než term dosáhl normální formy
    """
    if max_steps < 0:
        raise ValueError("max_steps musí být nezáporné")
    rng = parse_strategy(strategy)
    trace: List[Redex] = []
    while True:
        site = _choose(term, rng)
        if site is None:
            return term, trace
        if len(trace) >= max_steps:
            raise BudgetExceeded(term, len(trace))
        path, rule = site
        term = contract(term, path, rule)
        trace.append(Redex(path, rule, term))


class ReductionService:
    """Služba pro normalizaci a testy konfluence."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}
        self.logger = logging.getLogger(__name__)
        self.max_steps = int(self.config.get('DEFAULT_MAX_STEPS', 100000))
        self.samples = int(self.config.get('CONFLUENCE_SAMPLES', 10))
        self.seed = int(self.config.get('DEFAULT_SEED', 0))

    def normalize(self, term: Term, max_steps: Optional[int] = None,
                  strategy: str = "lo") -> Tuple[Term, List[Redex]]:
        budget = self.max_steps if max_steps is None else max_steps
        try:
            result, trace = normalize(term, budget, strategy)
        except BudgetExceeded as e:
            self.logger.warning(f"Normalizace přerušena po {e.steps} krocích")
            raise
        self.logger.info(f"Normální forma dosažena po {len(trace)} krocích ({strategy})")
        return result, trace

    def confluence_probe(self, term: Term, samples: Optional[int] = None,
                         seed: Optional[int] = None, max_steps: Optional[int] = None) -> Verdict:
        """
        Porovná normální formy z náhodných strategií a ze strategie zleva a zvnějšku.

        Args:
            term: Zkoumaný term (záruka konfluence platí pro typovatelné termy)
            samples: Počet náhodných běhů
            seed: Základ semínek; běh i používá semínko seed + i (výchozí DEFAULT_SEED)
            max_steps: Limit kroků pro každý běh

        Returns:
            Verdict se všemi nalezenými normálními formami

        Raises:
            BudgetExceeded: Některý běh nedoběhl
        """
        samples = self.samples if samples is None else samples
        seed = self.seed if seed is None else seed
        budget = self.max_steps if max_steps is None else max_steps
        reference, _ = normalize(term, budget, "lo")
        forms = [reference]
        confluent = True
        for index in range(samples):
            result, _ = normalize(term, budget, f"rand:{seed + index}")
            if not alpha_eq(result, reference):
                confluent = False
                self.logger.debug(f"Běh {index} dospěl k jiné normální formě {print_term(result)}")
            if not any(alpha_eq(result, known) for known in forms):
                forms.append(result)
        return Verdict(confluent, forms)

    def locally_confluent(self, term: Term, max_steps: Optional[int] = None) -> bool:
        """Každá dvojice jednokrokových následníků má společnou normální formu."""
        budget = self.max_steps if max_steps is None else max_steps
        forms = [normalize(redex.result, budget, "lo")[0] for redex in step_all(term)]
        return all(alpha_eq(forms[0], other) for other in forms[1:])
