# services/generator_service.py - Generátor typovaných termů a výčty formulí a grafů pro testy

import itertools
import logging
import random
from typing import Any, Dict, Iterator, List, Optional, Sequence, Set

from models.formula_model import (NEG, POS, And, Atom, Formula, Imp, LAnd, LAtom, LBot, LFormula,
                                  LImp, LOr, LSub, LTop, Polarity, Unit)
from models.sequent_model import Context, Edge, Graph, Hypothesis, NodeId
from models.term_model import CoPair, Cut, CutAnnotation, In, Lam, Pair, Term, Triv, Var
from services.reachability_service import reaches
from services.term_service import fresh_node, fresh_var, ordered_nodes
from services.typing_service import TypingGoal


class _Exhausted(Exception):
    pass


def random_formula(rng: random.Random, depth: int, atoms: Sequence[str] = ()) -> Formula:
    """Náhodná formule hloubky nejvýše `depth`; atomy jen z dané abecedy."""
    if depth <= 0 or rng.random() < 0.3:
        if atoms and rng.random() < 0.3:
            return Atom(rng.choice(list(atoms)))
        return Unit(rng.choice((POS, NEG)))
    cls = rng.choice((Imp, And))
    return cls(rng.choice((POS, NEG)), random_formula(rng, depth - 1, atoms),
               random_formula(rng, depth - 1, atoms))


class _Builder:
    """
    Typová pravidla pouštěná pozpátku: z cíle G ; Γ |- ? : p A @ n staví term.

    Čerstvé uzly a rozšiřování kontextu kopírují typovou kontrolu, takže
    kontrola vygenerovaný term přijme.
    """

    def __init__(self, rng: random.Random, budget: int, used: Set[str]):
        self.rng = rng
        self.budget = budget
        self.used = set(used)

    def var(self) -> str:
        name = fresh_var(self.used)
        self.used.add(name)
        return name

    def build(self, graph: Graph, ctx: Context, pol: Polarity, formula: Formula, node: NodeId,
              depth: int) -> Optional[Term]:
        self.budget -= 1
        if self.budget < 0:
            raise _Exhausted()
        options: List[tuple] = [("ax", e.var) for e in ctx
                                if e.pol is pol and e.formula == formula
                                and reaches(graph, e.node, pol, node)]
        if formula == Unit(pol):
            options.append(("unit",))
        if depth > 0:
            if isinstance(formula, And):
                options += [("pair",)] if formula.pol is pol else [("in", 1), ("in", 2)]
            if isinstance(formula, Imp):
                options.append(("lam",) if formula.pol is pol else ("copair",))
        self.rng.shuffle(options)
        if depth > 0:
            # řez občas jako první volba, jinak až nakonec
            options.insert(0 if self.rng.random() < 0.3 else len(options), ("cut",))
        for option in options:
            term = self._apply(option, graph, ctx, pol, formula, node, depth)
            if term is not None:
                return term
        return None

    def _apply(self, option: tuple, graph: Graph, ctx: Context, pol: Polarity, formula: Formula,
               node: NodeId, depth: int) -> Optional[Term]:
        kind = option[0]
        if kind == "ax":
            return Var(option[1])
        if kind == "unit":
            return Triv()
        if kind == "pair":
            fst = self.build(graph, ctx, pol, formula.lhs, node, depth - 1)
            if fst is None:
                return None
            snd = self.build(graph, ctx, pol, formula.rhs, node, depth - 1)
            return Pair(fst, snd) if snd is not None else None
        if kind == "in":
            body = self.build(graph, ctx, pol, formula.component(option[1]), node, depth - 1)
            return In(option[1], body) if body is not None else None
        if kind == "lam":
            var = self.var()
            fresh = fresh_node(ordered_nodes(graph.nodes(), ctx.nodes(), [node]))
            body = self.build(graph.extend(Edge(node, pol, fresh)),
                              ctx.extend(Hypothesis(pol, formula.lhs, fresh, var)),
                              pol, formula.rhs, fresh, depth - 1)
            return Lam(var, body) if body is not None else None
        if kind == "copair":
            candidates = [c for c in ordered_nodes([node], graph.nodes(), ctx.nodes())
                          if reaches(graph, node, pol.flip(), c)]
            self.rng.shuffle(candidates)
            for candidate in candidates:
                fst = self.build(graph, ctx, pol.flip(), formula.lhs, candidate, depth - 1)
                if fst is None:
                    continue
                snd = self.build(graph, ctx, pol, formula.rhs, candidate, depth - 1)
                if snd is not None:
                    return CoPair(fst, snd)
            return None
        var = self.var()
        pool = [formula] + [e.formula for e in ctx] + [random_formula(self.rng, 2)]
        cut_formula = self.rng.choice(pool)
        cut_node = self.rng.choice(ordered_nodes(graph.nodes(), ctx.nodes(), [node]))
        extended = ctx.extend(Hypothesis(pol.flip(), formula, node, var))
        left = self.build(graph, extended, POS, cut_formula, cut_node, depth - 1)
        if left is None:
            return None
        right = self.build(graph, extended, NEG, cut_formula, cut_node, depth - 1)
        if right is None:
            return None
        return Cut(var, left, CutAnnotation(cut_formula, cut_node), right)


class GeneratorService:
    """Služba generující náhodné typovatelné soudy pro vlastnostní testy."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}
        self.logger = logging.getLogger(__name__)
        self.max_depth = int(self.config.get('GENERATOR_DEPTH', 6))
        self.budget = int(self.config.get('GENERATOR_BUDGET', 400))
        self.atoms = tuple(self.config.get('GENERATOR_ATOMS', ("a", "b")))
        self.seed = int(self.config.get('DEFAULT_SEED', 0))

    def random_goal(self, rng: random.Random) -> TypingGoal:
        """Náhodný cíl nad prázdným grafem s nejvýše dvěma hypotézami v uzlu n."""
        ctx = Context(tuple(
            Hypothesis(rng.choice((POS, NEG)), random_formula(rng, 1, self.atoms), "n", f"h{i}")
            for i in range(rng.randint(0, 2))))
        return TypingGoal(Graph(), ctx, Triv(), rng.choice((POS, NEG)),
                          random_formula(rng, 3, self.atoms), "n")

    def generate(self, seed: int) -> Optional[TypingGoal]:
        """
        Pokusí se vygenerovat typovatelný soud.

        Args:
            seed: Semínko generátoru

        Returns:
            TypingGoal s termem, nebo None, pokud cíl v rozpočtu nemá obyvatele
        """
        rng = random.Random(seed)
        goal = self.random_goal(rng)
        builder = _Builder(rng, self.budget, set(goal.ctx.variables()))
        depth = rng.randint(1, self.max_depth)
        try:
            term = builder.build(goal.graph, goal.ctx, goal.pol, goal.formula, goal.node, depth)
        except _Exhausted:
            return None
        if term is None:
            return None
        return TypingGoal(goal.graph, goal.ctx, term, goal.pol, goal.formula, goal.node)

    def generate_many(self, count: int, seed: Optional[int] = None) -> List[TypingGoal]:
        """Vygeneruje `count` soudů; semínka se berou postupně od `seed` (výchozí DEFAULT_SEED)."""
        seed = self.seed if seed is None else seed
        result: List[TypingGoal] = []
        current = seed
        while len(result) < count:
            goal = self.generate(current)
            if goal is not None:
                result.append(goal)
            current += 1
            if current - seed > count * 50:
                self.logger.warning(f"Vygenerováno jen {len(result)} z {count} soudů")
                break
        self.logger.debug(f"Vygenerováno {len(result)} soudů ze {current - seed} pokusů")
        return result


# --- Úplné výčty pro vyčerpávající testy ---

def enumerate_formulas(depth: int, atoms: Sequence[str] = ("a", "b")) -> Iterator[Formula]:
    """Všechny formule DIL hloubky nejvýše `depth`."""
    if depth == 0:
        yield from (Atom(a) for a in atoms)
        yield Unit(POS)
        yield Unit(NEG)
        return
    smaller = list(enumerate_formulas(depth - 1, atoms))
    yield from smaller
    for cls in (Imp, And):
        for pol in (POS, NEG):
            for lhs, rhs in itertools.product(smaller, repeat=2):
                if max(_depth(lhs), _depth(rhs)) == depth - 1:
                    yield cls(pol, lhs, rhs)


def _depth(formula) -> int:
    if isinstance(formula, (Imp, And, LImp, LSub, LAnd, LOr)):
        return 1 + max(_depth(formula.lhs), _depth(formula.rhs))
    return 0


def enumerate_l_formulas(depth: int, atoms: Sequence[str] = ("a", "b")) -> Iterator[LFormula]:
    """Všechny formule L hloubky nejvýše `depth`."""
    if depth == 0:
        yield from (LAtom(a) for a in atoms)
        yield LTop()
        yield LBot()
        return
    smaller = list(enumerate_l_formulas(depth - 1, atoms))
    yield from smaller
    for cls in (LImp, LSub, LAnd, LOr):
        for lhs, rhs in itertools.product(smaller, repeat=2):
            if max(_depth(lhs), _depth(rhs)) == depth - 1:
                yield cls(lhs, rhs)


def enumerate_graphs(nodes: Sequence[NodeId], max_edges: int) -> Iterator[Graph]:
    """
    Grafy nad danými uzly s nejvýše `max_edges` různými šipkami.

    Každá šipka a -> b se střídavě zapisuje jako a <=[+] b a jako b <=[-] a,
    aby výčet pokryl obě polarity hran.
    """
    arrows = [(a, b) for a in nodes for b in nodes]
    for size in range(max_edges + 1):
        for chosen in itertools.combinations(arrows, size):
            yield Graph(tuple(Edge(a, POS, b) if i % 2 == 0 else Edge(b, NEG, a)
                              for i, (a, b) in enumerate(chosen)))
