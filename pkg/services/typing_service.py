# services/typing_service.py - Typová kontrola DTT, klasické typování a eliminátor case

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

from models.formula_model import And, Formula, Imp, Polarity, Unit
from models.sequent_model import (CheckResult, Context, Diagnostic, Edge, Graph, Hypothesis,
                                  NodeId)
from models.term_model import (CoPair, Cut, CutAnnotation, In, Lam, Pair, Path, Term, Triv,
                               Var, format_path)
from services.reachability_service import reaches
from services.syntax_service import print_formula, print_term
from services.term_service import all_vars, fresh_node, fresh_var, ordered_nodes, rename_binder


class TypingError(ValueError):
    """Term nemá požadovaný typ; nese pravidlo a cestu do termu."""

    def __init__(self, message: str, rule: str, path: Path = ()):
        self.rule = rule
        self.path = path
        self.detail = message
        super().__init__(f"[{format_path(path)}] {rule}: {message}")

    def to_diagnostic(self) -> Diagnostic:
        return Diagnostic(format_path(self.path), self.rule, self.detail)


@dataclass(frozen=True)
class TypingGoal:
    """Soud G ; Γ |- t : p A @ n."""
    graph: Graph
    ctx: Context
    term: Term
    pol: Polarity
    formula: Formula
    node: NodeId


@dataclass
class TypingStep:
    """Jedno použití pravidla: instance závěru a zvolení svědci."""
    path: Path
    rule: str
    goal: TypingGoal
    witnesses: Dict[str, Any] = field(default_factory=dict)

    def to_line(self) -> str:
        extra = " ".join(f"{key}={value}" for key, value in sorted(self.witnesses.items()))
        return f"{format_path(self.path)} {self.rule} {extra}".rstrip()


@dataclass
class TypingTrace:
    """Záznam úspěšné kontroly; kroky jsou v preorder pořadí podle termu."""
    goal: TypingGoal
    steps: List[TypingStep] = field(default_factory=list)

    def rules(self) -> List[str]:
        return [step.rule for step in self.steps]

    def step_at(self, path: Path) -> Optional[TypingStep]:
        for step in self.steps:
            if step.path == path:
                return step
        return None

    def to_lines(self) -> List[str]:
        return [step.to_line() for step in self.steps]


@dataclass(frozen=True)
class ClassicalEntry:
    var: Optional[str]
    pol: Polarity
    formula: Formula


@dataclass(frozen=True)
class ClassicalContext:
    """Kontext klasického typování - bez uzlů."""
    entries: Tuple[ClassicalEntry, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def extend(self, entry: ClassicalEntry) -> 'ClassicalContext':
        return ClassicalContext(self.entries + (entry,))

    def lookup(self, var: str) -> Optional[ClassicalEntry]:
        for entry in reversed(self.entries):
            if entry.var == var:
                return entry
        return None

    def variables(self) -> List[str]:
        return [entry.var for entry in self.entries if entry.var is not None]


def erase_worlds(ctx: Context) -> ClassicalContext:
    """Odstraní z kontextu uzly, pořadí položek zůstává."""
    return ClassicalContext(tuple(ClassicalEntry(e.var, e.pol, e.formula) for e in ctx))


def _shape(formula: Formula) -> str:
    return print_formula(formula)


def _bind(term: Term, used: List[str]) -> Tuple[Term, str]:
    # vazba kolidující s kontextem se přejmenuje na čerstvé jméno
    if term.var not in used:
        return term, term.var
    renamed = fresh_var(set(used) | all_vars(term))
    return rename_binder(term, renamed), renamed


class _Checker:
    """Syntakticky řízená kontrola podle typových pravidel; sbírá kroky do trasy."""

    def __init__(self):
        self.steps: List[TypingStep] = []

    def check(self, goal: TypingGoal, path: Path) -> None:
        graph, ctx, term, pol, formula, node = (goal.graph, goal.ctx, goal.term, goal.pol,
                                                goal.formula, goal.node)
        if isinstance(term, Var):
            index = ctx.lookup(term.name)
            if index is None:
                raise TypingError(f"nevázaná proměnná {term.name}", "Ax", path)
            entry = ctx[index]
            if entry.pol is not pol or entry.formula != formula:
                raise TypingError(
                    f"proměnná {term.name} má typ {entry.pol} {_shape(entry.formula)}, "
                    f"očekáváno {pol} {_shape(formula)}", "Ax", path)
            if not reaches(graph, entry.node, pol, node):
                raise TypingError(f"uzel {node} není dosažitelný z {entry.node} v polaritě {pol}",
                                  "Ax", path)
            self.steps.append(TypingStep(path, "Ax", goal, {"index": index}))
            return

        if isinstance(term, Triv):
            if formula != Unit(pol):
                raise TypingError(f"triv nemá typ {pol} {_shape(formula)}", "Unit", path)
            self.steps.append(TypingStep(path, "Unit", goal))
            return

        if isinstance(term, Pair):
            if not (isinstance(formula, And) and formula.pol is pol):
                raise TypingError(f"dvojice nemá typ {pol} {_shape(formula)}", "And", path)
            self.steps.append(TypingStep(path, "And", goal))
            self.check(TypingGoal(graph, ctx, term.fst, pol, formula.lhs, node), path + (0,))
            self.check(TypingGoal(graph, ctx, term.snd, pol, formula.rhs, node), path + (1,))
            return

        if isinstance(term, In):
            if not (isinstance(formula, And) and formula.pol is pol.flip()):
                raise TypingError(f"in{term.index} nemá typ {pol} {_shape(formula)}", "AndBar", path)
            self.steps.append(TypingStep(path, "AndBar", goal, {"index": term.index}))
            self.check(TypingGoal(graph, ctx, term.body, pol, formula.component(term.index), node),
                       path + (0,))
            return

        if isinstance(term, Lam):
            if not (isinstance(formula, Imp) and formula.pol is pol):
                raise TypingError(f"lambda nemá typ {pol} {_shape(formula)}", "Imp", path)
            term, var = _bind(term, ctx.variables())
            fresh = fresh_node(ordered_nodes(graph.nodes(), ctx.nodes(), [node]))
            self.steps.append(TypingStep(path, "Imp", goal, {"node": fresh, "var": var}))
            self.check(TypingGoal(graph.extend(Edge(node, pol, fresh)),
                                  ctx.extend(Hypothesis(pol, formula.lhs, fresh, var)),
                                  term.body, pol, formula.rhs, fresh), path + (0,))
            return

        if isinstance(term, CoPair):
            if not (isinstance(formula, Imp) and formula.pol is pol.flip()):
                raise TypingError(f"ko-dvojice nemá typ {pol} {_shape(formula)}", "ImpBar", path)
            failures: List[str] = []
            for candidate in ordered_nodes([node], graph.nodes(), ctx.nodes()):
                if not reaches(graph, node, pol.flip(), candidate):
                    continue
                mark = len(self.steps)
                self.steps.append(TypingStep(path, "ImpBar", goal, {"node": candidate}))
                try:
                    self.check(TypingGoal(graph, ctx, term.fst, pol.flip(), formula.lhs, candidate),
                               path + (0,))
                    self.check(TypingGoal(graph, ctx, term.snd, pol, formula.rhs, candidate),
                               path + (1,))
                    return
                except TypingError as e:
                    del self.steps[mark:]
                    failures.append(f"{candidate}: {e}")
            raise TypingError("žádný uzel nevyhovuje jako svědek ko-implikace"
                              + (f" ({'; '.join(failures)})" if failures else ""), "ImpBar", path)

        if isinstance(term, Cut):
            if term.annotation is None:
                raise TypingError("řez bez anotace [B @ n]", "Cut", path)
            term, var = _bind(term, ctx.variables())
            cut_formula = term.annotation.formula
            extended = ctx.extend(Hypothesis(pol.flip(), formula, node, var))
            candidates = ordered_nodes([term.annotation.node], graph.nodes(), ctx.nodes(), [node])
            first_error: Optional[TypingError] = None
            for candidate in candidates:
                mark = len(self.steps)
                self.steps.append(TypingStep(path, "Cut", goal, {
                    "formula": _shape(cut_formula), "node": candidate, "var": var}))
                try:
                    self.check(TypingGoal(graph, extended, term.left, Polarity.POS, cut_formula,
                                          candidate), path + (0,))
                    self.check(TypingGoal(graph, extended, term.right, Polarity.NEG, cut_formula,
                                          candidate), path + (1,))
                    return
                except TypingError as e:
                    del self.steps[mark:]
                    if first_error is None:
                        first_error = e
            raise first_error

        raise TypingError(f"neznámý term {term!r}", "?", path)


def _premises(step: TypingStep) -> Iterator[Tuple[TypingGoal, Path]]:
    # premisy pravidla vypočtené jen ze zaznamenaných svědků
    goal = step.goal
    graph, ctx, term, pol, formula, node = (goal.graph, goal.ctx, goal.term, goal.pol,
                                            goal.formula, goal.node)
    w = step.witnesses
    if step.rule == "And":
        yield TypingGoal(graph, ctx, term.fst, pol, formula.lhs, node), step.path + (0,)
        yield TypingGoal(graph, ctx, term.snd, pol, formula.rhs, node), step.path + (1,)
    elif step.rule == "AndBar":
        yield (TypingGoal(graph, ctx, term.body, pol, formula.component(term.index), node),
               step.path + (0,))
    elif step.rule == "Imp":
        body = rename_binder(term, w["var"]).body if w["var"] != term.var else term.body
        yield (TypingGoal(graph.extend(Edge(node, pol, w["node"])),
                          ctx.extend(Hypothesis(pol, formula.lhs, w["node"], w["var"])),
                          body, pol, formula.rhs, w["node"]), step.path + (0,))
    elif step.rule == "ImpBar":
        yield TypingGoal(graph, ctx, term.fst, pol.flip(), formula.lhs, w["node"]), step.path + (0,)
        yield TypingGoal(graph, ctx, term.snd, pol, formula.rhs, w["node"]), step.path + (1,)
    elif step.rule == "Cut":
        renamed = rename_binder(term, w["var"]) if w["var"] != term.var else term
        extended = ctx.extend(Hypothesis(pol.flip(), formula, node, w["var"]))
        cut_formula = term.annotation.formula
        yield (TypingGoal(graph, extended, renamed.left, Polarity.POS, cut_formula, w["node"]),
               step.path + (0,))
        yield (TypingGoal(graph, extended, renamed.right, Polarity.NEG, cut_formula, w["node"]),
               step.path + (1,))


_RULE_FOR = {Var: "Ax", Triv: "Unit", Pair: "And", In: "AndBar", Lam: "Imp", CoPair: "ImpBar",
             Cut: "Cut"}


def replay_trace(trace: TypingTrace) -> CheckResult:
    """
    Znovu ověří trasu pravidlo po pravidle, bez jakéhokoli hledání.

    Args:
        trace: Trasa vrácená z TypingService.check

    Returns:
        CheckResult s diagnostikou prvního neplatného kroku
    """
    steps = iter(trace.steps)

    def replay(goal: TypingGoal, path: Path) -> None:
        step = next(steps, None)
        if step is None:
            raise TypingError("trasa končí předčasně", "replay", path)
        if step.path != path or step.goal != goal:
            raise TypingError("krok trasy neodpovídá očekávanému závěru", step.rule, path)
        if _RULE_FOR.get(type(goal.term)) != step.rule:
            raise TypingError(f"pravidlo {step.rule} neodpovídá termu", step.rule, path)
        graph, ctx, pol, formula, node = goal.graph, goal.ctx, goal.pol, goal.formula, goal.node
        w = step.witnesses
        if step.rule == "Ax":
            index = w.get("index")
            if index is None or not 0 <= index < len(ctx):
                raise TypingError("neplatný index hypotézy", "Ax", path)
            entry = ctx[index]
            if (entry.var != goal.term.name or ctx.lookup(entry.var) != index
                    or entry.pol is not pol or entry.formula != formula
                    or not reaches(graph, entry.node, pol, node)):
                raise TypingError("hypotéza neodpovídá cíli", "Ax", path)
        elif step.rule == "Unit" and formula != Unit(pol):
            raise TypingError("cíl není jednotka", "Unit", path)
        elif step.rule == "And" and not (isinstance(formula, And) and formula.pol is pol):
            raise TypingError("cíl není konjunkce", "And", path)
        elif step.rule == "AndBar" and not (isinstance(formula, And) and formula.pol is pol.flip()):
            raise TypingError("cíl není duální konjunkce", "AndBar", path)
        elif step.rule == "Imp":
            if not (isinstance(formula, Imp) and formula.pol is pol):
                raise TypingError("cíl není implikace", "Imp", path)
            if w["node"] in graph.nodes() or w["node"] in ctx.nodes() or w["node"] == node:
                raise TypingError(f"uzel {w['node']} není čerstvý", "Imp", path)
            if w["var"] in ctx.variables():
                raise TypingError(f"proměnná {w['var']} koliduje s kontextem", "Imp", path)
        elif step.rule == "ImpBar":
            if not (isinstance(formula, Imp) and formula.pol is pol.flip()):
                raise TypingError("cíl není ko-implikace", "ImpBar", path)
            if not reaches(graph, node, pol.flip(), w["node"]):
                raise TypingError(f"uzel {w['node']} není dosažitelný", "ImpBar", path)
        elif step.rule == "Cut":
            if goal.term.annotation is None:
                raise TypingError("řez bez anotace", "Cut", path)
            if w["var"] in ctx.variables():
                raise TypingError(f"proměnná {w['var']} koliduje s kontextem", "Cut", path)
        for premise, child_path in _premises(step):
            replay(premise, child_path)

    try:
        replay(trace.goal, ())
        if next(steps, None) is not None:
            raise TypingError("trasa obsahuje přebytečné kroky", "replay", ())
    except TypingError as e:
        return CheckResult(False, [e.to_diagnostic()])
    return CheckResult(True)


# --- Klasické typování ---

def _classical(ctx: ClassicalContext, term: Term, pol: Polarity, formula: Formula,
               path: Path) -> None:
    if isinstance(term, Var):
        entry = ctx.lookup(term.name)
        if entry is None:
            raise TypingError(f"nevázaná proměnná {term.name}", "ClassAx", path)
        if entry.pol is not pol or entry.formula != formula:
            raise TypingError(f"proměnná {term.name} má jiný typ", "ClassAx", path)
    elif isinstance(term, Triv):
        if formula != Unit(pol):
            raise TypingError("cíl není jednotka", "ClassUnit", path)
    elif isinstance(term, Pair):
        if not (isinstance(formula, And) and formula.pol is pol):
            raise TypingError("cíl není konjunkce", "ClassAnd", path)
        _classical(ctx, term.fst, pol, formula.lhs, path + (0,))
        _classical(ctx, term.snd, pol, formula.rhs, path + (1,))
    elif isinstance(term, In):
        if not (isinstance(formula, And) and formula.pol is pol.flip()):
            raise TypingError("cíl není duální konjunkce", "ClassAndBar", path)
        _classical(ctx, term.body, pol, formula.component(term.index), path + (0,))
    elif isinstance(term, Lam):
        if not (isinstance(formula, Imp) and formula.pol is pol):
            raise TypingError("cíl není implikace", "ClassImp", path)
        term, var = _bind(term, ctx.variables())
        _classical(ctx.extend(ClassicalEntry(var, pol, formula.lhs)), term.body, pol,
                   formula.rhs, path + (0,))
    elif isinstance(term, CoPair):
        if not (isinstance(formula, Imp) and formula.pol is pol.flip()):
            raise TypingError("cíl není ko-implikace", "ClassImpBar", path)
        _classical(ctx, term.fst, pol.flip(), formula.lhs, path + (0,))
        _classical(ctx, term.snd, pol, formula.rhs, path + (1,))
    elif isinstance(term, Cut):
        if term.annotation is None:
            raise TypingError("řez bez anotace", "ClassCut", path)
        term, var = _bind(term, ctx.variables())
        extended = ctx.extend(ClassicalEntry(var, pol.flip(), formula))
        _classical(extended, term.left, Polarity.POS, term.annotation.formula, path + (0,))
        _classical(extended, term.right, Polarity.NEG, term.annotation.formula, path + (1,))
    else:
        raise TypingError(f"neznámý term {term!r}", "?", path)


def classical_check(ctx: ClassicalContext, term: Term, pol: Polarity, formula: Formula) -> bool:
    """
    Klasické typování bez grafů a uzlů.

    Args:
        ctx: Kontext bez uzlů (typicky z erase_worlds)
        term: Kontrolovaný term
        pol: Polarita cíle
        formula: Typ cíle

    Returns:
        True, pokud je soud odvoditelný
    """
    try:
        _classical(ctx, term, pol, formula, ())
    except TypingError:
        return False
    return True


# --- Eliminátor disjunkce ---

def elaborate_case(scrutinee: Term, x: str, t1: Term, t2: Term, pol: Polarity,
                   a: Formula, b: Formula, c: Formula, node: NodeId) -> Term:
    """
    Rozvine `case t of x.t1, x.t2` na vnořené řezy.

    Pro p = + vznikne ν z0.(ν z1.(ν z2. t⋅(z1,z2))⋅(ν x. t2⋅z0))⋅(ν x. t1⋅z0),
    pro p = - se složky každého řezu prohodí. Anotace řezů jsou A, C, B,
    A /\\[p̄] B a C, vše v uzlu `node`.

    Args:
        scrutinee: Term typu p (A /\\[p̄] B) @ node
        x: Proměnná vázaná ve větvích
        t1: Větev pro levou složku
        t2: Větev pro pravou složku
        pol: Polarita p
        a: Formule A
        b: Formule B
        c: Výsledná formule C
        node: Uzel n

    Returns:
        Term obsahující právě pět řezů
    """
    used = all_vars(scrutinee) | all_vars(t1) | all_vars(t2) | {x}
    z0 = fresh_var(used)
    z1 = fresh_var(used | {z0})
    z2 = fresh_var(used | {z0, z1})

    def mk(var: str, positive_side: Term, negative_side: Term, formula: Formula) -> Term:
        annotation = CutAnnotation(formula, node)
        if pol is Polarity.POS:
            return Cut(var, positive_side, annotation, negative_side)
        return Cut(var, negative_side, annotation, positive_side)

    scrutinised = mk(z2, scrutinee, Pair(Var(z1), Var(z2)), And(pol.flip(), a, b))
    second = mk(x, t2, Var(z0), c)
    inner = mk(z1, scrutinised, second, b)
    first = mk(x, t1, Var(z0), c)
    return mk(z0, inner, first, a)


class TypingService:
    """Služba typové kontroly DTT."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}
        self.logger = logging.getLogger(__name__)

    def check(self, goal: TypingGoal) -> TypingTrace:
        """
        Zkontroluje typový soud a vrátí trasu použitých pravidel.

        Args:
            goal: Kontrolovaný soud

        Returns:
            TypingTrace se svědky všech pravidel

        Raises:
            TypingError: Soud není odvoditelný
        """
        duplicates = [v for v in set(goal.ctx.variables()) if goal.ctx.variables().count(v) > 1]
        if duplicates:
            raise TypingError(f"kontext obsahuje duplicitní proměnné {sorted(duplicates)}",
                              "Context", ())
        checker = _Checker()
        try:
            checker.check(goal, ())
        except TypingError as e:
            self.logger.debug(f"Typová kontrola selhala: {e}")
            raise
        except RecursionError:
            raise TypingError("term je příliš hluboký", "?", ())
        self.logger.info(f"Term {print_term(goal.term)} má typ {goal.pol} "
                         f"{print_formula(goal.formula)} @ {goal.node}")
        return TypingTrace(goal, checker.steps)

    def accepts(self, goal: TypingGoal) -> bool:
        try:
            self.check(goal)
        except TypingError:
            return False
        return True
