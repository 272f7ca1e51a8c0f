# services/dil_service.py - Kontrola odvození v DIL, omezené hledání důkazu a transformace odvození

import logging
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from models.derivation_model import DIL_RULES, DILDerivation, format_tree_path
from models.formula_model import And, Formula, Imp, Polarity, Unit
from models.sequent_model import (CheckResult, Context, Diagnostic, Edge, Graph, Hypothesis,
                                  NodeId, Sequent)
from services.reachability_service import reaches
from services.syntax_service import print_sequent
from services.term_service import fresh_node, ordered_nodes, subst_node

MODES = ("general", "axiom")


class DerivationError(ValueError):
    """Chybný vstup transformace odvození."""

    def __init__(self, message: str, path: Tuple[int, ...] = ()):
        self.path = path
        super().__init__(f"[{format_tree_path(path)}] {message}")


class NotFound(Exception):
    """Hledání důkazu nenašlo odvození do zadané hloubky."""

    def __init__(self, depth: int):
        self.depth = depth
        super().__init__(f"Odvození nenalezeno do hloubky {depth}")


def _seq(graph: Graph, ctx: Context, pol: Polarity, formula: Formula, node: NodeId) -> Sequent:
    return Sequent(graph, ctx, pol, formula, node)


def _hyp(pol: Polarity, formula: Formula, node: NodeId) -> Hypothesis:
    return Hypothesis(pol, formula, node)


def premises(d: DILDerivation) -> List[Sequent]:
    """
    Vypočte očekávané premisy uzlu ze závěru a zaznamenaných svědků.

    Args:
        d: Uzel odvození

    Returns:
        Seznam sekventů, které musí dokazovat potomci

    Raises:
        DerivationError: Svědci chybí nebo závěr nemá tvar pravidla
    """
    seq, w = d.conclusion, d.witnesses
    graph, ctx, pol, formula, node = seq.graph, seq.ctx, seq.pol, seq.formula, seq.node
    try:
        if d.rule in ("ax", "unit"):
            return []
        if d.rule == "and":
            return [_seq(graph, ctx, pol, formula.lhs, node), _seq(graph, ctx, pol, formula.rhs, node)]
        if d.rule == "andBar":
            return [_seq(graph, ctx, pol, formula.component(w["index"]), node)]
        if d.rule == "imp":
            fresh = w["node"]
            return [_seq(graph.extend(Edge(node, pol, fresh)),
                         ctx.extend(_hyp(pol, formula.lhs, fresh)), pol, formula.rhs, fresh)]
        if d.rule == "impBar":
            return [_seq(graph, ctx, pol.flip(), formula.lhs, w["node"]),
                    _seq(graph, ctx, pol, formula.rhs, w["node"])]
        extended = ctx.extend(_hyp(pol.flip(), formula, node))
        if d.rule == "cut":
            return [_seq(graph, extended, Polarity.POS, w["formula"], w["node"]),
                    _seq(graph, extended, Polarity.NEG, w["formula"], w["node"])]
        if d.rule == "axCut":
            return [_seq(graph, extended, pol.flip(), w["formula"], w["node"])]
        if d.rule == "axCutBar":
            return [_seq(graph, extended, pol, w["formula"], w["node"])]
    except (AttributeError, KeyError, ValueError) as e:
        raise DerivationError(f"pravidlo {d.rule} nelze instanciovat: {e}")
    raise DerivationError(f"neznámé pravidlo {d.rule}")


def _check_node(d: DILDerivation, mode: str) -> Optional[str]:
    """Ověří boční podmínky jednoho uzlu; vrací popis chyby nebo None."""
    seq, w = d.conclusion, d.witnesses
    graph, ctx, pol, formula, node = seq.graph, seq.ctx, seq.pol, seq.formula, seq.node
    if d.rule not in DIL_RULES:
        return f"neznámé pravidlo {d.rule}"
    if d.rule == "ax":
        index = w.get("index")
        if not isinstance(index, int) or not 0 <= index < len(ctx):
            return "chybí platný index hypotézy"
        entry = ctx[index]
        if entry.pol is not pol or entry.formula != formula:
            return f"hypotéza {index} neodpovídá cíli"
        if not reaches(graph, entry.node, pol, node):
            return f"uzel {node} není dosažitelný z {entry.node}"
        return None
    if d.rule == "unit":
        return None if formula == Unit(pol) else "cíl není jednotka dané polarity"
    if d.rule == "and":
        return None if isinstance(formula, And) and formula.pol is pol else "cíl není konjunkce"
    if d.rule == "andBar":
        if not (isinstance(formula, And) and formula.pol is pol.flip()):
            return "cíl není duální konjunkce"
        return None if w.get("index") in (1, 2) else "index složky musí být 1 nebo 2"
    if d.rule == "imp":
        if not (isinstance(formula, Imp) and formula.pol is pol):
            return "cíl není implikace"
        fresh = w.get("node")
        if fresh is None or fresh in graph.nodes() or fresh in ctx.nodes():
            return f"uzel {fresh} není čerstvý"
        return None
    if d.rule == "impBar":
        if not (isinstance(formula, Imp) and formula.pol is pol.flip()):
            return "cíl není ko-implikace"
        if w.get("node") is None or not reaches(graph, node, pol.flip(), w["node"]):
            return f"svědek {w.get('node')} není dosažitelný z {node}"
        return None
    if "formula" not in w or "node" not in w:
        return "chybí řezová formule nebo uzel"
    if d.rule == "cut":
        return "obecný řez není v režimu axiomových řezů povolen" if mode == "axiom" else None
    extended = ctx.extend(_hyp(pol.flip(), formula, node))
    index = w.get("index")
    if not isinstance(index, int) or not 0 <= index < len(extended):
        return "chybí platný index hypotézy řezu"
    wanted_pol = pol if d.rule == "axCut" else pol.flip()
    entry = extended[index]
    if (entry.pol, entry.formula, entry.node) != (wanted_pol, w["formula"], w["node"]):
        return f"hypotéza {index} není {wanted_pol} řezová formule v uzlu {w['node']}"
    return None


def check_dil(d: DILDerivation, mode: str = "general") -> CheckResult:
    """
    Ověří každý uzel odvození v DIL.

    Args:
        d: Kořen odvození
        mode: "general" (obecný řez povolen) nebo "axiom" (jen axCut/axCutBar)

    Returns:
        CheckResult se seznamem diagnostik; cesty jsou indexy potomků od kořene
    """
    if mode not in MODES:
        raise ValueError(f"Neznámý režim kontroly: {mode!r}")
    diagnostics: List[Diagnostic] = []
    for path, node in d.walk():
        where = format_tree_path(path)
        problem = _check_node(node, mode)
        if problem is not None:
            diagnostics.append(Diagnostic(where, node.rule, problem))
            continue
        try:
            expected = premises(node)
        except DerivationError as e:
            diagnostics.append(Diagnostic(where, node.rule, str(e)))
            continue
        if len(expected) != len(node.children):
            diagnostics.append(Diagnostic(where, node.rule,
                                          f"očekáváno {len(expected)} premis, nalezeno "
                                          f"{len(node.children)}"))
            continue
        for index, (premise, child) in enumerate(zip(expected, node.children)):
            if child.conclusion != premise:
                diagnostics.append(Diagnostic(
                    where, node.rule,
                    f"premisa {index} má být {print_sequent(premise)}, "
                    f"je {print_sequent(child.conclusion)}"))
    return CheckResult(not diagnostics, diagnostics)


# --- Hledání důkazu ---

_Key = Tuple[FrozenSet[Edge], FrozenSet[Tuple[Polarity, Formula, NodeId]], Polarity, Formula,
             NodeId]


def _key(seq: Sequent) -> _Key:
    # kontext i graf se porovnávají jako množiny
    return (frozenset(seq.graph.edges),
            frozenset((e.pol, e.formula, e.node) for e in seq.ctx),
            seq.pol, seq.formula, seq.node)


class _Prover:
    """Prohledávání do hloubky s kontrolou cyklů na větvi a pamětí neúspěchů."""

    def __init__(self, logger: logging.Logger):
        self.logger = logger
        self.failed: Dict[_Key, int] = {}
        self.visited = 0

    def search(self, seq: Sequent, depth: int,
               branch: Set[_Key]) -> Tuple[Optional[DILDerivation], bool]:
        """Vrací (odvození nebo None, zda výsledek závisel na kontrole cyklů)."""
        if depth <= 0:
            return None, False
        key = _key(seq)
        if key in branch:
            return None, True
        if self.failed.get(key, -1) >= depth:
            return None, False
        self.visited += 1
        branch.add(key)
        tainted = False
        try:
            for candidate in self._candidates(seq):
                children: List[DILDerivation] = []
                for premise in premises(candidate):
                    child, child_tainted = self.search(premise, depth - 1, branch)
                    tainted = tainted or child_tainted
                    if child is None:
                        break
                    children.append(child)
                else:
                    candidate.children = children
                    return candidate, tainted
        finally:
            branch.discard(key)
        if not tainted:
            self.failed[key] = max(self.failed.get(key, -1), depth)
        return None, tainted

    def _candidates(self, seq: Sequent):
        """Kandidátní pravidla v pevném pořadí: uzávěry, rozklad, svědci, axiomové řezy."""
        graph, ctx, pol, formula, node = seq.graph, seq.ctx, seq.pol, seq.formula, seq.node
        for index, entry in enumerate(ctx):
            if entry.pol is pol and entry.formula == formula and reaches(graph, entry.node, pol, node):
                yield DILDerivation("ax", seq, [], {"index": index})
                return
        if formula == Unit(pol):
            yield DILDerivation("unit", seq)
            return
        if isinstance(formula, And):
            if formula.pol is pol:
                yield DILDerivation("and", seq)
            else:
                yield DILDerivation("andBar", seq, [], {"index": 1})
                yield DILDerivation("andBar", seq, [], {"index": 2})
        if isinstance(formula, Imp):
            if formula.pol is pol:
                fresh = fresh_node(ordered_nodes(seq.nodes()))
                yield DILDerivation("imp", seq, [], {"node": fresh})
            else:
                for witness in ordered_nodes([node], graph.nodes(), ctx.nodes()):
                    if reaches(graph, node, pol.flip(), witness):
                        yield DILDerivation("impBar", seq, [], {"node": witness})
        extended = ctx.extend(_hyp(pol.flip(), formula, node))
        seen: Set[Tuple[Polarity, Formula, NodeId]] = set()
        for index, entry in enumerate(extended):
            if (entry.pol, entry.formula, entry.node) in seen:
                continue
            seen.add((entry.pol, entry.formula, entry.node))
            rule = "axCut" if entry.pol is pol else "axCutBar"
            yield DILDerivation(rule, seq, [], {"index": index, "formula": entry.formula,
                                                "node": entry.node})


def prove_dil(seq: Sequent, depth: int, logger: Optional[logging.Logger] = None) -> DILDerivation:
    """
    Omezené zpětné hledání odvození v režimu axiomových řezů.

    Args:
        seq: Dokazovaný sekvent
        depth: Maximální hloubka stromu odvození
        logger: Volitelný logger pro průběh

    Returns:
        První nalezené odvození (projde check_dil v režimu "axiom")

    Raises:
        NotFound: Do zadané hloubky odvození neexistuje
    """
    if depth < 0:
        raise ValueError("Hloubka musí být nezáporná")
    prover = _Prover(logger or logging.getLogger(__name__))
    result, _ = prover.search(seq, depth, set())
    prover.logger.debug(f"Prohledáno {prover.visited} sekventů do hloubky {depth}")
    if result is None:
        raise NotFound(depth)
    return result


# --- Transformace odvození ---

def _all_nodes(d: DILDerivation) -> List[NodeId]:
    groups = [node.conclusion.nodes() for _, node in d.walk()]
    groups += [[node.witnesses["node"]] for _, node in d.walk() if "node" in node.witnesses]
    return ordered_nodes(*groups)


def _rename_node(d: DILDerivation, target: NodeId, replaced: NodeId) -> DILDerivation:
    witnesses = dict(d.witnesses)
    if witnesses.get("node") == replaced:
        witnesses["node"] = target
    return DILDerivation(d.rule, subst_node(target, replaced, d.conclusion),
                         [_rename_node(c, target, replaced) for c in d.children], witnesses)


def _with_context(seq: Sequent, ctx: Context) -> Sequent:
    return Sequent(seq.graph, ctx, seq.pol, seq.formula, seq.node)


def weaken(d: DILDerivation, hyp: Hypothesis) -> DILDerivation:
    """
    Přidá hypotézu na konec kontextu závěru a odpovídajícím způsobem do celého stromu.

    Hypotéza se vkládá za kontext kořene, indexy hypotéz za ní se posunou.
    Čerstvé uzly pravidla imp, které by kolidovaly s uzlem hypotézy, se přejmenují.

    Args:
        d: Platné odvození
        hyp: Přidávaná hypotéza (polarita, formule, uzel)

    Returns:
        Odvození se stejnou kostrou pravidel
    """
    hyp = Hypothesis(hyp.pol, hyp.formula, hyp.node)
    position = len(d.conclusion.ctx)
    used = set(_all_nodes(d)) | {hyp.node}

    def go(node: DILDerivation) -> DILDerivation:
        if node.rule == "imp" and node.witnesses["node"] == hyp.node:
            renamed = fresh_node(used)
            used.add(renamed)
            child = _rename_node(node.children[0], renamed, hyp.node) if node.children else None
            node = DILDerivation(node.rule, node.conclusion, [child] if child else [],
                                 dict(node.witnesses, node=renamed))
        entries = node.conclusion.ctx.entries
        ctx = Context(entries[:position] + (hyp,) + entries[position:])
        witnesses = dict(node.witnesses)
        if node.rule in ("ax", "axCut", "axCutBar") and witnesses.get("index", -1) >= position:
            witnesses["index"] += 1
        return DILDerivation(node.rule, _with_context(node.conclusion, ctx),
                             [go(child) for child in node.children], witnesses)

    return go(d)


def exchange(d: DILDerivation, perm: Sequence[int]) -> DILDerivation:
    """
    Permutuje kontext závěru: nová pozice i obsahuje původní hypotézu perm[i].

    Args:
        d: Platné odvození
        perm: Permutace indexů 0..len(Γ)-1

    Returns:
        Odvození permutovaného sekventu s přepočtenými indexy

    Raises:
        DerivationError: perm není permutací délky kontextu
    """
    size = len(d.conclusion.ctx)
    if sorted(perm) != list(range(size)):
        raise DerivationError(f"{list(perm)} není permutace {size} hypotéz")
    inverse = {old: new for new, old in enumerate(perm)}

    def go(node: DILDerivation) -> DILDerivation:
        entries = node.conclusion.ctx.entries
        ctx = Context(tuple(entries[i] for i in perm) + entries[size:])
        witnesses = dict(node.witnesses)
        if node.rule in ("ax", "axCut", "axCutBar") and witnesses.get("index", size) < size:
            witnesses["index"] = inverse[witnesses["index"]]
        return DILDerivation(node.rule, _with_context(node.conclusion, ctx),
                             [go(child) for child in node.children], witnesses)

    return go(d)


def left_to_right(d: DILDerivation, hyp_index: int) -> DILDerivation:
    """
    Přesune hypotézu p̄ A @ n do cíle a cíl p̄' B @ n' do kontextu.

    Ze závěru G ; Γ1, p̄ A @ n, Γ2 |- p̄' B @ n' vznikne odvození
    G ; Γ1, Γ2, p' B @ n' |- p A @ n: axiomový řez nad oslabeným a
    permutovaným původním odvozením.

    Args:
        d: Platné odvození
        hyp_index: Index hypotézy p̄ A @ n v kontextu závěru

    Returns:
        Odvození s kořenem axCut (p' = p) nebo axCutBar (p' = p̄)

    Raises:
        DerivationError: Index mimo kontext
    """
    seq = d.conclusion
    size = len(seq.ctx)
    if not 0 <= hyp_index < size:
        raise DerivationError(f"index {hyp_index} je mimo kontext délky {size}")
    moved = seq.ctx[hyp_index]
    pol = moved.pol.flip()
    goal_pol = seq.pol.flip()
    added = Hypothesis(goal_pol, seq.formula, seq.node)
    weakened = weaken(d, added)
    perm = [i for i in range(size) if i != hyp_index] + [size, hyp_index]
    premise = exchange(weakened, perm)
    rest = tuple(e for i, e in enumerate(seq.ctx.entries) if i != hyp_index)
    conclusion = Sequent(seq.graph, Context(rest + (added,)), pol, moved.formula, moved.node)
    rule = "axCut" if goal_pol is pol else "axCutBar"
    return DILDerivation(rule, conclusion, [premise],
                         {"index": size - 1, "formula": seq.formula, "node": seq.node})


class DilService:
    """Služba pro kontrolu a hledání odvození v DIL."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}
        self.logger = logging.getLogger(__name__)
        self.default_depth = int(self.config.get('DEFAULT_PROVE_DEPTH', 8))

    def check(self, d: DILDerivation, mode: str = "general") -> CheckResult:
        result = check_dil(d, mode)
        if result.valid:
            self.logger.info(f"Odvození ({d.size()} uzlů) je platné v režimu {mode}")
        else:
            self.logger.info(f"Odvození je neplatné: {len(result.diagnostics)} chyb")
        return result

    def prove(self, seq: Sequent, depth: Optional[int] = None) -> DILDerivation:
        """
        Najde odvození sekventu, nebo vyhodí NotFound.

        Args:
            seq: Sekvent
            depth: Hloubka hledání (výchozí z konfigurace)

        Returns:
            Nalezené odvození
        """
        depth = self.default_depth if depth is None else depth
        try:
            derivation = prove_dil(seq, depth, self.logger)
        except NotFound:
            self.logger.info(f"Sekvent {print_sequent(seq)} nemá odvození do hloubky {depth}")
            raise
        self.logger.info(f"Nalezeno odvození hloubky {derivation.depth()}")
        return derivation
