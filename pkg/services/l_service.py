# services/l_service.py - Kalkulus L: kontrola odvození, mělké hledání a překlady D a L

import logging
from collections import Counter
from typing import Any, Dict, FrozenSet, List, Optional, Set, Tuple

from models.derivation_model import L_RULES, LDerivation, format_tree_path
from models.formula_model import (And, Atom, Formula, Imp, LAnd, LAtom, LBot, LFormula, LImp,
                                  LOr, LSub, LTop, NEG, POS, Polarity, Unit)
from models.sequent_model import (CheckResult, Context, Diagnostic, Edge, Graph, Hypothesis,
                                  LLabelled, LSequent, NodeId, Sequent)
from services.syntax_service import print_l_sequent
from services.term_service import fresh_node

Pair = Tuple[NodeId, NodeId]


# --- Překlad L -> DIL ---

def d_formula(formula: LFormula) -> Formula:
    """Překlad formule L do DIL; atomy se zobrazují samy na sebe."""
    if isinstance(formula, LTop):
        return Unit(POS)
    if isinstance(formula, LBot):
        return Unit(NEG)
    if isinstance(formula, LAtom):
        return Atom(formula.name)
    if isinstance(formula, LAnd):
        return And(POS, d_formula(formula.lhs), d_formula(formula.rhs))
    if isinstance(formula, LOr):
        return And(NEG, d_formula(formula.lhs), d_formula(formula.rhs))
    if isinstance(formula, LImp):
        return Imp(POS, d_formula(formula.lhs), d_formula(formula.rhs))
    if isinstance(formula, LSub):
        # B ≺ A se překládá na D(A) ->[-] D(B)
        return Imp(NEG, d_formula(formula.rhs), d_formula(formula.lhs))
    raise TypeError(f"Neznámá formule L: {formula!r}")


def d_context(items: Tuple[LLabelled, ...], pol: Polarity) -> Context:
    return Context(tuple(Hypothesis(pol, d_formula(item.formula), item.node) for item in items))


def d_graph(graph: Tuple[Pair, ...]) -> Graph:
    return Graph(tuple(Edge(a, POS, b) for a, b in graph))


def normalize_empty_right(lseq: LSequent) -> LSequent:
    """Prázdnou pravou stranu nahradí formulí n : bot s čerstvým uzlem n."""
    if lseq.right:
        return lseq
    return LSequent(lseq.left, lseq.graph, (LLabelled(fresh_node(lseq.nodes()), LBot()),))


def activations(lseq: LSequent, pad_empty: bool = True) -> List[Sequent]:
    """
    Všechny aktivace sekventu L - jedna DIL sekvent pro každou formuli vpravo.

    Args:
        lseq: Sekvent L
        pad_empty: Prázdnou pravou stranu doplnit formulí n : bot

    Returns:
        Seznam sekventů D(G) ; D(Γ)+, D(Δ bez i)- |- + D(A_i) @ n_i

    Raises:
        ValueError: Pravá strana je prázdná a pad_empty je False
    """
    if not lseq.right:
        if not pad_empty:
            raise ValueError("Sekvent L nemá žádnou formuli vpravo")
        lseq = normalize_empty_right(lseq)
    graph = d_graph(lseq.graph)
    positive = d_context(lseq.left, POS)
    result = []
    for index, active in enumerate(lseq.right):
        others = lseq.right[:index] + lseq.right[index + 1:]
        ctx = Context(positive.entries + d_context(others, NEG).entries)
        result.append(Sequent(graph, ctx, POS, d_formula(active.formula), active.node))
    return result


# --- Překlad DIL -> L ---

def l_formula(formula: Formula) -> LFormula:
    if isinstance(formula, Unit):
        return LTop() if formula.pol is POS else LBot()
    if isinstance(formula, Atom):
        return LAtom(formula.name)
    if isinstance(formula, And):
        cls = LAnd if formula.pol is POS else LOr
        return cls(l_formula(formula.lhs), l_formula(formula.rhs))
    if isinstance(formula, Imp):
        if formula.pol is POS:
            return LImp(l_formula(formula.lhs), l_formula(formula.rhs))
        return LSub(l_formula(formula.rhs), l_formula(formula.lhs))
    raise TypeError(f"Neznámá formule DIL: {formula!r}")


def l_context_pos(ctx: Context) -> Tuple[LLabelled, ...]:
    """Kladné hypotézy kontextu jako levá strana sekventu L."""
    return tuple(LLabelled(e.node, l_formula(e.formula)) for e in ctx if e.pol is POS)


def l_context_neg(ctx: Context) -> Tuple[LLabelled, ...]:
    return tuple(LLabelled(e.node, l_formula(e.formula)) for e in ctx if e.pol is NEG)


def l_graph(graph: Graph) -> Tuple[Pair, ...]:
    """Záporné hrany se obracejí: n2 <=[-] n1 je dvojice (n1, n2)."""
    return tuple((e.source, e.target) if e.pol is POS else (e.target, e.source) for e in graph)


def l_sequent(seq: Sequent) -> LSequent:
    """
    Překlad sekventu DIL do L.

    Kladný cíl se přidá na konec pravé strany, záporný na konec levé.
    """
    left = l_context_pos(seq.ctx)
    right = l_context_neg(seq.ctx)
    goal = LLabelled(seq.node, l_formula(seq.formula))
    if seq.pol is POS:
        right = right + (goal,)
    else:
        left = left + (goal,)
    return LSequent(left, l_graph(seq.graph), right)


def graphs_isomorphic(first: Graph, second: Graph) -> bool:
    """Každá hrana jednoho grafu je v druhém přímo nebo s prohozenými konci a opačnou polaritou."""
    def covered(edges: Graph, others: Graph) -> bool:
        pool = set(others.edges)
        return all(e in pool or e.flipped() in pool for e in edges)

    return covered(first, second) and covered(second, first)


# --- Kontrola odvození v L ---

def _same(a: LSequent, b: LSequent) -> bool:
    # sekventy L jsou multimnožiny
    return (Counter(a.left) == Counter(b.left) and Counter(a.right) == Counter(b.right)
            and Counter(a.graph) == Counter(b.graph))


def _drop(items: Tuple[LLabelled, ...], index: int) -> Tuple[LLabelled, ...]:
    return items[:index] + items[index + 1:]


def _principal(items: Tuple[LLabelled, ...], w: Dict[str, Any], key: str, kind) -> LLabelled:
    index = w.get(key)
    if not isinstance(index, int) or not 0 <= index < len(items):
        raise ValueError(f"chybí platný index '{key}'")
    item = items[index]
    if not isinstance(item.formula, kind):
        raise ValueError(f"formule {index} nemá požadovaný tvar")
    return item


def _edge(graph: Tuple[Pair, ...], first: NodeId, second: NodeId) -> None:
    if (first, second) not in graph:
        raise ValueError(f"hrana ({first}, {second}) v grafu chybí")


def l_premises(d: LDerivation) -> List[LSequent]:
    """
    Vypočte premisy uzlu odvození L a ověří jeho boční podmínky.

    Args:
        d: Uzel odvození

    Returns:
        Očekávané sekventy potomků

    Raises:
        ValueError: Uzel porušuje pravidlo
    """
    seq, w = d.conclusion, d.witnesses
    left, graph, right = seq.left, seq.graph, seq.right
    rule = d.rule
    if rule not in L_RULES:
        raise ValueError(f"neznámé pravidlo {rule}")
    if rule == "hyp":
        a = _principal(left, w, "left", object)
        b = _principal(right, w, "right", object)
        if a != b:
            raise ValueError("hypotéza vlevo a vpravo se liší")
        return []
    if rule == "refl":
        node = w.get("node")
        if node is None:
            raise ValueError("chybí uzel")
        return [LSequent(left, graph + ((node, node),), right)]
    if rule == "trans":
        n1, n2, n3 = w["nodes"]
        _edge(graph, n1, n2)
        _edge(graph, n2, n3)
        return [LSequent(left, graph + ((n1, n3),), right)]
    if rule == "monL":
        item = _principal(left, w, "left", object)
        _edge(graph, item.node, w["node"])
        return [LSequent(left + (LLabelled(w["node"], item.formula),), graph, right)]
    if rule == "monR":
        item = _principal(right, w, "right", object)
        _edge(graph, w["node"], item.node)
        return [LSequent(left, graph, right + (LLabelled(w["node"], item.formula),))]
    if rule == "trueL":
        _principal(left, w, "left", LTop)
        return [LSequent(_drop(left, w["left"]), graph, right)]
    if rule == "trueR":
        _principal(right, w, "right", LTop)
        return []
    if rule == "falseL":
        _principal(left, w, "left", LBot)
        return []
    if rule == "falseR":
        _principal(right, w, "right", LBot)
        return [LSequent(left, graph, _drop(right, w["right"]))]
    if rule == "andL":
        item = _principal(left, w, "left", LAnd)
        rest = _drop(left, w["left"])
        return [LSequent(rest + (LLabelled(item.node, item.formula.lhs),
                                 LLabelled(item.node, item.formula.rhs)), graph, right)]
    if rule == "andR":
        item = _principal(right, w, "right", LAnd)
        rest = _drop(right, w["right"])
        return [LSequent(left, graph, (LLabelled(item.node, item.formula.lhs),) + rest),
                LSequent(left, graph, (LLabelled(item.node, item.formula.rhs),) + rest)]
    if rule == "disjL":
        item = _principal(left, w, "left", LOr)
        rest = _drop(left, w["left"])
        return [LSequent(rest + (LLabelled(item.node, item.formula.lhs),), graph, right),
                LSequent(rest + (LLabelled(item.node, item.formula.rhs),), graph, right)]
    if rule == "disjR":
        item = _principal(right, w, "right", LOr)
        rest = _drop(right, w["right"])
        return [LSequent(left, graph, (LLabelled(item.node, item.formula.lhs),
                                       LLabelled(item.node, item.formula.rhs)) + rest)]
    if rule == "impL":
        item = _principal(left, w, "left", LImp)
        target = w["node"]
        _edge(graph, item.node, target)
        rest = _drop(left, w["left"])
        return [LSequent(rest, graph, (LLabelled(target, item.formula.lhs),) + right),
                LSequent(rest + (LLabelled(target, item.formula.rhs),), graph, right)]
    if rule == "impR":
        item = _principal(right, w, "right", LImp)
        fresh = w["node"]
        if fresh in seq.nodes():
            raise ValueError(f"uzel {fresh} není čerstvý")
        rest = _drop(right, w["right"])
        return [LSequent(left + (LLabelled(fresh, item.formula.lhs),),
                         graph + ((item.node, fresh),),
                         (LLabelled(fresh, item.formula.rhs),) + rest)]
    if rule == "subL":
        item = _principal(left, w, "left", LSub)
        fresh = w["node"]
        if fresh in seq.nodes():
            raise ValueError(f"uzel {fresh} není čerstvý")
        rest = _drop(left, w["left"])
        return [LSequent(rest + (LLabelled(fresh, item.formula.lhs),),
                         graph + ((fresh, item.node),),
                         (LLabelled(fresh, item.formula.rhs),) + right)]
    # subR
    item = _principal(right, w, "right", LSub)
    source = w["node"]
    _edge(graph, source, item.node)
    rest = _drop(right, w["right"])
    return [LSequent(left, graph, (LLabelled(source, item.formula.lhs),) + rest),
            LSequent(left + (LLabelled(source, item.formula.rhs),), graph, rest)]


def check_l(d: LDerivation) -> CheckResult:
    """
    Ověří každý uzel odvození v L, včetně podmínek na graf a čerstvost uzlů.

    Args:
        d: Kořen odvození

    Returns:
        CheckResult s diagnostikami podle cest ve stromu
    """
    diagnostics: List[Diagnostic] = []
    for path, node in d.walk():
        where = format_tree_path(path)
        try:
            expected = l_premises(node)
        except (KeyError, TypeError, ValueError) as e:
            diagnostics.append(Diagnostic(where, node.rule, str(e)))
            continue
        if len(expected) != len(node.children):
            diagnostics.append(Diagnostic(where, node.rule,
                                          f"očekáváno {len(expected)} premis, nalezeno "
                                          f"{len(node.children)}"))
            continue
        for index, (premise, child) in enumerate(zip(expected, node.children)):
            if not _same(premise, child.conclusion):
                diagnostics.append(Diagnostic(
                    where, node.rule,
                    f"premisa {index} má být {print_l_sequent(premise)}, "
                    f"je {print_l_sequent(child.conclusion)}"))
    return CheckResult(not diagnostics, diagnostics)


# --- Mělké hledání v L ---

_LKey = Tuple[FrozenSet[LLabelled], FrozenSet[Pair], FrozenSet[LLabelled]]


def _lkey(seq: LSequent) -> _LKey:
    return frozenset(seq.left), frozenset(seq.graph), frozenset(seq.right)


def _l_candidates(seq: LSequent):
    left, graph, right = seq.left, seq.graph, seq.right
    for i, a in enumerate(left):
        for j, b in enumerate(right):
            if a == b:
                yield LDerivation("hyp", seq, [], {"left": i, "right": j})
                return
    for j, b in enumerate(right):
        if isinstance(b.formula, LTop):
            yield LDerivation("trueR", seq, [], {"right": j})
            return
    for i, a in enumerate(left):
        if isinstance(a.formula, LBot):
            yield LDerivation("falseL", seq, [], {"left": i})
            return
    fresh = fresh_node(seq.nodes())
    for i, a in enumerate(left):
        kind = a.formula
        if isinstance(kind, LTop):
            yield LDerivation("trueL", seq, [], {"left": i})
        elif isinstance(kind, LAnd):
            yield LDerivation("andL", seq, [], {"left": i})
        elif isinstance(kind, LOr):
            yield LDerivation("disjL", seq, [], {"left": i})
        elif isinstance(kind, LSub):
            yield LDerivation("subL", seq, [], {"left": i, "node": fresh})
    for j, b in enumerate(right):
        kind = b.formula
        if isinstance(kind, LBot):
            yield LDerivation("falseR", seq, [], {"right": j})
        elif isinstance(kind, LAnd):
            yield LDerivation("andR", seq, [], {"right": j})
        elif isinstance(kind, LOr):
            yield LDerivation("disjR", seq, [], {"right": j})
        elif isinstance(kind, LImp):
            yield LDerivation("impR", seq, [], {"right": j, "node": fresh})
    for node in seq.nodes():
        if (node, node) not in graph:
            yield LDerivation("refl", seq, [], {"node": node})
    for (a, b) in set(graph):
        for (c, d) in set(graph):
            if b == c and (a, d) not in graph:
                yield LDerivation("trans", seq, [], {"nodes": [a, b, d]})
    for (a, b) in set(graph):
        for i, item in enumerate(left):
            if item.node == a:
                if isinstance(item.formula, LImp):
                    yield LDerivation("impL", seq, [], {"left": i, "node": b})
                if LLabelled(b, item.formula) not in left:
                    yield LDerivation("monL", seq, [], {"left": i, "node": b})
        for j, item in enumerate(right):
            if item.node == b:
                if isinstance(item.formula, LSub):
                    yield LDerivation("subR", seq, [], {"right": j, "node": a})
                if LLabelled(a, item.formula) not in right:
                    yield LDerivation("monR", seq, [], {"right": j, "node": a})


def prove_l(lseq: LSequent, depth: int) -> Optional[LDerivation]:
    """
    Mělké hledání odvození v L do zadané hloubky.

    Args:
        lseq: Sekvent L
        depth: Maximální hloubka stromu

    Returns:
        Odvození nebo None
    """
    failed: Dict[_LKey, int] = {}

    def search(seq: LSequent, budget: int,
               branch: Set[_LKey]) -> Tuple[Optional[LDerivation], bool]:
        # druhá složka říká, zda neúspěch závisel na kontrole cyklů
        if budget <= 0:
            return None, False
        key = _lkey(seq)
        if key in branch:
            return None, True
        if failed.get(key, -1) >= budget:
            return None, False
        branch.add(key)
        tainted = False
        try:
            for candidate in _l_candidates(seq):
                children = []
                for premise in l_premises(candidate):
                    child, loop = search(premise, budget - 1, branch)
                    tainted = tainted or loop
                    if child is None:
                        break
                    children.append(child)
                else:
                    candidate.children = children
                    return candidate, False
        finally:
            branch.discard(key)
        if not tainted:
            failed[key] = max(failed.get(key, -1), budget)
        return None, tainted

    return search(lseq, depth, set())[0]

class LService:
    """Služba pro kalkulus L a překlady mezi L a DIL."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}
        self.logger = logging.getLogger(__name__)

    def check(self, d: LDerivation) -> CheckResult:
        result = check_l(d)
        self.logger.info(f"Odvození L je {'platné' if result.valid else 'neplatné'}")
        return result

    def to_dil(self, lseq: LSequent) -> List[Sequent]:
        result = activations(lseq)
        self.logger.debug(f"Sekvent L má {len(result)} aktivací")
        return result

    def to_l(self, seq: Sequent) -> LSequent:
        return l_sequent(seq)
