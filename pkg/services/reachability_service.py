# services/reachability_service.py - Rozhodování dosažitelnosti v abstraktních Kripkeho grafech

import logging
from collections import deque
from typing import Any, Dict, Iterable, List, Optional, Set, Tuple

from models.formula_model import NEG, POS, Polarity
from models.sequent_model import Edge, Graph, NodeId, ReachQuery

Triple = Tuple[NodeId, Polarity, NodeId]


def _successors(graph: Graph) -> Dict[NodeId, List[NodeId]]:
    # a <=[+] b je šipka a -> b, a <=[-] b je šipka b -> a
    arrows: Dict[NodeId, List[NodeId]] = {}
    for edge in graph:
        if edge.pol is POS:
            arrows.setdefault(edge.source, []).append(edge.target)
        else:
            arrows.setdefault(edge.target, []).append(edge.source)
    return arrows


def reachable_set(graph: Graph, node: NodeId, pol: Polarity = POS) -> Set[NodeId]:
    """
    Vrátí všechny uzly m, pro které platí G |- node <=*[pol] m.

    Args:
        graph: Abstraktní Kripkeho graf
        node: Výchozí uzel (nemusí se v grafu vyskytovat)
        pol: Polarita dosažitelnosti

    Returns:
        Množina dosažitelných uzlů včetně uzlu samotného
    """
    arrows = _successors(graph)
    if pol is NEG:
        reversed_arrows: Dict[NodeId, List[NodeId]] = {}
        for source, targets in arrows.items():
            for target in targets:
                reversed_arrows.setdefault(target, []).append(source)
        arrows = reversed_arrows
    seen = {node}
    queue = deque([node])
    while queue:
        current = queue.popleft()
        for nxt in arrows.get(current, ()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def reaches(graph: Graph, source: NodeId, pol: Polarity, target: NodeId) -> bool:
    """Rozhodne soud G |- source <=*[pol] target prohledáním grafu."""
    if source == target:
        return True
    if pol is NEG:
        return reaches(graph, target, POS, source)
    return target in reachable_set(graph, source, POS)


def decide(query: ReachQuery) -> bool:
    return reaches(query.graph, query.source, query.pol, query.target)


def closure_oracle(graph: Graph, extra_nodes: Iterable[NodeId] = ()) -> Set[Triple]:
    """
    Nejmenší množina trojic uzavřená na pravidla ax, refl, trans a flip.

    Počítá se naivní iterací do pevného bodu nad uzly grafu a dotazovanými
    uzly; slouží jen jako orákulum pro testy.

    Args:
        graph: Abstraktní Kripkeho graf
        extra_nodes: Další uzly, na které se má uplatnit reflexivita

    Returns:
        Množina trojic (n1, polarita, n2)
    """
    nodes = list(graph.nodes())
    for node in extra_nodes:
        if node not in nodes:
            nodes.append(node)
    closure: Set[Triple] = {(e.source, e.pol, e.target) for e in graph}
    closure |= {(n, pol, n) for n in nodes for pol in (POS, NEG)}
    changed = True
    while changed:
        changed = False
        derived: Set[Triple] = set()
        for (a, pol, b) in closure:
            derived.add((b, pol.flip(), a))
            for (c, pol2, d) in closure:
                if b == c and pol2 is pol:
                    derived.add((a, pol, d))
        if not derived <= closure:
            closure |= derived
            changed = True
    return closure


def raise_graph(n1: NodeId, n2: NodeId, graph: Graph, pol: Polarity = POS) -> Graph:
    """
    Operace raise: hrany vycházející z n1 (ve směru polarity pol) začnou v n2.

    Hrana n1 <=[p] m se přepíše na n2 <=[p] m, hrana m <=[p̄] n1 na m <=[p̄] n2,
    ostatní hrany zůstávají. Zpracovává se jedním průchodem zleva doprava,
    takže smyčka n1 <=[p] n1 se přepíše jen ve zdroji.

    Args:
        n1: Původní dolní mez
        n2: Nová dolní mez
        graph: Graf, jehož hrany se přepisují
        pol: Polarita p, ve které platí n1 <=*[p] n2

    Returns:
        Nový graf stejné délky
    """
    result: List[Edge] = []
    for edge in graph:
        if edge.pol is pol and edge.source == n1:
            result.append(Edge(n2, edge.pol, edge.target))
        elif edge.pol is not pol and edge.target == n1:
            result.append(Edge(edge.source, edge.pol, n2))
        else:
            result.append(edge)
    return Graph(tuple(result))


class ReachabilityService:
    """Služba pro dotazy na dosažitelnost (používá ji příkazová řádka)."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}
        self.logger = logging.getLogger(__name__)

    def decide(self, query: ReachQuery) -> bool:
        """
        Rozhodne dotaz a zaloguje výsledek.

        Args:
            query: Dotaz G |- n1 <=*[p] n2

        Returns:
            True, pokud je soud odvoditelný
        """
        result = decide(query)
        self.logger.info(f"Dosažitelnost {query.source} <=*[{query.pol}] {query.target}: {result}")
        return result

    def witness_path(self, query: ReachQuery) -> Optional[List[NodeId]]:
        """Vrátí cestu uzlů dokládající dosažitelnost, nebo None."""
        source, target = query.source, query.target
        if query.pol is NEG:
            source, target = target, source
        arrows = _successors(query.graph)
        parents: Dict[NodeId, Optional[NodeId]] = {source: None}
        queue = deque([source])
        while queue:
            current = queue.popleft()
            if current == target:
                path = [current]
                while parents[path[-1]] is not None:
                    path.append(parents[path[-1]])
                path.reverse()
                return path if query.pol is POS else list(reversed(path))
            for nxt in arrows.get(current, ()):
                if nxt not in parents:
                    parents[nxt] = current
                    queue.append(nxt)
        self.logger.debug(f"Cesta {query.source} -> {query.target} neexistuje")
        return None
