# models/sequent_model.py - Model pro grafy, kontexty a sekventy

from dataclasses import dataclass, field
from typing import Dict, Any, Iterator, List, Optional, Tuple

from models.formula_model import Formula, LFormula, Polarity

# Uzly abstraktního Kripkeho grafu jsou identifikovány jménem
NodeId = str


@dataclass(frozen=True)
class Edge:
    """Polarizovaná hrana source <=[pol] target."""
    source: NodeId
    pol: Polarity
    target: NodeId

    def flipped(self) -> 'Edge':
        """Vrátí tutéž hranu zapsanou s prohozenými konci a opačnou polaritou."""
        return Edge(self.target, self.pol.flip(), self.source)


@dataclass(frozen=True)
class Graph:
    """Abstraktní Kripkeho graf - multimnožina hran (pořadí nemá vliv na úsudky)."""
    edges: Tuple[Edge, ...] = ()

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __add__(self, other: 'Graph') -> 'Graph':
        return Graph(self.edges + tuple(other.edges))

    def extend(self, *edges: Edge) -> 'Graph':
        return Graph(self.edges + tuple(edges))

    def nodes(self) -> List[NodeId]:
        """Uzly grafu v pořadí prvního výskytu."""
        seen: List[NodeId] = []
        for edge in self.edges:
            for node in (edge.source, edge.target):
                if node not in seen:
                    seen.append(node)
        return seen


@dataclass(frozen=True)
class Hypothesis:
    """Položka kontextu p A @ n, v DTT navíc se jménem proměnné."""
    pol: Polarity
    formula: Formula
    node: NodeId
    var: Optional[str] = None


@dataclass(frozen=True)
class Context:
    """Uspořádaný seznam hypotéz."""
    entries: Tuple[Hypothesis, ...] = ()

    def __iter__(self) -> Iterator[Hypothesis]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: int) -> Hypothesis:
        return self.entries[index]

    def extend(self, *entries: Hypothesis) -> 'Context':
        return Context(self.entries + tuple(entries))

    def variables(self) -> List[str]:
        return [entry.var for entry in self.entries if entry.var is not None]

    def lookup(self, var: str) -> Optional[int]:
        """
        Najde index hypotézy s danou proměnnou.

        Args:
            var: Jméno proměnné

        Returns:
            Index hypotézy nebo None, pokud proměnná v kontextu není
        """
        for index in range(len(self.entries) - 1, -1, -1):
            if self.entries[index].var == var:
                return index
        return None

    def nodes(self) -> List[NodeId]:
        seen: List[NodeId] = []
        for entry in self.entries:
            if entry.node not in seen:
                seen.append(entry.node)
        return seen


@dataclass(frozen=True)
class Sequent:
    """Sekvent G ; Γ |- p A @ n."""
    graph: Graph
    ctx: Context
    pol: Polarity
    formula: Formula
    node: NodeId

    def nodes(self) -> List[NodeId]:
        """Všechny uzly sekventu (graf, kontext, cílový uzel) v pořadí prvního výskytu."""
        result = self.graph.nodes()
        for node in self.ctx.nodes() + [self.node]:
            if node not in result:
                result.append(node)
        return result


@dataclass(frozen=True)
class ReachQuery:
    """Dotaz na dosažitelnost G |- source <=*[pol] target."""
    graph: Graph
    source: NodeId
    pol: Polarity
    target: NodeId


# --- Sekventy logiky L ---

@dataclass(frozen=True)
class LLabelled:
    """Formule L označená uzlem, n : A."""
    node: NodeId
    formula: LFormula


@dataclass(frozen=True)
class LSequent:
    """Sekvent L tvaru Γ |-[G] Δ; graf je multimnožina dvojic uzlů."""
    left: Tuple[LLabelled, ...] = ()
    graph: Tuple[Tuple[NodeId, NodeId], ...] = ()
    right: Tuple[LLabelled, ...] = ()

    def nodes(self) -> List[NodeId]:
        seen: List[NodeId] = []
        candidates = [n for pair in self.graph for n in pair]
        candidates += [item.node for item in self.left + self.right]
        for node in candidates:
            if node not in seen:
                seen.append(node)
        return seen


@dataclass
class Diagnostic:
    """Diagnostika kontroly odvození nebo typu."""
    path: str
    rule: str
    message: str

    def to_dict(self) -> Dict[str, Any]:
        return {"path": self.path, "rule": self.rule, "message": self.message}

    def __str__(self) -> str:
        return f"[{self.path}] {self.rule}: {self.message}"


@dataclass
class CheckResult:
    """Výsledek kontroly: platnost plus seznam diagnostik."""
    valid: bool
    diagnostics: List[Diagnostic] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid

    def to_dict(self) -> Dict[str, Any]:
        """Převede výsledek na slovník ve tvaru status/message."""
        return {
            "status": "ok" if self.valid else "error",
            "message": "; ".join(str(d) for d in self.diagnostics),
            "diagnostics": [d.to_dict() for d in self.diagnostics],
        }
