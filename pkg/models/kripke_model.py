# models/kripke_model.py - Model konečných Kripkeho modelů

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

from models.sequent_model import NodeId


@dataclass(frozen=True)
class KripkeModel:
    """
    Konečný Kripkeho model (W, R, V).

    Světy jsou čísla 0..worlds-1, R je předuspořádání a V monotónní valuace.
    Podmínky se ověřují při konstrukci.
    """
    worlds: int
    relation: FrozenSet[Tuple[int, int]]
    valuation: FrozenSet[Tuple[int, str]]
    atoms: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.worlds < 1:
            raise ValueError("Model musí mít alespoň jeden svět")
        for w in range(self.worlds):
            if (w, w) not in self.relation:
                raise ValueError(f"Relace není reflexivní ve světě {w}")
        for (a, b) in self.relation:
            for (c, d) in self.relation:
                if b == c and (a, d) not in self.relation:
                    raise ValueError(f"Relace není tranzitivní: ({a},{b}),({c},{d})")
        for (w, atom) in self.valuation:
            for (a, b) in self.relation:
                if a == w and (b, atom) not in self.valuation:
                    raise ValueError(f"Valuace atomu {atom} není monotónní: {a} -> {b}")

    def successors(self, world: int) -> List[int]:
        return [b for b in range(self.worlds) if (world, b) in self.relation]

    def predecessors(self, world: int) -> List[int]:
        return [a for a in range(self.worlds) if (a, world) in self.relation]

    def accessible(self, source: int, target: int) -> bool:
        return (source, target) in self.relation

    def holds(self, world: int, atom: str) -> bool:
        return (world, atom) in self.valuation

    def to_lines(self) -> List[str]:
        """Strojově čitelný výpis modelu, jedna položka na řádek."""
        lines = [f"world {w}" for w in range(self.worlds)]
        lines += [f"R {a} {b}" for (a, b) in sorted(self.relation)]
        lines += [f"V {w} {atom}" for (w, atom) in sorted(self.valuation)]
        return lines


@dataclass(frozen=True)
class NodeInterpreter:
    """Interpretace uzlů - zobrazení uzel -> svět."""
    mapping: Tuple[Tuple[NodeId, int], ...] = ()

    def __call__(self, node: NodeId) -> int:
        for name, world in self.mapping:
            if name == node:
                return world
        raise KeyError(f"Uzel {node} není interpretován")

    def as_dict(self) -> Dict[NodeId, int]:
        return dict(self.mapping)

    def to_lines(self) -> List[str]:
        return [f"N {node} {world}" for node, world in self.mapping]


@dataclass
class ValidationResult:
    """Výsledek ověření platnosti: Valid nebo protipříklad (model + interpretace)."""
    valid: bool
    model: Optional[KripkeModel] = None
    interpreter: Optional[NodeInterpreter] = None
    trace: List[str] = field(default_factory=list)
    checked: int = 0

    def to_lines(self) -> List[str]:
        if self.valid:
            return ["valid"]
        lines = ["countermodel"]
        lines += self.model.to_lines()
        lines += self.interpreter.to_lines()
        return lines

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": "valid" if self.valid else "countermodel",
            "checked": self.checked,
            "model": self.model.to_lines() if self.model else None,
            "interpreter": self.interpreter.as_dict() if self.interpreter else None,
            "trace": self.trace,
        }
