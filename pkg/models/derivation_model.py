# models/derivation_model.py - Model odvození v DIL a v L

from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Tuple

from models.sequent_model import LSequent, Sequent

DIL_RULES = ("ax", "unit", "and", "andBar", "imp", "impBar", "cut", "axCut", "axCutBar")

L_RULES = ("refl", "trans", "hyp", "monL", "monR", "trueL", "trueR", "falseL", "falseR",
           "andL", "andR", "disjL", "disjR", "impL", "impR", "subL", "subR")


@dataclass
class DILDerivation:
    """Strom odvození v DIL; každý uzel nese pravidlo, závěr a svědky pravidla."""
    rule: str
    conclusion: Sequent
    children: List['DILDerivation'] = field(default_factory=list)
    witnesses: Dict[str, Any] = field(default_factory=dict)

    def depth(self) -> int:
        return 1 + max((child.depth() for child in self.children), default=0)

    def size(self) -> int:
        return 1 + sum(child.size() for child in self.children)

    def walk(self, path: Tuple[int, ...] = ()) -> Iterator[Tuple[Tuple[int, ...], 'DILDerivation']]:
        """Projde strom do hloubky, vrací dvojice (cesta, uzel)."""
        yield path, self
        for index, child in enumerate(self.children):
            yield from child.walk(path + (index,))

    def rules(self) -> List[str]:
        return [node.rule for _, node in self.walk()]


@dataclass
class LDerivation:
    """Strom odvození v logice L."""
    rule: str
    conclusion: LSequent
    children: List['LDerivation'] = field(default_factory=list)
    witnesses: Dict[str, Any] = field(default_factory=dict)

    def depth(self) -> int:
        return 1 + max((child.depth() for child in self.children), default=0)

    def walk(self, path: Tuple[int, ...] = ()) -> Iterator[Tuple[Tuple[int, ...], 'LDerivation']]:
        yield path, self
        for index, child in enumerate(self.children):
            yield from child.walk(path + (index,))


def format_tree_path(path: Tuple[int, ...]) -> str:
    return "/" + "/".join(str(i) for i in path)
