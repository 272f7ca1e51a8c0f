# models/term_model.py - Model termů DTT

from dataclasses import dataclass
from typing import Optional, Tuple, Union

from models.formula_model import Formula
from models.sequent_model import NodeId


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Triv:
    pass


@dataclass(frozen=True)
class Pair:
    fst: 'Term'
    snd: 'Term'


@dataclass(frozen=True)
class In:
    """Injekce in1 t / in2 t."""
    index: int
    body: 'Term'


@dataclass(frozen=True)
class Lam:
    var: str
    body: 'Term'


@dataclass(frozen=True)
class CoPair:
    fst: 'Term'
    snd: 'Term'


@dataclass(frozen=True)
class CutAnnotation:
    """Anotace řezu [B @ n'] - řezová formule a její uzel."""
    formula: Formula
    node: NodeId


@dataclass(frozen=True)
class Cut:
    """Řez nu x . left * right : [B @ n']; x je vázáno v obou složkách."""
    var: str
    left: 'Term'
    annotation: Optional[CutAnnotation]
    right: 'Term'


Term = Union[Var, Triv, Pair, In, Lam, CoPair, Cut]

# Cesta do termu: indexy potomků od kořene
Path = Tuple[int, ...]


def children(term: Term) -> Tuple[Term, ...]:
    """Vrátí bezprostřední podtermy v pořadí odpovídajícím indexům cesty."""
    if isinstance(term, (Pair, CoPair)):
        return (term.fst, term.snd)
    if isinstance(term, (In, Lam)):
        return (term.body,)
    if isinstance(term, Cut):
        return (term.left, term.right)
    return ()


def replace_child(term: Term, index: int, child: Term) -> Term:
    """Vrátí term s nahrazeným potomkem na daném indexu."""
    if isinstance(term, Pair):
        return Pair(child, term.snd) if index == 0 else Pair(term.fst, child)
    if isinstance(term, CoPair):
        return CoPair(child, term.snd) if index == 0 else CoPair(term.fst, child)
    if isinstance(term, In):
        return In(term.index, child)
    if isinstance(term, Lam):
        return Lam(term.var, child)
    if isinstance(term, Cut):
        if index == 0:
            return Cut(term.var, child, term.annotation, term.right)
        return Cut(term.var, term.left, term.annotation, child)
    raise ValueError(f"Term nemá potomka s indexem {index}")


def subterm_at(term: Term, path: Path) -> Term:
    for index in path:
        term = children(term)[index]
    return term


def replace_at(term: Term, path: Path, new: Term) -> Term:
    if not path:
        return new
    head, rest = path[0], path[1:]
    return replace_child(term, head, replace_at(children(term)[head], rest, new))


def format_path(path: Path) -> str:
    return ".".join(str(i) for i in path) if path else "."


def is_canonical(term: Term) -> bool:
    """Kanonický term je každý term, jehož vrchní konstruktor není řez."""
    return not isinstance(term, Cut)


def term_size(term: Term) -> int:
    return 1 + sum(term_size(child) for child in children(term))


def count_cuts(term: Term) -> int:
    own = 1 if isinstance(term, Cut) else 0
    return own + sum(count_cuts(child) for child in children(term))
