# models/formula_model.py - Model pro polarity a formule (DIL/DTT i L)

from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Union


class Polarity(Enum):
    """Polarita formule: + (pravdivá) nebo - (vyvrácená)."""
    POS = "+"
    NEG = "-"

    def flip(self) -> 'Polarity':
        """Vrátí opačnou polaritu."""
        return Polarity.NEG if self is Polarity.POS else Polarity.POS

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_symbol(cls, symbol: str) -> 'Polarity':
        if symbol == "+":
            return cls.POS
        if symbol == "-":
            return cls.NEG
        raise ValueError(f"Neznámá polarita: {symbol!r}")


def flip(pol: Polarity) -> Polarity:
    return pol.flip()


POS = Polarity.POS
NEG = Polarity.NEG


# --- Formule DIL (zároveň typy DTT) ---

@dataclass(frozen=True)
class Atom:
    """Atomická formule."""
    name: str


@dataclass(frozen=True)
class Unit:
    """Polarizovaná jednotka <p>."""
    pol: Polarity


@dataclass(frozen=True)
class Imp:
    """Polarizovaná implikace: lhs ->[p] rhs (pro p = - jde o ko-implikaci)."""
    pol: Polarity
    lhs: 'Formula'
    rhs: 'Formula'


@dataclass(frozen=True)
class And:
    """Polarizovaná konjunkce: lhs /\\[p] rhs (pro p = - jde o disjunkci)."""
    pol: Polarity
    lhs: 'Formula'
    rhs: 'Formula'

    def component(self, index: int) -> 'Formula':
        """
        Vrátí složku konjunkce.

        Args:
            index: 1 nebo 2

        Returns:
            Levou nebo pravou podformuli
        """
        if index == 1:
            return self.lhs
        if index == 2:
            return self.rhs
        raise ValueError(f"Neplatný index složky: {index}")


Formula = Union[Atom, Unit, Imp, And]


def atoms_of(formula: Formula) -> FrozenSet[str]:
    """Vrátí množinu jmen atomů vyskytujících se ve formuli."""
    if isinstance(formula, Atom):
        return frozenset([formula.name])
    if isinstance(formula, (Imp, And)):
        return atoms_of(formula.lhs) | atoms_of(formula.rhs)
    return frozenset()


# --- Formule logiky L ---

@dataclass(frozen=True)
class LTop:
    pass


@dataclass(frozen=True)
class LBot:
    pass


@dataclass(frozen=True)
class LAtom:
    name: str


@dataclass(frozen=True)
class LImp:
    """Implikace A ⊃ B."""
    lhs: 'LFormula'
    rhs: 'LFormula'


@dataclass(frozen=True)
class LSub:
    """Ko-implikace (odečtení) A ≺ B."""
    lhs: 'LFormula'
    rhs: 'LFormula'


@dataclass(frozen=True)
class LAnd:
    lhs: 'LFormula'
    rhs: 'LFormula'


@dataclass(frozen=True)
class LOr:
    lhs: 'LFormula'
    rhs: 'LFormula'


LFormula = Union[LTop, LBot, LAtom, LImp, LSub, LAnd, LOr]
