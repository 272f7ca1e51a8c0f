# services/kripke_service.py - Konečné Kripkeho modely, interpretace a hledání protipříkladů

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from models.formula_model import (And, Atom, Formula, Imp, LAnd, LAtom, LBot, LFormula, LImp,
                                  LOr, LSub, LTop, POS, Polarity, Unit, atoms_of)
from models.kripke_model import KripkeModel, NodeInterpreter, ValidationResult
from models.sequent_model import Context, Graph, LSequent, NodeId, Sequent
from services.syntax_service import print_formula, print_l_formula


class UnknownAtomError(ValueError):
    """Formule obsahuje atom, který model nezná."""

    def __init__(self, atom: str):
        self.atom = atom
        super().__init__(f"Neznámý atom {atom!r}")


def _atom(model: KripkeModel, world: int, name: str) -> bool:
    if name not in model.atoms:
        raise UnknownAtomError(name)
    return model.holds(world, name)


def interp_formula(model: KripkeModel, world: int, formula: Formula) -> bool:
    """
    Pravdivost formule DIL ve světě modelu.

    Args:
        model: Kripkeho model
        world: Index světa
        formula: Formule

    Returns:
        True, pokud formule ve světě platí

    Raises:
        UnknownAtomError: Atom mimo abecedu modelu
    """
    if isinstance(formula, Unit):
        return formula.pol is POS
    if isinstance(formula, Atom):
        return _atom(model, world, formula.name)
    if isinstance(formula, And):
        if formula.pol is POS:
            return interp_formula(model, world, formula.lhs) and interp_formula(model, world, formula.rhs)
        return interp_formula(model, world, formula.lhs) or interp_formula(model, world, formula.rhs)
    if isinstance(formula, Imp):
        if formula.pol is POS:
            return all(not interp_formula(model, w, formula.lhs) or interp_formula(model, w, formula.rhs)
                       for w in model.successors(world))
        return any(not interp_formula(model, w, formula.lhs) and interp_formula(model, w, formula.rhs)
                   for w in model.predecessors(world))
    raise TypeError(f"Neznámá formule: {formula!r}")


def interp_l_formula(model: KripkeModel, world: int, formula: LFormula) -> bool:
    """Přímá sémantika formulí L (⊃ přes následníky, ≺ přes předchůdce)."""
    if isinstance(formula, LTop):
        return True
    if isinstance(formula, LBot):
        return False
    if isinstance(formula, LAtom):
        return _atom(model, world, formula.name)
    if isinstance(formula, LAnd):
        return interp_l_formula(model, world, formula.lhs) and interp_l_formula(model, world, formula.rhs)
    if isinstance(formula, LOr):
        return interp_l_formula(model, world, formula.lhs) or interp_l_formula(model, world, formula.rhs)
    if isinstance(formula, LImp):
        return all(not interp_l_formula(model, w, formula.lhs) or interp_l_formula(model, w, formula.rhs)
                   for w in model.successors(world))
    if isinstance(formula, LSub):
        return any(interp_l_formula(model, w, formula.lhs) and not interp_l_formula(model, w, formula.rhs)
                   for w in model.predecessors(world))
    raise TypeError(f"Neznámá formule L: {formula!r}")


def signed(pol: Polarity, value: bool) -> bool:
    return value if pol is POS else not value


def interp_graph(model: KripkeModel, interpreter: NodeInterpreter, graph: Graph) -> bool:
    """Kladná hrana a <=[+] b vyžaduje R(N a, N b), záporná a <=[-] b vyžaduje R(N b, N a)."""
    for edge in graph:
        source, target = interpreter(edge.source), interpreter(edge.target)
        if edge.pol is not POS:
            source, target = target, source
        if not model.accessible(source, target):
            return False
    return True


def interp_context(model: KripkeModel, interpreter: NodeInterpreter, ctx: Context) -> bool:
    return all(signed(e.pol, interp_formula(model, interpreter(e.node), e.formula)) for e in ctx)


def sequent_holds(model: KripkeModel, interpreter: NodeInterpreter, seq: Sequent) -> bool:
    """Sekvent platí, pokud z platnosti grafu a kontextu plyne cíl s danou polaritou."""
    if not interp_graph(model, interpreter, seq.graph):
        return True
    if not interp_context(model, interpreter, seq.ctx):
        return True
    return signed(seq.pol, interp_formula(model, interpreter(seq.node), seq.formula))


def l_sequent_holds(model: KripkeModel, interpreter: NodeInterpreter, lseq: LSequent) -> bool:
    if not all(model.accessible(interpreter(a), interpreter(b)) for a, b in lseq.graph):
        return True
    if not all(interp_l_formula(model, interpreter(i.node), i.formula) for i in lseq.left):
        return True
    return any(interp_l_formula(model, interpreter(i.node), i.formula) for i in lseq.right)


# --- Výčet modelů ---

def _is_transitive(relation: FrozenSet[Tuple[int, int]]) -> bool:
    return all((a, d) in relation for (a, b) in relation for (c, d) in relation if b == c)


def enumerate_preorders(worlds: int) -> Iterator[FrozenSet[Tuple[int, int]]]:
    """Všechna předuspořádání na světech 0..worlds-1 (bez redukce izomorfismů)."""
    diagonal = [(w, w) for w in range(worlds)]
    off = [(a, b) for a in range(worlds) for b in range(worlds) if a != b]
    for mask in range(2 ** len(off)):
        relation = frozenset(diagonal + [pair for i, pair in enumerate(off) if mask >> i & 1])
        if _is_transitive(relation):
            yield relation


def upward_closed_sets(worlds: int, relation: FrozenSet[Tuple[int, int]]) -> List[FrozenSet[int]]:
    result = []
    for mask in range(2 ** worlds):
        chosen = frozenset(w for w in range(worlds) if mask >> w & 1)
        if all(b in chosen for (a, b) in relation if a in chosen):
            result.append(chosen)
    return result


def enumerate_models(max_worlds: int, atoms: Sequence[str],
                     world_cap: Optional[int] = None) -> Iterator[KripkeModel]:
    """
    Všechny modely s nejvýše max_worlds světy nad danou abecedou atomů.

    Valuace jsou monotónní z konstrukce: každý atom dostane nahoru uzavřenou množinu světů.

    Args:
        max_worlds: Maximální počet světů (>= 1)
        atoms: Abeceda atomů
        world_cap: Pevný strop počtu světů

    Returns:
        Deterministický proud modelů
    """
    if max_worlds < 1:
        raise ValueError("max_worlds musí být alespoň 1")
    if world_cap is not None and max_worlds > world_cap:
        raise ValueError(f"max_worlds {max_worlds} překračuje strop {world_cap}")
    atoms = tuple(atoms)
    for worlds in range(1, max_worlds + 1):
        for relation in enumerate_preorders(worlds):
            closed = upward_closed_sets(worlds, relation)
            for choice in itertools.product(closed, repeat=len(atoms)):
                valuation = frozenset((w, atom) for atom, ws in zip(atoms, choice) for w in ws)
                yield KripkeModel(worlds, relation, valuation, atoms)


def enumerate_interpreters(nodes: Sequence[NodeId], model: KripkeModel) -> Iterator[NodeInterpreter]:
    for assignment in itertools.product(range(model.worlds), repeat=len(nodes)):
        yield NodeInterpreter(tuple(zip(nodes, assignment)))


# --- Stopa vyhodnocení ---

def explain(model: KripkeModel, world: int, formula: Formula, indent: int = 0) -> List[str]:
    """Řádky vyhodnocení formule a jejích podformulí, každý `w<svět> <formule> = <hodnota>`."""
    value = interp_formula(model, world, formula)
    lines = [f"{'  ' * indent}w{world} {print_formula(formula)} = {str(value).lower()}"]
    if isinstance(formula, And):
        lines += explain(model, world, formula.lhs, indent + 1)
        lines += explain(model, world, formula.rhs, indent + 1)
    elif isinstance(formula, Imp):
        others = model.successors(world) if formula.pol is POS else model.predecessors(world)
        for other in others:
            lines += explain(model, other, formula.lhs, indent + 1)
            lines += explain(model, other, formula.rhs, indent + 1)
    return lines


def _trace(model: KripkeModel, interpreter: NodeInterpreter, seq: Sequent) -> List[str]:
    lines = ["graph = true"]
    for entry in seq.ctx:
        world = interpreter(entry.node)
        lines.append(f"hyp {entry.pol} {print_formula(entry.formula)} @ {entry.node} (w{world}) = true")
    lines.append(f"goal {seq.pol} {print_formula(seq.formula)} @ {seq.node} = false")
    lines += explain(model, interpreter(seq.node), seq.formula)
    return lines


def _l_trace(model: KripkeModel, interpreter: NodeInterpreter, lseq: LSequent) -> List[str]:
    lines = ["graph = true"]
    lines += [f"left {i.node} : {print_l_formula(i.formula)} (w{interpreter(i.node)}) = true"
              for i in lseq.left]
    lines += [f"right {i.node} : {print_l_formula(i.formula)} (w{interpreter(i.node)}) = false"
              for i in lseq.right]
    return lines


def _search_chunk(seq, models: List[KripkeModel], is_l: bool) -> Tuple[int, Optional[Tuple]]:
    # vrací počet ověřených dvojic a první protipříklad v pořadí výčtu
    holds = l_sequent_holds if is_l else sequent_holds
    nodes = seq.nodes()
    checked = 0
    for model in models:
        for interpreter in enumerate_interpreters(nodes, model):
            checked += 1
            if not holds(model, interpreter, seq):
                return checked, (model, interpreter)
    return checked, None


def _chunks(items: List[Any], count: int) -> List[List[Any]]:
    size = max(1, -(-len(items) // count))
    return [items[i:i + size] for i in range(0, len(items), size)]


def sequent_atoms(seq: Sequent) -> FrozenSet[str]:
    result = atoms_of(seq.formula)
    for entry in seq.ctx:
        result |= atoms_of(entry.formula)
    return result


def _l_atoms(formula: LFormula) -> FrozenSet[str]:
    if isinstance(formula, LAtom):
        return frozenset([formula.name])
    if isinstance(formula, (LImp, LSub, LAnd, LOr)):
        return _l_atoms(formula.lhs) | _l_atoms(formula.rhs)
    return frozenset()


def l_sequent_atoms(lseq: LSequent) -> FrozenSet[str]:
    result: FrozenSet[str] = frozenset()
    for item in lseq.left + lseq.right:
        result |= _l_atoms(item.formula)
    return result


class KripkeService:
    """Služba pro ověřování platnosti nad konečnými modely."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}
        self.logger = logging.getLogger(__name__)
        self.max_worlds = int(self.config.get('KRIPKE_MAX_WORLDS', 3))
        self.world_cap = int(self.config.get('KRIPKE_WORLD_CAP', 4))
        self.jobs = int(self.config.get('KRIPKE_JOBS', 1))

    def _run(self, seq, atoms: Iterable[str], max_worlds: Optional[int], jobs: Optional[int],
             is_l: bool) -> ValidationResult:
        max_worlds = self.max_worlds if max_worlds is None else max_worlds
        jobs = self.jobs if jobs is None else jobs
        needed = l_sequent_atoms(seq) if is_l else sequent_atoms(seq)
        # atomy sekventu mimo zadanou abecedu dostanou ohodnocení jako ostatní
        atoms = tuple(sorted(needed | set(atoms or ())))
        models = list(enumerate_models(max_worlds, atoms, self.world_cap))
        self.logger.debug(f"Ověřuji {len(models)} modelů, {jobs} procesů")
        if jobs > 1 and len(models) > 1:
            chunks = _chunks(models, jobs)
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                results = list(executor.map(_search_chunk, [seq] * len(chunks), chunks,
                                            [is_l] * len(chunks)))
        else:
            results = [_search_chunk(seq, models, is_l)]
        checked = 0
        for count, found in results:
            checked += count
            if found is not None:
                model, interpreter = found
                trace = _l_trace(model, interpreter, seq) if is_l else _trace(model, interpreter, seq)
                self.logger.info(f"Nalezen protipříklad s {model.worlds} světy")
                return ValidationResult(False, model, interpreter, trace, checked)
        self.logger.info(f"Sekvent platí ve všech {checked} dvojicích model/interpretace")
        return ValidationResult(True, checked=checked)

    def validate(self, seq: Sequent, max_worlds: Optional[int] = None,
                 atoms: Optional[Iterable[str]] = None, jobs: Optional[int] = None) -> ValidationResult:
        """
        Ověří sekvent DIL ve všech modelech do max_worlds světů.

        Args:
            seq: Sekvent
            max_worlds: Maximální počet světů
            atoms: Další atomy abecedy (atomy sekventu se přidají vždy)
            jobs: Počet procesů pro paralelní vyhodnocení

        Returns:
            ValidationResult - platnost, nebo první protipříklad v pořadí výčtu
        """
        return self._run(seq, atoms, max_worlds, jobs, False)

    def validate_l(self, lseq: LSequent, max_worlds: Optional[int] = None,
                   atoms: Optional[Iterable[str]] = None, jobs: Optional[int] = None) -> ValidationResult:
        return self._run(lseq, atoms, max_worlds, jobs, True)


def validate(seq: Sequent, max_worlds: int = 3, atoms: Optional[Iterable[str]] = None,
             jobs: int = 1) -> ValidationResult:
    return KripkeService().validate(seq, max_worlds, atoms, jobs)
