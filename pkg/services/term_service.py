# services/term_service.py - Substituce, volné proměnné, alfa-ekvivalence a čerstvá jména

import re
from typing import Dict, FrozenSet, Iterable, Optional, Set, Union

from models.sequent_model import Context, Edge, Graph, Hypothesis, NodeId, Sequent
from models.term_model import (CoPair, Cut, CutAnnotation, In, Lam, Pair, Term, Triv, Var,
                               children, replace_child)

_FRESH_RE = re.compile(r"^(?P<prefix>.*)%(?P<counter>[0-9]+)$")


def fresh_name(prefix: str, used: Iterable[str]) -> str:
    """
    Vytvoří jméno tvaru prefix%k, kde k je nad všemi použitými čítači.

    Args:
        prefix: Základ jména ("x" pro proměnné, "n" pro uzly)
        used: Již použitá jména

    Returns:
        Jméno, které v `used` není
    """
    counters = [-1]
    for name in used:
        match = _FRESH_RE.match(name)
        if match and match.group("prefix") == prefix:
            counters.append(int(match.group("counter")))
    return f"{prefix}%{max(counters) + 1}"


def fresh_var(used: Iterable[str]) -> str:
    return fresh_name("x", used)


def fresh_node(used: Iterable[NodeId]) -> NodeId:
    return fresh_name("n", used)


def free_vars(term: Term) -> FrozenSet[str]:
    if isinstance(term, Var):
        return frozenset([term.name])
    if isinstance(term, Lam):
        return free_vars(term.body) - {term.var}
    if isinstance(term, Cut):
        return (free_vars(term.left) | free_vars(term.right)) - {term.var}
    result: FrozenSet[str] = frozenset()
    for child in children(term):
        result |= free_vars(child)
    return result


def all_vars(term: Term) -> Set[str]:
    """Všechna jména proměnných v termu, volná i vázaná."""
    names: Set[str] = set()
    if isinstance(term, Var):
        names.add(term.name)
    if isinstance(term, (Lam, Cut)):
        names.add(term.var)
    for child in children(term):
        names |= all_vars(child)
    return names


def subst_term(term: Term, var: str, value: Term) -> Term:
    """
    Substituce [value/var]term bez zachycení proměnných.

    Vázané proměnné, které by zachytily volnou proměnnou dosazovaného termu,
    se přejmenují na čerstvá jména.
    """
    if isinstance(term, Var):
        return value if term.name == var else term
    if isinstance(term, Triv):
        return term
    if isinstance(term, Pair):
        return Pair(subst_term(term.fst, var, value), subst_term(term.snd, var, value))
    if isinstance(term, CoPair):
        return CoPair(subst_term(term.fst, var, value), subst_term(term.snd, var, value))
    if isinstance(term, In):
        return In(term.index, subst_term(term.body, var, value))
    if isinstance(term, Lam):
        if term.var == var or var not in free_vars(term.body):
            return term
        binder, body = _avoid_capture(term.var, [term.body], var, value)
        return Lam(binder, subst_term(body[0], var, value))
    if isinstance(term, Cut):
        if term.var == var or var not in (free_vars(term.left) | free_vars(term.right)):
            return term
        binder, (left, right) = _avoid_capture(term.var, [term.left, term.right], var, value)
        return Cut(binder, subst_term(left, var, value), term.annotation,
                   subst_term(right, var, value))
    raise TypeError(f"Neznámý term: {term!r}")


def _avoid_capture(binder: str, scope: list, var: str, value: Term):
    if binder not in free_vars(value):
        return binder, scope
    used = set(free_vars(value)) | {var}
    for part in scope:
        used |= all_vars(part)
    renamed = fresh_var(used)
    return renamed, [subst_term(part, binder, Var(renamed)) for part in scope]


def rename_binder(term: Term, new_name: str) -> Term:
    """Přejmenuje vazbu na vrcholu termu (Lam nebo Cut) na zadané čerstvé jméno."""
    if isinstance(term, Lam):
        return Lam(new_name, subst_term(term.body, term.var, Var(new_name)))
    if isinstance(term, Cut):
        return Cut(new_name, subst_term(term.left, term.var, Var(new_name)), term.annotation,
                   subst_term(term.right, term.var, Var(new_name)))
    return term


def alpha_eq(first: Term, second: Term, annotations: bool = False) -> bool:
    """
    Rozhodne alfa-ekvivalenci dvou termů.

    Args:
        first: První term
        second: Druhý term
        annotations: Porovnávat i anotace řezů (výchozí je nepovažovat je za součást termu)

    Returns:
        True, pokud se termy liší nejvýše jmény vázaných proměnných
    """
    return _alpha(first, second, {}, {}, 0, annotations)


def _alpha(a: Term, b: Term, env_a: Dict[str, int], env_b: Dict[str, int], depth: int,
           annotations: bool) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Var):
        level_a, level_b = env_a.get(a.name), env_b.get(b.name)
        if level_a is None and level_b is None:
            return a.name == b.name
        return level_a == level_b
    if isinstance(a, Triv):
        return True
    if isinstance(a, In) and a.index != b.index:
        return False
    if isinstance(a, (Lam, Cut)):
        if isinstance(a, Cut) and annotations and a.annotation != b.annotation:
            return False
        env_a = {**env_a, a.var: depth}
        env_b = {**env_b, b.var: depth}
        depth += 1
    return all(_alpha(x, y, env_a, env_b, depth, annotations)
               for x, y in zip(children(a), children(b)))


# --- Uzly ---

NodeSubject = Union[NodeId, Edge, Graph, Hypothesis, Context, Sequent, Term]


def subst_node(target: NodeId, replaced: NodeId, subject: NodeSubject) -> NodeSubject:
    """
    Substituce uzlů [target/replaced] nad uzlem, grafem, kontextem, sekventem či termem.

    Args:
        target: Nový uzel
        replaced: Nahrazovaný uzel
        subject: Objekt, ve kterém se nahrazuje

    Returns:
        Objekt stejného druhu
    """
    if isinstance(subject, str):
        return target if subject == replaced else subject
    if isinstance(subject, Edge):
        return Edge(subst_node(target, replaced, subject.source), subject.pol,
                    subst_node(target, replaced, subject.target))
    if isinstance(subject, Graph):
        return Graph(tuple(subst_node(target, replaced, e) for e in subject.edges))
    if isinstance(subject, Hypothesis):
        return Hypothesis(subject.pol, subject.formula,
                          subst_node(target, replaced, subject.node), subject.var)
    if isinstance(subject, Context):
        return Context(tuple(subst_node(target, replaced, h) for h in subject.entries))
    if isinstance(subject, Sequent):
        return Sequent(subst_node(target, replaced, subject.graph),
                       subst_node(target, replaced, subject.ctx), subject.pol,
                       subject.formula, subst_node(target, replaced, subject.node))
    if isinstance(subject, Cut):
        annotation = subject.annotation
        if annotation is not None:
            annotation = CutAnnotation(annotation.formula,
                                       subst_node(target, replaced, annotation.node))
        return Cut(subject.var, subst_node(target, replaced, subject.left), annotation,
                   subst_node(target, replaced, subject.right))
    if isinstance(subject, (Var, Triv)):
        return subject
    if isinstance(subject, (Pair, CoPair, In, Lam)):
        result = subject
        for index, child in enumerate(children(subject)):
            result = replace_child(result, index, subst_node(target, replaced, child))
        return result
    raise TypeError(f"Substituci uzlů nelze provést nad {subject!r}")


def nodes_of(subject: Union[Graph, Context, Sequent]) -> Set[NodeId]:
    """Přesná množina uzlů vyskytujících se v grafu, kontextu nebo sekventu."""
    return set(subject.nodes())


def ordered_nodes(*groups: Iterable[NodeId], extra: Optional[Iterable[NodeId]] = None) -> list:
    """Sjednocení skupin uzlů v pořadí prvního výskytu."""
    result: list = []
    for group in list(groups) + [extra or ()]:
        for node in group:
            if node not in result:
                result.append(node)
    return result
