# services/syntax_service.py - Parser a tiskárna povrchové syntaxe

import re
from typing import Callable, List, NamedTuple, Optional, Set, Tuple

from models.formula_model import (And, Atom, Formula, Imp, LAnd, LAtom, LBot, LFormula,
                                  LImp, LOr, LSub, LTop, Polarity, Unit)
from models.sequent_model import (Context, Edge, Graph, Hypothesis, LLabelled, LSequent,
                                  Sequent)
from models.term_model import (CoPair, Cut, CutAnnotation, In, Lam, Pair, Term, Triv, Var)

TERM_KEYWORDS = {"triv", "in1", "in2", "nu"}
L_KEYWORDS = {"top", "bot"}

_IDENT = r"[A-Za-z_][A-Za-z0-9_']*(?:%[0-9]+)?"

_DIL_TOKENS = [
    ("WS", r"[ \t\r\n]+"),
    ("IMP", r"->\[[+-]\]"),
    ("AND", r"/\\\[[+-]\]"),
    ("EDGE", r"<=\[[+-]\]"),
    ("UNIT", r"<[+-]>"),
    ("TURNSTILE", r"\|-"),
    ("IDENT", _IDENT),
    ("PUNCT", r"[()\[\],.;:@\\*<>+\-]"),
]

_L_TOKENS = [
    ("WS", r"[ \t\r\n]+"),
    ("TURNSTILE", r"\|-"),
    ("LIMP", r"=>"),
    ("LSUB", r"-<"),
    ("IDENT", _IDENT),
    ("PUNCT", r"[()\[\],.:&|]"),
]


class ParseError(ValueError):
    """Syntaktická chyba s pozicí a množinou očekávaných tokenů."""

    def __init__(self, message: str, line: int, column: int, expected: Optional[Set[str]] = None):
        self.line = line
        self.column = column
        self.expected = set(expected or ())
        detail = f" (očekáváno: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{line}:{column}: {message}{detail}")


class Token(NamedTuple):
    kind: str
    value: str
    line: int
    column: int


def _compile(table: List[Tuple[str, str]]) -> "re.Pattern":
    return re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in table))


_DIL_RE = _compile(_DIL_TOKENS)
_L_RE = _compile(_L_TOKENS)


def _tokenize(text: str, regex: "re.Pattern") -> List[Token]:
    tokens: List[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        match = regex.match(text, pos)
        if match is None:
            raise ParseError(f"neočekávaný znak {text[pos]!r}", line, pos - line_start + 1)
        kind = match.lastgroup
        value = match.group()
        if kind != "WS":
            # interpunkce vystupuje jako token vlastního druhu
            tokens.append(Token(value if kind == "PUNCT" else kind, value, line, pos - line_start + 1))
        for offset, char in enumerate(value):
            if char == "\n":
                line += 1
                line_start = pos + offset + 1
        pos = match.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    """Rekurzivní sestupný parser nad seznamem tokenů."""

    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, offset: int = 0) -> Token:
        index = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != "EOF":
            self.pos += 1
        return token

    def error(self, expected: Set[str]) -> ParseError:
        token = self.peek()
        found = token.value if token.kind != "EOF" else "konec vstupu"
        return ParseError(f"neočekávaný token {found!r}", token.line, token.column, expected)

    def expect(self, kind: str) -> Token:
        if self.peek().kind != kind:
            raise self.error({kind})
        return self.advance()

    def accept(self, kind: str) -> Optional[Token]:
        if self.peek().kind == kind:
            return self.advance()
        return None

    def ident(self, reserved: Set[str] = frozenset()) -> str:
        token = self.peek()
        if token.kind != "IDENT" or token.value in reserved:
            raise self.error({"IDENT"})
        return self.advance().value

    def atom_name(self) -> str:
        # atomy jsou identifikátory malými písmeny
        token = self.advance()
        if not token.value.islower():
            raise ParseError(f"atom musí být zapsán malými písmeny: {token.value!r}",
                             token.line, token.column, {"IDENT"})
        return token.value

    def finish(self) -> None:
        if self.peek().kind != "EOF":
            raise self.error({"EOF"})

    # --- DIL ---

    def polarity(self) -> Polarity:
        token = self.peek()
        if token.kind in ("+", "-"):
            self.advance()
            return Polarity.from_symbol(token.kind)
        raise self.error({"+", "-"})

    def formula(self) -> Formula:
        lhs = self.conjunction()
        token = self.accept("IMP")
        if token is not None:
            return Imp(Polarity.from_symbol(token.value[3]), lhs, self.formula())
        return lhs

    def conjunction(self) -> Formula:
        result = self.formula_atom()
        while self.peek().kind == "AND":
            token = self.advance()
            result = And(Polarity.from_symbol(token.value[3]), result, self.formula_atom())
        return result

    def formula_atom(self) -> Formula:
        token = self.peek()
        if token.kind == "UNIT":
            self.advance()
            return Unit(Polarity.from_symbol(token.value[1]))
        if token.kind == "IDENT":
            return Atom(self.atom_name())
        if token.kind == "(":
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        raise self.error({"UNIT", "IDENT", "("})

    def term(self) -> Term:
        token = self.peek()
        if token.kind == "\\":
            self.advance()
            var = self.ident(TERM_KEYWORDS)
            self.expect(".")
            return Lam(var, self.term())
        if token.kind == "IDENT" and token.value == "nu":
            self.advance()
            var = self.ident(TERM_KEYWORDS)
            self.expect(".")
            left = self.term()
            self.expect("*")
            right = self.term()
            annotation = None
            if self.accept(":"):
                self.expect("[")
                cut_formula = self.formula()
                self.expect("@")
                node = self.ident()
                self.expect("]")
                annotation = CutAnnotation(cut_formula, node)
            return Cut(var, left, annotation, right)
        if token.kind == "IDENT" and token.value in ("in1", "in2"):
            self.advance()
            return In(int(token.value[2]), self.term())
        return self.term_atom()

    def term_atom(self) -> Term:
        token = self.peek()
        if token.kind == "IDENT" and token.value == "triv":
            self.advance()
            return Triv()
        if token.kind == "IDENT" and token.value not in TERM_KEYWORDS:
            return Var(self.advance().value)
        if token.kind == "(":
            self.advance()
            first = self.term()
            if self.accept(","):
                second = self.term()
                self.expect(")")
                return Pair(first, second)
            self.expect(")")
            return first
        if token.kind == "<":
            self.advance()
            first = self.term()
            self.expect(",")
            second = self.term()
            self.expect(">")
            return CoPair(first, second)
        raise self.error({"IDENT", "triv", "(", "<", "\\", "nu", "in1", "in2"})

    def graph(self, terminator: str) -> Graph:
        if self.accept(".") or self.peek().kind == terminator:
            return Graph()
        edges = [self.edge()]
        while self.accept(","):
            edges.append(self.edge())
        return Graph(tuple(edges))

    def edge(self) -> Edge:
        source = self.ident()
        token = self.expect("EDGE")
        return Edge(source, Polarity.from_symbol(token.value[3]), self.ident())

    def context(self, terminator: str) -> Context:
        if self.accept(".") or self.peek().kind == terminator:
            return Context()
        entries = [self.hypothesis()]
        while self.accept(","):
            entries.append(self.hypothesis())
        return Context(tuple(entries))

    def hypothesis(self) -> Hypothesis:
        var = None
        if self.peek().kind == "IDENT":
            var = self.ident(TERM_KEYWORDS)
            self.expect(":")
        pol = self.polarity()
        formula = self.formula()
        self.expect("@")
        return Hypothesis(pol, formula, self.ident(), var)

    def sequent(self) -> Sequent:
        graph = self.graph(";")
        self.expect(";")
        ctx = self.context("TURNSTILE")
        self.expect("TURNSTILE")
        pol = self.polarity()
        formula = self.formula()
        self.expect("@")
        return Sequent(graph, ctx, pol, formula, self.ident())

    # --- L ---

    def l_formula(self) -> LFormula:
        lhs = self.l_disjunction()
        if self.accept("LIMP"):
            return LImp(lhs, self.l_formula())
        if self.accept("LSUB"):
            return LSub(lhs, self.l_formula())
        return lhs

    def l_disjunction(self) -> LFormula:
        result = self.l_conjunction()
        while self.accept("|"):
            result = LOr(result, self.l_conjunction())
        return result

    def l_conjunction(self) -> LFormula:
        result = self.l_atom()
        while self.accept("&"):
            result = LAnd(result, self.l_atom())
        return result

    def l_atom(self) -> LFormula:
        token = self.peek()
        if token.kind == "IDENT":
            if token.value == "top":
                self.advance()
                return LTop()
            if token.value == "bot":
                self.advance()
                return LBot()
            return LAtom(self.atom_name())
        if token.kind == "(":
            self.advance()
            inner = self.l_formula()
            self.expect(")")
            return inner
        raise self.error({"top", "bot", "IDENT", "("})

    def l_labelled_list(self, terminator: str) -> Tuple[LLabelled, ...]:
        if self.accept(".") or self.peek().kind == terminator:
            return ()
        items = [self.l_labelled()]
        while self.accept(","):
            items.append(self.l_labelled())
        return tuple(items)

    def l_labelled(self) -> LLabelled:
        node = self.ident(L_KEYWORDS)
        self.expect(":")
        return LLabelled(node, self.l_formula())

    def l_graph(self) -> Tuple[Tuple[str, str], ...]:
        if self.accept(".") or self.peek().kind == "]":
            return ()
        pairs = [self.l_pair()]
        while self.accept(","):
            pairs.append(self.l_pair())
        return tuple(pairs)

    def l_pair(self) -> Tuple[str, str]:
        self.expect("(")
        first = self.ident()
        self.expect(",")
        second = self.ident()
        self.expect(")")
        return (first, second)

    def l_sequent(self) -> LSequent:
        left = self.l_labelled_list("TURNSTILE")
        self.expect("TURNSTILE")
        self.expect("[")
        graph = self.l_graph()
        self.expect("]")
        right = self.l_labelled_list("EOF")
        return LSequent(left, graph, right)


def _run(text: str, regex: "re.Pattern", entry: Callable[[_Parser], object]):
    parser = _Parser(_tokenize(text, regex))
    result = entry(parser)
    parser.finish()
    return result


def parse_formula(text: str) -> Formula:
    return _run(text, _DIL_RE, _Parser.formula)


def parse_term(text: str) -> Term:
    return _run(text, _DIL_RE, _Parser.term)


def parse_graph(text: str) -> Graph:
    return _run(text, _DIL_RE, lambda p: p.graph("EOF"))


def parse_context(text: str) -> Context:
    return _run(text, _DIL_RE, lambda p: p.context("EOF"))


def parse_sequent(text: str) -> Sequent:
    return _run(text, _DIL_RE, _Parser.sequent)


def parse_l_formula(text: str) -> LFormula:
    return _run(text, _L_RE, _Parser.l_formula)


def parse_l_sequent(text: str) -> LSequent:
    return _run(text, _L_RE, _Parser.l_sequent)


def parse_goal(text: str) -> Tuple[Sequent, Term]:
    """
    Načte soubor s cílem: řádek se sekventem a pod ním řádek `|- term`.

    Args:
        text: Obsah souboru

    Returns:
        Dvojici (sekvent, term)
    """
    def goal(parser: _Parser) -> Tuple[Sequent, Term]:
        sequent = parser.sequent()
        parser.expect("TURNSTILE")
        return sequent, parser.term()

    return _run(text, _DIL_RE, goal)


# --- Tisk ---

def print_formula(formula: Formula, level: int = 0) -> str:
    """
    Vytiskne formuli v povrchové syntaxi s minimem závorek.

    Args:
        formula: Formule
        level: 0 = libovolná formule, 1 = bez implikace, 2 = jen atomická

    Returns:
        Textová podoba formule
    """
    if isinstance(formula, Atom):
        return formula.name
    if isinstance(formula, Unit):
        return f"<{formula.pol.value}>"
    if isinstance(formula, Imp):
        text = f"{print_formula(formula.lhs, 1)} ->[{formula.pol.value}] {print_formula(formula.rhs, 0)}"
        return f"({text})" if level > 0 else text
    text = f"{print_formula(formula.lhs, 1)} /\\[{formula.pol.value}] {print_formula(formula.rhs, 2)}"
    return f"({text})" if level > 1 else text


def _print_operand(term: Term) -> str:
    # binder ve složce řezu by pohltil zbytek zápisu
    text = print_term(term)
    if isinstance(term, (Lam, Cut)):
        return f"({text})"
    return text


def print_term(term: Term) -> str:
    if isinstance(term, Var):
        return term.name
    if isinstance(term, Triv):
        return "triv"
    if isinstance(term, Pair):
        return f"({print_term(term.fst)}, {print_term(term.snd)})"
    if isinstance(term, CoPair):
        return f"<{print_term(term.fst)}, {print_term(term.snd)}>"
    if isinstance(term, In):
        body = print_term(term.body)
        if isinstance(term.body, (Lam, Cut, In)):
            body = f"({body})"
        return f"in{term.index} {body}"
    if isinstance(term, Lam):
        return f"\\{term.var}. {print_term(term.body)}"
    text = f"nu {term.var} . {_print_operand(term.left)} * {_print_operand(term.right)}"
    if term.annotation is not None:
        text += f" : [{print_formula(term.annotation.formula)} @ {term.annotation.node}]"
    return text


def print_graph(graph: Graph) -> str:
    if not graph.edges:
        return "."
    return ", ".join(f"{e.source} <=[{e.pol.value}] {e.target}" for e in graph.edges)


def print_hypothesis(entry: Hypothesis) -> str:
    text = f"{entry.pol.value} {print_formula(entry.formula)} @ {entry.node}"
    return f"{entry.var} : {text}" if entry.var is not None else text


def print_context(ctx: Context) -> str:
    if not ctx.entries:
        return "."
    return ", ".join(print_hypothesis(entry) for entry in ctx.entries)


def print_sequent(seq: Sequent) -> str:
    return (f"{print_graph(seq.graph)} ; {print_context(seq.ctx)} |- "
            f"{seq.pol.value} {print_formula(seq.formula)} @ {seq.node}")


def print_l_formula(formula: LFormula, level: int = 0) -> str:
    if isinstance(formula, LTop):
        return "top"
    if isinstance(formula, LBot):
        return "bot"
    if isinstance(formula, LAtom):
        return formula.name
    if isinstance(formula, (LImp, LSub)):
        op = "=>" if isinstance(formula, LImp) else "-<"
        text = f"{print_l_formula(formula.lhs, 1)} {op} {print_l_formula(formula.rhs, 0)}"
        return f"({text})" if level > 0 else text
    if isinstance(formula, LOr):
        text = f"{print_l_formula(formula.lhs, 1)} | {print_l_formula(formula.rhs, 2)}"
        return f"({text})" if level > 1 else text
    text = f"{print_l_formula(formula.lhs, 2)} & {print_l_formula(formula.rhs, 3)}"
    return f"({text})" if level > 2 else text


def print_l_labelled_list(items: Tuple[LLabelled, ...]) -> str:
    if not items:
        return "."
    return ", ".join(f"{item.node} : {print_l_formula(item.formula)}" for item in items)


def print_l_sequent(seq: LSequent) -> str:
    graph = ", ".join(f"({a}, {b})" for a, b in seq.graph) if seq.graph else "."
    return f"{print_l_labelled_list(seq.left)} |-[{graph}] {print_l_labelled_list(seq.right)}"
