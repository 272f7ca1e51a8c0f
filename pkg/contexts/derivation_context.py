# contexts/derivation_context.py - Kontext pro ukládání a načítání odvození ve stromovém formátu

import json
import os
import re
from typing import Any, Dict, List, Union

from models.derivation_model import DIL_RULES, L_RULES, DILDerivation, LDerivation
from models.formula_model import Atom, And, Imp, Unit
from services.syntax_service import (parse_formula, parse_l_sequent, parse_sequent, print_formula,
                                     print_l_sequent, print_sequent)

# Formát uzlu:
#   (rule <jméno> :conclusion "<sekvent>" :witness (<klíč> <hodnota> ...) :children (<uzel> ...))
# Hodnoty svědků jsou celá čísla, řetězce v uvozovkách nebo seznamy v závorkách.
# Svědek `formula` je formule DIL zapsaná jako řetězec.

_TOKEN_RE = re.compile(r'\s*(?:(?P<open>\()|(?P<close>\))|(?P<string>"(?:[^"\\]|\\.)*")'
                       r'|(?P<comment>;[^\n]*)|(?P<atom>[^\s()";]+))')

SExpr = Union[str, int, List[Any]]


class DerivationFormatError(ValueError):
    """Soubor s odvozením neodpovídá stromovému formátu."""


class _Quoted(str):
    """Řetězec, který byl v souboru v uvozovkách (na rozdíl od symbolu)."""


def _tokenize(text: str) -> List[Union[str, _Quoted]]:
    tokens: List[Union[str, _Quoted]] = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = _TOKEN_RE.match(text, position)
        if match is None or match.end() == position:
            raise DerivationFormatError(f"Neočekávaný znak na pozici {position}")
        position = match.end()
        if match.group("open"):
            tokens.append("(")
        elif match.group("close"):
            tokens.append(")")
        elif match.group("string"):
            tokens.append(_Quoted(json.loads(match.group("string"))))
        elif match.group("atom"):
            tokens.append(match.group("atom"))
    return tokens


def _read(tokens: List[Union[str, _Quoted]], position: int):
    if position >= len(tokens):
        raise DerivationFormatError("Neočekávaný konec souboru")
    token = tokens[position]
    if isinstance(token, _Quoted):
        return str(token), position + 1
    if token == "(":
        items = []
        position += 1
        while position < len(tokens) and not (tokens[position] == ")"
                                              and not isinstance(tokens[position], _Quoted)):
            item, position = _read(tokens, position)
            items.append(item)
        if position >= len(tokens):
            raise DerivationFormatError("Chybí uzavírací závorka")
        return items, position + 1
    if token == ")":
        raise DerivationFormatError("Nadbytečná uzavírací závorka")
    if re.fullmatch(r"-?[0-9]+", token):
        return int(token), position + 1
    return token, position + 1


def read_sexpr(text: str) -> SExpr:
    """Načte jediný s-výraz z textu."""
    tokens = _tokenize(text)
    value, position = _read(tokens, 0)
    if position != len(tokens):
        raise DerivationFormatError("Za odvozením následuje další text")
    return value


def _fields(node: SExpr) -> Dict[str, Any]:
    if not isinstance(node, list) or len(node) < 2 or node[0] != "rule":
        raise DerivationFormatError("Uzel odvození musí začínat `(rule <jméno>`")
    fields: Dict[str, Any] = {"rule": node[1]}
    rest = node[2:]
    if len(rest) % 2:
        raise DerivationFormatError(f"Lichý počet položek v uzlu {node[1]}")
    for key, value in zip(rest[::2], rest[1::2]):
        if not isinstance(key, str) or not key.startswith(":"):
            raise DerivationFormatError(f"Očekáván klíč, nalezeno {key!r}")
        fields[key[1:]] = value
    if "conclusion" not in fields:
        raise DerivationFormatError(f"Uzel {node[1]} nemá :conclusion")
    return fields


def _witnesses(raw: Any, dil: bool) -> Dict[str, Any]:
    raw = raw or []
    if not isinstance(raw, list) or len(raw) % 2:
        raise DerivationFormatError("Svědci musí být seznam dvojic klíč hodnota")
    result: Dict[str, Any] = {}
    for key, value in zip(raw[::2], raw[1::2]):
        if dil and key == "formula":
            value = parse_formula(value)
        result[str(key)] = value
    return result


def _dil_from(node: SExpr) -> DILDerivation:
    fields = _fields(node)
    if fields["rule"] not in DIL_RULES:
        raise DerivationFormatError(f"Neznámé pravidlo DIL: {fields['rule']}")
    return DILDerivation(fields["rule"], parse_sequent(fields["conclusion"]),
                         [_dil_from(child) for child in fields.get("children") or []],
                         _witnesses(fields.get("witness"), True))


def _l_from(node: SExpr) -> LDerivation:
    fields = _fields(node)
    if fields["rule"] not in L_RULES:
        raise DerivationFormatError(f"Neznámé pravidlo L: {fields['rule']}")
    return LDerivation(fields["rule"], parse_l_sequent(fields["conclusion"]),
                       [_l_from(child) for child in fields.get("children") or []],
                       _witnesses(fields.get("witness"), False))


def _value(value: Any) -> str:
    if isinstance(value, (Atom, Unit, Imp, And)):
        return json.dumps(print_formula(value), ensure_ascii=False)
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (list, tuple)):
        return "(" + " ".join(_value(v) for v in value) + ")"
    return json.dumps(str(value), ensure_ascii=False)


def _dump(node: Union[DILDerivation, LDerivation], indent: int) -> str:
    pad = "  " * indent
    conclusion = (print_sequent(node.conclusion) if isinstance(node, DILDerivation)
                  else print_l_sequent(node.conclusion))
    witness = " ".join(f"{key} {_value(value)}" for key, value in sorted(node.witnesses.items()))
    lines = [f"{pad}(rule {node.rule}",
             f"{pad}  :conclusion {json.dumps(conclusion, ensure_ascii=False)}",
             f"{pad}  :witness ({witness})"]
    if node.children:
        lines.append(f"{pad}  :children (")
        lines += [_dump(child, indent + 2) for child in node.children]
        lines[-1] += "))"
    else:
        lines.append(f"{pad}  :children ())")
    return "\n".join(lines)


def dumps_derivation(d: Union[DILDerivation, LDerivation]) -> str:
    """Převede odvození (DIL i L) na text stromového formátu."""
    return _dump(d, 0) + "\n"


def loads_dil(text: str) -> DILDerivation:
    return _dil_from(read_sexpr(text))


def loads_l(text: str) -> LDerivation:
    return _l_from(read_sexpr(text))


class DerivationContext:
    """Kontext pro práci se soubory odvození."""

    def __init__(self, base_dir: str = "."):
        self.base_dir = base_dir

    def _path(self, path: str) -> str:
        return path if os.path.isabs(path) else os.path.join(self.base_dir, path)

    def _read(self, path: str) -> str:
        with open(self._path(path), "r", encoding="utf-8") as f:
            return f.read()

    def load_dil(self, path: str) -> DILDerivation:
        """
        Načte odvození DIL ze souboru.

        Args:
            path: Cesta k souboru

        Returns:
            DILDerivation

        Raises:
            DerivationFormatError: Soubor nemá stromový formát
            ParseError: Závěr nebo formule svědka nejde naparsovat
        """
        return loads_dil(self._read(path))

    def load_l(self, path: str) -> LDerivation:
        return loads_l(self._read(path))

    def save(self, d: Union[DILDerivation, LDerivation], path: str) -> str:
        """Uloží odvození a vrátí absolutní cestu k souboru."""
        target = self._path(path)
        directory = os.path.dirname(target)
        if directory and not os.path.exists(directory):
            os.makedirs(directory)
        with open(target, "w", encoding="utf-8") as f:
            f.write(dumps_derivation(d))
        return os.path.abspath(target)
