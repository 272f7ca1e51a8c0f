# contexts/goal_context.py - Kontext pro načítání cílů, termů a sekventů ze souborů

import os
from typing import Tuple

from models.sequent_model import LSequent, Sequent
from models.term_model import Term
from services.syntax_service import parse_goal, parse_l_sequent, parse_sequent, parse_term


class GoalContext:
    """Kontext pro práci se soubory cílů a sekventů."""

    def __init__(self, base_dir: str = "."):
        self.base_dir = base_dir

    def _path(self, path: str) -> str:
        if os.path.isabs(path):
            return path
        return os.path.join(self.base_dir, path)

    def read(self, path: str) -> str:
        """Přečte celý soubor jako UTF-8 text."""
        with open(self._path(path), "r", encoding="utf-8") as f:
            return f.read()

    def source(self, value: str) -> str:
        """
        Vrátí text sekventu zadaného přímo nebo cestou k souboru.

        Args:
            value: Text sekventu nebo cesta k existujícímu souboru

        Returns:
            Text k parsování
        """
        if os.path.isfile(self._path(value)):
            return self.read(value)
        return value

    def load_goal(self, path: str) -> Tuple[Sequent, Term]:
        return parse_goal(self.read(path))

    def load_term(self, path: str) -> Term:
        """Načte term; soubor může být i celý cíl, pak se vezme jeho term."""
        text = self.read(path)
        if "|-" in text:
            return parse_goal(text)[1]
        return parse_term(text)

    def load_sequent(self, value: str) -> Sequent:
        return parse_sequent(self.source(value))

    def load_l_sequent(self, value: str) -> LSequent:
        return parse_l_sequent(self.source(value))
