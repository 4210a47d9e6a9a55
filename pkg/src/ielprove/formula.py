"""Propositional formulas for intuitionistic epistemic logic.

Syntax trees over atoms, falsum, conjunction, disjunction, implication and
the epistemic modality K, with an ASCII concrete syntax.  Negation is not a
constructor: ``~A`` is parsed and printed as sugar for ``A -> false``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable


_NAME_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


class Formula:
    """Base class; concrete shapes are Var, Bottom, And, Or, Imp and K."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Formula):
    name: str

    def __post_init__(self) -> None:
        if not _NAME_RE.match(self.name):
            raise ValueError(f"bad variable name: {self.name!r}")


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class K(Formula):
    body: Formula


BOT = Bottom()


def neg(f: Formula) -> Formula:
    """~f, i.e. Imp(f, false)."""
    return Imp(f, BOT)


# ---------------------------------------------------------------------------
# Structural measures
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def connective_count(f: Formula) -> int:
    """Number of occurrences of &, |, -> and K (atoms and false count 0)."""
    if isinstance(f, (Var, Bottom)):
        return 0
    if isinstance(f, K):
        return 1 + connective_count(f.body)
    return 1 + connective_count(f.left) + connective_count(f.right)


@lru_cache(maxsize=None)
def subformulas(f: Formula) -> frozenset[Formula]:
    """All subtrees of f, including f itself."""
    if isinstance(f, (Var, Bottom)):
        return frozenset((f,))
    if isinstance(f, K):
        return subformulas(f.body) | {f}
    return subformulas(f.left) | subformulas(f.right) | {f}


# ---------------------------------------------------------------------------
# Rendering (minimal parentheses; render is injective and parse(render(f)) = f)
# ---------------------------------------------------------------------------

_IMP, _OR, _AND, _UNARY, _ATOM = 1, 2, 3, 4, 5


@lru_cache(maxsize=None)
def _rend(f: Formula) -> tuple[str, int]:
    if isinstance(f, Var):
        return f.name, _ATOM
    if isinstance(f, Bottom):
        return "false", _ATOM
    if isinstance(f, Imp) and f.right == BOT:
        body, lvl = _rend(f.left)
        return ("~" + body if lvl >= _UNARY else "~(" + body + ")"), _UNARY
    if isinstance(f, K):
        body, lvl = _rend(f.body)
        return ("K " + body if lvl >= _UNARY else "K(" + body + ")"), _UNARY
    if isinstance(f, And):
        return _at(f.left, _AND) + " & " + _at(f.right, _AND + 1), _AND
    if isinstance(f, Or):
        return _at(f.left, _OR) + " | " + _at(f.right, _OR + 1), _OR
    if isinstance(f, Imp):
        return _at(f.left, _IMP + 1) + " -> " + _at(f.right, _IMP), _IMP
    raise TypeError(f"not a formula: {f!r}")


def _at(f: Formula, min_level: int) -> str:
    text, lvl = _rend(f)
    return text if lvl >= min_level else "(" + text + ")"


def render(f: Formula) -> str:
    return _rend(f)[0]


def sorted_formulas(fs: Iterable[Formula]) -> list[Formula]:
    """The fixed total order used wherever a canonical choice is needed."""
    return sorted(fs, key=render)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

class FormulaSyntaxError(ValueError):
    """Malformed concrete syntax; position is a 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(
    r"""\s*(?:
          (?P<bot>false\b|_\|_)
        | (?P<k>K)
        | (?P<var>[a-z][a-zA-Z0-9_]*)
        | (?P<imp>->)
        | (?P<and>&)
        | (?P<or>\|)
        | (?P<neg>~)
        | (?P<lp>\()
        | (?P<rp>\))
        )""",
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[bad]!r}", bad)
        tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str) -> FormulaSyntaxError:
        pos = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        return FormulaSyntaxError(message, pos)

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek() == "imp":
            self.next()
            return Imp(left, self.imp())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "or":
            self.next()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "and":
            self.next()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind = self.peek()
        if kind == "k":
            self.next()
            return K(self.unary())
        if kind == "neg":
            self.next()
            return Imp(self.unary(), BOT)
        return self.atom()

    def atom(self) -> Formula:
        kind = self.peek()
        if kind == "var":
            return Var(self.next()[1])
        if kind == "bot":
            self.next()
            return BOT
        if kind == "lp":
            self.next()
            f = self.imp()
            if self.peek() != "rp":
                raise self.fail("expected ')'")
            self.next()
            return f
        raise self.fail("expected a formula")


def parse(text: str) -> Formula:
    """Parse the ASCII syntax: atoms, `false`/`_|_`, prefix `K` and `~`,
    then `&`, then `|`, then right-associative `->`; parentheses allowed."""
    parser = _Parser(text)
    if not parser.tokens:
        raise FormulaSyntaxError("empty input", 0)
    f = parser.imp()
    if parser.i != len(parser.tokens):
        raise parser.fail("trailing input")
    return f


# ---------------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------------

def formula_to_json(f: Formula) -> dict:
    if isinstance(f, Var):
        return {"op": "var", "name": f.name}
    if isinstance(f, Bottom):
        return {"op": "bot"}
    if isinstance(f, And):
        return {"op": "and", "left": formula_to_json(f.left), "right": formula_to_json(f.right)}
    if isinstance(f, Or):
        return {"op": "or", "left": formula_to_json(f.left), "right": formula_to_json(f.right)}
    if isinstance(f, Imp):
        return {"op": "imp", "left": formula_to_json(f.left), "right": formula_to_json(f.right)}
    if isinstance(f, K):
        return {"op": "k", "body": formula_to_json(f.body)}
    raise TypeError(f"not a formula: {f!r}")


def formula_from_json(obj: object) -> Formula:
    if not isinstance(obj, dict) or "op" not in obj:
        raise ValueError(f"not a formula object: {obj!r}")
    op = obj["op"]
    if op == "var":
        name = obj.get("name")
        if not isinstance(name, str):
            raise ValueError("var needs a string 'name'")
        return Var(name)
    if op == "bot":
        return BOT
    if op == "k":
        return K(formula_from_json(obj.get("body")))
    if op in ("and", "or", "imp"):
        left = formula_from_json(obj.get("left"))
        right = formula_from_json(obj.get("right"))
        return {"and": And, "or": Or, "imp": Imp}[op](left, right)
    raise ValueError(f"unknown op: {op!r}")
