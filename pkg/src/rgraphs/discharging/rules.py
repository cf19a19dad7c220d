"""Line-oriented DSL for discharging rules.

    rule <id>: to face(<preds>) from adjacent[(<preds>)]|indirect[(<preds>)] amount <int>[/<int>]

Predicates: size==k, size>=k, size<=k, heavy, not_heavy, heavy2, heavy3,
heavy4, and neighbors all(...)|none_of(...)|some_of(...) quantifying over
the faces sharing an edge.  Amounts are exact rationals.  Parsing and
printing round-trip, and the shipped r4.rules / r5.rules reproduce the
built-in rule sets.
"""

from __future__ import annotations

import importlib.resources
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Protocol


class RuleParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class FaceLike(Protocol):
    """What predicates need to know about a face."""
    size: int
    heavy: bool

    def neighbor_views(self) -> list["FaceLike"]: ...


# -- predicate atoms ---------------------------------------------------------

@dataclass(frozen=True)
class SizeAtom:
    op: str     # "==", ">=", "<="
    k: int

    def holds(self, face) -> bool:
        if self.op == "==":
            return face.size == self.k
        if self.op == ">=":
            return face.size >= self.k
        return face.size <= self.k

    def text(self) -> str:
        return f"size{self.op}{self.k}"


@dataclass(frozen=True)
class HeavyAtom:
    want: bool

    def holds(self, face) -> bool:
        return face.heavy == self.want

    def text(self) -> str:
        return "heavy" if self.want else "not_heavy"


@dataclass(frozen=True)
class HeavyKAtom:
    k: int      # heavy2 / heavy3 / heavy4

    def holds(self, face) -> bool:
        return face.heavy and face.size == self.k

    def text(self) -> str:
        return f"heavy{self.k}"


@dataclass(frozen=True)
class NeighborsAtom:
    quant: str                  # "all", "none_of", "some_of"
    atoms: tuple

    def holds(self, face) -> bool:
        views = face.neighbor_views()
        if self.quant == "all":
            return all(all(a.holds(nb) for a in self.atoms) for nb in views)
        if self.quant == "none_of":
            return all(not any(a.holds(nb) for a in self.atoms) for nb in views)
        return any(all(a.holds(nb) for a in self.atoms) for nb in views)

    def text(self) -> str:
        inner = ", ".join(a.text() for a in self.atoms)
        return f"neighbors {self.quant}({inner})"


def atoms_hold(atoms: tuple, face) -> bool:
    return all(a.holds(face) for a in atoms)


# -- rules -------------------------------------------------------------------

ADJACENT = "adjacent"
INDIRECT = "indirect"


@dataclass(frozen=True)
class Rule:
    rule_id: str
    target: tuple               # atoms on the receiving face
    relation: str               # ADJACENT | INDIRECT
    source: tuple               # atoms on the paying face
    amount: Fraction

    def text(self) -> str:
        tgt = ", ".join(a.text() for a in self.target)
        src = ""
        if self.source:
            src = "(" + ", ".join(a.text() for a in self.source) + ")"
        amt = str(self.amount.numerator)
        if self.amount.denominator != 1:
            amt += f"/{self.amount.denominator}"
        return f"rule {self.rule_id}: to face({tgt}) from {self.relation}{src} amount {amt}"


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[Rule, ...]

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)


def print_rules(rules: RuleSet) -> str:
    return "\n".join(r.text() for r in rules) + "\n"


# -- parser --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(==|>=|<=|[():,/]|[A-Za-z_][A-Za-z0-9_]*|-?\d+)")


class _Tokens:
    def __init__(self, text: str, line: int):
        self.line = line
        self.items: list[tuple[str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                rest = text[pos:].strip()
                if not rest:
                    break
                raise RuleParseError(f"bad token near {rest[:10]!r}", line, pos + 1)
            self.items.append((m.group(1), m.start(1) + 1))
            pos = m.end()
        self.i = 0

    def peek(self) -> str | None:
        return self.items[self.i][0] if self.i < len(self.items) else None

    def col(self) -> int:
        if self.i < len(self.items):
            return self.items[self.i][1]
        return self.items[-1][1] if self.items else 1

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise RuleParseError(
                f"unexpected end of line (wanted {expected!r})" if expected
                else "unexpected end of line", self.line, self.col())
        if expected is not None and tok != expected:
            raise RuleParseError(f"expected {expected!r}, found {tok!r}",
                                 self.line, self.col())
        self.i += 1
        return tok


def _parse_atom(toks: _Tokens):
    tok = toks.peek()
    col = toks.col()
    if tok == "size":
        toks.take()
        op = toks.take()
        if op not in ("==", ">=", "<="):
            raise RuleParseError(f"bad size comparison {op!r}", toks.line, col)
        k = toks.take()
        if not k.lstrip("-").isdigit():
            raise RuleParseError(f"bad size bound {k!r}", toks.line, col)
        return SizeAtom(op, int(k))
    if tok == "heavy":
        toks.take()
        return HeavyAtom(True)
    if tok == "not_heavy":
        toks.take()
        return HeavyAtom(False)
    if tok in ("heavy2", "heavy3", "heavy4"):
        toks.take()
        return HeavyKAtom(int(tok[-1]))
    if tok == "neighbors":
        toks.take()
        quant = toks.take()
        if quant not in ("all", "none_of", "some_of"):
            raise RuleParseError(f"bad neighbor quantifier {quant!r}", toks.line, col)
        toks.take("(")
        inner = _parse_atom_list(toks)
        toks.take(")")
        return NeighborsAtom(quant, inner)
    raise RuleParseError(f"unknown predicate {tok!r}", toks.line, col)


def _parse_atom_list(toks: _Tokens) -> tuple:
    atoms = [_parse_atom(toks)]
    while toks.peek() == ",":
        toks.take(",")
        atoms.append(_parse_atom(toks))
    return tuple(atoms)


def _parse_amount(toks: _Tokens) -> Fraction:
    col = toks.col()
    num = toks.take()
    if not num.lstrip("-").isdigit():
        raise RuleParseError(f"bad amount {num!r}", toks.line, col)
    if toks.peek() == "/":
        toks.take("/")
        den_col = toks.col()
        den = toks.take()
        if not den.isdigit():
            raise RuleParseError(f"bad denominator {den!r}", toks.line, den_col)
        if int(den) == 0:
            raise RuleParseError("zero denominator", toks.line, den_col)
        return Fraction(int(num), int(den))
    return Fraction(int(num))


def parse_rules(text: str) -> RuleSet:
    rules = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        toks = _Tokens(line, lineno)
        toks.take("rule")
        rule_id = toks.take()
        toks.take(":")
        toks.take("to")
        toks.take("face")
        toks.take("(")
        target = _parse_atom_list(toks)
        toks.take(")")
        toks.take("from")
        rel = toks.take()
        if rel not in (ADJACENT, INDIRECT):
            raise RuleParseError(f"bad relation {rel!r}", lineno, toks.col())
        source: tuple = ()
        if toks.peek() == "(":
            toks.take("(")
            source = _parse_atom_list(toks)
            toks.take(")")
        toks.take("amount")
        amount = _parse_amount(toks)
        if toks.peek() is not None:
            raise RuleParseError(f"trailing input {toks.peek()!r}", lineno, toks.col())
        rules.append(Rule(rule_id, target, rel, source, amount))
    return RuleSet(tuple(rules))


def load_rules_file(name: str) -> str:
    return importlib.resources.files("rgraphs.discharging").joinpath(name).read_text()


def builtin_rules(r: int) -> RuleSet:
    if r not in (4, 5):
        raise ValueError("built-in rule sets exist for r = 4 and r = 5")
    return parse_rules(load_rules_file(f"r{r}.rules"))
