# -*- coding: utf-8 -*-
"""
MWB_syntax.py ― GLP_Λ の様相言語
--------------------------------------------------
機能:
  • 論理式 AST（frozen dataclass）: Atom/Top/Bot/Not/And/Or/Imp/Iff/Box
  • ⟨α⟩φ は構成子ではなく ¬[α]¬φ の糖衣（dia）
  • parse_formula / print_formula
  • signature / abstract_atoms / substitute / random_formula
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple, Union

from .MWB_ordinals import Cmp, Ordinal, compare, parse_ordinal_prefix, print_ordinal


class FormulaSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} (at position {pos})")
        self.pos = pos


# ==============================================================
#   ラベル
# ==============================================================
@dataclass(frozen=True)
class BlackSquare:
    """GL^■ の ■"""
    def __str__(self) -> str:
        return "#"

BLACK = BlackSquare()

Label = Union[Ordinal, BlackSquare]

def label_text(label: Label) -> str:
    return "#" if isinstance(label, BlackSquare) else print_ordinal(label)


# ==============================================================
#   Formula
# ==============================================================
class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)

@dataclass(frozen=True)
class Atom(Formula):
    name: str

@dataclass(frozen=True)
class Top(Formula):
    pass

@dataclass(frozen=True)
class Bot(Formula):
    pass

@dataclass(frozen=True)
class Not(Formula):
    body: Formula

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
class Iff(Formula):
    left: Formula
    right: Formula

@dataclass(frozen=True)
class Box(Formula):
    label: Label
    body: Formula

TOP = Top()
BOT = Bot()

BINARY = (And, Or, Imp, Iff)


def dia(label: Label, f: Formula) -> Formula:
    return Not(Box(label, Not(f)))

def as_diamond(f: Formula) -> Optional[Tuple[Label, Formula]]:
    """¬[l]¬φ の形なら (l, φ)"""
    if isinstance(f, Not) and isinstance(f.body, Box) and isinstance(f.body.body, Not):
        return f.body.label, f.body.body.body
    return None


# ==============================================================
#   構造ユーティリティ
# ==============================================================
def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, (Not, Box)):
        yield from subformulas(f.body)
    elif isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)

def labels(f: Formula) -> Set[Label]:
    return {g.label for g in subformulas(f) if isinstance(g, Box)}

def signature(f: Formula) -> Set[Ordinal]:
    """f に現れる順序数ラベルの集合"""
    return {l for l in labels(f) if isinstance(l, Ordinal)}

def uses_blacksquare(f: Formula) -> bool:
    return BLACK in labels(f)

def labels_below(f: Formula, cap: Ordinal) -> bool:
    return all(compare(l, cap) is Cmp.LESS for l in signature(f))

def atoms_of(f: Formula) -> Set[str]:
    return {g.name for g in subformulas(f) if isinstance(g, Atom)}

def box_depth(f: Formula) -> int:
    if isinstance(f, Box):
        return 1 + box_depth(f.body)
    if isinstance(f, Not):
        return box_depth(f.body)
    if isinstance(f, BINARY):
        return max(box_depth(f.left), box_depth(f.right))
    return 0

def substitute(f: Formula, mapping: Dict[str, Formula]) -> Formula:
    if isinstance(f, Atom):
        return mapping.get(f.name, f)
    if isinstance(f, Not):
        return Not(substitute(f.body, mapping))
    if isinstance(f, Box):
        return Box(f.label, substitute(f.body, mapping))
    if isinstance(f, BINARY):
        return type(f)(substitute(f.left, mapping), substitute(f.right, mapping))
    return f

def _fresh_names(avoid: Set[str]) -> Iterator[str]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    for n in itertools.count():
        for ch in letters:
            name = ch if n == 0 else f"{ch}{n}"
            if name not in avoid:
                yield name

def abstract_atoms(f: Formula) -> Tuple[Formula, Dict[str, Formula]]:
    """極大な Box 部分式を新しい原子に置換。同じ部分式には同じ原子"""
    names = _fresh_names(atoms_of(f))
    table: Dict[str, Formula] = {}
    seen: Dict[Formula, str] = {}

    def walk(g: Formula) -> Formula:
        if isinstance(g, Box):
            if g not in seen:
                name = next(names)
                seen[g] = name
                table[name] = g
            return Atom(seen[g])
        if isinstance(g, Not):
            return Not(walk(g.body))
        if isinstance(g, BINARY):
            return type(g)(walk(g.left), walk(g.right))
        return g

    return walk(f), table

def random_formula(rng: random.Random, atoms: Sequence[str],
                   labels: Sequence[Label], depth: int) -> Formula:
    """深さ depth 以下の乱択論理式（Box ラベルは labels から）"""
    if depth <= 0 or rng.random() < 0.2:
        r = rng.random()
        if r < 0.08:
            return TOP
        if r < 0.16:
            return BOT
        return Atom(rng.choice(list(atoms)))
    kind = rng.randrange(7 if labels else 6)
    if kind == 0:
        return Not(random_formula(rng, atoms, labels, depth - 1))
    if kind == 6:
        return Box(rng.choice(list(labels)), random_formula(rng, atoms, labels, depth - 1))
    cls = (And, Or, Imp, Iff, And)[kind - 1]
    return cls(random_formula(rng, atoms, labels, depth - 1),
               random_formula(rng, atoms, labels, depth - 1))


# ==============================================================
#   印字
# ==============================================================
_PREC = {Iff: 1, Imp: 2, Or: 3, And: 4}
_OPS  = {Iff: "<->", Imp: "->", Or: "|", And: "&"}

def _prec(f: Formula) -> int:
    if isinstance(f, BINARY):
        return _PREC[type(f)]
    if isinstance(f, (Not, Box)):
        return 5
    return 6

def print_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bot):
        return "F"
    d = as_diamond(f)
    if d is not None:
        return f"<{label_text(d[0])}>" + _wrap(d[1], 5)
    if isinstance(f, Not):
        return "~" + _wrap(f.body, 5)
    if isinstance(f, Box):
        return f"[{label_text(f.label)}]" + _wrap(f.body, 5)
    p = _PREC[type(f)]
    if isinstance(f, Imp):
        # 右結合
        left, right = _wrap(f.left, p + 1), _wrap(f.right, p)
    else:
        left, right = _wrap(f.left, p), _wrap(f.right, p + 1)
    return f"{left} {_OPS[type(f)]} {right}"

def _wrap(f: Formula, need: int) -> str:
    s = print_formula(f)
    return s if _prec(f) >= need else f"({s})"


# ==============================================================
#   構文解析
# ==============================================================
class _FormulaParser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def error(self, msg: str, at: Optional[int] = None):
        raise FormulaSyntaxError(msg, self.i if at is None else at)

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def startswith(self, tok: str) -> bool:
        self.skip()
        return self.text.startswith(tok, self.i)

    def take(self, tok: str) -> bool:
        if self.startswith(tok):
            self.i += len(tok)
            return True
        return False

    def expect(self, tok: str):
        if not self.take(tok):
            self.error(f"expected {tok!r}")

    # iff ::= imp ("<->" imp)*
    def iff(self) -> Formula:
        f = self.imp()
        while self.take("<->"):
            f = Iff(f, self.imp())
        return f

    # imp ::= or ["->" imp]
    def imp(self) -> Formula:
        f = self.disj()
        if self.take("->"):
            return Imp(f, self.imp())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.take("|"):
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.take("&"):
            f = And(f, self.unary())
        return f

    def label(self, close: str) -> Label:
        if self.take("#"):
            self.expect(close)
            return BLACK
        self.skip()
        ordinal, self.i = parse_ordinal_prefix(self.text, self.i)
        self.expect(close)
        return ordinal

    def unary(self) -> Formula:
        self.skip()
        if self.take("~"):
            return Not(self.unary())
        if self.startswith("<->"):
            self.error("missing left operand of '<->'")
        if self.take("["):
            lab = self.label("]")
            return Box(lab, self.unary())
        if self.take("<"):
            lab = self.label(">")
            return dia(lab, self.unary())
        if self.take("#"):
            return Box(BLACK, self.unary())
        if self.take("("):
            f = self.iff()
            self.expect(")")
            return f
        if self.take("T"):
            return TOP
        if self.take("F"):
            return BOT
        start = self.i
        if self.i < len(self.text) and "a" <= self.text[self.i] <= "z":
            self.i += 1
            while self.i < len(self.text) and (self.text[self.i].isdigit()
                                               or "a" <= self.text[self.i] <= "z"):
                self.i += 1
            return Atom(self.text[start:self.i])
        if self.i >= len(self.text):
            self.error("unexpected end of formula")
        self.error(f"unexpected {self.text[self.i]!r}")


def parse_formula(text: str, cap: Optional[Ordinal] = None) -> Formula:
    """cap 指定時は全ラベルが cap 未満であることも検査"""
    p = _FormulaParser(text)
    f = p.iff()
    p.skip()
    if p.i < len(text):
        p.error(f"unexpected {text[p.i]!r}")
    if cap is not None and not labels_below(f, cap):
        bad = sorted(l for l in signature(f) if compare(l, cap) is not Cmp.LESS)
        raise FormulaSyntaxError(f"label {bad[0]} is not below {cap}", 0)
    return f
