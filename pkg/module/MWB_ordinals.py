# -*- coding: utf-8 -*-
"""
MWB_ordinals.py ― ε₀ 未満の順序数（カントール標準形）
--------------------------------------------------
機能:
  • Ordinal: (指数, 係数) の組を指数の降順に並べた不変値
  • compare / succ / is_limit / predecessor
  • parse_ordinal / print_ordinal ("w^2*3+w+1" 形式)
  • OrdinalGrid: 「∀ξ≺ζ」を有限個の点で代用するための格子
  • check_order_requirements: 推移性・最小元 0・右離散性の検査
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from functools import total_ordering
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .MWB_utils import debug_print


class Cmp(Enum):
    LESS    = -1
    EQUAL   = 0
    GREATER = 1


class OrdinalSyntaxError(ValueError):
    """順序数の構文エラー。pos は入力文字列中の 0 始まり位置"""
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} (at position {pos})")
        self.pos = pos


# ==============================================================
#   Ordinal
# ==============================================================
@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: Tuple[Tuple["Ordinal", int], ...] = ()

    def __post_init__(self):
        terms = tuple((e, c) for e, c in self.terms)
        object.__setattr__(self, "terms", terms)
        for e, c in terms:
            if not isinstance(e, Ordinal):
                raise TypeError(f"exponent must be an Ordinal, got {type(e).__name__}")
            if not isinstance(c, int) or isinstance(c, bool) or c < 1:
                raise ValueError(f"coefficient must be a positive integer, got {c!r}")
        for (e1, _), (e2, _) in zip(terms, terms[1:]):
            if compare(e1, e2) is not Cmp.GREATER:
                raise ValueError("exponents must be strictly decreasing")

    # -- 生成 -------------------------------------------
    @classmethod
    def from_int(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("negative ordinal")
        return cls() if n == 0 else cls(((ZERO, n),))

    @classmethod
    def omega_power(cls, exponent: "Ordinal", coeff: int = 1) -> "Ordinal":
        return cls(((exponent, coeff),))

    # -- 問い合わせ -------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return all(e.is_zero() for e, _ in self.terms)

    def to_int(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    def size(self) -> int:
        """記法の大きさ（項数を指数まで再帰的に数える）"""
        return sum(1 + e.size() for e, _ in self.terms)

    # -- 順序 -------------------------------------------
    def __lt__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) is Cmp.LESS

    def __str__(self) -> str:
        return print_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal({print_ordinal(self)})"


ZERO  = Ordinal()
ONE   = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def compare(a: Ordinal, b: Ordinal) -> Cmp:
    """(指数, 係数) による辞書式比較。真の接頭辞は小さい"""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c is not Cmp.EQUAL:
            return c
        if ca != cb:
            return Cmp.LESS if ca < cb else Cmp.GREATER
    if len(a.terms) == len(b.terms):
        return Cmp.EQUAL
    return Cmp.LESS if len(a.terms) < len(b.terms) else Cmp.GREATER


def succ(a: Ordinal) -> Ordinal:
    if a.terms and a.terms[-1][0].is_zero():
        return Ordinal(a.terms[:-1] + ((ZERO, a.terms[-1][1] + 1),))
    return Ordinal(a.terms + ((ZERO, 1),))


def predecessor(a: Ordinal) -> Optional[Ordinal]:
    """succ(b) = a となる b。0 と極限順序数では None"""
    if not a.terms or not a.terms[-1][0].is_zero():
        return None
    c = a.terms[-1][1]
    if c == 1:
        return Ordinal(a.terms[:-1])
    return Ordinal(a.terms[:-1] + ((ZERO, c - 1),))


def is_limit(a: Ordinal) -> bool:
    return bool(a.terms) and not a.terms[-1][0].is_zero()


def enumerate_ordinals(exponents: Sequence[Ordinal], max_terms: int, max_coeff: int,
                       max_size: Optional[int] = None) -> Iterator[Ordinal]:
    """指定指数の中から降順に最大 max_terms 個を選んだ全記法（係数 1..max_coeff）。
    max_size を与えると size() がそれ以下のものだけ"""
    exps = sorted(set(exponents), reverse=True)
    for k in range(0, max_terms + 1):
        for chosen in itertools.combinations(exps, k):
            for coeffs in itertools.product(range(1, max_coeff + 1), repeat=k):
                a = Ordinal(tuple(zip(chosen, coeffs)))
                if max_size is None or a.size() <= max_size:
                    yield a


# ==============================================================
#   文字列表現
# ==============================================================
def print_ordinal(a: Ordinal) -> str:
    if a.is_zero():
        return "0"
    return "+".join(_print_term(e, c) for e, c in a.terms)

def _print_term(e: Ordinal, c: int) -> str:
    if e.is_zero():
        return str(c)
    head = "w" if e == ONE else "w^" + _print_atom(e)
    return head if c == 1 else f"{head}*{c}"

def _print_atom(e: Ordinal) -> str:
    if e.is_finite():
        return str(e.to_int())
    if len(e.terms) == 1 and e.terms[0][1] == 1:
        inner = e.terms[0][0]
        return "w" if inner == ONE else "w^" + _print_atom(inner)
    return "(" + print_ordinal(e) + ")"


class _OrdinalParser:
    def __init__(self, text: str, offset: int = 0):
        self.text = text
        self.i = 0
        self.offset = offset

    def error(self, msg: str, at: Optional[int] = None):
        raise OrdinalSyntaxError(msg, self.offset + (self.i if at is None else at))

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.i += 1
            return True
        return False

    def nat(self) -> int:
        self.skip()
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if start == self.i:
            self.error("expected a number")
        return int(self.text[start:self.i])

    def is_omega(self) -> bool:
        return self.peek() in ("w", "ω")

    # o ::= "0" | term ("+" term)*
    def ordinal(self) -> Ordinal:
        if self.peek() == "0":
            start = self.i
            if self.nat() == 0:
                return ZERO
            self.i = start
        terms: List[Tuple[Ordinal, int]] = []
        while True:
            start = self.i
            e, c = self.term()
            if terms and compare(terms[-1][0], e) is not Cmp.GREATER:
                self.error("exponents must be strictly decreasing", start)
            terms.append((e, c))
            if not self.take("+"):
                break
        return Ordinal(tuple(terms))

    # term ::= "w" ["^" atom] ["*" nat] | nat
    def term(self) -> Tuple[Ordinal, int]:
        if self.is_omega():
            self.i += 1
            exp = self.atom() if self.take("^") else ONE
            coeff = 1
            if self.take("*"):
                at = self.i
                coeff = self.nat()
                if coeff < 1:
                    self.error("coefficient must be positive", at)
            if exp.is_zero():
                return ZERO, coeff
            return exp, coeff
        if self.peek().isdigit():
            at = self.i
            n = self.nat()
            if n < 1:
                self.error("zero is only allowed as the whole ordinal", at)
            return ZERO, n
        self.error("expected 'w' or a number")

    # atom ::= nat | "w" ["^" atom] | "(" o ")"
    def atom(self) -> Ordinal:
        if self.take("("):
            inner = self.ordinal()
            if not self.take(")"):
                self.error("expected ')'")
            return inner
        if self.is_omega():
            self.i += 1
            exp = self.atom() if self.take("^") else ONE
            return Ordinal.omega_power(exp) if not exp.is_zero() else ONE
        return Ordinal.from_int(self.nat())


def parse_ordinal(text: str, offset: int = 0) -> Ordinal:
    p = _OrdinalParser(text, offset)
    a = p.ordinal()
    if p.peek():
        p.error(f"unexpected {p.peek()!r}")
    return a

def parse_ordinal_prefix(text: str, start: int) -> Tuple[Ordinal, int]:
    """text[start:] の先頭から順序数を読み、(値, 次の位置) を返す（論理式パーサ用）"""
    p = _OrdinalParser(text[start:], start)
    a = p.ordinal()
    p.skip()
    return a, start + p.i


# ==============================================================
#   OrdinalGrid
# ==============================================================
@dataclass(frozen=True)
class OrdinalGrid:
    points: Tuple[Ordinal, ...]
    cap: Optional[Ordinal] = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if self.cap is None:
            top = max(self.points) if self.points else ZERO
            object.__setattr__(self, "cap", succ(top))

    @classmethod
    def from_strings(cls, texts: Iterable[str], cap: Optional[str] = None) -> "OrdinalGrid":
        pts = tuple(parse_ordinal(t.strip()) for t in texts)
        return cls(pts, parse_ordinal(cap) if cap is not None else None)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Ordinal]:
        return iter(self.points)

    def __contains__(self, a) -> bool:
        return a in self.points

    def index(self, a: Ordinal) -> int:
        return self.points.index(a)

    def below(self, a: Ordinal) -> Tuple[Ordinal, ...]:
        return tuple(p for p in self.points if compare(p, a) is Cmp.LESS)

    def successor_in_grid(self, a: Ordinal) -> Optional[Ordinal]:
        above = [p for p in self.points if compare(a, p) is Cmp.LESS]
        return min(above) if above else None

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.points)) + "} < " + str(self.cap)


def grid_range(k: int, cap: Optional[Ordinal] = None) -> OrdinalGrid:
    """{0, 1, ..., k-1}"""
    return OrdinalGrid(tuple(Ordinal.from_int(i) for i in range(k)), cap)


def check_order_requirements(grid: OrdinalGrid) -> bool:
    """≺ の格子への制限が推移的・最小元 0・右離散で、全点が cap 未満か"""
    pts = grid.points
    if not pts:
        debug_print("grid: empty")
        return False
    for i, a in enumerate(pts):
        for j, b in enumerate(pts):
            expect = Cmp.EQUAL if i == j else (Cmp.LESS if i < j else Cmp.GREATER)
            if compare(a, b) is not expect:
                debug_print(f"grid: {a} vs {b} out of order")
                return False
    if not pts[0].is_zero():
        debug_print("grid: minimum is not 0")
        return False
    if any(compare(p, grid.cap) is not Cmp.LESS for p in pts):
        debug_print(f"grid: point not below cap {grid.cap}")
        return False
    # 有限の格子は狭義増加列なので右離散は自動的に成り立つ
    return True
