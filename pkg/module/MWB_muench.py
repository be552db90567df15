# -*- coding: utf-8 -*-
"""
MWB_muench.py ― ミュンヒハウゼン可証性演算子の計算
--------------------------------------------------
機能:
  • OracleUniverse: 神託文 ψ / σ(i) の候補集合（既定は全要素）
  • eval_single : [ζ]x = box(x) ∨ ⋁_{ξ≺ζ, ψ∈U} (⟨ξ⟩ψ ∧ box(⟨ξ⟩ψ → x))
  • eval_vector : 神託を ⟨ξ⟩ψ の有限交わり（列）に拡げた版。交わり閉包で計算
  • enumerate_vector : 列を総当たりする検算用の実装
  • stabilize / finite_level_boxbox / consistency_elements / evaluate_formula
レベル表は numpy uint32 配列（添字 x の値が [ζ]x）。
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

import numpy as np

from .MWB_algebra import Frame, box, imp
from .MWB_ordinals import Ordinal, OrdinalGrid, check_order_requirements, print_ordinal
from .MWB_syntax import (
    Atom, And, BlackSquare, Bot, Box, Formula, Iff, Imp, Not, Or, Top,
)
from .MWB_utils import debug_print


class GridError(ValueError):
    pass

class UniverseError(ValueError):
    pass


class Mode(Enum):
    SINGLE = "single"
    VECTOR = "vector"


# ==============================================================
#   OracleUniverse
# ==============================================================
@dataclass(frozen=True)
class OracleUniverse:
    elements: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(int(e) for e in self.elements))
        if not self.elements:
            raise UniverseError("oracle universe must not be empty")

    @classmethod
    def full(cls, F: Frame) -> "OracleUniverse":
        return cls(tuple(F.elements()))

    def check_frame(self, F: Frame) -> None:
        bad = [e for e in self.elements if not 0 <= e <= F.top]
        if bad:
            raise UniverseError(f"oracle {bad[0]:#x} does not belong to a {F.n}-world frame")

    def closed_under_complement(self, F: Frame) -> bool:
        s = set(self.elements)
        return all(F.top & ~e in s for e in s)

    def __len__(self) -> int:
        return len(self.elements)


# ==============================================================
#   LevelledPredicate
# ==============================================================
@dataclass
class LevelledPredicate:
    frame: Frame
    grid: OrdinalGrid
    universe: OracleUniverse
    mode: Mode
    tables: Tuple[np.ndarray, ...]
    max_len: Optional[int] = None
    stabilization_index: Optional[Ordinal] = field(default=None)

    def table(self, zeta: Ordinal) -> np.ndarray:
        try:
            return self.tables[self.grid.index(zeta)]
        except ValueError:
            raise GridError(f"level {print_ordinal(zeta)} is not a grid point") from None

    def apply(self, zeta: Ordinal, x: int) -> int:
        return int(self.table(zeta)[x])

    def dia(self, zeta: Ordinal, x: int) -> int:
        top = self.frame.top
        return top & ~self.apply(zeta, top & ~x)


def _check_inputs(F: Frame, grid: OrdinalGrid, U: Optional[OracleUniverse]) -> OracleUniverse:
    if not check_order_requirements(grid):
        raise GridError(f"grid {grid} violates the order requirements")
    U = OracleUniverse.full(F) if U is None else U
    U.check_frame(F)
    return U

def _diamonds(top: int, table: np.ndarray, universe: Sequence[int]) -> Set[int]:
    return {top & ~int(table[top & ~psi]) for psi in universe}

def _meet_closure(singles: Set[int], max_len: Optional[int]) -> Set[int]:
    """長さ max_len 以下の交わり全体（None は無制限）"""
    closure = set(singles)
    frontier = set(singles)
    length = 1
    while frontier and (max_len is None or length < max_len):
        frontier = {a & s for a in frontier for s in singles} - closure
        closure |= frontier
        length += 1
    return closure

def _level_table(F: Frame, oracles: Iterable[int]) -> np.ndarray:
    top = np.uint32(F.top)
    xs = np.arange(F.size, dtype=np.uint32)
    bt = F.box_table
    out = bt.copy()
    for d in oracles:
        if d == 0:
            continue
        d32 = np.uint32(d)
        out |= d32 & bt[(~d32 & top) | xs]
    out.setflags(write=False)
    return out

def _evaluate(F: Frame, grid: OrdinalGrid, U: OracleUniverse, mode: Mode,
              max_len: Optional[int]) -> LevelledPredicate:
    singles: Set[int] = set()
    tables: List[np.ndarray] = []
    for k, zeta in enumerate(grid.points):
        # 格子は昇順なので、下のレベルの神託は既に singles に入っている
        oracles = singles if mode is Mode.SINGLE else _meet_closure(singles, max_len)
        tables.append(_level_table(F, oracles))
        debug_print(f"{mode.value} level {print_ordinal(zeta)}: {len(oracles)} oracle(s)")
        singles = singles | _diamonds(F.top, tables[-1], U.elements)
    p = LevelledPredicate(F, grid, U, mode, tuple(tables), max_len)
    p.stabilization_index = stabilize(p)
    return p

def eval_single(F: Frame, grid: OrdinalGrid, U: Optional[OracleUniverse] = None) -> LevelledPredicate:
    U = _check_inputs(F, grid, U)
    return _evaluate(F, grid, U, Mode.SINGLE, None)

def eval_vector(F: Frame, grid: OrdinalGrid, U: Optional[OracleUniverse] = None,
                max_len: Optional[int] = None) -> LevelledPredicate:
    """max_len=None は列の長さ無制限（交わり閉包全体）"""
    if max_len is not None and max_len < 1:
        raise ValueError(f"max_len must be at least 1, got {max_len}")
    U = _check_inputs(F, grid, U)
    return _evaluate(F, grid, U, Mode.VECTOR, max_len)

def evaluate(F: Frame, grid: OrdinalGrid, U: Optional[OracleUniverse], mode: Mode,
             max_len: Optional[int] = None) -> LevelledPredicate:
    if mode is Mode.SINGLE:
        return eval_single(F, grid, U)
    return eval_vector(F, grid, U, max_len)


# ==============================================================
#   検算用の総当たり
# ==============================================================
def enumerate_vector(F: Frame, grid: OrdinalGrid, U: Optional[OracleUniverse],
                     max_len: int) -> List[Dict[int, int]]:
    """長さ max_len 以下の全ての (τ, σ) を列挙して各レベルを要素ごとに計算"""
    U = _check_inputs(F, grid, U)
    top = F.top
    levels: List[Dict[int, int]] = []
    for k in range(len(grid)):
        pairs = [(j, psi) for j in range(k) for psi in U.elements]
        witnesses = set()
        for length in range(1, max_len + 1):
            for seq in itertools.product(pairs, repeat=length):
                d = top
                for j, psi in seq:
                    d &= top & ~levels[j][top & ~psi]
                witnesses.add(d)
        level = {}
        for x in F.elements():
            v = box(F, x)
            for d in witnesses:
                v |= d & box(F, imp(F, d, x))
            level[x] = v
        levels.append(level)
    return levels


# ==============================================================
#   安定化・有限レベル
# ==============================================================
def stabilize(p: LevelledPredicate) -> Optional[Ordinal]:
    """隣り合う表が一致する最初の格子点。見つからなければ None"""
    for k in range(len(p.tables) - 1):
        if np.array_equal(p.tables[k], p.tables[k + 1]):
            return p.grid.points[k]
    return None

def finite_level_boxbox(F: Frame, n: int, U: Optional[OracleUniverse] = None) -> List[int]:
    """⌈0⌉ = box、⌈m+1⌉x = box(x) ∨ ⋁_{k≤m, ψ} (⌈k⌉-ダイヤ ψ ∧ box(… → x))。リストで返す"""
    if n < 0:
        raise ValueError("level must be non-negative")
    U = OracleUniverse.full(F) if U is None else U
    U.check_frame(F)
    top = F.top
    levels: List[List[int]] = [[box(F, x) for x in F.elements()]]
    for m in range(n):
        oracles = {top & ~levels[k][top & ~psi] for k in range(m + 1) for psi in U.elements}
        nxt = []
        for x in F.elements():
            v = box(F, x)
            for d in oracles:
                v |= d & box(F, imp(F, d, x))
            nxt.append(v)
        levels.append(nxt)
    return levels[n]


# ==============================================================
#   無矛盾性と論理式の実現
# ==============================================================
def consistency_elements(p: LevelledPredicate) -> Dict[Ordinal, int]:
    """各レベルの ⟨ζ⟩⊤"""
    return {z: p.dia(z, p.frame.top) for z in p.grid.points}

def depth_report(p: LevelledPredicate) -> List[Dict[str, object]]:
    """有限フレームでは ⟨ζ⟩⊤ = ⊤ は成り立たない。どの世界で成り立つかを記録"""
    out = []
    for z, c in consistency_elements(p).items():
        out.append({"level": print_ordinal(z), "consistent_worlds": p.frame.worlds_of(c),
                    "globally_consistent": c == p.frame.top})
    return out

def evaluate_formula(f: Formula, p: LevelledPredicate, valuation: Mapping[str, int],
                     blacksquare_level: Optional[Ordinal] = None) -> int:
    """[α] をレベル α の表、■ を blacksquare_level の表として実現"""
    top = p.frame.top

    def ev(g: Formula) -> int:
        if isinstance(g, Atom):
            return valuation[g.name] & top
        if isinstance(g, Top):
            return top
        if isinstance(g, Bot):
            return 0
        if isinstance(g, Not):
            return top & ~ev(g.body)
        if isinstance(g, Box):
            lab = g.label
            if isinstance(lab, BlackSquare):
                if blacksquare_level is None:
                    raise GridError("no level chosen for the black square")
                lab = blacksquare_level
            return p.apply(lab, ev(g.body))
        a, b = ev(g.left), ev(g.right)
        if isinstance(g, And):
            return a & b
        if isinstance(g, Or):
            return a | b
        if isinstance(g, Imp):
            return (top & ~a) | b
        if isinstance(g, Iff):
            return top & ~(a ^ b)
        raise TypeError(f"unexpected node {type(g).__name__}")

    return ev(f)
