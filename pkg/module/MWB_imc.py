# -*- coding: utf-8 -*-
"""
MWB_imc.py ― 反復ミュンヒハウゼン類 (IMC) の構成と一意性
--------------------------------------------------
機能:
  • build_imc: 世界 w ごとに X_w = {(α, ψ番号) | w ∈ [α]ψ} を作る
  • verify_imc_recursion: 定義の再帰式を世界ごとに検査
  • 小さな例では候補の類を総当たりし、再帰式を満たすものが一つだけか確かめる
再帰式:  (α,φ) ∈ X  ⟺  w ∈ box(φ)  または  ∃β≺α ∃ψ ((β,¬ψ) ∉ X かつ w ∈ box(⟨β⟩ψ → φ))
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from .MWB_algebra import Frame, box, imp
from .MWB_muench import LevelledPredicate, OracleUniverse, UniverseError, eval_single
from .MWB_ordinals import OrdinalGrid
from .MWB_utils import debug_print

# 総当たりの上限
BRUTE_MAX_WORLDS   = 3
BRUTE_MAX_GRID     = 3
BRUTE_MAX_UNIVERSE = 8
BRUTE_MAX_PAIRS    = 16


class InstanceTooLargeError(ValueError):
    pass


Pair = Tuple[int, int]   # (格子の添字, 宇宙の添字)


@dataclass
class ImcResult:
    classes: Dict[int, FrozenSet[Pair]]
    verified: bool
    unique: Optional[bool] = None
    solutions: Dict[int, int] = field(default_factory=dict)


class _Recursion:
    """世界 w における再帰式の右辺を、(α,φ) ごとの条件として前計算"""

    def __init__(self, p: LevelledPredicate, w: int):
        F, U = p.frame, p.universe.elements
        self.levels = len(p.grid)
        self.size = len(U)
        comp = {u: k for k, u in enumerate(U)}
        dias = [[p.dia(z, u) for u in U] for z in p.grid.points]
        self.base: Dict[Pair, bool] = {}
        self.guards: Dict[Pair, List[Pair]] = {}
        for i in range(self.levels):
            for j, phi in enumerate(U):
                self.base[(i, j)] = bool(box(F, phi) >> w & 1)
                gs = []
                for i2 in range(i):
                    for j2, psi in enumerate(U):
                        if box(F, imp(F, dias[i2][j2], phi)) >> w & 1:
                            gs.append((i2, comp[F.top & ~psi]))
                self.guards[(i, j)] = gs

    def holds(self, X: FrozenSet[Pair]) -> bool:
        for pair, base in self.base.items():
            rhs = base or any(g not in X for g in self.guards[pair])
            if (pair in X) != rhs:
                return False
        return True

    def pairs(self) -> List[Pair]:
        return [(i, j) for i in range(self.levels) for j in range(self.size)]


def verify_imc_recursion(p: LevelledPredicate, classes: Dict[int, FrozenSet[Pair]]) -> bool:
    return all(_Recursion(p, w).holds(classes[w]) for w in range(p.frame.n))

def build_imc(F: Frame, grid: OrdinalGrid, U: Optional[OracleUniverse] = None,
              brute_force: bool = True) -> ImcResult:
    U = OracleUniverse.full(F) if U is None else U
    if not U.closed_under_complement(F):
        raise UniverseError("the IMC recursion needs a universe closed under complement")
    if brute_force:
        pairs = len(grid) * len(U)
        if (F.n > BRUTE_MAX_WORLDS or len(grid) > BRUTE_MAX_GRID
                or len(U) > BRUTE_MAX_UNIVERSE or pairs > BRUTE_MAX_PAIRS):
            raise InstanceTooLargeError(
                f"brute force needs n<={BRUTE_MAX_WORLDS}, grid<={BRUTE_MAX_GRID}, "
                f"|U|<={BRUTE_MAX_UNIVERSE} and at most {BRUTE_MAX_PAIRS} pairs; "
                f"got n={F.n}, grid={len(grid)}, |U|={len(U)}, pairs={pairs}")
    p = eval_single(F, grid, U)
    classes: Dict[int, FrozenSet[Pair]] = {}
    for w in range(F.n):
        classes[w] = frozenset((i, j) for i, z in enumerate(grid.points)
                               for j, u in enumerate(U.elements) if p.apply(z, u) >> w & 1)
    res = ImcResult(classes, verify_imc_recursion(p, classes))
    if brute_force:
        for w in range(F.n):
            rec = _Recursion(p, w)
            pairs_w = rec.pairs()
            count = 0
            for bits in range(1 << len(pairs_w)):
                X = frozenset(pr for k, pr in enumerate(pairs_w) if bits >> k & 1)
                if rec.holds(X):
                    count += 1
            res.solutions[w] = count
        res.unique = all(c == 1 for c in res.solutions.values())
        debug_print(f"build_imc: solutions per world {res.solutions}")
    return res
