# -*- coding: utf-8 -*-
"""
MWB_laws.py ― 健全性法則の検査と探索
--------------------------------------------------
機能:
  • soundness_suite: レベルごと・レベル対ごとの法則検査（assert / exploratory の区別付き）
  • explore_closure_failures: 単一神託版で連言・選言閉包が崩れる箇所を列挙
  • reflexive_induction_check: 反射的帰納法（超限版を含む）の意味論的検査
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .MWB_algebra import Frame, box, imp
from .MWB_muench import LevelledPredicate, Mode
from .MWB_ordinals import Cmp, Ordinal, OrdinalGrid, compare, print_ordinal
from .MWB_utils import debug_print, warn

DEFAULT_SAMPLE_LIMIT = 4096
DEFAULT_EXHAUSTIVE   = 4

# -- 法則の分類 -------------------------------------------
LEVEL_LAWS = ("ex_falso", "k_mono", "necessitation", "distribution", "conj_closure",
              "transitivity", "lob", "weak_disj", "weak_disj_uniform")
PAIR_LAWS  = ("level_mono", "dia_mono", "introspection")

ASSERTED = {
    Mode.SINGLE: frozenset({"ex_falso", "k_mono", "level_mono", "dia_mono", "introspection",
                            "necessitation"}),
    Mode.VECTOR: frozenset(LEVEL_LAWS + PAIR_LAWS) - {"weak_disj_uniform"},
}


@dataclass
class LawRecord:
    law: str
    mode: str
    level: str
    holds: bool
    asserted: bool
    checked: int
    violations: int
    witness_x: Optional[int] = None
    witness_y: Optional[int] = None

@dataclass
class SuiteReport:
    mode: str
    worlds: int
    records: List[LawRecord] = field(default_factory=list)

    @property
    def asserted_ok(self) -> bool:
        return all(r.holds for r in self.records if r.asserted)

    def failures(self, asserted_only: bool = True) -> List[LawRecord]:
        return [r for r in self.records if not r.holds and (r.asserted or not asserted_only)]

    def to_json(self) -> Dict[str, Any]:
        return {"mode": self.mode, "worlds": self.worlds,
                "records": [asdict(r) for r in self.records]}


# ==============================================================
#   標本
# ==============================================================
def sample_pairs(F: Frame, limit: int = DEFAULT_SAMPLE_LIMIT, seed: int = 0,
                 exhaustive_max_worlds: int = DEFAULT_EXHAUSTIVE) -> Tuple[np.ndarray, np.ndarray]:
    """n ≤ exhaustive_max_worlds なら全 2^n×2^n 組、それ以外は seed 固定の標本"""
    if F.n <= exhaustive_max_worlds:
        xs, ys = np.meshgrid(np.arange(F.size, dtype=np.uint32),
                             np.arange(F.size, dtype=np.uint32), indexing="ij")
        return xs.ravel(), ys.ravel()
    rng = np.random.default_rng(seed)
    return (rng.integers(0, F.size, size=limit, dtype=np.uint32),
            rng.integers(0, F.size, size=limit, dtype=np.uint32))

def _record(law: str, p: LevelledPredicate, level: str, bad: np.ndarray,
            xs: np.ndarray, ys: Optional[np.ndarray] = None) -> LawRecord:
    idx = np.flatnonzero(bad)
    rec = LawRecord(law=law, mode=p.mode.value, level=level, holds=idx.size == 0,
                    asserted=law in ASSERTED[p.mode], checked=int(bad.size),
                    violations=int(idx.size))
    if idx.size:
        rec.witness_x = int(xs[idx[0]])
        rec.witness_y = int(ys[idx[0]]) if ys is not None else None
        if rec.asserted:
            warn(f"{law} fails at level {level}: x={rec.witness_x} y={rec.witness_y}")
    return rec


# ==============================================================
#   soundness_suite
# ==============================================================
def _level_records(p: LevelledPredicate, zeta: Ordinal, xs: np.ndarray,
                   ys: np.ndarray) -> List[LawRecord]:
    F = p.frame
    top = np.uint32(F.top)
    T = p.table(zeta)
    bt = F.box_table
    lvl = print_ordinal(zeta)
    allx = np.arange(F.size, dtype=np.uint32)
    Tx, Ty = T[xs], T[ys]
    ximpy = (~xs & top) | ys
    out = [
        _record("ex_falso", p, lvl, (T[0] & ~T[allx]) != 0, allx),
        _record("k_mono", p, lvl, (Tx & bt[ximpy] & ~Ty) != 0, xs, ys),
        _record("necessitation", p, lvl, np.array([T[F.top] != top]), np.array([F.top])),
        _record("distribution", p, lvl, (T[ximpy] & Tx & ~Ty) != 0, xs, ys),
        _record("conj_closure", p, lvl, (Tx & Ty) != T[xs & ys], xs, ys),
        _record("transitivity", p, lvl, (T[allx] & ~T[T[allx]]) != 0, allx),
        _record("lob", p, lvl, (T[(~T[allx] & top) | allx] & ~T[allx]) != 0, allx),
    ]
    # 選言の弱閉包: 世界ごとに χ を選ぶ版と、全世界で共通の χ を要求する版
    image = T[allx]
    can_in = np.bitwise_or.reduce(image)
    can_out = np.bitwise_or.reduce(~image & top)
    joined = Tx | Ty
    out.append(_record("weak_disj", p, lvl, ((joined & ~can_in) | (~joined & top & ~can_out)) != 0,
                       xs, ys))
    out.append(_record("weak_disj_uniform", p, lvl, ~np.isin(joined, image), xs, ys))
    return out

def _pair_records(p: LevelledPredicate, xi: Ordinal, zeta: Ordinal) -> List[LawRecord]:
    F = p.frame
    top = np.uint32(F.top)
    Tl, Th = p.table(xi), p.table(zeta)
    allx = np.arange(F.size, dtype=np.uint32)
    lvl = f"{print_ordinal(xi)}<{print_ordinal(zeta)}"
    dia_l = ~Tl[~allx & top] & top
    dia_h = ~Th[~allx & top] & top
    us = np.array(p.universe.elements, dtype=np.uint32)
    dia_u = ~Tl[~us & top] & top
    return [
        _record("level_mono", p, lvl, (Tl[allx] & ~Th[allx]) != 0, allx),
        _record("dia_mono", p, lvl, (dia_h & ~dia_l) != 0, allx),
        _record("introspection", p, lvl, (dia_u & ~Th[dia_u]) != 0, us),
    ]

def soundness_suite(p: LevelledPredicate, sample_limit: int = DEFAULT_SAMPLE_LIMIT,
                    seed: int = 0, exhaustive_max_worlds: int = DEFAULT_EXHAUSTIVE) -> SuiteReport:
    xs, ys = sample_pairs(p.frame, sample_limit, seed, exhaustive_max_worlds)
    rep = SuiteReport(mode=p.mode.value, worlds=p.frame.n)
    pts = p.grid.points
    for zeta in pts:
        rep.records += _level_records(p, zeta, xs, ys)
    for i, xi in enumerate(pts):
        for zeta in pts[i + 1:]:
            rep.records += _pair_records(p, xi, zeta)
    debug_print(f"soundness_suite[{p.mode.value}]: {len(rep.records)} records, "
                f"asserted ok={rep.asserted_ok}")
    return rep


# ==============================================================
#   explore_closure_failures
# ==============================================================
MAX_EXAMPLES = 10

def explore_closure_failures(F: Frame, p: LevelledPredicate,
                             sample_limit: int = DEFAULT_SAMPLE_LIMIT, seed: int = 0,
                             exhaustive_max_worlds: int = DEFAULT_EXHAUSTIVE) -> Dict[str, Any]:
    """単一神託版で連言閉包・選言の一様弱閉包・推移性が崩れる (level, x, y) を数える"""
    if p.mode is not Mode.SINGLE:
        raise ValueError("explore_closure_failures needs a single-oracle predicate")
    if p.frame != F:
        raise ValueError("predicate was computed on a different frame")
    xs, ys = sample_pairs(F, sample_limit, seed, exhaustive_max_worlds)
    laws = ("conj_closure", "weak_disj_uniform", "transitivity", "distribution")
    report: Dict[str, Any] = {"worlds": F.n, "levels": [], "totals": {k: 0 for k in laws}}
    for zeta in p.grid.points:
        recs = {r.law: r for r in _level_records(p, zeta, xs, ys) if r.law in laws}
        entry: Dict[str, Any] = {"level": print_ordinal(zeta), "counts": {}, "examples": []}
        for law in laws:
            r = recs[law]
            entry["counts"][law] = r.violations
            report["totals"][law] += r.violations
            if r.violations and len(entry["examples"]) < MAX_EXAMPLES:
                entry["examples"].append({"law": law, "x": r.witness_x, "y": r.witness_y})
        report["levels"].append(entry)
    return report


# ==============================================================
#   反射的帰納法
# ==============================================================
def reflexive_induction_instance(F: Frame, grid: OrdinalGrid, phi: Mapping[Ordinal, int],
                                 variant: str = "reflexive") -> Dict[str, bool]:
    """前提 ⋀_α (box(⋀_{β≺α} φβ) → φα) = ⊤ と結論 ⋀_α φα = ⊤ を評価"""
    if variant not in ("reflexive", "transfinite"):
        raise ValueError(f"unknown variant {variant!r}")
    top = F.top
    premise = top
    for alpha in grid.points:
        below = top
        for beta in grid.points:
            if compare(beta, alpha) is Cmp.LESS:
                below &= phi[beta]
        antecedent = box(F, below)
        if variant == "transfinite":
            antecedent &= below
        premise &= imp(F, antecedent, phi[alpha] & top)
    conclusion = top
    for alpha in grid.points:
        conclusion &= phi[alpha]
    pre_ok, con_ok = premise == top, conclusion == top
    return {"premise": pre_ok, "conclusion": con_ok, "holds": (not pre_ok) or con_ok}

def reflexive_induction_check(F: Frame, grid: OrdinalGrid, phi: Mapping[Ordinal, int],
                              variant: str = "reflexive") -> bool:
    return reflexive_induction_instance(F, grid, phi, variant)["holds"]

def random_assignment(rng: random.Random, F: Frame, grid: OrdinalGrid,
                      bias: float = 0.85) -> Dict[Ordinal, int]:
    """前提が成り立つ場合も出るよう、各世界を確率 bias で含める"""
    return {a: sum(1 << w for w in range(F.n) if rng.random() < bias) for a in grid.points}
