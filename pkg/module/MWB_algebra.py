# -*- coding: utf-8 -*-
"""
MWB_algebra.py ― 有限 GL フレームとその集合代数
--------------------------------------------------
機能:
  • Frame: 推移的・非反射的な有限フレーム（n ≤ 16, 要素はビットマスク int）
  • box / neg / imp / top と numpy による全要素の box 表
  • random_frame / chain / all_frames / depth / consistency_depth
  • check_gl_laws: K・4・Löb・必然化の検査
  • フレームの JSON 読み書き {"worlds": n, "edges": [[i,j],...]}
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .MWB_utils import debug_print, warn

MAX_WORLDS     = 16
MAX_ENUM_WORLDS = 4
FRAME_FILEINFO = {"name": "muenchWorkbench", "info": "GL frame", "version": "1.0"}


class FrameError(ValueError):
    pass

class FrameSizeError(FrameError):
    pass

class FrameMismatchError(FrameError):
    pass


# ==============================================================
#   Frame
# ==============================================================
@dataclass(frozen=True)
class Frame:
    """w rel v を「w から v が見える」と読む"""
    n: int
    rel: FrozenSet[Tuple[int, int]]
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "rel", frozenset((int(a), int(b)) for a, b in self.rel))
        if not 1 <= self.n <= MAX_WORLDS:
            raise FrameSizeError(f"frame size must be within 1..{MAX_WORLDS}, got {self.n}")
        for a, b in self.rel:
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise FrameError(f"edge ({a},{b}) leaves the worlds 0..{self.n - 1}")
        if self.check:
            for a, b in self.rel:
                if a == b:
                    raise FrameError(f"reflexive pair ({a},{a})")
            for (a, b), (c, d) in itertools.product(self.rel, repeat=2):
                if b == c and (a, d) not in self.rel:
                    raise FrameError(f"not transitive: ({a},{b}) and ({b},{d}) without ({a},{d})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Frame":
        """推移閉包を取り、反射対（＝循環）は拒否"""
        rel = {(int(a), int(b)) for a, b in edges}
        changed = True
        while changed:
            extra = {(a, d) for (a, b) in rel for (c, d) in rel if b == c} - rel
            rel |= extra
            changed = bool(extra)
        loops = sorted(a for a, b in rel if a == b)
        if loops:
            raise FrameError(f"reflexive pair after closure at world {loops[0]}")
        return cls(n, frozenset(rel))

    # -- 構造 -------------------------------------------
    @cached_property
    def succ(self) -> Tuple[int, ...]:
        masks = [0] * self.n
        for a, b in self.rel:
            masks[a] |= 1 << b
        return tuple(masks)

    @property
    def top(self) -> int:
        return (1 << self.n) - 1

    @property
    def size(self) -> int:
        """要素数 2^n"""
        return 1 << self.n

    @cached_property
    def box_table(self) -> np.ndarray:
        """全要素 x について box(x) を並べた uint32 配列（長さ 2^n）"""
        xs = np.arange(self.size, dtype=np.uint32)
        out = np.zeros(self.size, dtype=np.uint32)
        for w, s in enumerate(self.succ):
            s32 = np.uint32(s)
            out |= ((xs & s32) == s32).astype(np.uint32) << np.uint32(w)
        out.setflags(write=False)
        return out

    def elements(self) -> range:
        return range(self.size)

    def worlds_of(self, x: int) -> List[int]:
        return [w for w in range(self.n) if x >> w & 1]


# ==============================================================
#   要素演算
# ==============================================================
def _own(F: Frame, x: int) -> int:
    if not 0 <= x <= F.top:
        raise FrameMismatchError(f"element {x:#x} does not belong to a {F.n}-world frame")
    return x

def box(F: Frame, x: int) -> int:
    """{ w | w から見える全ての v が x に属する }"""
    return int(F.box_table[_own(F, x)])

def neg(F: Frame, x: int) -> int:
    return F.top & ~_own(F, x)

def imp(F: Frame, x: int, y: int) -> int:
    return neg(F, x) | _own(F, y)

def dia0(F: Frame, x: int) -> int:
    return neg(F, box(F, neg(F, x)))


# ==============================================================
#   生成
# ==============================================================
def random_frame(seed: int, n: int) -> Frame:
    """乱択 DAG の推移閉包。seed に対して決定的"""
    if not 1 <= n <= MAX_WORLDS:
        raise FrameSizeError(f"frame size must be within 1..{MAX_WORLDS}, got {n}")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    p = rng.random()
    edges = [(order[j], order[i]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Frame.from_edges(n, edges)

def chain(n: int) -> Frame:
    """w_{n-1} → … → w1 → w0（推移的）"""
    return Frame(n, frozenset((i, j) for i in range(n) for j in range(i)))

def all_frames(n: int) -> Iterator[Frame]:
    """n 世界上の推移的・非反射的関係を全列挙（n ≤ 4）"""
    if not 1 <= n <= MAX_ENUM_WORLDS:
        raise FrameSizeError(f"exhaustive enumeration supports 1..{MAX_ENUM_WORLDS} worlds, got {n}")
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    for bits in range(1 << len(pairs)):
        rel = {pairs[k] for k in range(len(pairs)) if bits >> k & 1}
        if all((a, d) in rel for (a, b) in rel for (c, d) in rel if b == c and a != d) \
                and not any((b, a) in rel for (a, b) in rel):
            yield Frame(n, frozenset(rel), check=False)

def depth(F: Frame) -> int:
    """最長鎖の世界数"""
    rank: Dict[int, int] = {}

    def r(w: int) -> int:
        if w not in rank:
            rank[w] = 1 + max((r(v) for v in F.worlds_of(F.succ[w])), default=0)
        return rank[w]

    return max(r(w) for w in range(F.n))

def consistency_depth(F: Frame) -> List[int]:
    """世界ごとに ⟨0⟩^k ⊤ が成り立つ最大の k"""
    levels = [F.top]
    while levels[-1]:
        levels.append(dia0(F, levels[-1]))
    return [max(k for k, x in enumerate(levels) if x >> w & 1) for w in range(F.n)]


# ==============================================================
#   GL 法則
# ==============================================================
@dataclass
class GLReport:
    checked: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

def default_samples(F: Frame, limit: int = 4096, seed: int = 0,
                    exhaustive_max_worlds: int = 4) -> List[Tuple[int, int]]:
    """n ≤ exhaustive_max_worlds なら全ペア、それ以外は seed 固定の標本"""
    if F.n <= exhaustive_max_worlds:
        return [(x, y) for x in F.elements() for y in F.elements()]
    rng = random.Random(seed)
    return [(rng.randrange(F.size), rng.randrange(F.size)) for _ in range(limit)]

def check_gl_laws(F: Frame, samples: Optional[Iterable[Tuple[int, int]]] = None) -> GLReport:
    rep = GLReport()
    pairs = default_samples(F) if samples is None else list(samples)
    top = F.top
    for x, y in pairs:
        rep.checked += 1
        bx, by = box(F, x), box(F, y)
        found = []
        if box(F, imp(F, x, y)) & bx & ~by:
            found.append("K")
        if bx & ~box(F, bx):
            found.append("4")
        if box(F, imp(F, bx, x)) & ~bx:
            found.append("Lob")
        if x == top and bx != top:
            found.append("Nec")
        for law in found:
            rep.violations.append({"law": law, "x": x, "y": y})
    if rep.violations:
        warn(f"check_gl_laws: {len(rep.violations)} violation(s) on {F.n} worlds")
    return rep


# ==============================================================
#   JSON
# ==============================================================
def frame_to_json(F: Frame) -> Dict[str, Any]:
    return {"fileinfo": dict(FRAME_FILEINFO), "worlds": F.n, "edges": sorted(map(list, F.rel))}

def frame_from_json(data: Dict[str, Any]) -> Frame:
    try:
        n, edges = data["worlds"], data.get("edges", [])
    except (KeyError, TypeError, AttributeError) as e:
        raise FrameError(f"frame file needs 'worlds' and 'edges': {e}") from e
    if not isinstance(n, int):
        raise FrameError(f"'worlds' must be an integer, got {n!r}")
    for e in edges:
        if not (isinstance(e, (list, tuple)) and len(e) == 2):
            raise FrameError(f"edge {e!r} is not a pair")
    return Frame.from_edges(n, edges)

def load_frame(path: str | Path) -> Frame:
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise FrameError(f"{path}: {e}") from e
    debug_print(f"load_frame: {path}")
    return frame_from_json(data)

def save_frame(F: Frame, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(frame_to_json(F), f, ensure_ascii=False, indent=2)
