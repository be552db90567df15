# -*- coding: utf-8 -*-
"""
MWB_uniformpp.py ― 一様証明述語 π(c, λ, φ)
--------------------------------------------------
機能:
  • Certificate: Base(nonce, formula) / Oracle(ξ, ψ, nonce, formula)
    Cases(parts): 世界ごとの証明書の場合分け（有効域は和）
  • pi_value : 証明書が有効な世界の集合
        Base   → box(φ)
        Oracle → ⟨ξ⟩ψ ∧ box(⟨ξ⟩ψ → φ)   （ξ ≺ λ のときのみ、他は ∅）
        formula 欄が φ と異なれば ∅
  • pi_check / exists_certificate / certificate_cover
  • normalization_checks / uprov_property_suite
  • 証明書の文字列形式 "base <nonce> <id>" / "oracle <ord> <psi-id> <nonce> <id>"
    / "cases <部分> ; <部分>"
全証明書にわたる π の和は単一神託版の [λ]φ に一致し、
exists_certificate(world=None) は [λ]φ = ⊤ のときに限り証明書を返す。
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .MWB_algebra import box, imp
from .MWB_muench import GridError, LevelledPredicate, Mode
from .MWB_ordinals import Cmp, Ordinal, OrdinalSyntaxError, compare, parse_ordinal, print_ordinal
from .MWB_utils import debug_print, warn


class CertificateFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Base:
    nonce: int
    formula: int

@dataclass(frozen=True)
class Oracle:
    xi: Ordinal
    psi: int
    nonce: int
    formula: int

Simple = Union[Base, Oracle]

@dataclass(frozen=True)
class Cases:
    """世界ごとに有効な証明書を束ねた場合分け。有効域は各部分の和"""
    parts: Tuple[Simple, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("Cases needs at least one part")
        if len({c.formula for c in self.parts}) != 1:
            raise ValueError("all parts of Cases must certify the same formula")

    @property
    def formula(self) -> int:
        return self.parts[0].formula

Certificate = Union[Base, Oracle, Cases]


# ==============================================================
#   π
# ==============================================================
def _require_level(p: LevelledPredicate, lam: Ordinal) -> None:
    if p.mode is not Mode.SINGLE:
        raise ValueError("the certificate predicate is built on a single-oracle predicate")
    if lam not in p.grid:
        raise GridError(f"level {print_ordinal(lam)} is not a grid point")

def pi_value(c: Certificate, lam: Ordinal, phi: int, p: LevelledPredicate) -> int:
    _require_level(p, lam)
    F = p.frame
    if c.formula != phi:
        return 0
    if isinstance(c, Cases):
        out = 0
        for part in c.parts:
            out |= pi_value(part, lam, phi, p)
        return out
    if isinstance(c, Base):
        return box(F, phi)
    if compare(c.xi, lam) is not Cmp.LESS or c.xi not in p.grid:
        return 0
    d = p.dia(c.xi, c.psi)
    return d & box(F, imp(F, d, phi))

def pi_check(c: Certificate, lam: Ordinal, phi: int, p: LevelledPredicate,
             world: Optional[int] = None) -> bool:
    """world 省略時は全世界で有効（= ⊤）かどうか"""
    v = pi_value(c, lam, phi, p)
    if world is None:
        return v == p.frame.top
    return bool(v >> world & 1)

def candidate_certificates(lam: Ordinal, phi: int, p: LevelledPredicate,
                           nonce: int = 0) -> Iterator[Certificate]:
    """Base を先に、続いて格子上 λ 未満の ξ と宇宙の ψ による Oracle"""
    yield Base(nonce, phi)
    for xi in p.grid.below(lam):
        for psi in p.universe.elements:
            yield Oracle(xi, psi, nonce, phi)

def exists_certificate(lam: Ordinal, phi: int, p: LevelledPredicate,
                       world: Optional[int] = None) -> Optional[Certificate]:
    """world 省略時は全世界で有効な証明書。単独で足りなければ世界ごとの被覆を Cases に束ねる
    （[λ]φ = ⊤ のときに限り見つかる）"""
    _require_level(p, lam)
    for c in candidate_certificates(lam, phi, p):
        if pi_check(c, lam, phi, p, world):
            return c
    if world is not None:
        return None
    cover = certificate_cover(lam, phi, p)
    if any(c is None for c in cover.values()):
        return None
    return Cases(tuple(dict.fromkeys(cover.values())))

def certificate_cover(lam: Ordinal, phi: int, p: LevelledPredicate) -> Dict[int, Optional[Certificate]]:
    """世界ごとの証明書（無ければ None）。全世界が埋まる ⟺ [λ]φ = ⊤"""
    return {w: exists_certificate(lam, phi, p, w) for w in range(p.frame.n)}

def provable_element(lam: Ordinal, phi: int, p: LevelledPredicate) -> int:
    """∃c π(c,λ,φ) の表す要素"""
    out = 0
    for c in candidate_certificates(lam, phi, p):
        out |= pi_value(c, lam, phi, p)
    return out


# ==============================================================
#   正規化と性質
# ==============================================================
def _random_certificate(rng: random.Random, p: LevelledPredicate) -> Certificate:
    F = p.frame
    phi = rng.randrange(F.size)
    if rng.random() < 0.3:
        return Base(rng.randrange(1000), phi)
    return Oracle(rng.choice(p.grid.points), rng.choice(p.universe.elements),
                  rng.randrange(1000), phi)

def normalization_checks(p: LevelledPredicate, samples: int = 1000, padding: int = 10,
                         seed: int = 0) -> Dict[str, Any]:
    """(a) 一証明書一論理式 (b) nonce による水増し (c) λ に関する単調性"""
    rng = random.Random(seed)
    F, pts = p.frame, p.grid.points
    single = multi = mono = 0
    for _ in range(samples):
        c = _random_certificate(rng, p)
        for lam in pts:
            valid_for = [phi for phi in F.elements() if pi_check(c, lam, phi, p)]
            if len(valid_for) > 1:
                single += 1
    # 導出可能な組ごとに、nonce 違いの証明書が padding 個以上あるか
    for lam in pts:
        for phi in F.elements():
            c = exists_certificate(lam, phi, p)
            if c is None:
                continue
            variants = {_with_nonce(c, k) for k in range(padding)}
            if len(variants) < padding or not all(pi_check(v, lam, phi, p) for v in variants):
                multi += 1
    for i, xi in enumerate(pts):
        for lam in pts[i:]:
            for phi in F.elements():
                for c in candidate_certificates(xi, phi, p):
                    if pi_value(c, xi, phi, p) & ~pi_value(c, lam, phi, p):
                        mono += 1
    return {"single_formula_violations": single, "padding_violations": multi,
            "monotonicity_violations": mono, "padding": padding, "samples": samples,
            "ok": single == multi == mono == 0}

def _with_nonce(c: Certificate, k: int) -> Certificate:
    if isinstance(c, Cases):
        return Cases(tuple(_with_nonce(part, k) for part in c.parts))
    if isinstance(c, Base):
        return Base(k, c.formula)
    return Oracle(c.xi, c.psi, k, c.formula)

def uprov_property_suite(p: LevelledPredicate) -> Dict[str, Any]:
    """証明書述語の性質を代数的に読んで実例で検査。算術の健全性は対象外"""
    F = p.frame
    top = F.top
    pts = p.grid.points
    prov = {(lam, phi): provable_element(lam, phi, p) for lam in pts for phi in F.elements()}
    v2 = v3 = v4 = v56 = v56_box = v7 = 0
    for lam in pts:
        for phi in F.elements():
            # 証明可能なら証明書がある: box(φ) ≤ ∃c π(c,λ,φ)
            if box(F, phi) & ~prov[(lam, phi)]:
                v2 += 1
            # MP 閉包: ∃c π(λ, φ→ψ) ∧ ∃c π(λ, φ) ≤ ∃c π(λ, ψ)
            for psi in F.elements():
                if prov[(lam, imp(F, phi, psi))] & prov[(lam, phi)] & ~prov[(lam, psi)]:
                    v3 += 1
            for c in candidate_certificates(lam, phi, p):
                val = pi_value(c, lam, phi, p)
                # ξ ≼ λ で有効な証明書は λ でも有効
                for xi in pts:
                    if compare(xi, lam) is not Cmp.GREATER and pi_value(c, xi, phi, p) & ~val:
                        v4 += 1
                # 再評価しても判定が変わらない
                if pi_value(c, lam, phi, p) != val:
                    v56 += 1
                # box 版（探索のみ）: π ≤ [λ]π、¬π ≤ [λ]¬π
                if val & ~p.apply(lam, val) or (top & ~val) & ~p.apply(lam, top & ~val):
                    v56_box += 1
    # 下位レベルの無矛盾性: ξ ≼ λ なら ⟨ξ⟩φ ≤ [λ]⟨ξ⟩φ（狭義 ξ ≺ λ の組のみ、φ ∈ 宇宙）
    for i, xi in enumerate(pts):
        for lam in pts[i + 1:]:
            for phi in p.universe.elements:
                d = p.dia(xi, phi)
                if d & ~prov[(lam, d)]:
                    v7 += 1
    report = {
        "arithmetic_soundness": {"status": "out of scope"},
        "provable_has_certificate": {"violations": v2, "asserted": True},
        "certified_modus_ponens": {"violations": v3, "asserted": False},
        "level_persistence": {"violations": v4, "asserted": True},
        "rederivable": {"violations": v56, "asserted": True},
        "rederivable_box": {"violations": v56_box, "asserted": False},
        "lower_consistency_certified": {"violations": v7, "asserted": True},
    }
    report["ok"] = all(v["violations"] == 0 for v in report.values()
                       if isinstance(v, dict) and v.get("asserted"))
    if not report["ok"]:
        warn(f"uprov_property_suite: asserted violations {report}")
    debug_print(f"uprov_property_suite: exploratory modus_ponens={v3} rederivable_box={v56_box}")
    return report


# ==============================================================
#   文字列形式
# ==============================================================
def format_certificate(c: Certificate, universe: Sequence[int]) -> str:
    if isinstance(c, Cases):
        return "cases " + " ; ".join(format_certificate(part, universe) for part in c.parts)
    ids = {u: k for k, u in enumerate(universe)}
    if isinstance(c, Base):
        return f"base {c.nonce} {ids[c.formula]}"
    return f"oracle {print_ordinal(c.xi)} {ids[c.psi]} {c.nonce} {ids[c.formula]}"

def parse_certificate(text: str, universe: Sequence[int]) -> Certificate:
    toks = text.split()
    if toks and toks[0] == "cases":
        # "cases <部分> ; <部分> ..."（入れ子は不可）
        body = text.strip()[len("cases"):]
        parts = [parse_certificate(s, universe) for s in body.split(";")]
        if any(isinstance(c, Cases) for c in parts):
            raise CertificateFormatError(f"nested cases in {text!r}")
        try:
            return Cases(tuple(parts))
        except ValueError as e:
            raise CertificateFormatError(str(e)) from e

    def elem(tok: str) -> int:
        if not tok.isdigit() or int(tok) >= len(universe):
            raise CertificateFormatError(f"bad universe id {tok!r}")
        return universe[int(tok)]

    def nat(tok: str) -> int:
        if not tok.isdigit():
            raise CertificateFormatError(f"bad nonce {tok!r}")
        return int(tok)

    if len(toks) == 3 and toks[0] == "base":
        return Base(nat(toks[1]), elem(toks[2]))
    if len(toks) == 5 and toks[0] == "oracle":
        try:
            xi = parse_ordinal(toks[1])
        except OrdinalSyntaxError as e:
            raise CertificateFormatError(str(e)) from e
        return Oracle(xi, elem(toks[2]), nat(toks[3]), elem(toks[4]))
    raise CertificateFormatError(f"expected 'base <nonce> <id>' or "
                                 f"'oracle <ordinal> <psi-id> <nonce> <id>', got {text!r}")

def parse_certificates(text: str, universe: Sequence[int]) -> List[Certificate]:
    return [parse_certificate(s, universe) for s in text.splitlines()
            if s.strip() and not s.strip().startswith("--")]
