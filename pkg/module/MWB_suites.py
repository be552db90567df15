# -*- coding: utf-8 -*-
"""
MWB_suites.py ― CLI から呼ぶ検査スイート
--------------------------------------------------
機能:
  • SUITES: スイート名 → Suite(実行関数, assert するか, 既定のフレーム供給元)
  • 各スイートはフレームごとの結果 dict を作る。ordered_map で並列実行し入力順にまとめる
  • run_suite: 全体レポート {"suite", "grid", "mode", "frames", "ok", ...} を返す
exploratory スイートは ok を常に True とし、発見事項だけを記録する。
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, replace
from typing import Any, Callable, Dict, List, Optional, Union

import numpy as np

from .MWB_algebra import check_gl_laws, default_samples
from .MWB_config import FrameCase, RandomSpec, RunConfig, resolve_frames
from .MWB_imc import build_imc
from .MWB_laws import (
    explore_closure_failures, random_assignment, reflexive_induction_instance, soundness_suite,
)
from .MWB_lemmas import LEMMAS
from .MWB_muench import (
    Mode, enumerate_vector, eval_single, eval_vector, evaluate, evaluate_formula,
    finite_level_boxbox,
)
from .MWB_ordinals import Cmp, Ordinal, OrdinalGrid, ZERO, compare, print_ordinal
from .MWB_proofkit import GLP, Proof, check_proof, conservativity_scan
from .MWB_syntax import BLACK, Formula, atoms_of, print_formula, random_formula
from .MWB_uniformpp import (
    certificate_cover, exists_certificate, normalization_checks, uprov_property_suite,
)
from .MWB_utils import debug_print, ordered_map, warn

REFLEXIVE_SAMPLES    = 1000
BOXBOX_MAX_LEVEL     = 3
CROSS_MAX_LEN        = 3
NORMALIZATION_SAMPLES = 200
BRIDGE_INSTANCES     = 10
BRIDGE_LOB_INSTANCES = 5
BRIDGE_ATOMS         = ("p", "q")

FrameResult = Dict[str, Any]
Default = Union[RandomSpec, int]   # int は --all n


@dataclass(frozen=True)
class Suite:
    run: Callable[[RunConfig, OrdinalGrid, FrameCase], FrameResult]
    asserted: bool
    default: Default
    mode: Optional[Mode] = None   # None は設定値に従う


def _base(case: FrameCase) -> FrameResult:
    return {"name": case.name, "seed": case.seed, "worlds": case.frame.n}


# ==============================================================
#   健全性
# ==============================================================
def _zero_level_failures(p) -> List[Dict[str, Any]]:
    """[0] の表が box と一致するか"""
    bad = np.flatnonzero(p.table(ZERO) != p.frame.box_table)
    if bad.size:
        return [{"law": "zero_level", "level": "0", "witness_x": int(bad[0])}]
    return []

def _soundness(cfg: RunConfig, grid: OrdinalGrid, case: FrameCase, mode: Mode,
               exploratory: bool) -> FrameResult:
    F = case.frame
    p = evaluate(F, grid, cfg.universe_for(F), mode, cfg.max_len)
    rep = soundness_suite(p, cfg.sample_limit, cfg.seed, cfg.exhaustive_max_worlds)
    out = _base(case)
    failures = _zero_level_failures(p) + [asdict(r) for r in rep.failures()]
    out["checked"] = sum(r.checked for r in rep.records)
    out["failures"] = failures
    out["ok"] = not failures
    if exploratory or cfg.exploratory:
        findings: Dict[str, int] = {}
        for r in rep.records:
            if not r.asserted:
                findings[r.law] = findings.get(r.law, 0) + r.violations
        out["exploratory"] = findings
    return out

def run_vector_soundness(cfg: RunConfig, grid: OrdinalGrid, case: FrameCase) -> FrameResult:
    return _soundness(cfg, grid, case, Mode.VECTOR, False)

def run_single_asserted(cfg: RunConfig, grid: OrdinalGrid, case: FrameCase) -> FrameResult:
    return _soundness(cfg, grid, case, Mode.SINGLE, False)

def run_single_exploratory(cfg: RunConfig, grid: OrdinalGrid, case: FrameCase) -> FrameResult:
    F = case.frame
    p = eval_single(F, grid, cfg.universe_for(F))
    found = explore_closure_failures(F, p, cfg.sample_limit, cfg.seed, cfg.exhaustive_max_worlds)
    out = _base(case)
    out.update(levels=found["levels"], totals=found["totals"], ok=True, failures=[])
    return out


# ==============================================================
#   反射的帰納法
# ==============================================================
def run_reflexive_induction(cfg: RunConfig, grid: OrdinalGrid, case: FrameCase) -> FrameResult:
    F = case.frame
    rng = random.Random(cfg.seed if case.seed is None else cfg.seed + case.seed)
    counts = {"reflexive": 0, "transfinite": 0}
    premises = {"reflexive": 0, "transfinite": 0}
    failures = []
    for k in range(REFLEXIVE_SAMPLES):
        phi = random_assignment(rng, F, grid)
        for variant in counts:
            res = reflexive_induction_instance(F, grid, phi, variant)
            premises[variant] += res["premise"]
            if not res["holds"]:
                counts[variant] += 1
                if len(failures) < 5:
                    failures.append({"variant": variant, "sample": k,
                                     "assignment": {print_ordinal(a): v for a, v in phi.items()}})
    out = _base(case)
    out.update(samples=REFLEXIVE_SAMPLES, premise_held=premises, violations=counts,
               failures=failures, ok=not failures)
    return out


# ==============================================================
#   有限レベルの比較・IMC
# ==============================================================
def _finite_levels(grid: OrdinalGrid) -> List[int]:
    """格子の先頭から 0,1,2,… と続く部分（BOXBOX_MAX_LEVEL まで）"""
    out = []
    for k, pt in enumerate(grid.points):
        if k > BOXBOX_MAX_LEVEL or pt != Ordinal.from_int(k):
            break
        out.append(k)
    return out

def run_boxbox_equivalence(cfg: RunConfig, grid: OrdinalGrid, case: FrameCase) -> FrameResult:
    F = case.frame
    U = cfg.universe_for(F)
    p = eval_single(F, grid, U)
    failures = []
    levels = _finite_levels(grid)
    for k in levels:
        mine = finite_level_boxbox(F, k, U)
        table = p.table(Ordinal.from_int(k))
        bad = [x for x in F.elements() if mine[x] != int(table[x])]
        if bad:
            failures.append({"level": k, "witness_x": bad[0],
                             "boxbox": mine[bad[0]], "muench": int(table[bad[0]])})
    out = _base(case)
    out.update(levels=levels, failures=failures, ok=not failures)
    return out

def run_imc_uniqueness(cfg: RunConfig, grid: OrdinalGrid, case: FrameCase) -> FrameResult:
    F = case.frame
    res = build_imc(F, grid, cfg.universe_for(F))
    failures = []
    if not res.verified:
        failures.append({"check": "built class satisfies the recursion"})
    bad = {w: c for w, c in res.solutions.items() if c != 1}
    if bad:
        failures.append({"check": "exactly one class per world", "solutions": bad})
    out = _base(case)
    out.update(solutions={str(w): c for w, c in res.solutions.items()},
               verified=res.verified, failures=failures, ok=not failures)
    return out


# ==============================================================
#   一様証明述語
# ==============================================================
def run_uniform_pp(cfg: RunConfig, grid: OrdinalGrid, case: FrameCase) -> FrameResult:
    F = case.frame
    p = eval_single(F, grid, cfg.universe_for(F))
    failures = []
    for lam in grid.points:
        for phi in F.elements():
            cover = certificate_cover(lam, phi, p)
            val = p.apply(lam, phi)
            covered = sum(1 << w for w, c in cover.items() if c is not None)
            if covered != val:
                failures.append({"check": "cover", "level": print_ordinal(lam), "phi": phi,
                                 "covered": covered, "provable": val})
            found = exists_certificate(lam, phi, p) is not None
            if found != (val == F.top):
                failures.append({"check": "exists", "level": print_ordinal(lam), "phi": phi,
                                 "found": found, "provable": val})
    norm = normalization_checks(p, min(cfg.sample_limit, NORMALIZATION_SAMPLES), seed=cfg.seed)
    if not norm["ok"]:
        failures.append({"check": "normalization", **norm})
    props = uprov_property_suite(p)
    if not props["ok"]:
        failures.append({"check": "properties", **{k: v for k, v in props.items() if k != "ok"}})
    out = _base(case)
    out.update(normalization=norm, properties=props, failures=failures, ok=not failures)
    return out


# ==============================================================
#   GL 法則・神託の照合
# ==============================================================
def run_gl_laws(cfg: RunConfig, grid: OrdinalGrid, case: FrameCase) -> FrameResult:
    F = case.frame
    rep = check_gl_laws(F, default_samples(F, cfg.sample_limit, cfg.seed, cfg.exhaustive_max_worlds))
    out = _base(case)
    out.update(checked=rep.checked, failures=rep.violations[:10],
               violations=len(rep.violations), ok=rep.ok)
    return out

def run_cross_oracle(cfg: RunConfig, grid: OrdinalGrid, case: FrameCase) -> FrameResult:
    F = case.frame
    U = cfg.universe_for(F)
    failures = []
    top_len = cfg.max_len if cfg.max_len is not None else CROSS_MAX_LEN
    for k in range(1, top_len + 1):
        p = eval_vector(F, grid, U, max_len=k)
        brute = enumerate_vector(F, grid, U, k)
        for i, zeta in enumerate(grid.points):
            table = p.table(zeta)
            bad = [x for x in F.elements() if int(table[x]) != brute[i][x]]
            if bad:
                failures.append({"max_len": k, "level": print_ordinal(zeta), "witness_x": bad[0],
                                 "closure": int(table[bad[0]]), "enumerated": brute[i][bad[0]]})
    out = _base(case)
    out.update(max_len=top_len, failures=failures, ok=not failures)
    return out


# ==============================================================
#   証明と意味論の橋渡し
# ==============================================================
@dataclass(frozen=True)
class BridgeProof:
    lemma: str
    params: Dict[str, str]
    proof: Proof


def bridge_proofs(grid: OrdinalGrid, seed: int = 0) -> List[BridgeProof]:
    """格子上のパラメータで各補題を構成（乱択論理式は格子のラベルだけを使う）"""
    rng = random.Random(seed)
    pts = grid.points
    pairs = [(b, a) for i, b in enumerate(pts) for a in pts[i + 1:]]
    disj = [(a, b) for b in pts if not b.is_zero() for a in pts if compare(a, b) is not Cmp.LESS]

    def formula() -> Formula:
        return random_formula(rng, BRIDGE_ATOMS, pts, 2)

    out: List[BridgeProof] = []
    for k in range(BRIDGE_INSTANCES if pairs else 0):
        b, a = pairs[k % len(pairs)]
        ab = {"alpha": print_ordinal(a), "beta": print_ordinal(b)}
        out.append(BridgeProof("cons-provable", ab, LEMMAS["cons-provable"](a, b)))
        phi = formula()
        out.append(BridgeProof("cons-absorption", {**ab, "phi": print_formula(phi)},
                               LEMMAS["cons-absorption"](a, b, phi)))
        phi = formula()
        out.append(BridgeProof("box-level-mono", {**ab, "phi": print_formula(phi)},
                               LEMMAS["box-level-mono"](b, a, phi)))
    for k in range(BRIDGE_INSTANCES if disj else 0):
        a, b = disj[k % len(disj)]
        phi, psi = formula(), formula()
        out.append(BridgeProof("box-disjunction",
                               {"alpha": print_ordinal(a), "beta": print_ordinal(b),
                                "phi": print_formula(phi), "psi": print_formula(psi)},
                               LEMMAS["box-disjunction"](a, b, phi, psi)))
    for _ in range(BRIDGE_LOB_INSTANCES):
        phi = random_formula(rng, BRIDGE_ATOMS, (ZERO, BLACK), 2)
        out.append(BridgeProof("blacksquare-lob", {"phi": print_formula(phi)},
                               LEMMAS["blacksquare-lob"](phi)))
    return out

def check_bridge_proofs(proofs: List[BridgeProof]) -> List[Dict[str, Any]]:
    """構文側の検査: check_proof と保存性"""
    out = []
    for bp in proofs:
        res = check_proof(bp.proof)
        entry: Dict[str, Any] = {"lemma": bp.lemma, "params": bp.params,
                                 "lines": len(bp.proof.lines), "ok": res.ok}
        if not res.ok:
            entry.update(line=res.line, reason=res.reason)
            warn(f"bridge: {bp.lemma} {bp.params} rejected at line {res.line}: {res.reason}")
        if isinstance(bp.proof.system, GLP):
            entry["conservative"] = conservativity_scan(bp.proof, bp.proof.system.cap)
            entry["ok"] = entry["ok"] and entry["conservative"]
        out.append(entry)
    return out

def run_proof_bridge(cfg: RunConfig, grid: OrdinalGrid, case: FrameCase) -> FrameResult:
    """全神託の vector 述語上で各定理を乱択付値に対し評価し ⊤ になるか"""
    F = case.frame
    p = eval_vector(F, grid, None)
    rng = random.Random(cfg.seed if case.seed is None else cfg.seed + case.seed)
    failures = []
    proofs = bridge_proofs(grid, cfg.seed)
    for bp in proofs:
        thm = bp.proof.theorem
        val = {a: rng.randrange(F.size) for a in sorted(atoms_of(thm))}
        levels = grid.points if bp.lemma == "blacksquare-lob" else (None,)
        for lvl in levels:
            got = evaluate_formula(thm, p, val, blacksquare_level=lvl)
            if got != F.top:
                failures.append({"lemma": bp.lemma, "params": bp.params, "valuation": val,
                                 "blacksquare_level": None if lvl is None else print_ordinal(lvl),
                                 "value": got})
    out = _base(case)
    out.update(theorems=len(proofs), failures=failures, ok=not failures)
    return out


# ==============================================================
#   一覧と実行
# ==============================================================
SUITES: Dict[str, Suite] = {
    "vector-soundness":   Suite(run_vector_soundness, True, (20, 5, 1), Mode.VECTOR),
    "single-asserted":    Suite(run_single_asserted, True, (20, 5, 1), Mode.SINGLE),
    "single-exploratory": Suite(run_single_exploratory, False, 3, Mode.SINGLE),
    "reflexive-induction": Suite(run_reflexive_induction, True, (10, 5, 1)),
    "boxbox-equivalence": Suite(run_boxbox_equivalence, True, (20, 4, 1), Mode.SINGLE),
    "imc-uniqueness":     Suite(run_imc_uniqueness, True, 2, Mode.SINGLE),
    "uniform-pp":         Suite(run_uniform_pp, True, (10, 4, 1), Mode.SINGLE),
    "gl-laws":            Suite(run_gl_laws, True, (20, 6, 1)),
    "proof-bridge":       Suite(run_proof_bridge, True, (20, 4, 1), Mode.VECTOR),
    "cross-oracle":       Suite(run_cross_oracle, True, 3, Mode.VECTOR),
}


def run_suite(name: str, cfg: RunConfig) -> Dict[str, Any]:
    if name not in SUITES:
        raise KeyError(name)
    suite = SUITES[name]
    if not cfg.has_frame_source():
        if isinstance(suite.default, int):
            cfg = replace(cfg, all_worlds=suite.default)
        else:
            cfg = replace(cfg, random=suite.default)
    grid = cfg.grid_obj()
    cases = resolve_frames(cfg)
    debug_print(f"run_suite {name}: {len(cases)} frame(s), grid {grid}")
    frames = ordered_map(lambda c: suite.run(cfg, grid, c), cases)
    report: Dict[str, Any] = {
        "suite": name,
        "asserted": suite.asserted,
        "grid": [print_ordinal(z) for z in grid.points],
        "mode": (suite.mode or cfg.mode_obj()).value,
        "oracles": cfg.oracles,
        "frames": frames,
        "frame_count": len(frames),
        "failing_frames": sum(1 for f in frames if not f["ok"]),
    }
    if name == "proof-bridge":
        report["proofs"] = check_bridge_proofs(bridge_proofs(grid, cfg.seed))
        syntax_ok = all(e["ok"] for e in report["proofs"])
    else:
        syntax_ok = True
    report["ok"] = (not suite.asserted) or (syntax_ok and report["failing_frames"] == 0)
    return report
