# -*- coding: utf-8 -*-
"""
muenchWorkbench.py ― エントリポイント（コマンドライン）
サブコマンド: parse / check-proof / derive / eval / suite / explore
終了コード: 0 成功, 1 不正な証明・assert 失敗, 2 入力・設定エラー
"""
from __future__ import annotations

# --- 標準・サードパーティライブラリ ---
import sys, argparse, hashlib
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from localization import _, initialize_localizer

# --- プロジェクト内モジュール ---
from module.MWB_utils import debug_print, error_print, set_debug_mode
from module.MWB_algebra import FrameError, consistency_depth, depth
from module.MWB_config import (
    ConfigError, RunConfig, build_config, load_config_file, resolve_frames,
)
from module.MWB_imc import InstanceTooLargeError
from module.MWB_lemmas import LEMMAS, DerivationError
from module.MWB_muench import (
    GridError, UniverseError, consistency_elements, depth_report, evaluate,
)
from module.MWB_ordinals import OrdinalSyntaxError, parse_ordinal, print_ordinal
from module.MWB_proofkit import (
    ProofFormatError, SystemMismatchError, TooManyAtomsError, check_proof, format_proof,
    parse_proof,
)
from module.MWB_report import dumps, write_html, write_json
from module.MWB_suites import SUITES, run_suite
from module.MWB_syntax import FormulaSyntaxError, parse_formula, print_formula
from module.MWB_uniformpp import CertificateFormatError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

# 表をそのまま載せる上限（それより大きいフレームは sha256 ダイジェスト）
TABLE_MAX_WORLDS = 4

# 入力・設定の誤りとして終了コード 2 にまとめる例外
INPUT_ERRORS = (ConfigError, FrameError, GridError, UniverseError, InstanceTooLargeError,
                OrdinalSyntaxError, FormulaSyntaxError, ProofFormatError, CertificateFormatError,
                TooManyAtomsError, SystemMismatchError)

# 補題ごとの必須パラメータ（構成子の引数順）
LEMMA_PARAMS = {
    "cons-provable":   ("alpha", "beta"),
    "cons-absorption": ("alpha", "beta", "phi"),
    "box-disjunction": ("alpha", "beta", "phi", "psi"),
    "box-level-mono":  ("beta", "alpha", "phi"),
    "blacksquare-lob": ("phi",),
}


# ==============================================================
#   共通
# ==============================================================
def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as f:
        return f.read()

def _emit(report: Dict[str, Any], cfg: RunConfig, title: str, info: str) -> None:
    """--out があれば JSON を、--html があれば要約を書く。--out 無しなら stdout へ"""
    if cfg.out:
        write_json(report, cfg.out, info)
        print(_("report_written", path=cfg.out))
    else:
        sys.stdout.write(dumps(report))
    if cfg.html:
        write_html(title, report, cfg.html)
        print(_("html_written", path=cfg.html))

def _config_from_args(args, command: str) -> RunConfig:
    file_values = load_config_file(args.config) if args.config else {}
    return build_config(
        file_values,
        command=command,
        grid=args.grid,
        frame=args.frame,
        random=args.random,
        all_worlds=args.all,
        oracles=args.oracles,
        mode=args.mode,
        max_len=args.max_len,
        out=args.out,
        html=args.html,
        exploratory=True if args.exploratory else None,
        sample_limit=args.sample_limit,
        exhaustive_max_worlds=args.exhaustive_max_worlds,
        seed=args.seed,
    )


# ==============================================================
#   parse
# ==============================================================
def cmd_parse(args) -> int:
    if args.kind == "ordinal":
        print(print_ordinal(parse_ordinal(args.value)))
    elif args.kind == "formula":
        print(print_formula(parse_formula(args.value)))
    else:
        sys.stdout.write(format_proof(parse_proof(_read_text(args.value))))
    return EXIT_OK


# ==============================================================
#   check-proof
# ==============================================================
def cmd_check_proof(args) -> int:
    proof = parse_proof(_read_text(args.path))
    res = check_proof(proof)
    if not res.ok:
        error_print(_("proof_invalid", line=res.line, reason=res.reason))
        return EXIT_FAIL
    print(_("proof_ok", theorem=print_formula(proof.theorem)))
    return EXIT_OK


# ==============================================================
#   derive
# ==============================================================
def cmd_derive(args) -> int:
    params: List[Any] = []
    for name in LEMMA_PARAMS[args.lemma]:
        raw = getattr(args, name)
        if raw is None:
            error_print(_("missing_param", lemma=args.lemma, param=name))
            return EXIT_INPUT
        params.append(parse_ordinal(raw) if name in ("alpha", "beta") else parse_formula(raw))
    try:
        proof = LEMMAS[args.lemma](*params)
    except DerivationError as e:
        error_print(_("derive_error", error=e))
        return EXIT_INPUT
    text = format_proof(proof)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(_("derive_written", path=args.out))
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ==============================================================
#   eval
# ==============================================================
def _table_entry(table, n: int) -> Dict[str, Any]:
    if n <= TABLE_MAX_WORLDS:
        return {"table": [int(v) for v in table]}
    return {"sha256": hashlib.sha256(table.astype("<u4").tobytes()).hexdigest()}

def cmd_eval(args) -> int:
    cfg = _config_from_args(args, "eval")
    grid, mode = cfg.grid_obj(), cfg.mode_obj()
    frames = []
    for case in resolve_frames(cfg):
        F = case.frame
        p = evaluate(F, grid, cfg.universe_for(F), mode, cfg.max_len)
        cons = consistency_elements(p)
        levels = []
        for z in grid.points:
            entry = {"level": print_ordinal(z), "consistency": cons[z]}
            entry.update(_table_entry(p.table(z), F.n))
            levels.append(entry)
        frames.append({
            "name": case.name, "seed": case.seed, "worlds": F.n,
            "edges": sorted(map(list, F.rel)), "depth": depth(F),
            "consistency_depth": consistency_depth(F),
            "stabilization_index": (print_ordinal(p.stabilization_index)
                                    if p.stabilization_index is not None else None),
            "levels": levels, "depth_report": depth_report(p),
        })
    report = {"command": "eval", "mode": mode.value, "max_len": cfg.max_len,
              "grid": [print_ordinal(z) for z in grid.points], "oracles": cfg.oracles,
              "frames": frames}
    _emit(report, cfg, "eval", "evaluation report")
    debug_print(_("eval_done", frames=len(frames)))
    return EXIT_OK


# ==============================================================
#   suite / explore
# ==============================================================
def _print_failures(report: Dict[str, Any]) -> None:
    for fr in report["frames"]:
        if not fr["ok"]:
            detail = fr["failures"][0] if fr.get("failures") else ""
            error_print(_("frame_failed", name=fr["name"], seed=fr["seed"], detail=detail))

def cmd_suite(args) -> int:
    cfg = _config_from_args(args, "suite")
    report = run_suite(args.name, cfg)
    _emit(report, cfg, f"suite {args.name}", "suite report")
    n, failing = report["frame_count"], report["failing_frames"]
    if not report["asserted"]:
        print(_("suite_exploratory", suite=args.name, frames=n))
        return EXIT_OK
    if report["ok"]:
        print(_("suite_passed", suite=args.name, frames=n))
        return EXIT_OK
    _print_failures(report)
    error_print(_("suite_failed", suite=args.name, failing=failing, frames=n))
    return EXIT_FAIL

def cmd_explore(args) -> int:
    cfg = _config_from_args(args, "explore")
    report = run_suite("single-exploratory", cfg)
    report["command"] = "explore"
    _emit(report, cfg, "explore", "exploration report")
    totals: Dict[str, int] = {}
    for fr in report["frames"]:
        for law, c in fr["totals"].items():
            totals[law] = totals.get(law, 0) + c
    print(_("explore_done", frames=report["frame_count"], totals=totals))
    return EXIT_OK


# ==============================================================
#   引数
# ==============================================================
def _add_run_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON run configuration (CLI flags override it)")
    p.add_argument("--frame", help="frame JSON file")
    p.add_argument("--random", metavar="N,SIZE,SEED", help="N random frames with at most SIZE worlds")
    p.add_argument("--all", type=int, metavar="N", help="every frame with N worlds (N <= 4)")
    p.add_argument("--grid", help='grid points, e.g. "0,1,2,w"')
    p.add_argument("--mode", choices=["single", "vector"])
    p.add_argument("--max-len", type=int, dest="max_len")
    p.add_argument("--oracles", help='"full" or a comma list of elements')
    p.add_argument("--out", help="JSON report path")
    p.add_argument("--html", help="HTML summary path")
    p.add_argument("--exploratory", action="store_true", help="also report exploratory findings")
    p.add_argument("--sample-limit", type=int, dest="sample_limit")
    p.add_argument("--exhaustive-max-worlds", type=int, dest="exhaustive_max_worlds")
    p.add_argument("--seed", type=int, help="seed for sampled law instances")

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="muenchWorkbench", description=_("cli_description"))
    parser.add_argument("--lang", choices=["en", "ja"], help="message language (en, ja)")
    parser.add_argument("--debug", action="store_true", help="enable debug output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="pretty-print an ordinal, a formula or a proof file")
    p.add_argument("kind", choices=["ordinal", "formula", "proof"])
    p.add_argument("value", help="text, or a path for 'proof'")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("check-proof", help="check a proof file")
    p.add_argument("path")
    p.set_defaults(func=cmd_check_proof)

    p = sub.add_parser("derive", help="write a proof of a derived lemma")
    p.add_argument("lemma", choices=sorted(LEMMAS))
    for name in ("alpha", "beta", "phi", "psi"):
        p.add_argument(f"--{name}")
    p.add_argument("--out")
    p.set_defaults(func=cmd_derive)

    for name, func, text in (("eval", cmd_eval, "evaluate the levelled predicate"),
                             ("explore", cmd_explore, "list single-oracle closure failures")):
        p = sub.add_parser(name, help=text)
        _add_run_options(p)
        p.set_defaults(func=func)

    p = sub.add_parser("suite", help="run a check suite")
    p.add_argument("name", choices=sorted(SUITES))
    _add_run_options(p)
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # 言語は --help の表示より先に決める
    lang = None
    if "--lang" in argv:
        k = argv.index("--lang")
        lang = argv[k + 1] if k + 1 < len(argv) else None
    initialize_localizer(lang if lang in ("en", "ja") else None)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else EXIT_OK
    set_debug_mode(args.debug)
    debug_print(f"main: {argv}")
    try:
        return args.func(args)
    except OSError as e:
        error_print(_("input_error", error=e))
        return EXIT_INPUT
    except ConfigError as e:
        error_print(_("config_error", error=e))
        return EXIT_INPUT
    except (ProofFormatError, OrdinalSyntaxError, FormulaSyntaxError, CertificateFormatError) as e:
        error_print(_("parse_error", error=e))
        return EXIT_INPUT
    except INPUT_ERRORS as e:
        error_print(_("input_error", error=e))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
