# -*- coding: utf-8 -*-
"""
MWB_utils.py ― 共通ユーティリティ（ロジック非依存）
--------------------------------------------------
機能:
  • デバッグ出力 (warn / debug_print) と常時出力のエラー表示 (error_print)
  • MUENCH_THREADS によるワーカー数の決定
  • 入力順を保つ並列 map (ordered_map)
"""

from __future__ import annotations

import os, sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

T = TypeVar("T")
R = TypeVar("R")

# ------------------------------ 定数 ------------------------------
DEBUG_MODE = any(arg in ("-debug", "--debug") for arg in sys.argv)

THREADS_ENV     = "MUENCH_THREADS"
DEFAULT_THREADS = 8

# ------------------------------ 基本ユーティリティ ------------------------------
def set_debug_mode(flag: bool) -> None:
    global DEBUG_MODE
    DEBUG_MODE = bool(flag)

def warn(msg: str) -> None:
    if not DEBUG_MODE:
        return
    print(f"[WARN] {msg}", file=sys.stderr)

def debug_print(msg: str) -> None:
    """--debug指定時のみstderrへ出力"""
    if DEBUG_MODE:
        print(f"[DEBUG] {msg}", file=sys.stderr)

def error_print(msg: str) -> None:
    """利用者向け診断。デバッグ指定に関係なくstderrへ出力"""
    print(f"[ERROR] {msg}", file=sys.stderr)

# -- 並列実行 -------------------------------------------
def worker_count() -> int:
    """MUENCH_THREADS を上限としたワーカー数。不正値は既定値へ"""
    fallback = min(DEFAULT_THREADS, os.cpu_count() or 1)
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return fallback
    try:
        n = int(raw)
    except ValueError:
        warn(f"{THREADS_ENV}={raw!r} is not an integer; using {fallback}")
        return fallback
    if n < 1:
        warn(f"{THREADS_ENV}={n} is below 1; using 1")
        return 1
    return n

def ordered_map(func: Callable[[T], R], items: Iterable[T]) -> List[R]:
    """スレッドプールで func を適用し、結果は入力順で返す"""
    items = list(items)
    workers = min(worker_count(), max(1, len(items)))
    if workers == 1:
        return [func(it) for it in items]
    debug_print(f"ordered_map: {len(items)} jobs on {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
