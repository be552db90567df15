# -*- coding: utf-8 -*-
"""
MWB_config.py ― 実行設定 (RunConfig) の組み立て
--------------------------------------------------
機能:
  • RunConfig: CLI の全ノブを保持するデータクラス
  • --config で渡す JSON ファイルの読み込み（"fileinfo" ヘッダ付き）
  • 格子・フレーム供給元・神託宇宙の解決
  • CLI 引数はファイルの値より優先
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .MWB_algebra import Frame, FrameError, MAX_WORLDS, all_frames, load_frame, random_frame
from .MWB_muench import Mode, OracleUniverse
from .MWB_ordinals import OrdinalGrid, OrdinalSyntaxError, check_order_requirements
from .MWB_utils import debug_print, warn

CONFIG_FILEINFO = {"name": "muenchWorkbench", "info": "run configuration", "version": "1.0"}

DEFAULT_GRID          = ("0", "1", "2")
DEFAULT_SAMPLE_LIMIT  = 4096
DEFAULT_EXHAUSTIVE    = 4


class ConfigError(ValueError):
    pass


RandomSpec = Tuple[int, int, int]   # (個数, 最大世界数, seed)


@dataclass(frozen=True)
class FrameCase:
    """レポートで各フレームを特定するための名前付きフレーム"""
    name: str
    frame: Frame
    seed: Optional[int] = None


@dataclass
class RunConfig:
    command: str = ""
    inputs: List[str] = field(default_factory=list)
    grid: List[str] = field(default_factory=lambda: list(DEFAULT_GRID))
    frame: Optional[str] = None
    random: Optional[RandomSpec] = None
    all_worlds: Optional[int] = None
    oracles: Union[str, List[int]] = "full"
    mode: str = Mode.VECTOR.value
    max_len: Optional[int] = None
    out: Optional[str] = None
    html: Optional[str] = None
    exploratory: bool = False
    sample_limit: int = DEFAULT_SAMPLE_LIMIT
    exhaustive_max_worlds: int = DEFAULT_EXHAUSTIVE
    seed: int = 0

    # -- 解決 -------------------------------------------
    def grid_obj(self) -> OrdinalGrid:
        return parse_grid(self.grid)

    def mode_obj(self) -> Mode:
        try:
            return Mode(self.mode)
        except ValueError:
            raise ConfigError(f"mode must be 'single' or 'vector', got {self.mode!r}") from None

    def universe_for(self, F: Frame) -> Optional[OracleUniverse]:
        """None は全要素の宇宙"""
        if self.oracles == "full":
            return None
        if not isinstance(self.oracles, list) or not self.oracles:
            raise ConfigError(f"oracles must be 'full' or a non-empty list of elements, got {self.oracles!r}")
        bad = [e for e in self.oracles if not isinstance(e, int) or not 0 <= e <= F.top]
        if bad:
            raise ConfigError(f"oracle {bad[0]!r} does not belong to a {F.n}-world frame")
        return OracleUniverse(tuple(self.oracles))

    def has_frame_source(self) -> bool:
        return any(x is not None for x in (self.frame, self.random, self.all_worlds))


# ==============================================================
#   個別パーサ
# ==============================================================
def parse_grid(points: Union[str, Sequence[str]]) -> OrdinalGrid:
    if isinstance(points, str):
        points = [s for s in points.split(",")]
    points = [s.strip() for s in points]
    if not points or any(not s for s in points):
        raise ConfigError(f"empty grid point in {points!r}")
    try:
        grid = OrdinalGrid.from_strings(points)
    except (OrdinalSyntaxError, ValueError) as e:
        raise ConfigError(f"bad grid {','.join(points)!r}: {e}") from e
    if not check_order_requirements(grid):
        raise ConfigError(f"grid {','.join(points)!r} violates the order requirements "
                          f"(needs 0, increasing points, immediate successors)")
    return grid

def parse_random_spec(spec: Union[str, Sequence[int]]) -> RandomSpec:
    """'count,size,seed'。seed は省略不可"""
    parts = spec.split(",") if isinstance(spec, str) else list(spec)
    if len(parts) != 3:
        raise ConfigError(f"--random needs count,size,seed (seed is mandatory), got {spec!r}")
    try:
        count, size, seed = (int(str(p).strip()) for p in parts)
    except ValueError:
        raise ConfigError(f"--random values must be integers, got {spec!r}") from None
    if count < 1:
        raise ConfigError(f"random frame count must be positive, got {count}")
    if not 1 <= size <= MAX_WORLDS:
        raise ConfigError(f"random frame size must be within 1..{MAX_WORLDS}, got {size}")
    return count, size, seed

def parse_oracles(spec: Union[str, Sequence[int]]) -> Union[str, List[int]]:
    if isinstance(spec, str):
        s = spec.strip()
        if s == "full":
            return "full"
        try:
            return [int(t, 0) for t in s.split(",") if t.strip()]
        except ValueError:
            raise ConfigError(f"--oracles must be 'full' or a list of integers, got {spec!r}") from None
    return [int(e) for e in spec]


# ==============================================================
#   設定ファイル
# ==============================================================
def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    info = data.pop("fileinfo", None)
    if info is None:
        warn(f"{path}: no fileinfo header")
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"{path}: unknown key(s) {', '.join(unknown)}")
    debug_print(f"load_config_file: {path} keys={sorted(data)}")
    return data

def build_config(file_values: Optional[Dict[str, Any]] = None,
                 **overrides: Any) -> RunConfig:
    """ファイル値に None でない CLI 値を重ねて RunConfig を作り、検証する"""
    values: Dict[str, Any] = dict(file_values or {})
    values.update({k: v for k, v in overrides.items() if v is not None})
    if "random" in values and values["random"] is not None:
        values["random"] = parse_random_spec(values["random"])
    if "oracles" in values:
        values["oracles"] = parse_oracles(values["oracles"])
    if isinstance(values.get("grid"), str):
        values["grid"] = [s.strip() for s in values["grid"].split(",")]
    cfg = RunConfig(**values)
    validate(cfg)
    return cfg

def validate(cfg: RunConfig) -> None:
    cfg.grid_obj()
    cfg.mode_obj()
    if cfg.max_len is not None and cfg.max_len < 1:
        raise ConfigError(f"max_len must be at least 1, got {cfg.max_len}")
    if cfg.sample_limit < 1:
        raise ConfigError(f"sample_limit must be positive, got {cfg.sample_limit}")
    sources = [x for x in (cfg.frame, cfg.random, cfg.all_worlds) if x is not None]
    if len(sources) > 1:
        raise ConfigError("choose one frame source: --frame, --random or --all")

def config_to_json(cfg: RunConfig) -> Dict[str, Any]:
    out: Dict[str, Any] = {"fileinfo": dict(CONFIG_FILEINFO)}
    for f in fields(RunConfig):
        v = getattr(cfg, f.name)
        out[f.name] = list(v) if isinstance(v, tuple) else v
    return out


# ==============================================================
#   フレーム供給
# ==============================================================
def random_case(index: int, size: int, seed: int) -> FrameCase:
    """i 番目の乱択フレームは seed s = seed + i、世界数は Random(s).randint(1, size)"""
    s = seed + index
    n = random.Random(s).randint(1, size)
    return FrameCase(f"random#{index}(seed={s},n={n})", random_frame(s, n), s)

def resolve_frames(cfg: RunConfig, default: Optional[RandomSpec] = None) -> List[FrameCase]:
    if cfg.frame is not None:
        try:
            return [FrameCase(Path(cfg.frame).name, load_frame(cfg.frame))]
        except OSError as e:
            raise ConfigError(f"cannot read frame {cfg.frame}: {e}") from e
    if cfg.all_worlds is not None:
        try:
            frames = list(all_frames(cfg.all_worlds))
        except FrameError as e:
            raise ConfigError(str(e)) from e
        return [FrameCase(f"all{cfg.all_worlds}#{k}", F) for k, F in enumerate(frames)]
    spec = cfg.random or default
    if spec is None:
        raise ConfigError("no frame source: give --frame, --random count,size,seed or --all n")
    count, size, seed = spec
    return [random_case(i, size, seed) for i in range(count)]
