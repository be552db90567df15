# -*- coding: utf-8 -*-
"""
MWB_report.py ― レポートの書き出し
--------------------------------------------------
機能:
  • write_json: "fileinfo" ヘッダ付き・キー整列・時刻なしの JSON（同じ設定なら同じバイト列）
  • markdown_summary: レポートの要約を Markdown で組み立て
  • write_html: Markdown を HTML に変換して保存
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Union

import markdown

from .MWB_utils import debug_print

REPORT_VERSION = "1.0"

# ノートと同じ拡張セット
MD_EXT = [
    "extra",
    "sane_lists",
    "smarty",
    "tables",
]


def fileinfo(info: str) -> Dict[str, str]:
    return {"name": "muenchWorkbench", "info": info, "version": REPORT_VERSION}

def dumps(report: Mapping[str, Any]) -> str:
    return json.dumps(report, ensure_ascii=False, indent=2, sort_keys=True) + "\n"

def write_json(report: Mapping[str, Any], path: Union[str, Path], info: str = "report") -> Dict[str, Any]:
    data = {"fileinfo": fileinfo(info), **report}
    Path(path).write_text(dumps(data), encoding="utf-8")
    debug_print(f"write_json: {path}")
    return data


# ==============================================================
#   Markdown 要約
# ==============================================================
def _table(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> List[str]:
    out = ["| " + " | ".join(header) + " |",
           "|" + "|".join("---" for _ in header) + "|"]
    for r in rows:
        out.append("| " + " | ".join(str(c) for c in r) + " |")
    return out

def markdown_summary(title: str, report: Mapping[str, Any]) -> str:
    """トップレベルのスカラー値を表に、frames 配下は各フレームの判定を一行ずつ"""
    lines = [f"# {title}", ""]
    scalars = [(k, v) for k, v in sorted(report.items())
               if isinstance(v, (str, int, float, bool)) or v is None]
    if scalars:
        lines += _table(("key", "value"), scalars)
        lines.append("")
    frames = report.get("frames")
    if isinstance(frames, list) and frames:
        lines += ["## frames", ""]
        rows = []
        for fr in frames:
            if not isinstance(fr, Mapping):
                continue
            rows.append((fr.get("name", ""), fr.get("worlds", ""),
                         "ok" if fr.get("ok", True) else "**FAIL**",
                         len(fr.get("failures", []) or [])))
        lines += _table(("frame", "worlds", "asserted", "failures"), rows)
        lines.append("")
        failing = [fr for fr in frames if isinstance(fr, Mapping) and fr.get("failures")]
        for fr in failing:
            lines += [f"### {fr.get('name', '')}", ""]
            for f in fr["failures"]:
                lines.append(f"- `{json.dumps(f, ensure_ascii=False, sort_keys=True)}`")
            lines.append("")
    return "\n".join(lines)

def write_html(title: str, report: Mapping[str, Any], path: Union[str, Path]) -> str:
    body = markdown.markdown(markdown_summary(title, report), extensions=MD_EXT,
                             output_format="html5")
    html = ("<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">"
            f"<title>{title}</title></head>\n<body>\n{body}\n</body></html>\n")
    Path(path).write_text(html, encoding="utf-8")
    debug_print(f"write_html: {path}")
    return html
