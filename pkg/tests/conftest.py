# -*- coding: utf-8 -*-
"""共通フィクスチャ: 小さな GL フレームと一時ファイル"""
import json
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from module.MWB_algebra import Frame, chain  # noqa: E402


@pytest.fixture
def one_world():
    return Frame(1, frozenset())

@pytest.fixture
def two_chain():
    return chain(2)

@pytest.fixture
def three_chain():
    return chain(3)

@pytest.fixture
def fork():
    """葉 w0, w1。w2 は w0 だけ、w3 は w1 だけ、w4 は両方を見る"""
    return Frame.from_edges(5, [(2, 0), (3, 1), (4, 0), (4, 1)])

@pytest.fixture
def write_json(tmp_path):
    def _write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)
    return _write
