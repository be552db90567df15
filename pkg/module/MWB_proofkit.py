# -*- coding: utf-8 -*-
"""
MWB_proofkit.py ― ヒルベルト式証明オブジェクトと検査器
--------------------------------------------------
機能:
  • 公理系 GLP(cap) / GLBlackSquare
  • 根拠 (Justification): taut, K, 4, lob, diamono, intro, bsq1-3, mp, nec
  • is_tautology: 極大 Box を原子化したうえでビット並列真理値表
  • check_proof: 各行をパターン照合で検査し CheckResult を返す
  • 証明ファイル形式の読み書き (parse_proof / format_proof)
  • conservativity_scan: ラベルが Λ' 未満に収まるかの構文的検査
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .MWB_ordinals import (
    Cmp, Ordinal, ONE, ZERO, OrdinalSyntaxError, compare, parse_ordinal, print_ordinal, succ,
)
from .MWB_syntax import (
    BLACK, Atom, And, Bot, Box, Formula, FormulaSyntaxError, Iff, Imp, Label, Not, Or, Top,
    abstract_atoms, as_diamond, label_text, labels, parse_formula, print_formula,
)
from .MWB_utils import debug_print

MAX_TAUT_ATOMS = 24


class TooManyAtomsError(ValueError):
    pass

class SystemMismatchError(ValueError):
    pass

class ProofFormatError(ValueError):
    """証明ファイルの書式エラー。line はファイル中の 1 始まり行番号"""
    def __init__(self, msg: str, line: int):
        super().__init__(f"line {line}: {msg}")
        self.line = line


# ==============================================================
#   公理系
# ==============================================================
@dataclass(frozen=True)
class GLP:
    cap: Ordinal

@dataclass(frozen=True)
class GLBlackSquare:
    pass

AxiomSystem = Union[GLP, GLBlackSquare]


# ==============================================================
#   根拠
# ==============================================================
@dataclass(frozen=True)
class Taut:
    pass

@dataclass(frozen=True)
class AxDistrib:
    label: Label

@dataclass(frozen=True)
class AxTrans:
    label: Label

@dataclass(frozen=True)
class AxLob:
    label: Label

@dataclass(frozen=True)
class AxDiaMono:
    """⟨ζ⟩A → ⟨ξ⟩A （ξ ≺ ζ）"""
    xi: Ordinal
    zeta: Ordinal

@dataclass(frozen=True)
class AxIntrospect:
    """⟨ξ⟩A → [ζ]⟨ξ⟩A （ξ ≺ ζ）"""
    xi: Ordinal
    zeta: Ordinal

@dataclass(frozen=True)
class BSq1:
    pass

@dataclass(frozen=True)
class BSq2:
    pass

@dataclass(frozen=True)
class BSq3:
    pass

@dataclass(frozen=True)
class MP:
    """行 i が φ、行 j が φ→（この行）"""
    i: int
    j: int

@dataclass(frozen=True)
class Nec:
    label: Label
    i: int

Justification = Union[Taut, AxDistrib, AxTrans, AxLob, AxDiaMono, AxIntrospect,
                      BSq1, BSq2, BSq3, MP, Nec]


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    just: Justification

@dataclass(frozen=True)
class Proof:
    system: AxiomSystem
    lines: Tuple[ProofLine, ...]

    @property
    def theorem(self) -> Formula:
        return self.lines[-1].formula

@dataclass(frozen=True)
class CheckResult:
    ok: bool
    line: int = 0
    reason: str = ""


# ==============================================================
#   トートロジー判定
# ==============================================================
def _atom_masks(k: int) -> Tuple[List[int], int]:
    rows = 1 << k
    full = (1 << rows) - 1
    masks = []
    for i in range(k):
        half = 1 << i
        pattern, length = ((1 << half) - 1) << half, half * 2
        while length < rows:
            pattern |= pattern << length
            length *= 2
        masks.append(pattern & full)
    return masks, full

def _truth(f: Formula, env: Dict[str, int], full: int) -> int:
    if isinstance(f, Atom):
        return env[f.name]
    if isinstance(f, Top):
        return full
    if isinstance(f, Bot):
        return 0
    if isinstance(f, Not):
        return full & ~_truth(f.body, env, full)
    a, b = _truth(f.left, env, full), _truth(f.right, env, full)
    if isinstance(f, And):
        return a & b
    if isinstance(f, Or):
        return a | b
    if isinstance(f, Imp):
        return (full & ~a) | b
    if isinstance(f, Iff):
        return full & ~(a ^ b)
    raise TypeError(f"unexpected node {type(f).__name__}")

def is_tautology(f: Formula) -> bool:
    skeleton, _ = abstract_atoms(f)
    names = sorted({g.name for g in _atoms(skeleton)})
    if len(names) > MAX_TAUT_ATOMS:
        raise TooManyAtomsError(f"{len(names)} atoms after abstraction (limit {MAX_TAUT_ATOMS})")
    masks, full = _atom_masks(len(names))
    return _truth(skeleton, dict(zip(names, masks)), full) == full

def _atoms(f: Formula):
    if isinstance(f, Atom):
        yield f
    elif isinstance(f, Not):
        yield from _atoms(f.body)
    elif isinstance(f, (And, Or, Imp, Iff)):
        yield from _atoms(f.left)
        yield from _atoms(f.right)


# ==============================================================
#   公理パターン
# ==============================================================
def _match_distrib(f: Formula, l: Label) -> bool:
    # [l](A→B) → ([l]A → [l]B)
    if not (isinstance(f, Imp) and isinstance(f.left, Box) and isinstance(f.right, Imp)):
        return False
    inner, rhs = f.left, f.right
    return (inner.label == l and isinstance(inner.body, Imp)
            and rhs.left == Box(l, inner.body.left) and rhs.right == Box(l, inner.body.right))

def _match_trans(f: Formula, l: Label) -> bool:
    # [l]A → [l][l]A
    return (isinstance(f, Imp) and isinstance(f.left, Box) and f.left.label == l
            and f.right == Box(l, f.left))

def _match_lob(f: Formula, l: Label) -> bool:
    # [l]([l]A → A) → [l]A
    if not (isinstance(f, Imp) and isinstance(f.right, Box) and f.right.label == l):
        return False
    a = f.right.body
    return f.left == Box(l, Imp(Box(l, a), a))

def _match_dia_mono(f: Formula, xi: Ordinal, zeta: Ordinal) -> bool:
    # ⟨ζ⟩A → ⟨ξ⟩A
    if not isinstance(f, Imp):
        return False
    lhs, rhs = as_diamond(f.left), as_diamond(f.right)
    return (lhs is not None and rhs is not None and lhs[0] == zeta and rhs[0] == xi
            and lhs[1] == rhs[1])

def _match_introspect(f: Formula, xi: Ordinal, zeta: Ordinal) -> bool:
    # ⟨ξ⟩A → [ζ]⟨ξ⟩A
    if not isinstance(f, Imp):
        return False
    d = as_diamond(f.left)
    return d is not None and d[0] == xi and f.right == Box(zeta, f.left)

def _match_bsq1(f: Formula) -> bool:
    # □A → ■A
    return (isinstance(f, Imp) and isinstance(f.left, Box) and f.left.label == ZERO
            and f.right == Box(BLACK, f.left.body))


# ==============================================================
#   検査器
# ==============================================================
def _label_ok(system: AxiomSystem, l: Label) -> Optional[str]:
    if isinstance(system, GLP):
        if l == BLACK:
            return "the black square belongs to GL^#, not GLP"
        if compare(l, system.cap) is not Cmp.LESS:
            return f"label {print_ordinal(l)} is not below the cap {print_ordinal(system.cap)}"
        return None
    if l == BLACK or l == ZERO:
        return None
    return f"GL^# only knows labels 0 and #, got {label_text(l)}"

def _check_line(system: AxiomSystem, lines: Sequence[ProofLine], n: int) -> Optional[str]:
    f, j = lines[n - 1].formula, lines[n - 1].just
    for l in labels(f):
        bad = _label_ok(system, l)
        if bad:
            return bad
    gl_bsq = isinstance(system, GLBlackSquare)

    if isinstance(j, Taut):
        try:
            return None if is_tautology(f) else "not a propositional tautology"
        except TooManyAtomsError as e:
            return str(e)

    if isinstance(j, (AxDistrib, AxTrans, AxLob)):
        if gl_bsq and j.label != ZERO:
            return "GL^# has K, 4 and Lob only for label 0"
        bad = _label_ok(system, j.label)
        if bad:
            return bad
        matcher = {AxDistrib: _match_distrib, AxTrans: _match_trans, AxLob: _match_lob}[type(j)]
        name = {AxDistrib: "K", AxTrans: "4", AxLob: "Lob"}[type(j)]
        return None if matcher(f, j.label) else f"not an instance of {name} for [{label_text(j.label)}]"

    if isinstance(j, (AxDiaMono, AxIntrospect)):
        if gl_bsq:
            return "cross axioms are not part of GL^#"
        for l in (j.xi, j.zeta):
            bad = _label_ok(system, l)
            if bad:
                return bad
        if compare(j.xi, j.zeta) is not Cmp.LESS:
            return f"label order violated: {print_ordinal(j.xi)} is not below {print_ordinal(j.zeta)}"
        if isinstance(j, AxDiaMono):
            ok = _match_dia_mono(f, j.xi, j.zeta)
            return None if ok else "not an instance of <zeta>A -> <xi>A"
        ok = _match_introspect(f, j.xi, j.zeta)
        return None if ok else "not an instance of <xi>A -> [zeta]<xi>A"

    if isinstance(j, (BSq1, BSq2, BSq3)):
        if not gl_bsq:
            return "black square axioms need the GL^# system"
        if isinstance(j, BSq1):
            return None if _match_bsq1(f) else "not an instance of [0]A -> #A"
        if isinstance(j, BSq2):
            return None if _match_distrib(f, BLACK) else "not an instance of K for #"
        return None if _match_trans(f, BLACK) else "not an instance of 4 for #"

    if isinstance(j, MP):
        for idx in (j.i, j.j):
            if not 1 <= idx < n:
                return f"bad index {idx}: must refer to an earlier line"
        if lines[j.j - 1].formula != Imp(lines[j.i - 1].formula, f):
            return f"line {j.j} is not line {j.i} -> this line"
        return None

    if isinstance(j, Nec):
        if not 1 <= j.i < n:
            return f"bad index {j.i}: must refer to an earlier line"
        if gl_bsq and j.label != ZERO:
            return "GL^# has necessitation only for label 0"
        bad = _label_ok(system, j.label)
        if bad:
            return bad
        if f != Box(j.label, lines[j.i - 1].formula):
            return f"not [{label_text(j.label)}] applied to line {j.i}"
        return None

    return f"unknown justification {j!r}"

def check_proof(p: Proof) -> CheckResult:
    if not p.lines:
        return CheckResult(False, 0, "empty proof")
    for n in range(1, len(p.lines) + 1):
        reason = _check_line(p.system, p.lines, n)
        if reason is not None:
            debug_print(f"check_proof: line {n}: {reason}")
            return CheckResult(False, n, reason)
    return CheckResult(True)

def conservativity_scan(p: Proof, cap: Ordinal) -> bool:
    """証明中の全ラベルが cap 未満か"""
    if isinstance(p.system, GLBlackSquare):
        raise SystemMismatchError("conservativity is a GLP notion; this proof is in GL^#")
    used = set()
    for ln in p.lines:
        used |= labels(ln.formula)
        j = ln.just
        if isinstance(j, (AxDistrib, AxTrans, AxLob, Nec)):
            used.add(j.label)
        elif isinstance(j, (AxDiaMono, AxIntrospect)):
            used |= {j.xi, j.zeta}
    return all(compare(l, cap) is Cmp.LESS for l in used)


# ==============================================================
#   証明ファイル形式
# ==============================================================
def just_text(j: Justification) -> str:
    if isinstance(j, Taut):
        return "taut"
    if isinstance(j, AxDistrib):
        return f"K {label_text(j.label)}"
    if isinstance(j, AxTrans):
        return f"4 {label_text(j.label)}"
    if isinstance(j, AxLob):
        return f"lob {label_text(j.label)}"
    if isinstance(j, AxDiaMono):
        return f"diamono {print_ordinal(j.xi)} {print_ordinal(j.zeta)}"
    if isinstance(j, AxIntrospect):
        return f"intro {print_ordinal(j.xi)} {print_ordinal(j.zeta)}"
    if isinstance(j, (BSq1, BSq2, BSq3)):
        return type(j).__name__.lower()
    if isinstance(j, MP):
        return f"mp {j.i} {j.j}"
    if isinstance(j, Nec):
        return f"nec {label_text(j.label)} {j.i}"
    raise TypeError(f"unknown justification {j!r}")

def format_proof(p: Proof) -> str:
    if isinstance(p.system, GLBlackSquare):
        out = ["system GLBSQ"]
    else:
        out = [f"system GLP {print_ordinal(p.system.cap)}"]
    for n, ln in enumerate(p.lines, 1):
        out.append(f"{n}: {print_formula(ln.formula)} ; {just_text(ln.just)}")
    return "\n".join(out) + "\n"

def _parse_label(tok: str, lineno: int) -> Label:
    if tok == "#":
        return BLACK
    try:
        return parse_ordinal(tok)
    except OrdinalSyntaxError as e:
        raise ProofFormatError(f"bad label {tok!r}: {e}", lineno) from e

def _parse_index(tok: str, lineno: int) -> int:
    if not tok.isdigit():
        raise ProofFormatError(f"bad line index {tok!r}", lineno)
    return int(tok)

def parse_justification(text: str, lineno: int = 0) -> Justification:
    toks = text.split()
    if not toks:
        raise ProofFormatError("missing justification", lineno)
    head, args = toks[0].lower(), toks[1:]
    arity = {"taut": 0, "k": 1, "4": 1, "lob": 1, "diamono": 2, "intro": 2,
             "bsq1": 0, "bsq2": 0, "bsq3": 0, "mp": 2, "nec": 2}
    if head not in arity:
        raise ProofFormatError(f"unknown justification {toks[0]!r}", lineno)
    if len(args) != arity[head]:
        raise ProofFormatError(f"{head} takes {arity[head]} argument(s)", lineno)
    if head == "taut":
        return Taut()
    if head in ("k", "4", "lob"):
        lab = _parse_label(args[0], lineno)
        return {"k": AxDistrib, "4": AxTrans, "lob": AxLob}[head](lab)
    if head in ("diamono", "intro"):
        xi, zeta = (_parse_label(a, lineno) for a in args)
        if xi == BLACK or zeta == BLACK:
            raise ProofFormatError(f"{head} needs ordinal labels", lineno)
        return (AxDiaMono if head == "diamono" else AxIntrospect)(xi, zeta)
    if head.startswith("bsq"):
        return {"bsq1": BSq1, "bsq2": BSq2, "bsq3": BSq3}[head]()
    if head == "mp":
        return MP(_parse_index(args[0], lineno), _parse_index(args[1], lineno))
    return Nec(_parse_label(args[0], lineno), _parse_index(args[1], lineno))

def _used_ordinals(lines: Sequence[ProofLine]) -> List[Ordinal]:
    out: List[Ordinal] = []
    for ln in lines:
        out += [l for l in labels(ln.formula) if isinstance(l, Ordinal)]
        j = ln.just
        if isinstance(j, (AxDistrib, AxTrans, AxLob, Nec)) and isinstance(j.label, Ordinal):
            out.append(j.label)
        elif isinstance(j, (AxDiaMono, AxIntrospect)):
            out += [j.xi, j.zeta]
    return out

def parse_proof(text: str) -> Proof:
    """証明ファイルを読む。ヘッダ省略時は GLP、cap は使用ラベルの最大値の次"""
    system: Optional[AxiomSystem] = None
    lines: List[ProofLine] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("--"):
            continue
        if s.lower().startswith("system"):
            if system is not None or lines:
                raise ProofFormatError("system header must come first", lineno)
            parts = s.split()
            if len(parts) == 2 and parts[1].upper() in ("GLBSQ", "GL#"):
                system = GLBlackSquare()
            elif len(parts) == 3 and parts[1].upper() == "GLP":
                cap = _parse_label(parts[2], lineno)
                if cap == BLACK:
                    raise ProofFormatError("GLP cap must be an ordinal", lineno)
                system = GLP(cap)
            else:
                raise ProofFormatError("expected 'system GLP <ordinal>' or 'system GLBSQ'", lineno)
            continue
        num, colon, rest = s.partition(":")
        if not colon or not num.strip().isdigit():
            raise ProofFormatError("expected '<n>: <formula> ; <justification>'", lineno)
        if int(num) != len(lines) + 1:
            raise ProofFormatError(f"expected line number {len(lines) + 1}, got {num.strip()}", lineno)
        body, semi, just = rest.rpartition(";")
        if not semi:
            raise ProofFormatError("missing ';' before the justification", lineno)
        try:
            f = parse_formula(body)
        except (FormulaSyntaxError, OrdinalSyntaxError) as e:
            raise ProofFormatError(f"formula: {e}", lineno) from e
        lines.append(ProofLine(f, parse_justification(just, lineno)))
    if not lines:
        raise ProofFormatError("empty proof", 0)
    if system is None:
        used = _used_ordinals(lines)
        system = GLP(succ(max(used)) if used else ONE)
    return Proof(system, tuple(lines))
