# -*- coding: utf-8 -*-
"""
MWB_lemmas.py ― 導出補題の証明構成子
--------------------------------------------------
機能:
  • ProofBuilder: 行の追加・重複排除・トートロジー帰結の連鎖
  • derive_cons_provable      : [α]⟨β⟩⊤              (β ≺ α)
  • derive_cons_absorption    : ⟨α⟩⊤ → (⟨β⟩φ ↔ ⟨α⟩⟨β⟩φ)  (β ≺ α)
  • derive_box_disjunction    : ⟨α⟩⊤ → ((⟨β⟩φ ∨ [0]ψ) ↔ ⟨β⟩(φ ∨ [0]ψ))  (0 ≺ β ≼ α)
  • derive_box_level_mono     : [β]φ → [α]φ           (β ≺ α)
  • derive_blacksquare_lob    : ■(■φ→φ) → ■φ          (GL^■)
出力はすべて check_proof を通る。
"""

from __future__ import annotations

from typing import Dict, List, Sequence

from .MWB_ordinals import Cmp, Ordinal, ZERO, compare, print_ordinal, succ
from .MWB_proofkit import (
    AxDiaMono, AxDistrib, AxIntrospect, AxLob, AxTrans, AxiomSystem, BSq1, BSq2, BSq3,
    GLBlackSquare, GLP, Justification, MP, Nec, Proof, ProofLine, Taut, is_tautology,
)
from .MWB_syntax import (
    BLACK, TOP, Box, Formula, Iff, Imp, Label, Not, Or, dia, labels, signature,
    uses_blacksquare,
)
from .MWB_utils import debug_print


class DerivationError(ValueError):
    pass


# ==============================================================
#   ProofBuilder
# ==============================================================
class ProofBuilder:
    """行番号は 1 始まり。同じ式は一度だけ書く"""

    def __init__(self, system: AxiomSystem):
        self.system = system
        self.lines: List[ProofLine] = []
        self._index: Dict[Formula, int] = {}

    def formula(self, i: int) -> Formula:
        return self.lines[i - 1].formula

    def add(self, f: Formula, just: Justification) -> int:
        if f in self._index:
            return self._index[f]
        self.lines.append(ProofLine(f, just))
        self._index[f] = len(self.lines)
        return len(self.lines)

    def taut(self, f: Formula) -> int:
        if not is_tautology(f):
            raise DerivationError(f"internal: not a tautology: {f}")
        return self.add(f, Taut())

    def mp(self, i: int, j: int) -> int:
        imp = self.formula(j)
        if not (isinstance(imp, Imp) and imp.left == self.formula(i)):
            raise DerivationError(f"internal: line {j} does not start with line {i}")
        return self.add(imp.right, MP(i, j))

    def nec(self, label: Label, i: int) -> int:
        return self.add(Box(label, self.formula(i)), Nec(label, i))

    # -- 派生規則 ---------------------------------------
    def from_taut(self, premises: Sequence[int], conclusion: Formula) -> int:
        """premises ⊢ conclusion が命題論理的帰結のとき、taut 行と MP の連鎖で導く"""
        chain = conclusion
        for p in reversed(premises):
            chain = Imp(self.formula(p), chain)
        cur = self.taut(chain)
        for p in premises:
            cur = self.mp(p, cur)
        return cur

    def box_mono(self, label: Label, k: int) -> int:
        """行 k: A→B から [l]A → [l]B"""
        ab = self.formula(k)
        boxed = self.nec(label, k)
        ax = self.add(Imp(Box(label, ab), Imp(Box(label, ab.left), Box(label, ab.right))),
                      AxDistrib(label))
        return self.mp(boxed, ax)

    def dia_mono(self, label: Label, k: int) -> int:
        """行 k: A→B から ⟨l⟩A → ⟨l⟩B"""
        a, b = self.formula(k).left, self.formula(k).right
        contra = self.from_taut([k], Imp(Not(b), Not(a)))
        boxed = self.box_mono(label, contra)
        return self.from_taut([boxed], Imp(dia(label, a), dia(label, b)))

    def box_level_mono(self, beta: Ordinal, alpha: Ordinal, x: Formula) -> int:
        """[β]X → [α]X（軸 5 の対偶と二重否定の出し入れ）"""
        nnx = Not(Not(x))
        ax5 = self.add(Imp(dia(alpha, Not(x)), dia(beta, Not(x))), AxDiaMono(beta, alpha))
        intro_nn = self.box_mono(beta, self.taut(Imp(x, nnx)))
        elim_nn = self.box_mono(alpha, self.taut(Imp(nnx, x)))
        return self.from_taut([intro_nn, ax5, elim_nn], Imp(Box(beta, x), Box(alpha, x)))

    def box_dia_consistency(self, alpha: Label, x: Formula) -> int:
        """⟨α⟩⊤ → ([α]X → ⟨α⟩X)"""
        t = self.taut(Imp(x, Imp(Not(x), Not(TOP))))
        l1 = self.box_mono(alpha, t)
        l2 = self.add(Imp(Box(alpha, Imp(Not(x), Not(TOP))),
                          Imp(Box(alpha, Not(x)), Box(alpha, Not(TOP)))), AxDistrib(alpha))
        return self.from_taut([l1, l2], Imp(dia(alpha, TOP), Imp(Box(alpha, x), dia(alpha, x))))

    def dia_trans(self, beta: Label, phi: Formula) -> int:
        """⟨β⟩⟨β⟩φ → ⟨β⟩φ"""
        y = Box(beta, Not(phi))
        four = self.add(Imp(y, Box(beta, y)), AxTrans(beta))
        nn = self.box_mono(beta, self.taut(Imp(y, Not(Not(y)))))
        return self.from_taut([four, nn], Imp(dia(beta, dia(beta, phi)), dia(beta, phi)))

    def box_dia_combine(self, beta: Label, c: Formula, a: Formula, b: Formula) -> int:
        """C∧A→B が恒真のとき [β]C → (⟨β⟩A → ⟨β⟩B)"""
        t = self.taut(Imp(c, Imp(Not(b), Not(a))))
        l1 = self.box_mono(beta, t)
        l2 = self.add(Imp(Box(beta, Imp(Not(b), Not(a))),
                          Imp(Box(beta, Not(b)), Box(beta, Not(a)))), AxDistrib(beta))
        return self.from_taut([l1, l2], Imp(Box(beta, c), Imp(dia(beta, a), dia(beta, b))))

    def build(self) -> Proof:
        debug_print(f"ProofBuilder: {len(self.lines)} lines")
        return Proof(self.system, tuple(self.lines))


# ==============================================================
#   前提条件
# ==============================================================
def _require_below(beta: Ordinal, alpha: Ordinal) -> None:
    if compare(beta, alpha) is not Cmp.LESS:
        raise DerivationError(f"requires beta < alpha, got beta={print_ordinal(beta)}, "
                              f"alpha={print_ordinal(alpha)}")

def _require_glp_formula(*fs: Formula) -> None:
    for f in fs:
        if uses_blacksquare(f):
            raise DerivationError(f"{f} uses the black square, which GLP does not have")

def _glp_for(*parts) -> GLP:
    """使われる全ラベルの最大値の次を cap とする"""
    top = ZERO
    for p in parts:
        cands = signature(p) if isinstance(p, Formula) else {p}
        for a in cands:
            if compare(top, a) is Cmp.LESS:
                top = a
    return GLP(succ(top))


# ==============================================================
#   補題
# ==============================================================
def derive_cons_provable(alpha: Ordinal, beta: Ordinal) -> Proof:
    """[α]⟨β⟩⊤: 内省・箱の下の ex falso・レベル単調性の場合分け"""
    _require_below(beta, alpha)
    pb = ProofBuilder(_glp_for(alpha, beta))
    cons = dia(beta, TOP)
    l1 = pb.add(Imp(cons, Box(alpha, cons)), AxIntrospect(beta, alpha))
    l2 = pb.box_mono(beta, pb.taut(Imp(Not(TOP), cons)))
    l3 = pb.box_level_mono(beta, alpha, cons)
    pb.from_taut([l1, l2, l3], Box(alpha, cons))
    return pb.build()


def derive_cons_absorption(alpha: Ordinal, beta: Ordinal, phi: Formula) -> Proof:
    _require_below(beta, alpha)
    _require_glp_formula(phi)
    pb = ProofBuilder(_glp_for(alpha, beta, phi))
    dphi = dia(beta, phi)
    l1 = pb.add(Imp(dphi, Box(alpha, dphi)), AxIntrospect(beta, alpha))
    l2 = pb.box_dia_consistency(alpha, dphi)
    l3 = pb.add(Imp(dia(alpha, dphi), dia(beta, dphi)), AxDiaMono(beta, alpha))
    l4 = pb.dia_trans(beta, phi)
    goal = Imp(dia(alpha, TOP), Iff(dphi, dia(alpha, dphi)))
    pb.from_taut([l1, l2, l3, l4], goal)
    return pb.build()


def derive_box_disjunction(alpha: Ordinal, beta: Ordinal, phi: Formula, psi: Formula) -> Proof:
    """[0] が □ の役"""
    if beta.is_zero():
        raise DerivationError("requires beta > 0")
    if compare(alpha, beta) is Cmp.LESS:
        raise DerivationError(f"requires beta <= alpha, got beta={print_ordinal(beta)}, "
                              f"alpha={print_ordinal(alpha)}")
    _require_glp_formula(phi, psi)
    pb = ProofBuilder(_glp_for(alpha, beta, phi, psi))
    bpsi = Box(ZERO, psi)
    disj = Or(phi, bpsi)
    nn_psi = Box(ZERO, Not(Not(psi)))

    prem = [pb.add(Imp(bpsi, Box(ZERO, bpsi)), AxTrans(ZERO)),
            pb.box_level_mono(ZERO, alpha, bpsi),
            pb.box_dia_consistency(alpha, bpsi)]
    if beta != alpha:
        prem.append(pb.add(Imp(dia(alpha, bpsi), dia(beta, bpsi)), AxDiaMono(beta, alpha)))
    prem.append(pb.dia_mono(beta, pb.taut(Imp(bpsi, disj))))
    prem.append(pb.dia_mono(beta, pb.taut(Imp(phi, disj))))
    # ¬[0]ψ → [β]¬[0]ψ を内省から
    # [0]¬¬ψ ↔ [0]ψ は二方向とも要る
    l7 = pb.box_mono(ZERO, pb.taut(Imp(Not(Not(psi)), psi)))
    l7b = pb.box_mono(ZERO, pb.taut(Imp(psi, Not(Not(psi)))))
    l8 = pb.add(Imp(Not(nn_psi), Box(beta, Not(nn_psi))), AxIntrospect(ZERO, beta))
    l9 = pb.box_mono(beta, pb.from_taut([l7b], Imp(Not(nn_psi), Not(bpsi))))
    l10 = pb.box_dia_combine(beta, Not(bpsi), disj, phi)
    prem += [l7, l7b, l8, l9, l10]

    goal = Imp(dia(alpha, TOP), Iff(Or(dia(beta, phi), bpsi), dia(beta, disj)))
    pb.from_taut(prem, goal)
    return pb.build()


def derive_box_level_mono(beta: Ordinal, alpha: Ordinal, phi: Formula) -> Proof:
    _require_below(beta, alpha)
    _require_glp_formula(phi)
    pb = ProofBuilder(_glp_for(alpha, beta, phi))
    pb.box_level_mono(beta, alpha, phi)
    return pb.build()


def derive_blacksquare_lob(phi: Formula) -> Proof:
    """□-Löb を θ = ■B→■φ （B = ■φ→φ）に適用する"""
    bad = [l for l in labels(phi) if l != BLACK and l != ZERO]
    if bad:
        raise DerivationError(f"{phi} is not in the GL^# language (labels 0 and # only)")
    pb = ProofBuilder(GLBlackSquare())
    bphi = Box(BLACK, phi)
    b = Imp(bphi, phi)
    theta = Imp(Box(BLACK, b), bphi)
    l1 = pb.add(Imp(Box(ZERO, theta), Box(BLACK, theta)), BSq1())
    l2 = pb.add(Imp(Box(BLACK, b), Box(BLACK, Box(BLACK, b))), BSq3())
    l3 = pb.add(Imp(Box(BLACK, theta), Imp(Box(BLACK, Box(BLACK, b)), Box(BLACK, bphi))), BSq2())
    l4 = pb.add(Imp(Box(BLACK, b), Imp(Box(BLACK, bphi), bphi)), BSq2())
    step = pb.from_taut([l1, l2, l3, l4], Imp(Box(ZERO, theta), theta))
    boxed = pb.nec(ZERO, step)
    lob = pb.add(Imp(Box(ZERO, Imp(Box(ZERO, theta), theta)), Box(ZERO, theta)), AxLob(ZERO))
    box_theta = pb.mp(boxed, lob)
    pb.mp(box_theta, step)
    return pb.build()


LEMMAS = {
    "cons-provable":   derive_cons_provable,
    "cons-absorption": derive_cons_absorption,
    "box-disjunction": derive_box_disjunction,
    "box-level-mono":  derive_box_level_mono,
    "blacksquare-lob": derive_blacksquare_lob,
}
