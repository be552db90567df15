import random

import pytest
from hypothesis import assume, given, settings, strategies as st

from module.MWB_lemmas import (
    derive_blacksquare_lob, derive_box_disjunction, derive_cons_absorption, derive_cons_provable,
)
from module.MWB_ordinals import ONE, Ordinal, ZERO, parse_ordinal, succ
from module.MWB_proofkit import (
    GLBlackSquare, GLP, MP, Proof, ProofFormatError, ProofLine, SystemMismatchError, TooManyAtomsError,
    check_proof, conservativity_scan, format_proof, is_tautology, parse_justification,
    parse_proof,
)
from module.MWB_syntax import BLACK, And, Atom, parse_formula, random_formula

NEC_PROOF = """\
system GLP 2
-- 恒真式に必然化
1: p -> p ; taut
2: [1](p -> p) ; nec 1 1
"""

MP_PROOF = """\
1: [0](p -> q) -> ([0]p -> [0]q) ; K 0
2: [0](p -> q) ; taut
"""


def test_tautology_checker_abstracts_boxes():
    assert is_tautology(parse_formula("p | ~p"))
    assert is_tautology(parse_formula("[1]p -> [1]p"))
    assert is_tautology(parse_formula("([1]p <-> q) -> (q -> [1]p)"))
    assert not is_tautology(parse_formula("[1]p -> [2]p"))
    assert not is_tautology(parse_formula("p -> q"))

def test_tautology_atom_limit():
    big = Atom("x0")
    for k in range(1, 25):
        big = And(big, Atom(f"x{k}"))
    with pytest.raises(TooManyAtomsError):
        is_tautology(big)

def test_valid_proof():
    proof = parse_proof(NEC_PROOF)
    assert proof.system == GLP(Ordinal.from_int(2))
    res = check_proof(proof)
    assert res.ok
    assert proof.theorem == parse_formula("[1](p -> p)")

def test_rejected_line_is_reported():
    res = check_proof(parse_proof(MP_PROOF))
    assert not res.ok
    assert res.line == 2
    assert "tautology" in res.reason

def test_bad_mp_index():
    res = check_proof(parse_proof("1: p -> p ; taut\n2: q ; mp 1 3\n"))
    assert (res.ok, res.line) == (False, 2)
    assert "earlier line" in res.reason

def test_label_above_cap():
    res = check_proof(parse_proof("system GLP 1\n1: [1]T ; nec 1 2\n"))
    assert (res.ok, res.line) == (False, 1)

def test_black_square_rules():
    ok = "system GLBSQ\n1: [0]p -> [#]p ; bsq1\n"
    assert check_proof(parse_proof(ok)).ok
    bad = "system GLBSQ\n1: [1](p -> q) -> ([1]p -> [1]q) ; K 1\n"
    assert not check_proof(parse_proof(bad)).ok
    # ヘッダ無しは GLP。■ のラベルも bsq1 も使えない
    res = check_proof(parse_proof("1: [0]p -> [#]p ; bsq1\n"))
    assert (res.ok, res.line) == (False, 1)

def test_default_cap_is_successor_of_max_label():
    proof = parse_proof("1: [w]T ; nec w 0\n")
    assert proof.system == GLP(succ(parse_ordinal("w")))
    assert parse_proof("1: p -> p ; taut\n").system == GLP(ONE)

@pytest.mark.parametrize("text,line", [
    ("", 0),
    ("-- only a comment\n", 0),
    ("2: p -> p ; taut\n", 1),
    ("1: p -> p\n", 1),
    ("1: p -> ; taut\n", 1),
    ("1: p -> p ; frobnicate\n", 1),
    ("1: T ; taut\nsystem GLBSQ\n", 2),
])
def test_format_errors(text, line):
    with pytest.raises(ProofFormatError) as e:
        parse_proof(text)
    assert e.value.line == line

def test_justification_arity():
    assert parse_justification("mp 1 2") == MP(1, 2)
    with pytest.raises(ProofFormatError):
        parse_justification("mp 1")

def test_format_then_parse_is_identity():
    proof = derive_box_disjunction(Ordinal.from_int(2), ONE, parse_formula("p"), parse_formula("q"))
    assert parse_proof(format_proof(proof)) == proof
    lob = derive_blacksquare_lob(parse_formula("p"))
    assert parse_proof(format_proof(lob)) == lob

def test_conservativity():
    proof = parse_proof(NEC_PROOF)
    assert conservativity_scan(proof, Ordinal.from_int(2))
    assert not conservativity_scan(proof, ONE)
    with pytest.raises(SystemMismatchError):
        conservativity_scan(derive_blacksquare_lob(parse_formula("p")), ONE)
    assert derive_blacksquare_lob(parse_formula("p")).system == GLBlackSquare()


# -- 1 行を差し替えた証明 -------------------------------------
TWO = Ordinal.from_int(2)
DERIVED = [
    (lambda: derive_cons_provable(TWO, ONE), [ZERO, ONE]),
    (lambda: derive_cons_absorption(TWO, ONE, parse_formula("[0]p")), [ZERO, ONE]),
    (lambda: derive_box_disjunction(TWO, ONE, parse_formula("p"), parse_formula("q")), [ZERO, ONE]),
    (lambda: derive_blacksquare_lob(parse_formula("p")), [ZERO, BLACK]),
]

@settings(max_examples=60, deadline=None)
@given(st.sampled_from(DERIVED), st.integers(min_value=0, max_value=10**6))
def test_replaced_line_is_rejected_unless_it_rechecks(derived, seed):
    make, labels = derived
    proof = make()
    assert check_proof(proof).ok
    rng = random.Random(seed)
    k = rng.randrange(len(proof.lines))
    f = random_formula(rng, ["p", "q"], labels, 3)
    assume(f != proof.lines[k].formula)
    lines = list(proof.lines)
    lines[k] = ProofLine(f, lines[k].just)
    res = check_proof(Proof(proof.system, tuple(lines)))
    # 差し替えた行を末尾とする証明だけで検査し直す
    alone = check_proof(Proof(proof.system, tuple(lines[:k + 1])))
    if res.ok:
        assert alone.ok
    else:
        assert res.line >= k + 1
    if not alone.ok:
        assert not res.ok and res.line == k + 1
