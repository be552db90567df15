import random

import pytest
from hypothesis import given, settings, strategies as st

from module.MWB_lemmas import (
    LEMMAS, DerivationError, derive_blacksquare_lob, derive_box_disjunction,
    derive_box_level_mono, derive_cons_absorption, derive_cons_provable,
)
from module.MWB_ordinals import ONE, OMEGA, Ordinal, ZERO, compare, Cmp, succ
from module.MWB_proofkit import GLP, check_proof, conservativity_scan
from module.MWB_syntax import (
    BLACK, TOP, Box, Iff, Imp, Or, dia, parse_formula, random_formula,
)

LEVELS = [ZERO, ONE, Ordinal.from_int(2), OMEGA, succ(OMEGA)]
pairs = st.tuples(st.sampled_from(LEVELS), st.sampled_from(LEVELS)).filter(
    lambda ab: compare(ab[1], ab[0]) is Cmp.LESS)          # (α, β) で β ≺ α
seeds = st.integers(min_value=0, max_value=10**6)


def _formula(seed, labels):
    return random_formula(random.Random(seed), ["p", "q"], labels, 2)

def _accepted(proof):
    res = check_proof(proof)
    assert res.ok, (res.line, res.reason)
    if isinstance(proof.system, GLP):
        assert conservativity_scan(proof, proof.system.cap)


def test_cons_provable_theorem():
    proof = derive_cons_provable(ONE, ZERO)
    _accepted(proof)
    assert proof.theorem == Box(ONE, dia(ZERO, TOP))
    assert proof.system == GLP(Ordinal.from_int(2))

@settings(max_examples=10, deadline=None)
@given(pairs)
def test_cons_provable(ab):
    alpha, beta = ab
    proof = derive_cons_provable(alpha, beta)
    _accepted(proof)
    assert proof.system == GLP(succ(alpha))

@settings(max_examples=10, deadline=None)
@given(pairs, seeds)
def test_cons_absorption(ab, seed):
    alpha, beta = ab
    phi = _formula(seed, [ZERO, ONE])
    proof = derive_cons_absorption(alpha, beta, phi)
    _accepted(proof)
    assert proof.theorem == Imp(dia(alpha, TOP), Iff(dia(beta, phi), dia(alpha, dia(beta, phi))))

@settings(max_examples=10, deadline=None)
@given(pairs, seeds)
def test_box_disjunction(ab, seed):
    alpha, beta = ab
    if beta.is_zero():
        beta = alpha
    phi, psi = _formula(seed, [ZERO, ONE]), _formula(seed + 1, [ZERO])
    proof = derive_box_disjunction(alpha, beta, phi, psi)
    _accepted(proof)
    bpsi = Box(ZERO, psi)
    assert proof.theorem == Imp(dia(alpha, TOP), Iff(Or(dia(beta, phi), bpsi), dia(beta, Or(phi, bpsi))))

@pytest.mark.parametrize("a,b", [(1, 1), (2, 1), (3, 2)])
def test_box_disjunction_small_levels(a, b):
    alpha, beta = Ordinal.from_int(a), Ordinal.from_int(b)
    proof = derive_box_disjunction(alpha, beta, parse_formula("p"), parse_formula("q"))
    _accepted(proof)
    assert proof.system == GLP(succ(alpha))

@settings(max_examples=10, deadline=None)
@given(pairs, seeds)
def test_box_level_mono(ab, seed):
    alpha, beta = ab
    phi = _formula(seed, [ZERO])
    proof = derive_box_level_mono(beta, alpha, phi)
    _accepted(proof)
    assert proof.theorem == Imp(Box(beta, phi), Box(alpha, phi))

@settings(max_examples=5, deadline=None)
@given(seeds)
def test_blacksquare_lob(seed):
    phi = _formula(seed, [ZERO, BLACK])
    proof = derive_blacksquare_lob(phi)
    _accepted(proof)
    assert proof.theorem == Imp(Box(BLACK, Imp(Box(BLACK, phi), phi)), Box(BLACK, phi))


@pytest.mark.parametrize("call", [
    lambda: derive_cons_provable(ZERO, ZERO),
    lambda: derive_cons_provable(ONE, Ordinal.from_int(2)),
    lambda: derive_cons_absorption(ONE, ZERO, parse_formula("#p")),
    lambda: derive_box_disjunction(ONE, ZERO, parse_formula("p"), parse_formula("q")),
    lambda: derive_box_disjunction(ONE, Ordinal.from_int(2), parse_formula("p"), parse_formula("q")),
    lambda: derive_box_level_mono(ONE, ONE, parse_formula("p")),
    lambda: derive_blacksquare_lob(parse_formula("[1]p")),
])
def test_bad_parameters(call):
    with pytest.raises(DerivationError):
        call()

def test_lemma_table_names():
    assert set(LEMMAS) == {"cons-provable", "cons-absorption", "box-disjunction",
                           "box-level-mono", "blacksquare-lob"}
