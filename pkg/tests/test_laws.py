import random

import pytest
from hypothesis import given, settings, strategies as st

from module.MWB_algebra import all_frames, random_frame
from module.MWB_laws import (
    ASSERTED, LEVEL_LAWS, PAIR_LAWS, explore_closure_failures, random_assignment,
    reflexive_induction_check, reflexive_induction_instance, sample_pairs, soundness_suite,
)
from module.MWB_muench import Mode, eval_single, eval_vector
from module.MWB_ordinals import ONE, OrdinalGrid, ZERO, grid_range

SMALL_FRAMES = [F for n in (1, 2, 3) for F in all_frames(n)]


@pytest.mark.parametrize("evaluate", [eval_single, eval_vector])
def test_asserted_laws_hold_on_all_small_frames(evaluate):
    for F in SMALL_FRAMES:
        rep = soundness_suite(evaluate(F, grid_range(3)))
        assert rep.asserted_ok, [r for r in rep.failures()]

@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.integers(4, 5))
def test_vector_soundness_on_random_frames(seed, n):
    F = random_frame(seed, n)
    grid = OrdinalGrid.from_strings(["0", "1", "w", "w+1"])
    rep = soundness_suite(eval_vector(F, grid), sample_limit=512, seed=seed)
    assert rep.asserted_ok

def test_record_layout(two_chain):
    rep = soundness_suite(eval_vector(two_chain, grid_range(2)))
    levels = {r.level for r in rep.records}
    assert levels == {"0", "1", "0<1"}
    assert len(rep.records) == 2 * len(LEVEL_LAWS) + len(PAIR_LAWS)
    assert all(r.checked > 0 for r in rep.records)
    assert rep.to_json()["mode"] == "vector"

def test_law_classification():
    assert "weak_disj" in ASSERTED[Mode.VECTOR]
    assert "weak_disj_uniform" not in ASSERTED[Mode.VECTOR]
    assert "conj_closure" not in ASSERTED[Mode.SINGLE]
    assert "dia_mono" in ASSERTED[Mode.SINGLE]

@pytest.mark.parametrize("evaluate", [eval_single, eval_vector])
def test_uniform_weak_disjunction_fails_on_fork(fork, evaluate):
    rep = soundness_suite(evaluate(fork, grid_range(2)), exhaustive_max_worlds=5)
    rec = next(r for r in rep.records if r.law == "weak_disj_uniform" and r.level == "0")
    assert not rec.holds and not rec.asserted
    assert rep.asserted_ok

def test_sample_pairs(two_chain, fork):
    xs, ys = sample_pairs(two_chain)
    assert len(xs) == len(ys) == 16
    xs, ys = sample_pairs(fork, limit=100, seed=3)
    assert len(xs) == 100 and int(xs.max()) < 32
    again, _ = sample_pairs(fork, limit=100, seed=3)
    assert (xs == again).all()


# -- 探索 -----------------------------------------------------
def test_explore_closure_failures_reports_every_level():
    for F in SMALL_FRAMES:
        p = eval_single(F, grid_range(3))
        found = explore_closure_failures(F, p)
        assert [e["level"] for e in found["levels"]] == ["0", "1", "2"]
        assert set(found["totals"]) == {"conj_closure", "weak_disj_uniform", "transitivity",
                                        "distribution"}

def test_explore_needs_single_mode(two_chain):
    with pytest.raises(ValueError):
        explore_closure_failures(two_chain, eval_vector(two_chain, grid_range(2)))


# -- 反射的帰納法 ---------------------------------------------
@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 5))
def test_reflexive_induction_never_fails(seed, n):
    F = random_frame(seed, n)
    grid = grid_range(3)
    rng = random.Random(seed)
    for _ in range(50):
        phi = random_assignment(rng, F, grid)
        assert reflexive_induction_check(F, grid, phi, "reflexive")
        assert reflexive_induction_check(F, grid, phi, "transfinite")

def test_reflexive_induction_instance(three_chain):
    grid = grid_range(2)
    top = three_chain.top
    full = reflexive_induction_instance(three_chain, grid, {ZERO: top, ONE: top})
    assert full == {"premise": True, "conclusion": True, "holds": True}
    # φ(0) = ⊥ では前提 box(⊤) → φ(0) が崩れる
    empty = reflexive_induction_instance(three_chain, grid, {ZERO: 0, ONE: top})
    assert empty["premise"] is False and empty["holds"] is True
    with pytest.raises(ValueError):
        reflexive_induction_instance(three_chain, grid, {ZERO: 0, ONE: 0}, "strong")
