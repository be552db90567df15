import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from module.MWB_algebra import all_frames, chain, random_frame
from module.MWB_muench import (
    GridError, Mode, OracleUniverse, UniverseError, consistency_elements, depth_report,
    enumerate_vector, eval_single, eval_vector, finite_level_boxbox, stabilize,
)
from module.MWB_muench import evaluate_formula
from module.MWB_ordinals import ONE, Ordinal, OrdinalGrid, ZERO, grid_range
from module.MWB_syntax import parse_formula

TWO = Ordinal.from_int(2)
frames = st.builds(random_frame, st.integers(0, 10**6), st.integers(1, 6))


@pytest.mark.parametrize("evaluate", [eval_single, eval_vector])
def test_one_world_tables_are_top(one_world, evaluate):
    p = evaluate(one_world, grid_range(3))
    for z in p.grid:
        assert list(p.table(z)) == [1, 1]

@pytest.mark.parametrize("evaluate", [eval_single, eval_vector])
def test_two_chain_level_one_proves_falsum(two_chain, evaluate):
    p = evaluate(two_chain, grid_range(2))
    assert p.apply(ZERO, 0) == 0b01
    assert p.apply(ONE, 0) == 0b11

def test_three_chain_with_top_oracle_only(three_chain):
    p = eval_single(three_chain, grid_range(2), OracleUniverse((three_chain.top,)))
    assert p.apply(ONE, 0) == 0b011

@settings(max_examples=40, deadline=None)
@given(frames)
def test_level_zero_is_box_in_both_modes(F):
    grid = grid_range(4)
    for p in (eval_single(F, grid), eval_vector(F, grid)):
        assert np.array_equal(p.table(ZERO), F.box_table)

@settings(max_examples=25, deadline=None)
@given(st.builds(random_frame, st.integers(0, 10**6), st.integers(1, 4)))
def test_finite_levels_match_boxbox(F):
    p = eval_single(F, grid_range(4))
    for n in range(4):
        assert finite_level_boxbox(F, n) == [int(v) for v in p.table(Ordinal.from_int(n))]

@pytest.mark.parametrize("n", [1, 2, 3])
def test_meet_closure_matches_sequence_enumeration(n):
    grid = grid_range(3)
    for F in all_frames(n):
        for k in (1, 2, 3):
            p = eval_vector(F, grid, max_len=k)
            brute = enumerate_vector(F, grid, None, k)
            for i, z in enumerate(grid):
                assert [int(v) for v in p.table(z)] == [brute[i][x] for x in F.elements()]

def test_stabilization_index(one_world, two_chain):
    assert eval_single(one_world, grid_range(3)).stabilization_index == ZERO
    p = eval_single(two_chain, grid_range(3))
    assert p.stabilization_index == ONE
    assert stabilize(p) == ONE
    assert eval_single(chain(4), grid_range(2)).stabilization_index is None

def test_bad_grid_and_level(two_chain):
    with pytest.raises(GridError):
        eval_single(two_chain, OrdinalGrid.from_strings(["1", "2"]))
    p = eval_single(two_chain, grid_range(2))
    with pytest.raises(GridError):
        p.apply(TWO, 0)

def test_universe_checks(two_chain):
    with pytest.raises(UniverseError):
        OracleUniverse(())
    with pytest.raises(UniverseError):
        eval_single(two_chain, grid_range(2), OracleUniverse((8,)))
    assert OracleUniverse.full(two_chain).closed_under_complement(two_chain)
    assert not OracleUniverse((1,)).closed_under_complement(two_chain)

def test_max_len_must_be_positive(two_chain):
    with pytest.raises(ValueError):
        eval_vector(two_chain, grid_range(2), max_len=0)

def test_consistency_and_depth_report(one_world, two_chain):
    p = eval_vector(one_world, grid_range(2))
    assert consistency_elements(p) == {ZERO: 0, ONE: 0}
    assert all(not row["globally_consistent"] for row in depth_report(p))
    q = eval_single(two_chain, grid_range(2))
    assert consistency_elements(q)[ZERO] == 0b10
    assert depth_report(q)[0]["consistent_worlds"] == [1]

def test_evaluate_formula(two_chain):
    p = eval_single(two_chain, grid_range(2))
    assert evaluate_formula(parse_formula("[1]F"), p, {}) == 0b11
    assert evaluate_formula(parse_formula("[0]p"), p, {"p": 0b01}) == 0b11
    assert evaluate_formula(parse_formula("#F"), p, {}, blacksquare_level=ONE) == 0b11
    with pytest.raises(GridError):
        evaluate_formula(parse_formula("#F"), p, {})
    assert p.mode is Mode.SINGLE
