import pytest

from module.MWB_algebra import all_frames
from module.MWB_muench import OracleUniverse, eval_single, eval_vector
from module.MWB_ordinals import ONE, OMEGA, Ordinal, ZERO, grid_range
from module.MWB_uniformpp import (
    Base, Cases, CertificateFormatError, Oracle, certificate_cover, exists_certificate,
    format_certificate, normalization_checks, parse_certificate, parse_certificates,
    pi_check, pi_value, provable_element, uprov_property_suite,
)


def test_base_certificate_for_top(two_chain):
    p = eval_single(two_chain, grid_range(2))
    assert pi_check(Base(0, two_chain.top), ZERO, two_chain.top, p)
    assert pi_value(Base(0, 1), ZERO, two_chain.top, p) == 0      # formula 欄が違う

def test_oracles_are_useless_on_one_world(one_world):
    p = eval_single(one_world, grid_range(2))
    for psi in one_world.elements():
        assert pi_value(Oracle(ZERO, psi, 0, 0), ONE, 0, p) == 0

def test_oracle_needs_lower_level(two_chain):
    p = eval_single(two_chain, grid_range(2))
    c = Oracle(ZERO, 0b01, 0, 0)
    assert pi_value(c, ONE, 0, p) == 0b10
    assert pi_value(c, ZERO, 0, p) == 0

def test_cover_is_world_relative(two_chain):
    p = eval_single(two_chain, grid_range(2))
    assert p.apply(ONE, 0) == two_chain.top
    cover = certificate_cover(ONE, 0, p)
    assert isinstance(cover[0], Base) and isinstance(cover[1], Oracle)
    # 単独で全域有効な証明書は無いので、被覆を場合分けに束ねる
    c = exists_certificate(ONE, 0, p)
    assert c == Cases((cover[0], cover[1]))
    assert pi_check(c, ONE, 0, p)
    assert exists_certificate(ONE, 0, p, world=1) == cover[1]

def test_base_certificate_on_one_world(one_world):
    p = eval_single(one_world, grid_range(2))
    # 一世界では [0]⊥ = ⊤ なので ⊥ にも Base 証明書がある
    assert p.apply(ZERO, 0) == one_world.top
    assert exists_certificate(ZERO, 0, p) == Base(0, 0)

def test_restricted_universe_leaves_a_world_uncovered(three_chain):
    p = eval_single(three_chain, grid_range(2), OracleUniverse((three_chain.top,)))
    cover = certificate_cover(ONE, 0, p)
    assert cover[2] is None and cover[0] is not None and cover[1] is not None
    assert exists_certificate(ONE, 0, p) is None

@pytest.mark.parametrize("n,levels", [(1, 3), (2, 3), (3, 3), (4, 2)])
def test_certificate_exists_iff_provable_everywhere(n, levels):
    for F in all_frames(n):
        p = eval_single(F, grid_range(levels))
        for lam in p.grid:
            for phi in F.elements():
                c = exists_certificate(lam, phi, p)
                assert (c is not None) == (p.apply(lam, phi) == F.top)
                if c is not None:
                    assert pi_check(c, lam, phi, p)

@pytest.mark.parametrize("n", [1, 2, 3])
def test_cover_matches_provability(n):
    for F in all_frames(n):
        p = eval_single(F, grid_range(3))
        for lam in p.grid:
            for phi in F.elements():
                cover = certificate_cover(lam, phi, p)
                covered = sum(1 << w for w, c in cover.items() if c is not None)
                assert covered == p.apply(lam, phi) == provable_element(lam, phi, p)

def test_normalization(three_chain):
    rep = normalization_checks(eval_single(three_chain, grid_range(3)), samples=100)
    assert rep["ok"]
    assert rep["padding"] >= 10

def test_property_suite_on_small_frames():
    for F in [F for n in (1, 2) for F in all_frames(n)]:
        rep = uprov_property_suite(eval_single(F, grid_range(3)))
        assert rep["ok"], rep
        assert rep["arithmetic_soundness"] == {"status": "out of scope"}
        assert rep["certified_modus_ponens"]["asserted"] is False

def test_requires_single_mode_and_grid_level(two_chain):
    with pytest.raises(ValueError):
        pi_value(Base(0, 0), ZERO, 0, eval_vector(two_chain, grid_range(2)))
    with pytest.raises(ValueError):
        pi_value(Base(0, 0), OMEGA, 0, eval_single(two_chain, grid_range(2)))


# -- 文字列形式 -----------------------------------------------
def test_certificate_text_format():
    U = tuple(range(4))
    c = Oracle(ONE, 2, 7, 3)
    assert format_certificate(c, U) == "oracle 1 2 7 3"
    assert parse_certificate("oracle 1 2 7 3", U) == c
    assert parse_certificate("base 5 0", U) == Base(5, 0)
    text = "-- 証明書\nbase 0 3\n\noracle w 1 0 2\n"
    assert parse_certificates(text, U) == [Base(0, 3), Oracle(OMEGA, 1, 0, 2)]
    cases = Cases((Base(0, 1), Oracle(ZERO, 2, 0, 1)))
    assert format_certificate(cases, U) == "cases base 0 1 ; oracle 0 2 0 1"
    assert parse_certificate("cases base 0 1 ; oracle 0 2 0 1", U) == cases

@pytest.mark.parametrize("line", ["base x 1", "base 0 9", "oracle 1+ 0 0 0", "proof 1 2", "",
                                  "cases", "cases base 0 1 ; base 0 2"])
def test_bad_certificate_lines(line):
    with pytest.raises(CertificateFormatError):
        parse_certificate(line, tuple(range(4)))
