import random

import pytest
from hypothesis import given, settings, strategies as st

from module.MWB_ordinals import ONE, OMEGA, Ordinal, ZERO
from module.MWB_syntax import (
    BLACK, BOT, TOP, And, Atom, Box, FormulaSyntaxError, Iff, Imp, Not, Or, abstract_atoms,
    atoms_of, box_depth, dia, parse_formula, print_formula, random_formula, signature,
    substitute, uses_blacksquare,
)

p, q, r = Atom("p"), Atom("q"), Atom("r")
TWO = Ordinal.from_int(2)


def test_precedence_and_associativity():
    assert parse_formula("p -> q -> r") == Imp(p, Imp(q, r))
    assert parse_formula("p & q | r") == Or(And(p, q), r)
    assert parse_formula("p <-> q <-> r") == Iff(Iff(p, q), r)
    assert parse_formula("~p & q") == And(Not(p), q)
    assert parse_formula("(p -> q) -> r") == Imp(Imp(p, q), r)

def test_modal_operators():
    assert parse_formula("[1]p -> <0>q") == Imp(Box(ONE, p), dia(ZERO, q))
    assert parse_formula("[w]T") == Box(OMEGA, TOP)
    assert parse_formula("#p") == Box(BLACK, p)
    assert parse_formula("<#>F") == dia(BLACK, BOT)
    assert parse_formula("~[#]p") == Not(Box(BLACK, p))

def test_printing():
    assert print_formula(Imp(Box(ONE, p), dia(ZERO, q))) == "[1]p -> <0>q"
    assert print_formula(Imp(Imp(p, q), r)) == "(p -> q) -> r"
    assert print_formula(Box(BLACK, Or(p, q))) == "[#](p | q)"
    assert print_formula(Not(dia(ZERO, p))) == "~<0>p"

@pytest.mark.parametrize("text,pos", [("p &", 3), ("p ) q", 2), ("[1p", 2), ("<-> p", 0), ("P", 0)])
def test_syntax_errors_report_position(text, pos):
    with pytest.raises(FormulaSyntaxError) as e:
        parse_formula(text)
    assert e.value.pos == pos

def test_cap_is_enforced():
    assert parse_formula("[1]p", cap=TWO) == Box(ONE, p)
    with pytest.raises(FormulaSyntaxError):
        parse_formula("[2]p", cap=TWO)

def test_structural_helpers():
    f = parse_formula("[1]([0]p -> q) & <w>r")
    assert atoms_of(f) == {"p", "q", "r"}
    assert signature(f) == {ZERO, ONE, OMEGA}
    assert box_depth(f) == 2
    assert not uses_blacksquare(f)
    assert uses_blacksquare(parse_formula("p -> #p"))
    assert substitute(Imp(p, Box(ONE, p)), {"p": q}) == Imp(q, Box(ONE, q))

def test_abstract_atoms_shares_names():
    skel, table = abstract_atoms(And(Box(ONE, p), Not(Box(ONE, p))))
    assert skel == And(Atom("a"), Not(Atom("a")))
    assert table == {"a": Box(ONE, p)}


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_printed_formula_parses_back(seed):
    f = random_formula(random.Random(seed), ["p", "q"], [ZERO, ONE, OMEGA, BLACK], 4)
    assert parse_formula(print_formula(f)) == f
