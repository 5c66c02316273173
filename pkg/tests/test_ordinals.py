import pytest
from hypothesis import given

from ordauto.generators import ordinal_rank_oracle
from ordauto.ordinals import (
    LevelMismatch,
    Order,
    OrdinalCNF,
    UndefinedSubtraction,
    cnf_add,
    cnf_compare,
    cnf_left_subtract,
    format_cnf,
    parse_cnf,
)
from ordauto.presentations import bounded_grid

from strategies import cnfs

W = parse_cnf("w^(1)*1")


def test_omega_beats_two():
    assert cnf_compare(W, parse_cnf("2")) is Order.GT


def test_zero_equals_zero():
    assert cnf_compare(OrdinalCNF.zero(), OrdinalCNF.zero()) is Order.EQ


def test_omega_omega_beats_polynomial():
    a = parse_cnf("w^(1,0)*1")
    b = parse_cnf("w^(0,2)*5 + w^(0,1)*9")
    assert cnf_compare(a, b) is Order.GT


def test_left_absorption():
    assert cnf_add(parse_cnf("1"), W) == W
    assert format_cnf(cnf_add(W, parse_cnf("1"))) == "w^(1)*1 + w^(0)*1"


def test_sum_with_shared_middle_term():
    a = parse_cnf("w^(2)*3 + w^(1)*1")
    b = parse_cnf("w^(1)*2 + 5")
    assert format_cnf(cnf_add(a, b)) == "w^(2)*3 + w^(1)*3 + w^(0)*5"


def test_subtraction_examples():
    assert cnf_left_subtract(parse_cnf("5"), W) == W
    x = parse_cnf("w^(2)*2 + w^(0)*7")
    assert cnf_left_subtract(x, x).is_zero
    a = parse_cnf("w^(0,1)*2 + w^(0,0)*1")
    b = parse_cnf("w^(0,2)*1")
    assert cnf_left_subtract(a, b) == b


def test_subtraction_needs_a_below_b():
    with pytest.raises(UndefinedSubtraction):
        cnf_left_subtract(W, parse_cnf("3"))


def test_levels_must_match():
    with pytest.raises(LevelMismatch):
        cnf_compare(parse_cnf("w^(1)*1"), parse_cnf("w^(1,0)*1"))


def test_compare_matches_rank_oracle_on_grid():
    grid = bounded_grid(1, 2, 3, 2)
    rank = ordinal_rank_oracle(grid)
    for x in grid[::3]:
        for y in grid:
            expect = "LT" if rank[x] < rank[y] else "GT" if rank[x] > rank[y] else "EQ"
            assert cnf_compare(x, y).value == expect


@given(cnfs(), cnfs(), cnfs())
def test_addition_is_associative(a, b, c):
    assert cnf_add(cnf_add(a, b), c) == cnf_add(a, cnf_add(b, c))


@given(cnfs(2), cnfs(2))
def test_subtraction_inverts_addition(a, d):
    b = cnf_add(a, d)
    assert cnf_add(a, cnf_left_subtract(a, b)) == b


@given(cnfs(2), cnfs(2))
def test_sum_dominates_right_summand(a, b):
    assert cnf_compare(cnf_add(a, b), b) is not Order.LT


@given(cnfs(3))
def test_text_round_trip(x):
    assert parse_cnf(format_cnf(x), 3) == x


@given(cnfs(1), cnfs(1))
def test_compare_antisymmetric(a, b):
    flip = {"LT": "GT", "GT": "LT", "EQ": "EQ"}
    assert cnf_compare(a, b).value == flip[cnf_compare(b, a).value]
