"""Tests for move rules, closed-form criteria, and the winning-move builder."""

from itertools import combinations_with_replacement as cwr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xnim.rules import (
    GameRule,
    bouton_is_p,
    exact,
    is_terminal,
    moore,
    moore_is_p,
    moore_winning_move,
    move_exists_between,
    nim,
    successors,
    zero_pile_exact_is_p,
)
from xnim.solver import brute_force_outcome


def test_rule_factories_and_arities():
    assert nim(3).arities == (1,)
    assert moore(4, 2).arities == (1, 2)
    assert exact(5, 2).arities == (2,)
    assert nim(3).label() == "nim(3)"
    assert moore(4, 2).label() == "moore(4,<=2)"
    assert exact(5, 2).label() == "exact(5,=2)"


def test_rule_validation():
    with pytest.raises(ValueError):
        GameRule("nim", 3, 2)
    with pytest.raises(ValueError):
        GameRule("exact", 3, 4)
    with pytest.raises(ValueError):
        GameRule("moore", 3, 0)
    with pytest.raises(ValueError):
        GameRule("misere", 3, 1)
    with pytest.raises(ValueError):
        GameRule("nim", 0, 1)


def test_terminal_positions():
    assert is_terminal(nim(3), (0, 0, 0))
    assert not is_terminal(nim(3), (0, 0, 1))
    assert is_terminal(exact(5, 2), (0, 0, 0, 0, 5))
    assert not is_terminal(exact(5, 2), (0, 0, 0, 1, 1))
    assert is_terminal(moore(4, 2), (0, 0, 0, 0))
    assert not is_terminal(moore(4, 2), (0, 0, 0, 9))


def test_exact_successors_known_set():
    got = set(successors(exact(5, 2), (0, 0, 0, 2, 2)))
    assert got == {(0, 0, 0, 0, 0), (0, 0, 0, 0, 1), (0, 0, 0, 1, 1)}


def test_nim_successors_known_set():
    assert set(successors(nim(2), (1, 2))) == {(0, 2), (0, 1), (1, 1)}
    assert set(successors(nim(2), (2, 2))) == {(0, 2), (1, 2)}
    assert list(successors(nim(2), (0, 0))) == []


def test_moore_successors_include_both_arities():
    got = set(successors(moore(2, 2), (1, 2)))
    assert got == {(0, 2), (1, 1), (0, 1), (0, 0)}
    # the exact game must touch both piles, so (1, 1) is out of reach
    assert set(successors(exact(2, 2), (1, 2))) == {(0, 0), (0, 1)}


@given(st.lists(st.integers(0, 9), min_size=5, max_size=5).map(tuple))
@settings(max_examples=60)
def test_successors_are_canonical_distinct_and_smaller(x):
    x = tuple(sorted(x))
    seen = set()
    for y in successors(exact(5, 2), x):
        assert y not in seen
        seen.add(y)
        assert list(y) == sorted(y)
        assert sum(y) < sum(x)
        assert y[-1] <= x[-1]


def test_move_exists_between_known_pairs():
    r = exact(5, 2)
    assert move_exists_between(r, (10, 19, 24, 26, 26), (9, 19, 24, 25, 26))
    assert not move_exists_between(r, (9, 19, 24, 25, 26), (10, 19, 24, 26, 26))
    assert move_exists_between(r, (0, 0, 0, 2, 2), (0, 0, 0, 1, 1))
    # exact moves must touch exactly two piles
    assert not move_exists_between(r, (0, 0, 0, 2, 2), (0, 0, 0, 1, 2))
    assert move_exists_between(nim(5), (0, 0, 0, 2, 2), (0, 0, 0, 1, 2))
    assert not move_exists_between(r, (1, 1, 1, 1, 1), (1, 1, 1, 1, 1))


@given(st.lists(st.integers(0, 6), min_size=4, max_size=4).map(tuple))
@settings(max_examples=40)
def test_move_exists_matches_successor_enumeration(x):
    x = tuple(sorted(x))
    rule = moore(4, 2)
    succ = set(successors(rule, x))
    for y in cwr(range(7), 4):
        assert move_exists_between(rule, x, y) == (y in succ)


def test_bouton_criterion_known_values():
    assert bouton_is_p((1, 2, 3))
    assert not bouton_is_p((1, 2, 4))
    assert bouton_is_p(())
    assert bouton_is_p((7, 7))


def test_bouton_criterion_matches_brute_force():
    for x in cwr(range(7), 3):
        want = brute_force_outcome(nim(3), x)
        assert bouton_is_p(x) == (want == "P"), x


def test_moore_criterion_known_values():
    assert moore_is_p((1, 1, 1), 2)
    assert not moore_is_p((1, 1, 1, 1), 2)
    assert moore_is_p((0, 0, 0, 0), 2)
    assert moore_is_p((1, 2, 3, 3), 2)


def test_moore_criterion_matches_brute_force():
    for x in cwr(range(5), 4):
        want = brute_force_outcome(moore(4, 2), x)
        assert moore_is_p(x, 2) == (want == "P"), x


def test_zero_pile_closed_form():
    assert zero_pile_exact_is_p((0, 3, 3, 3, 7))
    assert not zero_pile_exact_is_p((0, 2, 3, 3, 7))
    with pytest.raises(ValueError):
        zero_pile_exact_is_p((1, 3, 3, 3, 7))
    with pytest.raises(ValueError):
        zero_pile_exact_is_p((0, 1, 1))


def test_zero_pile_closed_form_matches_brute_force():
    for x in cwr(range(5), 4):
        pos = (0,) + x
        want = brute_force_outcome(exact(5, 2), pos)
        assert zero_pile_exact_is_p(pos) == (want == "P"), pos


def test_moore_winning_move_known_value():
    assert moore_winning_move((1, 1, 1, 1), 2) == (0, 1, 1, 1)


def test_moore_winning_move_rejects_balanced():
    with pytest.raises(ValueError):
        moore_winning_move((1, 1, 1), 2)
    with pytest.raises(ValueError):
        moore_winning_move((0, 0, 0, 0), 2)


@given(
    st.lists(st.integers(0, 63), min_size=4, max_size=4).map(lambda v: tuple(sorted(v))),
    st.integers(1, 3),
)
@settings(max_examples=150)
def test_moore_winning_move_balances_with_one_legal_move(x, k):
    if moore_is_p(x, k):
        return
    y = moore_winning_move(x, k)
    assert moore_is_p(y, k)
    assert move_exists_between(moore(4, k), x, y)
