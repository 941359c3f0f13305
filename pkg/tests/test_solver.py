"""Tests for the layered retrograde solver against direct recursion."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xnim.errors import OutOfBoundError, ResourceLimitError
from xnim.rules import exact, moore, nim
from xnim.solver import (
    best_move,
    brute_force_outcome,
    brute_force_remoteness,
    solve_outcomes,
    solve_remoteness,
)


def every_position(table):
    idx = table.index
    for r in range(table.count):
        yield idx.unrank(r)


@pytest.mark.parametrize(
    "rule,bound",
    [
        (nim(3), 5),
        (nim(1), 7),
        (moore(4, 2), 4),
        (moore(3, 3), 4),
        (exact(5, 2), 3),
        (exact(3, 2), 5),
        (exact(2, 2), 6),
    ],
)
def test_table_matches_brute_force(rule, bound):
    table = solve_outcomes(rule, bound, remoteness=True)
    for x in every_position(table):
        assert table.outcome_of(x) == brute_force_outcome(rule, x), x
        assert table.remoteness_of(x) == brute_force_remoteness(rule, x), x


def test_known_exact_values():
    table = solve_outcomes(exact(5, 2), 4, remoteness=True)
    assert table.outcome_of((0, 1, 1, 1, 1)) == "P"
    assert table.remoteness_of((0, 1, 1, 1, 1)) == 2
    assert table.outcome_of((0, 0, 0, 1, 1)) == "N"
    assert table.remoteness_of((0, 0, 0, 1, 1)) == 1
    assert table.outcome_of((0, 0, 0, 0, 0)) == "P"
    assert table.remoteness_of((0, 0, 0, 0, 4)) == 0  # terminal, one pile left


def test_outcome_is_remoteness_parity():
    table = solve_outcomes(exact(5, 2), 6, remoteness=True)
    assert np.array_equal(table.outcomes == 1, table.remoteness % 2 == 0)


def test_queries_canonicalize_input():
    table = solve_outcomes(exact(5, 2), 4)
    assert table.outcome_of((1, 0, 1, 1, 1)) == "P"


def test_out_of_bound_query():
    table = solve_outcomes(exact(5, 2), 4)
    with pytest.raises(OutOfBoundError) as err:
        table.outcome_of((0, 0, 0, 0, 5))
    assert err.value.required_bound == 5


def test_solve_remoteness_fills_existing_table():
    rule = exact(5, 2)
    plain = solve_outcomes(rule, 5)
    assert not plain.has_remoteness()
    with pytest.raises(ValueError):
        plain.remoteness_of((0, 0, 0, 1, 1))
    filled = solve_remoteness(rule, plain)
    assert filled is plain
    full = solve_outcomes(rule, 5, remoteness=True)
    assert np.array_equal(filled.remoteness, full.remoteness)


def test_solver_is_deterministic():
    a = solve_outcomes(exact(5, 2), 10, remoteness=True)
    b = solve_outcomes(exact(5, 2), 10, remoteness=True)
    assert np.array_equal(a.outcomes, b.outcomes)
    assert np.array_equal(a.remoteness, b.remoteness)


def test_bound_zero_space():
    table = solve_outcomes(exact(5, 2), 0, remoteness=True)
    assert table.count == 1
    assert table.outcome_of((0, 0, 0, 0, 0)) == "P"
    assert table.remoteness_of((0, 0, 0, 0, 0)) == 0


def test_memory_budget_rejects_oversized_solve():
    with pytest.raises(ResourceLimitError):
        solve_outcomes(exact(5, 2), 500, memory_budget=10_000_000)


def test_remoteness_field_limit():
    # small enough for the budget, too deep for the 16-bit remoteness field
    with pytest.raises(ResourceLimitError):
        solve_outcomes(nim(2), 40_000, remoteness=True)


def test_brute_force_guard():
    with pytest.raises(ValueError):
        brute_force_outcome(nim(3), (30, 30, 30))
    with pytest.raises(ValueError):
        brute_force_remoteness(nim(3), (30, 30, 30))


def test_best_move_known_value(tables20):
    et, _ = tables20
    assert best_move(exact(5, 2), et, (0, 1, 2, 3, 4)) == (0, 1, 1, 1, 4)


def test_best_move_rejects_losing_position(tables20):
    et, _ = tables20
    with pytest.raises(ValueError):
        best_move(exact(5, 2), et, (0, 1, 1, 1, 1))


@given(st.lists(st.integers(0, 12), min_size=5, max_size=5).map(tuple))
@settings(max_examples=60, deadline=None)
def test_best_move_wins_fastest(tables20, x):
    et, _ = tables20
    x = tuple(sorted(x))
    if et.outcome_of(x) == "P":
        return
    y = best_move(exact(5, 2), et, x)
    assert et.outcome_of(y) == "P"
    from xnim.rules import successors

    rems = [
        et.remoteness_of(z)
        for z in successors(exact(5, 2), x)
        if et.outcome_of(z) == "P"
    ]
    assert et.remoteness_of(y) == min(rems)


def test_nim_table_agrees_with_xor(tables20):
    # spot-check a nim table against the closed form at a larger bound
    from xnim.rules import bouton_is_p

    table = solve_outcomes(nim(3), 12)
    for x in every_position(table):
        assert (table.outcome_of(x) == "P") == bouton_is_p(x), x
