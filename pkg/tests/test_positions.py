"""Tests for canonical positions, pile matrices, and combinatorial ranking."""

from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from xnim.positions import (
    BoutonMatrix,
    RankedIndex,
    bouton_matrix,
    canonicalize,
    moore_vector,
    reduce_position,
    xi,
)

positions5 = st.lists(st.integers(0, 40), min_size=5, max_size=5).map(
    lambda v: tuple(sorted(v))
)


def test_canonicalize_sorts():
    assert canonicalize((3, 1, 2, 0, 0)) == (0, 0, 1, 2, 3)
    assert canonicalize([]) == ()
    assert canonicalize([5]) == (5,)


def test_canonicalize_rejects_negative():
    with pytest.raises(ValueError):
        canonicalize((1, -2, 3))


@given(st.lists(st.integers(0, 100), max_size=8))
def test_canonicalize_idempotent(v):
    c = canonicalize(v)
    assert canonicalize(c) == c
    assert list(c) == sorted(v)


def test_reduce_drops_one_leader_copy():
    assert reduce_position((0, 0, 1, 2, 3)) == (0, 0, 1, 2)
    assert reduce_position((2, 2, 2)) == (2, 2)
    with pytest.raises(ValueError):
        reduce_position(())


def test_matrix_rows_reconstruct_piles():
    m = bouton_matrix((10, 19, 24, 26, 26))
    assert m.rows == (10, 19, 24, 26, 26)
    assert m.width == 5
    for i, p in enumerate(m.rows):
        assert sum(m.bit(i, j) << j for j in range(m.width)) == p


def test_matrix_width_is_leader_bit_length():
    assert bouton_matrix((0, 0, 0)).width == 1
    assert bouton_matrix((0, 1)).width == 1
    assert bouton_matrix((0, 8)).width == 4


def test_matrix_columns():
    m = bouton_matrix((1, 2, 3))  # rows 01, 10, 11
    assert m.column(0) == (1, 0, 1)
    assert m.column(1) == (0, 1, 1)
    assert m.column(5) == (0, 0, 0)


def test_packed_columns_padding():
    m = bouton_matrix((1, 2, 3))
    assert m.packed_columns() == (0b101, 0b110)
    assert m.packed_columns(4) == (0b101, 0b110, 0, 0)
    with pytest.raises(ValueError):
        m.packed_columns(1)


def test_moore_vector_known_values():
    # rows 01010, 10011, 11000, 11010, 11010 read least bit first
    m = moore_vector(bouton_matrix((10, 19, 24, 26, 26)))
    assert m.sums == (1, 4, 0, 4, 4)
    assert moore_vector(bouton_matrix((1, 1, 1))).sums == (3,)
    assert moore_vector(bouton_matrix((0, 0))).sums == (0,)


def test_xi_packs_matching_columns():
    # rows 0111, 1011, 1101, 1110: every column holds exactly three ones
    mv = moore_vector(bouton_matrix((7, 11, 13, 14)))
    assert mv.sums == (3, 3, 3, 3)
    assert xi(mv, 3) == 0b1111
    assert xi(mv, 0) == 0
    assert xi(mv, 4) == 0


@given(positions5)
def test_xi_partitions_columns(x):
    m = bouton_matrix(x)
    mv = moore_vector(m)
    total = sum(xi(mv, w) for w in range(len(x) + 1))
    assert total == (1 << m.width) - 1


def test_xi_rejects_negative_weight():
    with pytest.raises(ValueError):
        xi(moore_vector(bouton_matrix((1,))), -1)


def test_rank_known_values():
    idx = RankedIndex(5, 10)
    assert idx.total == comb(15, 5)
    assert idx.rank((0, 0, 0, 0, 0)) == 0
    assert idx.rank((10,) * 5) == idx.total - 1
    # the rank formula, spelled out on one position
    assert idx.rank((0, 0, 1, 2, 3)) == (
        comb(0, 1) + comb(1, 2) + comb(3, 3) + comb(5, 4) + comb(7, 5)
    )


def test_rank_is_bound_independent():
    small = RankedIndex(5, 12)
    large = RankedIndex(5, 200)
    for x in [(0, 0, 0, 0, 0), (1, 2, 3, 4, 5), (0, 0, 1, 1, 12), (12,) * 5]:
        assert small.rank(x) == large.rank(x)
    # bounded positions fill exactly the prefix of the larger space
    assert small.total == comb(17, 5)
    assert large.unrank(small.total - 1) == (12,) * 5
    assert large.unrank(small.total)[-1] == 13


@given(st.integers(0, comb(15, 5) - 1))
def test_unrank_round_trip(r):
    idx = RankedIndex(5, 10)
    x = idx.unrank(r)
    assert idx.rank(x) == r
    assert list(x) == sorted(x)
    assert x[-1] <= 10


@given(positions5, positions5)
def test_rank_monotone_in_colex(a, b):
    idx = RankedIndex(5, 40)
    ra, rb = idx.rank(a), idx.rank(b)
    # colex: compare from the most significant (last) coordinate down
    if a[::-1] < b[::-1]:
        assert ra < rb
    elif a == b:
        assert ra == rb
    else:
        assert ra > rb


def test_rank_validates_input():
    idx = RankedIndex(3, 5)
    with pytest.raises(ValueError):
        idx.rank((2, 1, 0))  # unsorted
    with pytest.raises(ValueError):
        idx.rank((0, 1))  # wrong arity
    with pytest.raises(ValueError):
        idx.rank((0, 1, 6))  # over bound
    with pytest.raises(ValueError):
        idx.unrank(idx.total)
    with pytest.raises(ValueError):
        idx.unrank(-1)


def test_index_rejects_bad_parameters():
    with pytest.raises(ValueError):
        RankedIndex(0, 5)
    with pytest.raises(ValueError):
        RankedIndex(3, -1)
    with pytest.raises(ValueError):
        RankedIndex(3, (1 << 16) + 1)


def test_reduction_strips_last_rank_digit():
    # rank_n(x) = rank_{n-1}(reduction) + C(leader + n - 1, n)
    five = RankedIndex(5, 15)
    four = RankedIndex(4, 15)
    for x in [(0, 0, 0, 0, 0), (1, 2, 3, 4, 5), (3, 3, 3, 3, 3), (0, 1, 1, 7, 15)]:
        assert five.rank(x) == four.rank(reduce_position(x)) + comb(x[-1] + 4, 5)
