"""Canonical pile positions, their binary matrices, and dense integer ranks.

A position is a multiset of pile sizes, always handled in canonical form:
a tuple sorted in non-decreasing order.  Positions with n piles, each at
most B stones, are indexed by the combinatorial number system so that the
whole space maps onto the dense range 0 .. C(B+n, n) - 1.  The rank of a
position does not depend on B, which lets tables built with different
bounds share a common prefix.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

Position = tuple[int, ...]

# Pile bounds are capped so that ranks stay comfortably inside int64 and
# remoteness values fit the 16-bit on-disk field.
MAX_BOUND = 1 << 16


def canonicalize(piles) -> Position:
    """Return the canonical (sorted, non-decreasing) form of a pile multiset.

    Args:
        piles: Iterable of non-negative integers.

    Returns:
        Tuple of the same values sorted ascending.
    """
    out = tuple(sorted(int(p) for p in piles))
    if out and out[0] < 0:
        raise ValueError(f"pile sizes must be non-negative, got {min(out)}")
    return out


def reduce_position(x: Position) -> Position:
    """Drop one copy of the largest pile (the designated leader).

    The input must be canonical; the result is the canonical (n-1)-pile
    position obtained by deleting the last coordinate.
    """
    if not x:
        raise ValueError("cannot reduce an empty position")
    return x[:-1]


@dataclass(frozen=True)
class BoutonMatrix:
    """Binary matrix of a position: row i is the base-2 expansion of pile i.

    Bit j of ``rows[i]`` is the matrix entry in column j, so column 0 holds
    the least significant bits.  ``width`` is the number of columns, which
    is the bit length of the largest pile (at least 1 so the matrix is
    never empty).
    """

    rows: tuple[int, ...]
    width: int

    def bit(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def column(self, j: int) -> tuple[int, ...]:
        """Bits of column j listed by row; valid for any j >= 0."""
        return tuple((r >> j) & 1 for r in self.rows)

    def packed_columns(self, width: int | None = None) -> tuple[int, ...]:
        """Each column packed into one integer, bit i set when row i is 1.

        Padding ``width`` beyond the natural one appends zero columns; this
        is how matrices of different widths are compared.
        """
        w = self.width if width is None else width
        if w < self.width:
            raise ValueError(f"width {w} narrower than matrix width {self.width}")
        return tuple(
            sum(((r >> j) & 1) << i for i, r in enumerate(self.rows)) for j in range(w)
        )


def bouton_matrix(x: Position) -> BoutonMatrix:
    """Build the binary pile matrix of a canonical position."""
    width = max((int(p).bit_length() for p in x), default=0)
    return BoutonMatrix(rows=tuple(int(p) for p in x), width=max(width, 1))


@dataclass(frozen=True)
class MooreVector:
    """Per-column one-counts of a BoutonMatrix, index 0 = least significant."""

    sums: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.sums)

    def __getitem__(self, j: int) -> int:
        return self.sums[j]


def moore_vector(m: BoutonMatrix) -> MooreVector:
    """Column sums of the pile matrix."""
    return MooreVector(
        sums=tuple(sum((r >> j) & 1 for r in m.rows) for j in range(m.width))
    )


def xi(m: MooreVector, w: int) -> int:
    """Pack the columns whose one-count equals w into a single integer.

    Bit k of the result is set exactly when column k of the matrix has w
    ones.  Over w = 0 .. number of rows these values partition the columns,
    so they sum to 2**width - 1.
    """
    if w < 0:
        raise ValueError("column count must be non-negative")
    out = 0
    for k, s in enumerate(m.sums):
        if s == w:
            out |= 1 << k
    return out


class RankedIndex:
    """Dense bijection between bounded canonical positions and 0 .. total-1.

    Uses the combinatorial number system in colexicographic order:

        rank(x_1 <= ... <= x_n) = sum_i C(x_i + i - 1, i)

    Ranks are independent of the bound: a position has the same rank in
    every index (of the same n) whose bound admits it, and the positions
    with leader at most b occupy exactly the prefix 0 .. C(b+n, n) - 1.
    """

    def __init__(self, n: int, bound: int):
        if n < 1:
            raise ValueError(f"need at least one pile, got n={n}")
        if not 0 <= bound <= MAX_BOUND:
            raise ValueError(f"bound must be in [0, {MAX_BOUND}], got {bound}")
        self.n = n
        self.bound = bound
        self.total = comb(bound + n, n)

    def rank(self, x: Position) -> int:
        """Rank of a canonical in-bound position; caller errors raise ValueError."""
        if len(x) != self.n:
            raise ValueError(f"expected {self.n} piles, got {len(x)}")
        r = 0
        prev = 0
        for i, v in enumerate(x, start=1):
            if v < prev:
                raise ValueError(f"position {x} is not sorted")
            if v > self.bound:
                raise ValueError(f"pile {v} exceeds bound {self.bound}")
            prev = v
            r += comb(v + i - 1, i)
        return r

    def unrank(self, r: int) -> Position:
        """Inverse of rank; r must lie in [0, total)."""
        if not 0 <= r < self.total:
            raise ValueError(f"rank {r} outside [0, {self.total})")
        digits = [0] * self.n
        cap = self.bound
        for i in range(self.n, 0, -1):
            # Largest v <= cap with C(v+i-1, i) <= r, by binary search.
            lo, hi = 0, cap
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if comb(mid + i - 1, i) <= r:
                    lo = mid
                else:
                    hi = mid - 1
            digits[i - 1] = lo
            r -= comb(lo + i - 1, i)
            cap = lo
        return tuple(digits)

    def __repr__(self) -> str:
        return f"RankedIndex(n={self.n}, bound={self.bound}, total={self.total})"
