"""Move rules for nim, Moore's nim(n, <=k), and exact nim(n, =k).

All three games share the board (n piles, canonical sorted tuples) and
differ only in how many piles one move may touch:

* nim        - exactly one pile,
* moore      - between 1 and k piles,
* exact      - exactly k piles, each reduced by at least one stone.

A position is terminal when no legal move exists: the all-zero position
for nim and moore, and any position with fewer than k non-empty piles for
exact.  Closed-form winner tests are provided where they are known; the
general solver lives in :mod:`xnim.solver`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .positions import Position, bouton_matrix, canonicalize, moore_vector


@dataclass(frozen=True)
class GameRule:
    """One game family instance: ``family`` in {'nim', 'moore', 'exact'}."""

    family: str
    n: int
    k: int

    def __post_init__(self):
        if self.family not in ("nim", "moore", "exact"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise ValueError(f"need at least one pile, got n={self.n}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"k must satisfy 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.family == "nim" and self.k != 1:
            raise ValueError("nim moves touch exactly one pile")

    @property
    def arities(self) -> tuple[int, ...]:
        """Numbers of piles a single move may reduce."""
        if self.family == "moore":
            return tuple(range(1, self.k + 1))
        return (self.k,)

    def label(self) -> str:
        if self.family == "nim":
            return f"nim({self.n})"
        if self.family == "moore":
            return f"moore({self.n},<={self.k})"
        return f"exact({self.n},={self.k})"


def nim(n: int) -> GameRule:
    return GameRule("nim", n, 1)


def moore(n: int, k: int) -> GameRule:
    return GameRule("moore", n, k)


def exact(n: int, k: int) -> GameRule:
    return GameRule("exact", n, k)


def is_terminal(rule: GameRule, x: Position) -> bool:
    """True when no legal move exists from x."""
    nonempty = sum(1 for p in x if p > 0)
    if rule.family == "exact":
        return nonempty < rule.k
    return nonempty == 0


def successors(rule: GameRule, x: Position) -> Iterator[Position]:
    """Yield each distinct canonical successor of x exactly once.

    Enumeration order is deterministic: move arity ascending, then the
    reduced index sets in lexicographic order, then replacement values in
    colex order.  Duplicates arising from equal piles are suppressed.
    """
    if len(x) != rule.n:
        raise ValueError(f"expected {rule.n} piles, got {len(x)}")
    seen: set[Position] = set()
    for j in rule.arities:
        for idxs in combinations(range(rule.n), j):
            if any(x[i] == 0 for i in idxs):
                continue
            caps = [x[i] for i in idxs]
            new = [0] * j
            while True:
                y = list(x)
                for t, i in enumerate(idxs):
                    y[i] = new[t]
                cy = canonicalize(y)
                if cy not in seen:
                    seen.add(cy)
                    yield cy
                # advance the replacement vector in colex order
                t = 0
                while t < j:
                    new[t] += 1
                    if new[t] < caps[t]:
                        break
                    new[t] = 0
                    t += 1
                if t == j:
                    break


def move_exists_between(rule: GameRule, x: Position, y: Position) -> bool:
    """Decide whether one legal move of ``rule`` leads from x to y.

    Both positions are multisets; a move exists when some arity-j index
    set of x can be reduced (each pile strictly) so the result equals y
    as a multiset.
    """
    if len(x) != rule.n or len(y) != rule.n:
        raise ValueError("positions must have the rule's pile count")
    if sum(y) >= sum(x):
        return False
    for j in rule.arities:
        for removed in combinations(range(rule.n), j):
            if any(x[i] == 0 for i in removed):
                continue
            rest = list(x)
            for i in sorted(removed, reverse=True):
                del rest[i]
            for placed in combinations(range(rule.n), j):
                new = [y[i] for i in placed]
                resty = [y[i] for i in range(rule.n) if i not in placed]
                if sorted(rest) != sorted(resty):
                    continue
                old = sorted(x[i] for i in removed)
                if all(a < b for a, b in zip(sorted(new), old)):
                    return True
    return False


def bouton_is_p(x: Position) -> bool:
    """Nim criterion: a position loses iff the XOR of all piles is zero."""
    acc = 0
    for p in x:
        acc ^= p
    return acc == 0


def moore_is_p(x: Position, k: int) -> bool:
    """Moore criterion: every column one-count is divisible by k+1."""
    m = moore_vector(bouton_matrix(x))
    return all(s % (k + 1) == 0 for s in m.sums)


def zero_pile_exact_is_p(x: Position) -> bool:
    """Closed-form exact(5,=2) test for positions whose smallest pile is 0.

    With one pile empty the game collapses: the position loses exactly
    when the three middle piles are equal.  Raises ValueError when the
    smallest pile is non-zero, where no closed form is available.
    """
    if len(x) != 5:
        raise ValueError(f"expected 5 piles, got {len(x)}")
    if x[0] != 0:
        raise ValueError(f"closed form needs an empty pile, got smallest {x[0]}")
    return x[1] == x[2] == x[3]


def moore_winning_move(x: Position, k: int) -> Position:
    """A winning reply in moore(n, <=k) from a position failing the criterion.

    Scans columns from the highest unbalanced one downward, maintaining the
    set C of rows changed so far (|C| <= k throughout).  At each column,
    with t = |C|, u = ones of C in that column, and a = column sum mod k+1,
    one of three adjustments balances the column:

    * a <= u: flip a of C's ones to zero,
    * t + a - u <= k: keep C's bits zero and recruit a - u fresh rows by
      zeroing ones of unchanged rows (each recruit clears its lower bits),
    * otherwise: flip k + 1 - a of C's zeros to one.

    Rows are always picked lowest index first.  Each changed row first
    loses a one with all lower bits cleared, so it strictly decreases and
    the move is legal.  Raises ValueError when x already satisfies the
    criterion (no winning move exists).
    """
    if not 1 <= k <= len(x):
        raise ValueError(f"k must satisfy 1 <= k <= n, got k={k}, n={len(x)}")
    m = bouton_matrix(x)
    sums = moore_vector(m).sums
    kk = k + 1
    top = -1
    for j in range(m.width - 1, -1, -1):
        if sums[j] % kk != 0:
            top = j
            break
    if top < 0:
        raise ValueError(f"{x} satisfies the criterion; no winning move exists")

    y = list(m.rows)
    changed: list[int] = []
    for col in range(top, -1, -1):
        # membership is judged on the original bits; assignments go into y,
        # whose changed-row bits at this column start out cleared
        ones = [r for r in changed if (m.rows[r] >> col) & 1]
        zeros = [r for r in changed if not (m.rows[r] >> col) & 1]
        t, u = len(changed), len(ones)
        a = sums[col] % kk
        if a <= u:
            for r in ones[a:]:
                y[r] |= 1 << col
        elif t + a - u <= k:
            fresh = [
                r
                for r in range(len(x))
                if r not in changed and (m.rows[r] >> col) & 1
            ][: a - u]
            for r in fresh:
                # keep bits above col, clear col and everything below
                y[r] = (m.rows[r] >> (col + 1)) << (col + 1)
                changed.append(r)
            changed.sort()
        else:
            for r in ones:
                y[r] |= 1 << col
            for r in zeros[: kk - a]:
                y[r] |= 1 << col
    return canonicalize(y)
