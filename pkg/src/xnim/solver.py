"""Retrograde solver over bounded pile spaces.

``solve_outcomes`` computes the win/loss value of every canonical
position with piles up to a bound, walking stone-sum layers upward so
that every move target is already decided.  Optionally it also computes
remoteness: the number of moves the game lasts under optimal play, where
the winner hurries (minimum over winning replies) and the loser stalls
(maximum over all replies).  Terminal positions have remoteness 0, so a
position is a previous-player win exactly when its remoteness is even.

``brute_force_outcome`` / ``brute_force_remoteness`` implement the same
values by direct memoized recursion over the move relation; they are the
reference the table solver is validated against.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from . import _kernels
from .errors import OutOfBoundError, ResourceLimitError
from .positions import MAX_BOUND, Position, RankedIndex, canonicalize
from .rules import GameRule, is_terminal, successors

Outcome = str  # 'P' (previous player wins) or 'N' (next player wins)

DEFAULT_MEMORY_BUDGET = 3_750_000_000  # bytes; generous for tables up to ~1e9 cells
_REMOTENESS_LIMIT = 0xFFFF  # on-disk field is uint16


def binom_table(bound: int, n: int) -> np.ndarray:
    """Pascal table C(a, b) for a <= bound + n, b <= n + 1, as int64.

    Every entry used by the kernels is at most C(bound+n, n), which the
    memory guard keeps far below 2**63.
    """
    rows, cols = bound + n + 1, n + 2
    tbl = np.zeros((rows, cols), dtype=np.int64)
    tbl[:, 0] = 1
    for b in range(1, cols):
        tbl[1:, b] = np.cumsum(tbl[:-1, b - 1])
    return tbl


def subset_arrays(n: int, j: int) -> tuple[np.ndarray, np.ndarray]:
    """Index subsets of one arity: (removed columns, kept columns), ascending."""
    subs = list(combinations(range(n), j))
    sel = np.array(subs, dtype=np.int64).reshape(len(subs), j)
    comp = np.array(
        [[c for c in range(n) if c not in s] for s in subs], dtype=np.int64
    ).reshape(len(subs), n - j)
    return sel, comp


def rank_rows(pos: np.ndarray, binom: np.ndarray) -> np.ndarray:
    """Combinatorial ranks of canonical rows (vectorized)."""
    ranks = np.zeros(len(pos), dtype=np.int64)
    for i in range(pos.shape[1]):
        ranks += binom[pos[:, i] + i, i + 1]
    return ranks


def positions_of_ranks(ranks: np.ndarray, n: int, bound: int) -> np.ndarray:
    """Decode an array of ranks into canonical position rows."""
    binom = binom_table(bound, n)
    out = np.empty((len(ranks), n), dtype=np.int64)
    _kernels.unrank_many(np.ascontiguousarray(ranks, dtype=np.int64), n, bound, binom, out)
    return out


def iter_layers(n: int, bound: int, binom: np.ndarray):
    """Yield (stones, rows, ranks) per stone-sum layer, rows in rank order."""
    dummy = np.empty((0, n), dtype=np.int64)
    for s in range(n * bound + 1):
        cnt = _kernels.fill_layer(n, bound, s, dummy, False)
        pos = np.empty((cnt, n), dtype=np.int64)
        _kernels.fill_layer(n, bound, s, pos, True)
        yield s, pos, rank_rows(pos, binom)


class _ArityIndex:
    """Append-only CSR bucket table of decomposed target positions.

    Entries are keyed by the rank of the n-j kept values; each stores the
    j replaced values (ascending) and a remoteness.  Rebuilt lazily after
    appends.
    """

    def __init__(self, n: int, j: int, bound: int, binom: np.ndarray,
                 with_rems: bool = True):
        self.j = j
        self.binom = binom
        self.sel, self.comp = subset_arrays(n, j)
        self.key_space = comb(bound + n - j, n - j)
        self.with_rems = with_rems
        self._keys: list[np.ndarray] = []
        self._vals: list[np.ndarray] = []
        self._rems: list[np.ndarray] = []
        self.starts = np.zeros(self.key_space + 1, dtype=np.int64)
        self.vals = np.empty((0, j), dtype=np.int32)
        # scan_layer only reads rems under want_rem, so existence-only
        # indexes keep this empty
        self.rems = np.empty(0, dtype=np.int32)
        self.count = 0
        self._dirty = False

    def add(self, rows: np.ndarray, rems: np.ndarray | None = None) -> None:
        if not len(rows):
            return
        for si in range(len(self.sel)):
            key = np.zeros(len(rows), dtype=np.int64)
            for ci in range(self.comp.shape[1]):
                col = rows[:, self.comp[si, ci]]
                key += self.binom[col + ci, ci + 1]
            self._keys.append(key)
            self._vals.append(rows[:, self.sel[si]].astype(np.int32))
            if self.with_rems:
                self._rems.append(rems.astype(np.int32))
        self.count += len(rows) * len(self.sel)
        self._dirty = True

    def rebuild(self) -> None:
        if not self._dirty:
            return
        keys = np.concatenate(self._keys)
        vals = np.concatenate(self._vals)
        order = np.argsort(keys, kind="stable")
        keys = keys[order]
        self.vals = np.ascontiguousarray(vals[order])
        if self.with_rems:
            rems = np.concatenate(self._rems)
            self.rems = np.ascontiguousarray(rems[order])
            self._rems = [self.rems]
        counts = np.bincount(keys, minlength=self.key_space)
        self.starts = np.zeros(self.key_space + 1, dtype=np.int64)
        np.cumsum(counts, out=self.starts[1:])
        # keep the sorted result as the single pending chunk
        self._keys = [keys]
        self._vals = [self.vals]
        self._dirty = False


@dataclass
class SolveTable:
    """Solved outcome (and optional remoteness) arrays over a bounded space.

    ``outcomes[r]`` is 1 when the position of rank r is a previous-player
    win.  ``remoteness`` is a uint16 array aligned the same way, or None
    when not computed.
    """

    rule: GameRule
    bound: int
    outcomes: np.ndarray
    remoteness: np.ndarray | None = None

    @property
    def count(self) -> int:
        return len(self.outcomes)

    @property
    def index(self) -> RankedIndex:
        return RankedIndex(self.rule.n, self.bound)

    def has_remoteness(self) -> bool:
        return self.remoteness is not None

    def _rank_checked(self, x: Position) -> int:
        x = canonicalize(x)
        if len(x) != self.rule.n:
            raise ValueError(f"expected {self.rule.n} piles, got {len(x)}")
        if x and x[-1] > self.bound:
            raise OutOfBoundError(
                f"{x} exceeds table bound {self.bound}; need bound >= {x[-1]}",
                required_bound=x[-1],
            )
        return self.index.rank(x)

    def outcome_of(self, x: Position) -> Outcome:
        return "P" if self.outcomes[self._rank_checked(x)] else "N"

    def remoteness_of(self, x: Position) -> int:
        if self.remoteness is None:
            raise ValueError("table was solved without remoteness")
        return int(self.remoteness[self._rank_checked(x)])

    def p_ranks(self) -> np.ndarray:
        return np.flatnonzero(self.outcomes == 1)


def _check_budget(total: int, want_rem: bool, memory_budget: int) -> None:
    need = total * (3 if want_rem else 1)
    need += need // 4 + (128 << 20)
    if need > memory_budget:
        raise ResourceLimitError(
            f"solving {total} positions needs about {need / 1e9:.1f} GB, "
            f"over the budget of {memory_budget / 1e9:.1f} GB"
        )


def solve_outcomes(
    rule: GameRule,
    bound: int,
    *,
    remoteness: bool = False,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
    progress=None,
) -> SolveTable:
    """Solve every canonical position with piles <= bound.

    Layers are processed by increasing stone count; each layer is scanned
    against the index of already-solved losing positions, then its own
    losing rows are added.  With ``remoteness`` the same pass also fills
    game lengths (winners take the minimum over losing replies, losers
    the maximum over all replies).
    """
    n = rule.n
    if not 0 <= bound < MAX_BOUND:
        raise ValueError(f"bound must be in [0, {MAX_BOUND}), got {bound}")
    total = comb(bound + n, n)
    _check_budget(total, remoteness, memory_budget)
    if remoteness and n * bound >= _REMOTENESS_LIMIT:
        raise ResourceLimitError(
            f"remoteness can reach {n * bound}, over the 16-bit field limit "
            f"{_REMOTENESS_LIMIT - 1}; lower the bound"
        )

    binom = binom_table(bound, n)
    outcomes = np.zeros(total, dtype=np.uint8)
    rem = np.zeros(total, dtype=np.uint16) if remoteness else None
    dummy_minrem = np.empty(0, dtype=np.int64)
    indexes = [_ArityIndex(n, j, bound, binom) for j in rule.arities]

    for s, pos, ranks in iter_layers(n, bound, binom):
        m = len(pos)
        hit = np.zeros(m, dtype=np.uint8)
        minrem = np.full(m, _kernels.BIG, dtype=np.int64) if remoteness else dummy_minrem
        for ai in indexes:
            if ai.count:
                _kernels.scan_layer(
                    pos, ai.sel, ai.comp, binom, ai.starts, ai.vals, ai.rems,
                    remoteness, hit, minrem,
                )
        pmask = hit == 0
        outcomes[ranks[pmask]] = 1
        prows = pos[pmask]
        pranks = ranks[pmask]
        if remoteness:
            rem[ranks[~pmask]] = minrem[~pmask] + 1
            pbest = np.full(len(prows), -1, dtype=np.int64)
            for ai in indexes:
                _kernels.prem_layer(prows, ai.sel, ai.comp, binom, rem, pbest)
            rem[pranks] = pbest + 1
            prems = (pbest + 1).astype(np.int32)
        else:
            prems = np.zeros(len(prows), dtype=np.int32)
        for ai in indexes:
            ai.add(prows, prems)
            ai.rebuild()
        if progress is not None:
            progress(s, n * bound, m)

    return SolveTable(rule=rule, bound=bound, outcomes=outcomes, remoteness=rem)


def solve_remoteness(rule: GameRule, table: SolveTable,
                     memory_budget: int = DEFAULT_MEMORY_BUDGET) -> SolveTable:
    """Fill remoteness on a table solved without it.

    The layered pass recomputes outcomes as a byproduct; they must match
    the table exactly, which doubles as an internal consistency check.
    """
    if table.has_remoteness():
        return table
    full = solve_outcomes(rule, table.bound, remoteness=True,
                          memory_budget=memory_budget)
    if not np.array_equal(full.outcomes, table.outcomes):
        raise AssertionError("remoteness pass disagreed with stored outcomes")
    table.remoteness = full.remoteness
    return table


def sweep_exists_move(rule: GameRule, bound: int,
                      target_rows: np.ndarray) -> np.ndarray:
    """Byte per rank: 1 when some legal move leads into the target set.

    The target set is fixed (no retrograde dependency), so each arity is
    indexed once and every layer scanned against it.  Arities run one at
    a time to cap the index memory.
    """
    n = rule.n
    binom = binom_table(bound, n)
    total = comb(bound + n, n)
    out = np.zeros(total, dtype=np.uint8)
    target_rows = np.ascontiguousarray(target_rows, dtype=np.int64)
    dummy = np.empty(0, dtype=np.int64)
    for j in rule.arities:
        ai = _ArityIndex(n, j, bound, binom, with_rems=False)
        ai.add(target_rows)
        ai.rebuild()
        if not ai.count:
            continue
        for _s, pos, ranks in iter_layers(n, bound, binom):
            hit = np.zeros(len(pos), dtype=np.uint8)
            _kernels.scan_layer(pos, ai.sel, ai.comp, binom, ai.starts,
                                ai.vals, ai.rems, False, hit, dummy)
            out[ranks] |= hit
        del ai
    return out


def exists_move_into_mask(rule: GameRule, bound: int, source_rows: np.ndarray,
                          mask: np.ndarray) -> np.ndarray:
    """Byte per source row: 1 when some move lands on a rank with mask set.

    Enumerates successors directly (with early exit), so it suits small
    source sets against large target masks.
    """
    binom = binom_table(bound, rule.n)
    source_rows = np.ascontiguousarray(source_rows, dtype=np.int64)
    out = np.zeros(len(source_rows), dtype=np.uint8)
    for j in rule.arities:
        sel, comp = subset_arrays(rule.n, j)
        _kernels.mask_hit(source_rows, sel, comp, binom, mask, out)
    return out


# --- reference implementations -------------------------------------------

_BF_GUARD = 64
_bf_out_memo: dict[tuple[GameRule, Position], bool] = {}
_bf_rem_memo: dict[tuple[GameRule, Position], int] = {}


def brute_force_outcome(rule: GameRule, x: Position) -> Outcome:
    """Game value by direct recursion over the move relation (small inputs)."""
    x = canonicalize(x)
    if sum(x) > _BF_GUARD:
        raise ValueError(f"brute force is limited to {_BF_GUARD} stones")

    def win(pos: Position) -> bool:
        key = (rule, pos)
        if key not in _bf_out_memo:
            # a position is a win iff some successor is a loss
            _bf_out_memo[key] = any(not win(y) for y in successors(rule, pos))
        return _bf_out_memo[key]

    return "N" if win(x) else "P"


def brute_force_remoteness(rule: GameRule, x: Position) -> int:
    """Game length under optimal play by direct recursion (small inputs)."""
    x = canonicalize(x)
    if sum(x) > _BF_GUARD:
        raise ValueError(f"brute force is limited to {_BF_GUARD} stones")

    def rec(pos: Position) -> int:
        key = (rule, pos)
        if key not in _bf_rem_memo:
            child = [rec(y) for y in successors(rule, pos)]
            if not child:
                _bf_rem_memo[key] = 0
            else:
                losses = [r for r in child if r % 2 == 0]
                _bf_rem_memo[key] = 1 + (min(losses) if losses else max(child))
        return _bf_rem_memo[key]

    return rec(x)


def best_move(rule: GameRule, table: SolveTable, x: Position) -> Position:
    """A winning reply from a next-player-win position.

    Picks a losing successor; with remoteness available, one of minimum
    remoteness (fastest win), ties broken by enumeration order.
    """
    x = canonicalize(x)
    if table.outcome_of(x) != "N":
        raise ValueError(f"{x} is a previous-player win; no winning move exists")
    best: Position | None = None
    best_rem = None
    for y in successors(rule, x):
        if table.outcome_of(y) != "P":
            continue
        if not table.has_remoteness():
            return y
        r = table.remoteness_of(y)
        if best is None or r < best_rem:
            best, best_rem = y, r
    if best is None:  # unreachable: an N position has a losing successor
        raise AssertionError(f"no losing successor found from {x}")
    return best


__all__ = [
    "Outcome",
    "SolveTable",
    "DEFAULT_MEMORY_BUDGET",
    "solve_outcomes",
    "solve_remoteness",
    "sweep_exists_move",
    "exists_move_into_mask",
    "brute_force_outcome",
    "brute_force_remoteness",
    "best_move",
    "binom_table",
    "subset_arrays",
    "rank_rows",
    "positions_of_ranks",
    "iter_layers",
]
