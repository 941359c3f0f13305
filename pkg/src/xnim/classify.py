"""Pairing exact-game positions with the Moore game of their reduction.

Every canonical position x of exact(n, =k) is reduced by deleting one
copy of its largest pile; the result is a position of moore(n-1, <=k).
The pair of outcomes (exact outcome of x, Moore outcome of the
reduction) splits the space into four classes PP, PN, NP, NN, written
first letter for x and second for the reduction.

Positions whose second letter is P form the balanced-reduction set; the
reduction ranks line up so that membership, and moves into the set, can
be computed by array slices and indexed sweeps:

    rank_n(x) = rank_{n-1}(reduction) + C(leader + n - 1, n)

On top of the pair classes sit two derived labels:

* quality: PP positions are good and NP positions are bad outright;
  an NN position is good exactly when it has a move into the
  balanced-reduction set, and a PN position is bad exactly when it has
  one (such a move would hand the opponent the pair correspondence).
* regularity, defined for bad positions only: a bad N position is
  regular when some move reaches a good P position; a bad P position is
  regular when every move reaches a good N position.  The rest are
  exceptional.

A deadender is a position with unbalanced reduction and no move into
the balanced-reduction set; play from it can never re-enter the set.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

from .positions import Position
from .rules import GameRule, moore
from .solver import (
    SolveTable,
    binom_table,
    exists_move_into_mask,
    positions_of_ranks,
    sweep_exists_move,
)

PP, PN, NP, NN = 0, 1, 2, 3
CLASS_NAMES = ("PP", "PN", "NP", "NN")
GOOD, BAD = 0, 1
REG_NONE, REG_REGULAR, REG_EXCEPTIONAL = 0, 1, 2


@dataclass
class Classification:
    """Per-rank classification arrays over one exact-game table."""

    exact_table: SolveTable
    moore_table: SolveTable
    pair_class: np.ndarray  # uint8: PP/PN/NP/NN
    has_star_move: np.ndarray  # uint8: some move reaches a balanced reduction
    quality: np.ndarray  # uint8: GOOD/BAD
    regularity: np.ndarray  # uint8: REG_NONE/REG_REGULAR/REG_EXCEPTIONAL

    @property
    def rule(self) -> GameRule:
        return self.exact_table.rule

    @property
    def bound(self) -> int:
        return self.exact_table.bound

    @property
    def count(self) -> int:
        return self.exact_table.count

    def _rank(self, x: Position) -> int:
        return self.exact_table._rank_checked(x)

    def class_of(self, x: Position) -> str:
        return CLASS_NAMES[self.pair_class[self._rank(x)]]

    def quality_of(self, x: Position) -> str:
        return "good" if self.quality[self._rank(x)] == GOOD else "bad"

    def regularity_of(self, x: Position) -> str:
        r = self.regularity[self._rank(x)]
        return ("none", "regular", "exceptional")[r]

    def star_ranks(self) -> np.ndarray:
        """Ranks whose reduction is a Moore previous-player win (PP or NP)."""
        return np.flatnonzero((self.pair_class & 1) == 0)

    def star_to_star_ranks(self) -> np.ndarray:
        """Balanced-reduction positions with a move to another one.

        Expected empty: such a move would let the player holding the
        pair correspondence be undercut.  Kept as data rather than an
        assertion so the checkers can report on it.
        """
        return np.flatnonzero(((self.pair_class & 1) == 0) & (self.has_star_move == 1))

    def deadender_ranks(self) -> np.ndarray:
        return np.flatnonzero(((self.pair_class & 1) == 1) & (self.has_star_move == 0))

    def exceptional_ranks(self) -> np.ndarray:
        return np.flatnonzero(self.regularity == REG_EXCEPTIONAL)


def classify(exact_table: SolveTable, moore_table: SolveTable) -> Classification:
    """Build the full classification for an exact table and its Moore pair.

    The tables must share the bound, and the Moore game must be the
    reduction game: moore(n-1, <=k) for exact(n, =k).
    """
    er, mr = exact_table.rule, moore_table.rule
    if er.family != "exact":
        raise ValueError(f"first table must be an exact game, got {er.label()}")
    if mr != moore(er.n - 1, er.k):
        raise ValueError(
            f"reduction game of {er.label()} is {moore(er.n - 1, er.k).label()}, "
            f"got {mr.label()}"
        )
    if exact_table.bound != moore_table.bound:
        raise ValueError(
            f"tables must share a bound, got {exact_table.bound} and {moore_table.bound}"
        )

    n, bound = er.n, exact_table.bound
    binom = binom_table(bound, n)
    e_out, m_out = exact_table.outcomes, moore_table.outcomes

    # Positions with leader exactly v occupy the rank block starting at
    # C(v+n-1, n); their reductions are all (n-1)-tuples bounded by v, in
    # the same order, so one slice pairs the two tables.
    pair = np.empty(exact_table.count, dtype=np.uint8)
    for v in range(bound + 1):
        off = int(binom[v + n - 1, n])
        ln = int(binom[v + n - 1, n - 1])
        pair[off : off + ln] = 2 * (1 - e_out[off : off + ln]) + (1 - m_out[:ln])

    star_rows = positions_of_ranks(np.flatnonzero((pair & 1) == 0), n, bound)
    has_star = sweep_exists_move(er, bound, star_rows)

    quality = np.full(exact_table.count, BAD, dtype=np.uint8)
    quality[pair == PP] = GOOD
    quality[(pair == NN) & (has_star == 1)] = GOOD
    quality[(pair == PN) & (has_star == 0)] = GOOD

    good_p = np.flatnonzero((quality == GOOD) & (e_out == 1))
    has_good_p = sweep_exists_move(er, bound, positions_of_ranks(good_p, n, bound))

    regularity = np.zeros(exact_table.count, dtype=np.uint8)
    bad_n = (quality == BAD) & (e_out == 0)
    regularity[bad_n & (has_good_p == 1)] = REG_REGULAR
    regularity[bad_n & (has_good_p == 0)] = REG_EXCEPTIONAL

    bad_p_ranks = np.flatnonzero((quality == BAD) & (e_out == 1))
    if len(bad_p_ranks):
        hits = exists_move_into_mask(
            er, bound, positions_of_ranks(bad_p_ranks, n, bound),
            bad_n.astype(np.uint8),
        )
        regularity[bad_p_ranks[hits == 1]] = REG_EXCEPTIONAL
        regularity[bad_p_ranks[hits == 0]] = REG_REGULAR

    return Classification(
        exact_table=exact_table,
        moore_table=moore_table,
        pair_class=pair,
        has_star_move=has_star,
        quality=quality,
        regularity=regularity,
    )


def deadenders(cls: Classification) -> list[Position]:
    """Positions with unbalanced reduction and no move into the balanced set."""
    rows = positions_of_ranks(cls.deadender_ranks(), cls.rule.n, cls.bound)
    return [tuple(int(v) for v in row) for row in rows]


@dataclass
class ExceptionalGraph:
    """Digraph of legal moves between exceptional positions.

    Edges connect distinct exceptional positions; ``out_successors``
    counts distinct exceptional successors per node while ``out_moves``
    counts the moves reaching them (one move = a choice of reduced pile
    slots plus their new values, so equal piles can give several moves
    onto one successor).
    """

    bound: int
    nodes: list[Position]
    ranks: np.ndarray
    outcomes: list[str]  # exact-game outcome per node
    classes: list[str]  # pair class per node
    edges: list[tuple[int, int]]
    out_successors: np.ndarray
    out_moves: np.ndarray

    @property
    def in_degrees(self) -> np.ndarray:
        deg = np.zeros(len(self.nodes), dtype=np.int64)
        for _s, t in self.edges:
            deg[t] += 1
        return deg

    def isolated(self) -> np.ndarray:
        iso = self.out_successors == 0
        for s, t in self.edges:
            iso[t] = False
        return iso


def exceptional_graph(cls: Classification) -> ExceptionalGraph:
    """Build the move digraph on the exceptional positions."""
    rule = cls.rule
    ranks = cls.exceptional_ranks()
    rows = positions_of_ranks(ranks, rule.n, cls.bound)
    nodes = [tuple(int(v) for v in row) for row in rows]
    outcomes = [
        "P" if cls.exact_table.outcomes[r] else "N" for r in ranks.tolist()
    ]
    classes = [CLASS_NAMES[cls.pair_class[r]] for r in ranks.tolist()]

    # bucket target decompositions by (arity, kept values)
    bucket: dict[tuple, set] = {}
    for i, y in enumerate(nodes):
        for j in rule.arities:
            for sel in combinations(range(rule.n), j):
                kept = tuple(y[c] for c in range(rule.n) if c not in sel)
                vals = tuple(y[c] for c in sel)
                bucket.setdefault((j, kept), set()).add((vals, i))

    edges: set[tuple[int, int]] = set()
    out_succ = np.zeros(len(nodes), dtype=np.int64)
    out_moves = np.zeros(len(nodes), dtype=np.int64)
    for i, x in enumerate(nodes):
        seen: set[int] = set()
        for j in rule.arities:
            for sel in combinations(range(rule.n), j):
                removed = tuple(x[c] for c in sel)
                kept = tuple(x[c] for c in range(rule.n) if c not in sel)
                for vals, tgt in bucket.get((j, kept), ()):
                    hit = False
                    for perm in set(permutations(vals)):
                        if all(a < b for a, b in zip(perm, removed)):
                            out_moves[i] += 1
                            hit = True
                    if hit:
                        seen.add(tgt)
        for tgt in seen:
            edges.add((i, tgt))
        out_succ[i] = len(seen)

    return ExceptionalGraph(
        bound=cls.bound,
        nodes=nodes,
        ranks=ranks,
        outcomes=outcomes,
        classes=classes,
        edges=sorted(edges),
        out_successors=out_succ,
        out_moves=out_moves,
    )
