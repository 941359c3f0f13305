"""
Solving a pile game and reading the table
=========================================

Retrograde analysis over all positions with piles up to a bound,
then a few lookups, a best move, and one optimal line played out.
"""

import numpy as np

from xnim import best_move, exact, is_terminal, moore, solve_outcomes

BOUND = 20

# solve the five-pile game where a move shrinks exactly two piles,
# and the four-pile game where a move shrinks one or two
et = solve_outcomes(exact(5, 2), BOUND, remoteness=True)
mt = solve_outcomes(moore(4, 2), BOUND, remoteness=True)

print(f"exact(5,2) bound {BOUND}: {et.count} positions,",
      f"{int(np.sum(et.outcomes))} previous-player wins")
print(f"moore(4,<=2) bound {BOUND}: {mt.count} positions,",
      f"{int(np.sum(mt.outcomes))} previous-player wins")

# point lookups; tuples are sorted internally, any order works
for x in [(0, 0, 0, 0, 0), (1, 1, 1, 1, 1), (3, 5, 6, 7, 7), (4, 12, 19, 2, 2)]:
    o = et.outcome_of(x)
    r = et.remoteness_of(x)
    print(f"  {x}: {o}, remoteness {r}")

# remoteness is the length of the game when the winner hurries
# and the loser stalls; play one such line out and count the moves
from xnim import successors


def stall(rule, table, x):
    # the losing side cannot reach a P-position, so it drags the
    # game out by moving to the successor with maximal remoteness
    return max(set(successors(rule, x)), key=table.remoteness_of)


rule = exact(5, 2)
x = (2, 3, 5, 8, 13)
expected = et.remoteness_of(x)
print(f"\noptimal line from {x} (remoteness {expected}):")
moves = 0
while not is_terminal(rule, x):
    x = best_move(rule, et, x) if et.outcome_of(x) == "N" else stall(rule, et, x)
    moves += 1
    print(f"  move {moves}: -> {x}")
print(f"game over after {moves} moves (remoteness said {expected});",
      "the side that moved last wins")
