"""
Difference vectors of PN positions and their periods
====================================================

Fix the smallest pile and sort the PN positions; consecutive ones tend
to repeat the same difference vector pattern.  The detector below hunts
for the shortest period and preperiod with at least three full
repetitions.
"""

from xnim import classify, detect_periodicity, exact, moore, solve_outcomes

BOUND = 40

et = solve_outcomes(exact(5, 2), BOUND)
mt = solve_outcomes(moore(4, 2), BOUND)
cls = classify(et, mt)

print(f"bound {BOUND}")
print("x1   PN rows   period   preperiod   repetitions")
for x1 in range(6):
    rep = detect_periodicity(cls, x1)
    if rep.found:
        print(f"{x1:>2}   {rep.length:>7}   {rep.period:>6}   {rep.preperiod:>9}   {rep.repetitions:>11}")
    else:
        print(f"{x1:>2}   {rep.length:>7}   none found")

# the x1 = 0 row is empty by a closed form: a P-position with an empty
# pile has three equal middle piles, its reduction is balanced, and a
# balanced reduction of a P-position is itself a previous-player win,
# so the class is PP and never PN

# what the detector actually sees: sort the slice, difference the top
# four piles, and look for a repeating block of vectors
import numpy as np

from xnim.classify import PN
from xnim.solver import positions_of_ranks

for x1 in (1, 2):
    ranks = np.flatnonzero(cls.pair_class == PN)
    rows = positions_of_ranks(ranks, 5, BOUND)
    rows = rows[rows[:, 0] == x1]
    rows = rows[np.lexsort(rows.T[::-1])]
    diffs = np.diff(rows[:, 1:], axis=1)
    print(f"\nfirst difference vectors at x1={x1}:")
    for row, d in list(zip(rows.tolist(), diffs.tolist()))[:8]:
        print(f"  {tuple(row)} -> {tuple(d)}")
