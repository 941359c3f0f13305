"""
Stress-testing the closed-form winning criteria
===============================================

Each game family has a pencil-and-paper test for who wins.  This script
hammers each test against solved tables and prints one verdict per
check.  Everything here is also wired into the test suite; the point of
the script is to show the checking API on its own.
"""

from xnim import (
    check_balanced_np_criterion,
    check_bouton_criterion,
    check_moore_criterion,
    check_no_star_to_star_moves,
    check_zero_pile_closed_form,
    classify,
    exact,
    moore,
    nim,
    solve_outcomes,
)

# single-pile-shrink nim: P iff the binary xor of the piles is zero
t = solve_outcomes(nim(4), 12)
print(check_bouton_criterion(t).summary_line())

# shrink up to two piles: P iff every bit-column of the pile matrix
# has a one-count divisible by three
t = solve_outcomes(moore(4, 2), 24)
print(check_moore_criterion(t).summary_line())

# exact(5,2) with an empty pile: P iff, after sorting, the three
# middle piles are equal
t = solve_outcomes(exact(5, 2), 30)
print(check_zero_pile_closed_form(t).summary_line())

# the balanced/unbalanced split of reductions, refined by xi3 against
# the largest pile, pins down the NP and PP classes exactly
et = solve_outcomes(exact(5, 2), 40)
mt = solve_outcomes(moore(4, 2), 40)
cls = classify(et, mt)
rep = check_balanced_np_criterion(cls)
print(rep.summary_line())
print(f"  balanced reductions: {rep.stats['balanced_positions']}",
      f"({rep.stats['np']} NP, {rep.stats['pp']} PP)")

# no move of the exact game connects two positions whose reductions
# are both previous-player wins
rep = check_no_star_to_star_moves(cls)
print(rep.summary_line())
print(f"  sources scanned: {rep.stats['star_positions']},",
      f"leader-changing hits: {rep.stats['leader_changing_moves']},",
      f"leader-preserving hits: {rep.stats['leader_preserving_moves']}")
