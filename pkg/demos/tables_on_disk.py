# Saving and reloading solved tables.
#
# A solved table is a bitmap of outcomes plus, optionally, sixteen-bit
# remoteness values, all in rank order.  The on-disk format is a small
# header followed by those arrays verbatim, so files are cheap to write
# and memory-map friendly to read.
#
# The same things are available from the shell:
#   xnim solve --bound 30 --out exact-30.xnim
#   xnim query 3 5 6 7 7 --bound 30
#   xnim verify all --bound 30

import os

import numpy as np

from xnim import exact, read_table, solve_outcomes, write_table

table = solve_outcomes(exact(5, 2), 30, remoteness=True)
write_table(table, "exact-5-2-b30.xnim")
size = os.path.getsize("exact-5-2-b30.xnim")
print(f"{table.count} positions -> {size} bytes",
      f"({size / table.count:.3f} bytes per position)")

back = read_table("exact-5-2-b30.xnim")
same = np.array_equal(back.outcomes, table.outcomes) and np.array_equal(
    back.remoteness, table.remoteness
)
print(f"read back: rule {back.rule.family}({back.rule.n},{back.rule.k}),",
      f"bound {back.bound}, bit-identical: {same}")

# outcomes alone cost one bit per position; remoteness dominates
p = int(np.sum(back.outcomes))
print(f"{p} previous-player wins, {back.count - p} next-player wins")
print(f"remoteness range: {int(back.remoteness.min())} .. {int(back.remoteness.max())}")
