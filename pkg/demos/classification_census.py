# Census of the four position classes.
#
# Every five-pile position gets a two-letter label: the first letter is
# its own outcome under the shrink-exactly-two rule, the second is the
# outcome of its reduction (drop one copy of the largest pile) under the
# shrink-one-or-two rule.  PP and NN mean the reduction predicts the
# game; PN and NP mean it does not.

import numpy as np

from xnim import class_counts, classify, exact, export_csv_series, moore, solve_outcomes

BOUND = 40

et = solve_outcomes(exact(5, 2), BOUND)
mt = solve_outcomes(moore(4, 2), BOUND)
cls = classify(et, mt)
series = class_counts(cls)

g = series.global_counts()
total = int(sum(g.values()))
print(f"bound {BOUND}, {total} positions:")
for name in ("PP", "PN", "NP", "NN"):
    print(f"  {name}: {g[name]:>9}  ({g[name] / total:.2%})")

# among P-positions of the exact game, how often does the reduction
# mislead?  the share sinks slowly as the bound grows
print(f"\nPN share of P-positions: {series.pn_share_of_p():.4f}")
print(f"PN share of everything:  {series.pn_share_of_all():.6f}")

# per-stone ratios bounce around instead of settling; print a slice
pp_pn = series.ratio_pp_pn()
mixed = series.ratio_unbalanced()
print("\nstones   PP/PN    (NP+PN)/(NN+PP)")
for s in range(30, 46):
    print(f"{s:>6}   {pp_pn[s]:>6.2f}   {mixed[s]:.6f}")

# the full series, one row per stone count, for plotting elsewhere
rows = export_csv_series(series, "class_counts_b40.csv")
print(f"\nwrote class_counts_b40.csv ({rows} rows)")

# the NP column is almost empty: positions that win although their
# reduction loses are rare and all of them are balanced
np_ranks = np.flatnonzero(cls.pair_class == 2)
print(f"\nall {len(np_ranks)} NP positions up to bound {BOUND}:")
from xnim.solver import positions_of_ranks

for row in positions_of_ranks(np_ranks, 5, BOUND).tolist()[:12]:
    print(f"  {tuple(row)}")
if len(np_ranks) > 12:
    print(f"  ... and {len(np_ranks) - 12} more")
