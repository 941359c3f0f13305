# Atlas of exceptional positions.
#
# Good positions are the ones whose reduction explains their outcome
# through the quality taxonomy; bad positions that also fail the
# regularity fallback are exceptional.  They are rare, and moves between
# them form a small digraph worth staring at.

from xnim import (
    classify,
    exact,
    exceptional_graph,
    export_dot,
    export_jsonl,
    moore,
    solve_outcomes,
)
from xnim.solver import positions_of_ranks

BOUND = 40

et = solve_outcomes(exact(5, 2), BOUND, remoteness=True)
mt = solve_outcomes(moore(4, 2), BOUND, remoteness=True)
cls = classify(et, mt)

ranks = cls.exceptional_ranks()
print(f"bound {BOUND}: {len(ranks)} exceptional positions")

rows = positions_of_ranks(ranks, 5, BOUND)
for row, r in list(zip(rows.tolist(), ranks.tolist()))[:10]:
    x = tuple(row)
    print(f"  {x}  class {cls.class_of(x)}  remoteness {et.remoteness_of(x)}")

graph = exceptional_graph(cls)
print(f"graph: {len(graph.nodes)} nodes, {len(graph.edges)} edges")

# out-degrees counted two ways: distinct successor positions, and raw
# moves (a successor reachable through two pile pairs counts twice)
print("out-degree (distinct successors):", graph.out_successors.tolist()[:15])
print("out-degree (moves):              ", graph.out_moves.tolist()[:15])

# dump the atlas for other tools: one JSON record per position, and a
# DOT file for graphviz (dot -Tsvg exceptional_b40.dot -o atlas.svg)
n = export_jsonl(cls, "exceptional_b40.jsonl", which="exceptional")
export_dot(graph, "exceptional_b40.dot")
print(f"wrote exceptional_b40.jsonl ({n} records) and exceptional_b40.dot")
