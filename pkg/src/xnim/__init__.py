"""Solvers and analysis tools for nim, Moore's nim, and exact nim.

The package revolves around three move rules on multisets of piles:
classic nim (reduce one pile), Moore's nim(n, <=k) (reduce one to k
piles), and exact nim(n, =k) (reduce exactly k piles).  It provides
closed-form winner tests where known, a retrograde solver over bounded
pile spaces, a classification of exact-game positions against the Moore
game of their reduction, and the measurement tools built on top.
"""

from .analysis import (
    CheckReport,
    ClassCountSeries,
    PeriodicityReport,
    RelationCase,
    RELATION_CATALOG,
    check_balanced_np_criterion,
    check_bouton_criterion,
    check_exceptional_graph,
    check_moore_criterion,
    check_no_permutation_moves,
    check_no_star_to_star_moves,
    check_nonmonotonicity,
    check_zero_pile_closed_form,
    class_counts,
    detect_periodicity,
    remoteness_comparison,
    verify_relation_catalog,
)
from .classify import (
    CLASS_NAMES,
    Classification,
    ExceptionalGraph,
    classify,
    deadenders,
    exceptional_graph,
)
from .errors import (
    CorruptTableError,
    InsufficientBoundError,
    OutOfBoundError,
    ResourceLimitError,
    UnsupportedVersionError,
    XnimError,
)
from .persist import (
    export_csv_series,
    export_dot,
    export_jsonl,
    read_table,
    write_table,
)
from .positions import (
    BoutonMatrix,
    MooreVector,
    Position,
    RankedIndex,
    bouton_matrix,
    canonicalize,
    moore_vector,
    reduce_position,
    xi,
)
from .rules import (
    GameRule,
    bouton_is_p,
    exact,
    is_terminal,
    moore,
    moore_is_p,
    moore_winning_move,
    move_exists_between,
    nim,
    successors,
    zero_pile_exact_is_p,
)
from .solver import (
    SolveTable,
    best_move,
    brute_force_outcome,
    brute_force_remoteness,
    solve_outcomes,
    solve_remoteness,
)

__version__ = "0.1.0"

__all__ = [
    "BoutonMatrix",
    "CLASS_NAMES",
    "CheckReport",
    "ClassCountSeries",
    "Classification",
    "CorruptTableError",
    "ExceptionalGraph",
    "GameRule",
    "InsufficientBoundError",
    "MooreVector",
    "OutOfBoundError",
    "PeriodicityReport",
    "Position",
    "RELATION_CATALOG",
    "RankedIndex",
    "RelationCase",
    "ResourceLimitError",
    "SolveTable",
    "UnsupportedVersionError",
    "XnimError",
    "best_move",
    "bouton_is_p",
    "bouton_matrix",
    "brute_force_outcome",
    "brute_force_remoteness",
    "canonicalize",
    "check_balanced_np_criterion",
    "check_bouton_criterion",
    "check_exceptional_graph",
    "check_moore_criterion",
    "check_no_permutation_moves",
    "check_no_star_to_star_moves",
    "check_nonmonotonicity",
    "check_zero_pile_closed_form",
    "class_counts",
    "classify",
    "deadenders",
    "detect_periodicity",
    "exact",
    "exceptional_graph",
    "export_csv_series",
    "export_dot",
    "export_jsonl",
    "is_terminal",
    "moore",
    "moore_is_p",
    "moore_vector",
    "moore_winning_move",
    "move_exists_between",
    "nim",
    "read_table",
    "reduce_position",
    "remoteness_comparison",
    "solve_outcomes",
    "solve_remoteness",
    "successors",
    "verify_relation_catalog",
    "write_table",
    "xi",
    "zero_pile_exact_is_p",
    "__version__",
]
