"""Checks and data series over solved tables and classifications.

Every function here either tests a falsifiable claim against solved
data and returns a :class:`CheckReport`, or summarizes the data into a
series/report object.  Reports carry explicit counterexamples (capped,
with the true total in ``stats``) so a failure is directly inspectable,
and a report passes exactly when its counterexample list is empty.

The claims covered:

* closed-form winning criteria (pile XOR for single-pile nim, column
  one-counts mod k+1 for the at-most-k game, the equal-middle-piles
  form for five-pile positions with an empty pile);
* the balanced-reduction classification: positions whose reduced
  matrix is balanced split into NP and PP by comparing xi_3 of the
  reduced matrix against the leader;
* absence of moves between balanced-reduction positions, and of moves
  that merely permute the reduced matrix's columns;
* a catalog of curated position pairs tied together by matrix
  relations (column permutations, zero-column insertion, doubling)
  with known class labels;
* periodicity of difference vectors along PN slices, remoteness
  agreement between a position and its reduction, and degree/outcome
  structure of the exceptional-position move graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .classify import CLASS_NAMES, NN, NP, PN, PP, Classification, ExceptionalGraph
from .errors import InsufficientBoundError
from .positions import Position, bouton_matrix, reduce_position
from .rules import move_exists_between, successors
from .solver import SolveTable, binom_table, iter_layers, positions_of_ranks

COUNTEREXAMPLE_CAP = 20


@dataclass
class CheckReport:
    """Outcome of one check: counterexamples found plus measurements."""

    check: str
    bound: int
    counterexamples: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "bound": self.bound,
            "passed": self.passed,
            "counterexamples": self.counterexamples,
            "stats": self.stats,
        }

    def summary_line(self) -> str:
        tail = "pass" if self.passed else (
            f"FAIL ({self.stats.get('counterexamples_total', len(self.counterexamples))}"
            " counterexamples)"
        )
        return f"{self.check} @ bound={self.bound}: {tail}"


def _pos_list(row) -> list[int]:
    return [int(v) for v in row]


def _take(report: CheckReport, item: dict) -> None:
    # cap the stored list; the stats counter keeps the true total
    report.stats["counterexamples_total"] = report.stats.get("counterexamples_total", 0) + 1
    if len(report.counterexamples) < COUNTEREXAMPLE_CAP:
        report.counterexamples.append(item)


@dataclass
class ClassCountSeries:
    """Per-stone-total class counts over one classified table."""

    bound: int
    counts: np.ndarray  # shape (n*bound + 1, 4), columns ordered PP, PN, NP, NN

    @property
    def stones(self) -> np.ndarray:
        return np.arange(len(self.counts))

    def totals(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    def global_counts(self) -> dict[str, int]:
        tot = self.counts.sum(axis=0)
        return {name: int(tot[i]) for i, name in enumerate(CLASS_NAMES)}

    def ratio_pp_pn(self) -> np.ndarray:
        return _ratio(self.counts[:, PP], self.counts[:, PN])

    def ratio_unbalanced(self) -> np.ndarray:
        """(NP + PN) over (NN + PP): class-mismatch mass per stone total."""
        return _ratio(
            self.counts[:, NP] + self.counts[:, PN],
            self.counts[:, NN] + self.counts[:, PP],
        )

    def pn_share_of_p(self) -> float:
        """|PN| / (|PN| + |PP|): unbalanced share among previous-player wins."""
        g = self.counts.sum(axis=0)
        den = int(g[PN] + g[PP])
        return float("nan") if den == 0 else int(g[PN]) / den

    def pn_share_of_all(self) -> float:
        """|PN| / all positions: the looser reading of the same share."""
        g = self.counts.sum(axis=0)
        total = int(g.sum())
        return float("nan") if total == 0 else int(g[PN]) / total


def _ratio(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    out = np.empty(len(num), dtype=np.float64)
    num = num.astype(np.float64)
    den = den.astype(np.float64)
    zero = den == 0
    np.divide(num, den, out=out, where=~zero)
    out[zero & (num > 0)] = np.inf
    out[zero & (num == 0)] = np.nan
    return out


@dataclass
class PeriodicityReport:
    """Periodicity of difference vectors along one PN slice."""

    x1: int
    fixed_x2: int | None
    length: int  # number of difference vectors examined
    preperiod: int | None
    period: int | None
    repetitions: int

    @property
    def found(self) -> bool:
        return self.period is not None

    def to_dict(self) -> dict:
        return {
            "x1": self.x1,
            "fixed_x2": self.fixed_x2,
            "length": self.length,
            "preperiod": self.preperiod,
            "period": self.period,
            "repetitions": self.repetitions,
            "found": self.found,
        }


def class_counts(cls: Classification) -> ClassCountSeries:
    """Count PP/PN/NP/NN per stone total, cross-checked against layer sizes."""
    n, bound = cls.rule.n, cls.bound
    binom = binom_table(bound, n)
    counts = np.zeros((n * bound + 1, 4), dtype=np.int64)
    seen = 0
    for s, pos, ranks in iter_layers(n, bound, binom):
        row = np.bincount(cls.pair_class[ranks], minlength=4)
        if int(row.sum()) != len(ranks):
            raise AssertionError(f"layer {s}: class counts disagree with layer size")
        counts[s] = row
        seen += len(ranks)
    if seen != cls.count:
        raise AssertionError("layer enumeration missed positions")
    return ClassCountSeries(bound=bound, counts=counts)


def check_nonmonotonicity(values: Iterable[float], name: str = "series",
                          bound: int = 0) -> CheckReport:
    """Pass iff the finite entries show at least one strict rise and fall."""
    vals = np.asarray(list(values), dtype=np.float64)
    finite = vals[np.isfinite(vals)]
    rises = int(np.sum(finite[1:] > finite[:-1])) if len(finite) > 1 else 0
    falls = int(np.sum(finite[1:] < finite[:-1])) if len(finite) > 1 else 0
    report = CheckReport(check=f"nonmonotonic:{name}", bound=bound)
    report.stats = {
        "counterexamples_total": 0,
        "entries": len(vals),
        "finite": len(finite),
        "rises": rises,
        "falls": falls,
    }
    if rises == 0 or falls == 0:
        _take(report, {
            "series": name,
            "missing": "strict rise" if rises == 0 else "strict fall",
        })
    return report


def check_bouton_criterion(table: SolveTable) -> CheckReport:
    """Previous-player win iff the XOR of all piles is zero (single-pile moves)."""
    rule = table.rule
    if rule.family != "nim":
        raise ValueError(f"criterion applies to plain nim, got {rule.label()}")
    report = CheckReport(check="bouton-criterion", bound=table.bound)
    binom = binom_table(table.bound, rule.n)
    scanned = 0
    for _s, pos, ranks in iter_layers(rule.n, table.bound, binom):
        want = np.bitwise_xor.reduce(pos, axis=1) == 0
        got = table.outcomes[ranks] == 1
        for i in np.flatnonzero(want != got):
            _take(report, {
                "position": _pos_list(pos[i]),
                "criterion": "P" if want[i] else "N",
                "solved": "P" if got[i] else "N",
            })
        scanned += len(ranks)
    report.stats.setdefault("counterexamples_total", 0)
    report.stats["positions_scanned"] = scanned
    return report


def check_moore_criterion(table: SolveTable) -> CheckReport:
    """P iff every column one-count of the pile matrix is divisible by k+1."""
    rule = table.rule
    if rule.family != "moore":
        raise ValueError(f"criterion applies to the at-most-k game, got {rule.label()}")
    report = CheckReport(check="moore-criterion", bound=table.bound)
    binom = binom_table(table.bound, rule.n)
    width = max(int(table.bound).bit_length(), 1)
    scanned = 0
    for _s, pos, ranks in iter_layers(rule.n, table.bound, binom):
        balanced = np.ones(len(pos), dtype=bool)
        for j in range(width):
            colsum = ((pos >> j) & 1).sum(axis=1)
            balanced &= colsum % (rule.k + 1) == 0
        got = table.outcomes[ranks] == 1
        for i in np.flatnonzero(balanced != got):
            _take(report, {
                "position": _pos_list(pos[i]),
                "criterion": "P" if balanced[i] else "N",
                "solved": "P" if got[i] else "N",
            })
        scanned += len(ranks)
    report.stats.setdefault("counterexamples_total", 0)
    report.stats["positions_scanned"] = scanned
    return report


def check_zero_pile_closed_form(table: SolveTable) -> CheckReport:
    """With an empty pile, P iff the three middle piles are equal.

    Applies to the five-pile exact game with k = 2: a canonical position
    (0, a, b, c, d) is a previous-player win exactly when a = b = c.
    """
    rule = table.rule
    if rule.family != "exact" or rule.n != 5 or rule.k != 2:
        raise ValueError(f"closed form is specific to exact(5, =2), got {rule.label()}")
    report = CheckReport(check="zero-pile-criterion", bound=table.bound)
    binom = binom_table(table.bound, rule.n)
    scanned = 0
    for _s, pos, ranks in iter_layers(rule.n, table.bound, binom):
        mask = pos[:, 0] == 0
        if not mask.any():
            continue
        sub = pos[mask]
        want = (sub[:, 1] == sub[:, 2]) & (sub[:, 2] == sub[:, 3])
        got = table.outcomes[ranks[mask]] == 1
        for i in np.flatnonzero(want != got):
            _take(report, {
                "position": _pos_list(sub[i]),
                "criterion": "P" if want[i] else "N",
                "solved": "P" if got[i] else "N",
            })
        scanned += int(mask.sum())
    report.stats.setdefault("counterexamples_total", 0)
    report.stats["positions_scanned"] = scanned
    return report


def check_balanced_np_criterion(cls: Classification) -> CheckReport:
    """Balanced reductions split into NP and PP by xi_3 against the leader.

    Over every position whose reduction is a Moore previous-player win,
    the reduced matrix must be balanced (all column one-counts 0 or 3)
    and the class must be NP exactly when xi_3 of the reduced matrix
    exceeds the leader, PP otherwise.  Also recomputes the Moore
    criterion over the paired table as a consistency cross-check, so no
    unbalanced reduction can hide inside the NP/PP set.
    """
    report = CheckReport(check="balanced-np-criterion", bound=cls.bound)
    moore_rep = check_moore_criterion(cls.moore_table)
    report.stats["reduction_criterion_mismatches"] = (
        moore_rep.stats["counterexamples_total"]
    )
    for item in moore_rep.counterexamples:
        _take(report, {"reduction": item["position"], "issue": "moore criterion"})

    star = cls.star_ranks()
    rows = positions_of_ranks(star, cls.rule.n, cls.bound)
    leader = rows[:, -1].astype(np.int64)
    red = rows[:, :-1]
    width = max(int(red.max()).bit_length(), 1) if len(rows) else 1
    xi3 = np.zeros(len(rows), dtype=np.int64)
    balanced = np.ones(len(rows), dtype=bool)
    for j in range(width):
        colsum = ((red >> j) & 1).sum(axis=1)
        balanced &= colsum % 3 == 0
        xi3 |= (colsum == 3).astype(np.int64) << j

    for i in np.flatnonzero(~balanced):
        _take(report, {
            "position": _pos_list(rows[i]),
            "issue": "Moore-P reduction with unbalanced matrix",
        })

    predicted_np = xi3 > leader
    actual_np = cls.pair_class[star] == NP
    for i in np.flatnonzero(predicted_np != actual_np):
        _take(report, {
            "position": _pos_list(rows[i]),
            "xi3": int(xi3[i]),
            "leader": int(leader[i]),
            "predicted": "NP" if predicted_np[i] else "PP",
            "actual": CLASS_NAMES[cls.pair_class[star[i]]],
        })

    report.stats.setdefault("counterexamples_total", 0)
    report.stats.update({
        "balanced_positions": len(rows),
        "np": int(actual_np.sum()),
        "pp": int(len(rows) - actual_np.sum()),
        "positions_scanned": cls.count,
    })
    return report


def check_no_star_to_star_moves(cls: Classification) -> CheckReport:
    """No move connects two positions with Moore-P reductions.

    Violations are split by whether the move changes the leader; both
    kinds must be absent.
    """
    report = CheckReport(check="no-star-to-star-moves", bound=cls.bound)
    star = cls.star_ranks()
    viol = cls.star_to_star_ranks()
    changing = preserving = 0
    table = cls.exact_table
    for rank in viol.tolist():
        x = table.index.unrank(rank)
        for y in successors(cls.rule, x):
            yr = table._rank_checked(y)
            if cls.pair_class[yr] & 1:
                continue
            if y[-1] != x[-1]:
                changing += 1
            else:
                preserving += 1
            _take(report, {
                "position": list(x),
                "successor": list(y),
                "leader_changed": y[-1] != x[-1],
            })
    report.stats.setdefault("counterexamples_total", 0)
    report.stats.update({
        "star_positions": len(star),
        "violating_sources": len(viol),
        "leader_changing_moves": changing,
        "leader_preserving_moves": preserving,
        "positions_scanned": cls.count,
    })
    return report


def _padded_columns(a: Position, b: Position) -> tuple[tuple[int, ...], tuple[int, ...]]:
    ma, mb = bouton_matrix(a), bouton_matrix(b)
    w = max(ma.width, mb.width)
    return ma.packed_columns(w), mb.packed_columns(w)


def _is_column_permutation(a: Position, b: Position,
                           differing: int | None = None) -> bool:
    """True when b's matrix columns are a's reordered, not in place.

    ``differing`` additionally pins the exact number of column slots
    where the two matrices disagree.
    """
    ca, cb = _padded_columns(a, b)
    if sorted(ca) != sorted(cb) or ca == cb:
        return False
    if differing is not None and sum(x != y for x, y in zip(ca, cb)) != differing:
        return False
    return True


def _is_zero_column_insertion(a: Position, b: Position) -> bool:
    """True when deleting one all-zero column of b's matrix leaves a's."""
    ca = bouton_matrix(a).packed_columns()
    cb = bouton_matrix(b).packed_columns()
    if len(cb) != len(ca) + 1:
        return False
    return any(
        cb[i] == 0 and cb[:i] + cb[i + 1:] == ca for i in range(len(cb))
    )


def _is_doubling(a: Position, b: Position) -> bool:
    """True when b = 2a elementwise, i.e. a zero column inserted at the right of a's low bit."""
    return tuple(2 * v for v in a) == tuple(b) and _is_zero_column_insertion(a, b)


def check_no_permutation_moves(cls: Classification,
                               source_class: str = "NP",
                               sources: Sequence[Position] | None = None,
                               literal: bool = False) -> CheckReport:
    """No move from a ``source_class`` position permutes the reduced columns.

    A move that permutes the reduced matrix's columns preserves every
    column one-count, hence Moore balance of the reduction.  From a
    balanced (NP or PP) source such a successor would sit in the
    balanced set too, so sources with no move into that set are cleared
    wholesale; only sources that do have one are enumerated move by
    move.  Unbalanced sources (PN, NN) get no such shortcut and are
    always enumerated; pass ``literal=True`` to force enumeration
    everywhere.  A successor with the identical column sequence does
    not count as a permutation.
    """
    if source_class not in CLASS_NAMES:
        raise ValueError(f"unknown class {source_class!r}")
    report = CheckReport(check=f"no-permutation-moves:{source_class}", bound=cls.bound)
    want = CLASS_NAMES.index(source_class)
    if sources is None:
        ranks = np.flatnonzero(cls.pair_class == want)
        rows = positions_of_ranks(ranks, cls.rule.n, cls.bound)
        srcs = [tuple(int(v) for v in row) for row in rows]
    else:
        srcs = [tuple(x) for x in sources]
        ranks = np.array([cls.exact_table._rank_checked(x) for x in srcs], dtype=np.int64)

    balanced_source = want in (PP, NP)
    shortcut = enumerated = moves = 0
    for x, rank in zip(srcs, ranks.tolist()):
        if not literal and balanced_source and cls.has_star_move[rank] == 0:
            shortcut += 1
            continue
        enumerated += 1
        rx = reduce_position(x)
        for y in successors(cls.rule, x):
            moves += 1
            if _is_column_permutation(rx, reduce_position(y)):
                _take(report, {
                    "position": list(x),
                    "successor": list(y),
                    "reduced": list(rx),
                    "reduced_successor": list(reduce_position(y)),
                })
    report.stats.setdefault("counterexamples_total", 0)
    report.stats.update({
        "sources": len(srcs),
        "cleared_by_balance": shortcut,
        "enumerated": enumerated,
        "moves_checked": moves,
    })
    return report


_PERM = "column-permutation"
_ZERO_INSERT = "zero-column-insertion"
_DOUBLE = "doubling"


@dataclass(frozen=True)
class RelationCase:
    """One curated pair: classes, an optional move, and a matrix relation."""

    name: str
    source: Position
    target: Position
    source_class: str
    target_class: str
    relation: str
    differing: int | None = None  # exact count of unequal column slots
    move: bool = False  # a legal move source -> target must exist

    @property
    def required_bound(self) -> int:
        return max(self.source[-1], self.target[-1])


RELATION_CATALOG: tuple[RelationCase, ...] = (
    RelationCase("perm2-move", (10, 19, 24, 26, 26), (9, 19, 24, 25, 26),
                 "PN", "NN", _PERM, differing=2, move=True),
    RelationCase("perm3-move", (14, 16, 25, 25, 25), (7, 8, 25, 25, 25),
                 "PN", "NN", _PERM, differing=3, move=True),
    RelationCase("perm2-pair", (12, 17, 20, 21, 21), (12, 18, 20, 22, 22),
                 "PN", "PN", _PERM, differing=2),
    RelationCase("zero-insert-pair", (6, 9, 10, 11, 11), (12, 17, 20, 21, 21),
                 "PN", "PN", _ZERO_INSERT),
    RelationCase("perm-flip-pair", (12, 17, 20, 21, 21), (10, 17, 18, 19, 30),
                 "PN", "NN", _PERM),
    RelationCase("double-flip-pair", (6, 9, 10, 11, 59), (12, 18, 20, 22, 22),
                 "NN", "PN", _DOUBLE),
    RelationCase("double-pair", (20, 33, 36, 37, 37), (40, 66, 72, 74, 74),
                 "PN", "PN", _DOUBLE),
)


def verify_relation_catalog(cls: Classification) -> CheckReport:
    """Check every curated pair: classes, stated moves, matrix relations.

    Requires the bound to cover every catalog position (the largest
    leader is 74); otherwise raises with the list of unverifiable
    entries rather than reporting a partial pass.
    """
    missing = [c.name for c in RELATION_CATALOG if c.required_bound > cls.bound]
    if missing:
        need = max(c.required_bound for c in RELATION_CATALOG)
        raise InsufficientBoundError(
            f"catalog needs bound >= {need}, have {cls.bound}", missing=missing
        )
    report = CheckReport(check="relation-catalog", bound=cls.bound)
    for case in RELATION_CATALOG:
        problems = []
        got_src = cls.class_of(case.source)
        got_tgt = cls.class_of(case.target)
        if got_src != case.source_class:
            problems.append(f"source class {got_src}, expected {case.source_class}")
        if got_tgt != case.target_class:
            problems.append(f"target class {got_tgt}, expected {case.target_class}")
        if case.move and not move_exists_between(cls.rule, case.source, case.target):
            problems.append("no legal move between the pair")
        rs, rt = reduce_position(case.source), reduce_position(case.target)
        if case.relation == _PERM:
            if not _is_column_permutation(rs, rt, case.differing):
                problems.append("reduced matrices are not the stated column permutation")
        elif case.relation == _ZERO_INSERT:
            if not _is_zero_column_insertion(rs, rt):
                problems.append("reduced matrices are not a zero-column insertion apart")
        elif case.relation == _DOUBLE:
            if not _is_doubling(rs, rt):
                problems.append("reduced target is not the doubled reduced source")
        for issue in problems:
            _take(report, {
                "case": case.name,
                "source": list(case.source),
                "target": list(case.target),
                "issue": issue,
            })
    report.stats.setdefault("counterexamples_total", 0)
    report.stats["cases"] = len(RELATION_CATALOG)
    return report


def _find_periodicity(seq: Sequence, min_reps: int = 3) -> tuple[int, int, int] | None:
    """Smallest period, then smallest preperiod, with >= min_reps repetitions."""
    m = len(seq)
    for p in range(1, m // min_reps + 1):
        bad = [i for i in range(m - p) if seq[i] != seq[i + p]]
        q = max(bad) + 1 if bad else 0
        reps = (m - q) // p
        if reps >= min_reps:
            return q, p, reps
    return None


def detect_periodicity(cls: Classification, x1: int,
                       fixed_x2: int | None = None) -> PeriodicityReport:
    """Period of difference vectors along the PN slice with first pile x1.

    PN positions with first pile x1 are listed in lexicographic order
    of the remaining piles; each contributes the difference vector
    (x3-x2, x4-x3, x5-x4).  The smallest period whose tail repeats at
    least three full times is reported, with its preperiod; passing
    ``fixed_x2`` restricts the slice to one second-pile value.
    """
    ranks = np.flatnonzero(cls.pair_class == PN)
    rows = positions_of_ranks(ranks, cls.rule.n, cls.bound)
    mask = rows[:, 0] == x1
    if fixed_x2 is not None:
        mask &= rows[:, 1] == fixed_x2
    rows = rows[mask]
    # colex rank order differs from lex on the tail; sort explicitly
    order = np.lexsort(tuple(rows[:, j] for j in range(rows.shape[1] - 1, 0, -1)))
    rows = rows[order]
    diffs = [tuple(int(row[j + 1] - row[j]) for j in range(1, rows.shape[1] - 1))
             for row in rows]
    hit = _find_periodicity(diffs)
    if hit is None:
        return PeriodicityReport(x1=x1, fixed_x2=fixed_x2, length=len(diffs),
                                 preperiod=None, period=None, repetitions=0)
    q, p, reps = hit
    return PeriodicityReport(x1=x1, fixed_x2=fixed_x2, length=len(diffs),
                             preperiod=q, period=p, repetitions=reps)


def remoteness_comparison(exact_table: SolveTable, moore_table: SolveTable,
                          cls: Classification) -> CheckReport:
    """Distribution of remoteness(x) - remoteness(reduction), report-only.

    Emits the histogram over all positions and restricted to the
    exceptional ones; records whether difference 0 dominates and
    whether some exceptional position differs by 2 or more.  Nothing
    here fails the check: the histogram is descriptive.
    """
    if not exact_table.has_remoteness() or not moore_table.has_remoteness():
        raise ValueError("both tables need remoteness filled in")
    n, bound = exact_table.rule.n, exact_table.bound
    binom = binom_table(bound, n)
    e_rem = exact_table.remoteness.astype(np.int64)
    m_rem = moore_table.remoteness.astype(np.int64)

    shift = n * bound  # offset so differences index a nonnegative histogram
    hist = np.zeros(2 * shift + 1, dtype=np.int64)
    for v in range(bound + 1):
        off = int(binom[v + n - 1, n])
        ln = int(binom[v + n - 1, n - 1])
        d = e_rem[off:off + ln] - m_rem[:ln]
        hist += np.bincount(d + shift, minlength=2 * shift + 1)

    exc = cls.exceptional_ranks()
    exc_hist = np.zeros_like(hist)
    if len(exc):
        rows = positions_of_ranks(exc, n, bound)
        leaders = rows[:, -1].astype(np.int64)
        red_ranks = exc - binom[leaders + n - 1, n]
        d = e_rem[exc] - m_rem[red_ranks]
        exc_hist += np.bincount(d + shift, minlength=len(hist))

    total = int(hist.sum())
    equal = int(hist[shift])
    nonzero = {int(i - shift): int(c) for i, c in enumerate(hist) if c}
    exc_nonzero = {int(i - shift): int(c) for i, c in enumerate(exc_hist) if c}
    max_abs_exc = max((abs(d) for d in exc_nonzero), default=0)

    report = CheckReport(check="remoteness-comparison", bound=bound)
    report.stats = {
        "counterexamples_total": 0,
        "positions": total,
        "equal": equal,
        "equal_fraction": equal / total if total else float("nan"),
        "equal_dominates": equal > total - equal,
        "histogram": {str(k): v for k, v in sorted(nonzero.items())},
        "exceptional_histogram": {str(k): v for k, v in sorted(exc_nonzero.items())},
        "exceptional_positions": int(exc_hist.sum()),
        "max_abs_difference_exceptional": max_abs_exc,
        "has_exceptional_difference_geq_2": max_abs_exc >= 2,
    }
    return report


def check_exceptional_graph(graph: ExceptionalGraph) -> CheckReport:
    """Structure of the exceptional move graph.

    Two claims: every N node is NP, and every N node's out-degree is a
    multiple of 3.  Degree is counted over distinct successors first;
    if that fails, move counting is tried and both results reported.
    The degree check passes when either semantics does.
    """
    report = CheckReport(check="exceptional-graph", bound=graph.bound)
    n_nodes = [i for i, oc in enumerate(graph.outcomes) if oc == "N"]

    for i in n_nodes:
        if graph.classes[i] != "NP":
            _take(report, {
                "position": list(graph.nodes[i]),
                "issue": f"exceptional N node with class {graph.classes[i]}",
            })

    bad_distinct = [i for i in n_nodes if graph.out_successors[i] % 3 != 0]
    distinct_ok = not bad_distinct
    moves_ok = True
    if not distinct_ok:
        bad_moves = [i for i in n_nodes if graph.out_moves[i] % 3 != 0]
        moves_ok = not bad_moves
        if not moves_ok:
            for i in bad_moves:
                if i in bad_distinct:
                    _take(report, {
                        "position": list(graph.nodes[i]),
                        "issue": "out-degree not a multiple of 3 under either counting",
                        "distinct_successors": int(graph.out_successors[i]),
                        "moves": int(graph.out_moves[i]),
                    })

    cap = 500
    degrees = [
        {
            "position": list(graph.nodes[i]),
            "outcome": graph.outcomes[i],
            "class": graph.classes[i],
            "out_successors": int(graph.out_successors[i]),
            "out_moves": int(graph.out_moves[i]),
        }
        for i in range(min(len(graph.nodes), cap))
    ]
    report.stats.setdefault("counterexamples_total", 0)
    report.stats.update({
        "nodes": len(graph.nodes),
        "n_nodes": len(n_nodes),
        "edges": len(graph.edges),
        "isolated": int(graph.isolated().sum()),
        "degree_mod3_distinct_successors": distinct_ok,
        "degree_mod3_moves": moves_ok if not distinct_ok else True,
        "degree_semantics_used": "distinct-successors" if distinct_ok else "moves",
        "degrees": degrees,
    })
    return report
