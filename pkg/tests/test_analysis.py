"""Checkers and series: known values, sensitivity to corruption, detectors."""

from __future__ import annotations

import dataclasses

import numpy as np
import pytest

from xnim.analysis import (
    RELATION_CATALOG,
    CheckReport,
    ClassCountSeries,
    _find_periodicity,
    _is_column_permutation,
    _is_doubling,
    _is_zero_column_insertion,
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
from xnim.classify import NP, PP, exceptional_graph
from xnim.errors import InsufficientBoundError
from xnim.positions import bouton_matrix, moore_vector, reduce_position, xi
from xnim.rules import exact, moore, nim
from xnim.solver import solve_outcomes


def test_report_passes_iff_no_counterexamples():
    rep = CheckReport(check="t", bound=1)
    assert rep.passed
    rep.counterexamples.append({"position": [0]})
    assert not rep.passed


def test_report_dict_schema():
    rep = CheckReport(check="t", bound=3, stats={"k": 1})
    d = rep.to_dict()
    assert set(d) == {"check", "bound", "passed", "counterexamples", "stats"}
    assert d["passed"] is True and d["bound"] == 3


# --- closed-form criteria ------------------------------------------------


def test_bouton_criterion_passes():
    rep = check_bouton_criterion(solve_outcomes(nim(3), 12))
    assert rep.passed
    assert rep.stats["positions_scanned"] == 455


def test_moore_criterion_passes(tables20):
    _, mt = tables20
    rep = check_moore_criterion(mt)
    assert rep.passed
    assert rep.stats["positions_scanned"] == mt.count


def test_zero_pile_closed_form_passes(tables20):
    et, _ = tables20
    rep = check_zero_pile_closed_form(et)
    assert rep.passed
    assert 0 < rep.stats["positions_scanned"] < et.count


def test_criteria_reject_wrong_rules(tables20):
    et, mt = tables20
    with pytest.raises(ValueError):
        check_bouton_criterion(mt)
    with pytest.raises(ValueError):
        check_moore_criterion(et)
    with pytest.raises(ValueError):
        check_zero_pile_closed_form(mt)
    with pytest.raises(ValueError):
        check_zero_pile_closed_form(solve_outcomes(exact(4, 2), 4))


def test_criterion_detects_corruption():
    table = solve_outcomes(nim(2), 6)
    out = table.outcomes.copy()
    r = table._rank_checked((1, 1))
    out[r] ^= 1
    rep = check_bouton_criterion(dataclasses.replace(table, outcomes=out))
    assert not rep.passed
    assert rep.counterexamples[0]["position"] == [1, 1]
    assert rep.stats["counterexamples_total"] == 1


# --- balanced-reduction split, move absence ------------------------------


def test_balanced_np_criterion_passes(cls20):
    rep = check_balanced_np_criterion(cls20)
    assert rep.passed
    assert rep.stats["reduction_criterion_mismatches"] == 0
    assert rep.stats["np"] == 1
    assert rep.stats["balanced_positions"] == len(cls20.star_ranks())
    assert rep.stats["positions_scanned"] == cls20.count


def test_balanced_np_known_values(cls20):
    # the split compares xi_3 of the reduced matrix against the leader
    for x, cl in (((3, 5, 6, 7, 7), "PP"), ((7, 11, 13, 14, 14), "NP")):
        red = reduce_position(x)
        x3 = xi(moore_vector(bouton_matrix(red)), 3)
        assert (x3 > x[-1]) == (cl == "NP")
        assert cls20.class_of(x) == cl
    assert xi(moore_vector(bouton_matrix((7, 11, 13, 14))), 3) == 15
    assert xi(moore_vector(bouton_matrix((3, 5, 6, 7))), 3) == 7


def test_balanced_np_detects_tampering(cls20):
    star = cls20.star_ranks()
    pp_rank = star[cls20.pair_class[star] == PP][0]
    pair = cls20.pair_class.copy()
    pair[pp_rank] = NP
    tampered = dataclasses.replace(cls20, pair_class=pair)
    rep = check_balanced_np_criterion(tampered)
    assert not rep.passed
    assert rep.counterexamples[0]["predicted"] == "PP"
    assert rep.counterexamples[0]["actual"] == "NP"


def test_no_star_to_star_passes(cls20):
    rep = check_no_star_to_star_moves(cls20)
    assert rep.passed
    assert rep.stats["star_positions"] == len(cls20.star_ranks())
    assert rep.stats["violating_sources"] == 0


def test_no_permutation_moves_np(cls20):
    rep = check_no_permutation_moves(cls20)
    assert rep.passed
    assert rep.stats["sources"] == 1
    assert rep.stats["cleared_by_balance"] + rep.stats["enumerated"] == 1


def test_no_permutation_moves_literal_agrees(cls20):
    fast = check_no_permutation_moves(cls20, source_class="PP")
    slow = check_no_permutation_moves(cls20, source_class="PP", literal=True)
    assert fast.passed and slow.passed
    assert fast.stats["sources"] == slow.stats["sources"]
    assert slow.stats["enumerated"] == slow.stats["sources"]
    assert slow.stats["moves_checked"] > 0


def test_permutation_move_control_case(cls40):
    # a PN source does move onto a column permutation of itself
    rep = check_no_permutation_moves(
        cls40, source_class="PN", sources=[(10, 19, 24, 26, 26)], literal=True
    )
    assert not rep.passed
    hits = {tuple(c["successor"]) for c in rep.counterexamples}
    assert (9, 19, 24, 25, 26) in hits


def test_permutation_helpers():
    assert _is_column_permutation((10, 19, 24, 26), (9, 19, 24, 25))
    assert _is_column_permutation((10, 19, 24, 26), (9, 19, 24, 25), differing=2)
    assert not _is_column_permutation((10, 19, 24, 26), (9, 19, 24, 25), differing=3)
    assert _is_column_permutation((14, 16, 25, 25), (7, 8, 25, 25), differing=3)
    assert _is_column_permutation((12, 17, 20, 21), (10, 17, 18, 19))
    # identical column sequences are not a permutation event
    assert not _is_column_permutation((1, 2, 3), (1, 2, 3))
    # equal multisets required
    assert not _is_column_permutation((1, 2), (1, 3))


def test_zero_insertion_and_doubling_helpers():
    assert _is_zero_column_insertion((6, 9, 10, 11), (12, 17, 20, 21))
    assert not _is_zero_column_insertion((6, 9, 10, 11), (12, 18, 20, 21))
    assert _is_doubling((6, 9, 10, 11), (12, 18, 20, 22))
    assert _is_doubling((20, 33, 36, 37), (40, 66, 72, 74))
    assert not _is_doubling((6, 9, 10, 11), (12, 17, 20, 21))


def test_catalog_insufficient_bound(cls20, cls40):
    with pytest.raises(InsufficientBoundError) as ei:
        verify_relation_catalog(cls20)
    assert len(ei.value.missing) == len(RELATION_CATALOG)
    with pytest.raises(InsufficientBoundError) as ei:
        verify_relation_catalog(cls40)
    assert ei.value.missing == ["double-flip-pair", "double-pair"]


def test_catalog_classes_within_bound(cls40):
    # every catalog endpoint that fits in bound 40 has its stated class
    for case in RELATION_CATALOG:
        for pos, want in ((case.source, case.source_class),
                          (case.target, case.target_class)):
            if pos[-1] <= 40:
                assert cls40.class_of(pos) == want, case.name


# --- series and counts ----------------------------------------------------


def test_class_counts_layers(cls20):
    series = class_counts(cls20)
    assert series.counts[0].tolist() == [1, 0, 0, 0]
    # two stones: (0,0,0,1,1) is NN, (0,0,0,0,2) is PP
    assert series.counts[2].tolist() == [1, 0, 0, 1]
    assert series.counts.sum() == cls20.count
    direct = np.bincount(cls20.pair_class, minlength=4)
    assert np.array_equal(series.counts.sum(axis=0), direct)


def test_ratio_sentinels():
    series = ClassCountSeries(
        bound=1, counts=np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]])
    )
    r1 = series.ratio_pp_pn()
    assert np.isposinf(r1[0]) and np.isnan(r1[1]) and np.isnan(r1[2])
    r2 = series.ratio_unbalanced()
    assert r2[0] == 0.0 and np.isposinf(r2[1]) and np.isnan(r2[2])


def test_pn_shares(cls20):
    series = class_counts(cls20)
    g = series.global_counts()
    assert g == {"PP": 568, "PN": 180, "NP": 1, "NN": 52381}
    assert series.pn_share_of_p() == pytest.approx(180 / 748)
    assert series.pn_share_of_all() == pytest.approx(180 / cls20.count)


def test_nonmonotonicity_detector():
    assert check_nonmonotonicity([1, 2, 1]).passed
    rep = check_nonmonotonicity([1, 2, 3], name="mono")
    assert not rep.passed
    assert rep.counterexamples[0]["missing"] == "strict fall"
    rep = check_nonmonotonicity([3, 2, 1], name="mono")
    assert rep.counterexamples[0]["missing"] == "strict rise"
    # non-finite entries are skipped, not compared
    assert check_nonmonotonicity([1.0, float("inf"), 2.0, float("nan"), 1.0]).passed


# --- periodicity ----------------------------------------------------------


def test_find_periodicity_synthetic():
    a, b, c = (0, 0, 1), (1, 0, 0), (2, 2, 2)
    assert _find_periodicity([a, b, a, b, a, b]) == (0, 2, 3)
    assert _find_periodicity([c, a, b, a, b, a, b]) == (1, 2, 3)
    assert _find_periodicity([a] * 6) == (0, 1, 6)
    assert _find_periodicity([(i,) for i in range(6)]) is None
    assert _find_periodicity([]) is None


def test_periodicity_slice_x1_one(cls20):
    # PN positions with first pile 1 are exactly (1, a, a, a, a)
    rep = detect_periodicity(cls20, 1)
    assert rep.length == 20
    assert (rep.preperiod, rep.period) == (0, 1)
    assert rep.repetitions == 20
    assert rep.found


def test_periodicity_empty_slice(cls20):
    # no PN position has an empty pile: with a zero pile, previous-player
    # wins have three equal middle piles and therefore balanced reductions
    rep = detect_periodicity(cls20, 0)
    assert rep.length == 0
    assert not rep.found
    assert rep.to_dict()["period"] is None


def test_periodicity_fixed_second_pile(cls20):
    full = detect_periodicity(cls20, 2)
    fixed = detect_periodicity(cls20, 2, fixed_x2=2)
    assert fixed.fixed_x2 == 2
    assert fixed.length <= full.length


# --- remoteness and the exceptional graph --------------------------------


def test_remoteness_comparison(tables20, cls20):
    et, mt = tables20
    rep = remoteness_comparison(et, mt, cls20)
    assert rep.passed  # descriptive: never fails
    assert rep.stats["positions"] == et.count
    assert rep.stats["equal_dominates"]
    hist = rep.stats["histogram"]
    assert sum(hist.values()) == et.count
    assert hist["0"] == rep.stats["equal"]


def test_remoteness_comparison_needs_remoteness(cls20):
    et = solve_outcomes(exact(5, 2), 20)
    with pytest.raises(ValueError):
        remoteness_comparison(et, cls20.moore_table, cls20)


def test_exceptional_graph_check(cls40):
    g = exceptional_graph(cls40)
    rep = check_exceptional_graph(g)
    assert rep.passed
    assert rep.stats["nodes"] == 70
    assert rep.stats["degree_mod3_distinct_successors"]
    assert rep.stats["degree_semantics_used"] == "distinct-successors"
    for row in rep.stats["degrees"]:
        if row["outcome"] == "N":
            assert row["class"] == "NP"
            assert row["out_successors"] % 3 == 0


def test_exceptional_graph_check_near_empty(cls20):
    rep = check_exceptional_graph(exceptional_graph(cls20))
    assert rep.passed
    assert rep.stats["nodes"] == 1
