from __future__ import annotations

import pytest

from pisotlab.conjectures import (
    BranchVerdict,
    alpha_expectations,
    beta_expectations,
    centered_residue,
    congruence_scan,
    constant_detect,
    convergence_check,
    heart_expectations,
    run_suite,
)
from pisotlab.errors import InvalidParameters, RecurrenceUnavailable
from pisotlab.field import NumberField
from pisotlab.poly import IntPolynomial, PairRelation, SymmetryClass, alpha_poly
from pisotlab.primes import primes_between
from pisotlab.recurrence import Recurrence
from pisotlab.transform import build_table

GOLDEN = NumberField.from_poly([-1, -1, 1])
PLASTIC = NumberField.from_poly([-1, -1, 0, 1])
DELTA2 = NumberField.from_poly([1, 0, -2, -1, 1])


def test_centered_residue_range() -> None:
    for p in (2, 3, 5, 13):
        for v in range(-3 * p, 3 * p + 1):
            c = centered_residue(v, p)
            assert -p / 2 < c <= p / 2
            assert (v - c) % p == 0
    assert centered_residue(6, 4) == 2  # upper boundary goes positive
    assert centered_residue(7, 13) == -6


def test_branch_verdict_matching() -> None:
    assert BranchVerdict("zero", 0, 2).matches(0)
    assert BranchVerdict("minus_one", -1, 3).matches(-1)
    assert BranchVerdict("other", 7, 17).matches(7)
    assert not BranchVerdict("plus_one", 1, 2).matches(-1)
    assert not BranchVerdict("mixed", None, None).matches(0)


def test_congruence_scan_golden_lucas() -> None:
    # [phi^p] = L_p = 1 (mod p): centered residue +1 at every prime
    rep = congruence_scan(GOLDEN, 0, 2, 97)
    assert list(rep.primes) == primes_between(2, 97)
    assert rep.branch.kind == "plus_one"
    assert rep.branch.onset_prime == 2
    assert all(rep.centered[p] == 1 for p in rep.primes)
    assert not rep.used_recurrence()


def test_congruence_scan_plastic_perrin() -> None:
    # level 0 of the plastic field: the Perrin divisibility p | P_p
    rep = congruence_scan(PLASTIC, 0, 7, 97)
    assert rep.branch.kind == "zero"
    assert all(rep.centered[p] == 0 for p in rep.primes)


def test_congruence_scan_recurrence_extension() -> None:
    # force the recurrence path by lowering the exact cutoff; the column
    # starts [2, 3, 4, 7, ...] and satisfies the Lucas relation only from
    # its second entry, hence onset 1
    rec = Recurrence(order=2, coeffs=(1, 1), onset=1)
    rep = congruence_scan(
        GOLDEN, 0, 2, 97, exact_limit=30, recurrence=rec, recurrence_n_start=1
    )
    assert rep.branch.kind == "plus_one"
    assert rep.method[29] == "exact"
    assert rep.method[31] == "recurrence_extended"
    assert rep.used_recurrence()
    # the two methods must agree wherever both can run
    full = congruence_scan(GOLDEN, 0, 2, 97)
    assert full.centered == rep.centered


def test_congruence_scan_needs_recurrence_beyond_limit() -> None:
    with pytest.raises(RecurrenceUnavailable):
        congruence_scan(GOLDEN, 0, 2, 97, exact_limit=10)


def test_congruence_scan_bad_range() -> None:
    with pytest.raises(InvalidParameters):
        congruence_scan(GOLDEN, 0, 50, 10)


def test_constant_detect_golden_alternating() -> None:
    table = build_table(GOLDEN, 1, 1, 40)
    v = constant_detect(table, 1)
    assert v.kind == "alt_odd_plus"
    assert v.onset == 2
    assert v.exact


def test_constant_detect_plus_one_plastic() -> None:
    table = build_table(PLASTIC, 2, 1, 60)
    v = constant_detect(table, 2)
    assert v.kind == "plus_one"
    assert v.onset == 10
    # the level-2 iterates land exactly on 1 (theta^n * frac collapses into
    # the integer ring), so the whole tail is exact
    assert v.exact


def test_constant_detect_minus_one_delta2() -> None:
    table = build_table(DELTA2, 3, 1, 60)
    v = constant_detect(table, 3)
    assert v.kind == "minus_one"
    assert v.onset == 9


def test_constant_detect_none_on_growing_row() -> None:
    table = build_table(GOLDEN, 0, 1, 30)
    v = constant_detect(table, 0)
    assert v.kind == "none"
    assert v.onset is None


def test_convergence_golden_level0_plateau_then_onset() -> None:
    table = build_table(GOLDEN, 1, 1, 40)
    rep = convergence_check(table, 0)
    # 2 - phi equals phi^2 - 3 exactly, so n=1 is a recorded plateau and the
    # certified strict decrease starts at n=2
    assert rep.onset == 2
    assert [(v.n, v.kind) for v in rep.violations] == [(1, "plateau")]
    assert rep.zero_tail_from is None


def test_convergence_golden_level1_zero_tail() -> None:
    table = build_table(GOLDEN, 1, 1, 40)
    rep = convergence_check(table, 1)
    # all-zero from n=2: the plateaus live inside the terminal zero tail and
    # do not block convergence
    assert rep.onset == 1
    assert rep.zero_tail_from == 2
    assert all(v.kind == "plateau" for v in rep.violations)


def test_convergence_plastic_level0_no_onset() -> None:
    # the complex conjugate pair (modulus 0.868, irrational argument) makes
    # |frac(theta^n)| oscillate: genuine increases recur through the whole
    # window (cross-checked against direct 120-digit evaluation at n=78..80),
    # so no strict-decrease onset exists; they must be reported, not
    # silently absorbed
    table = build_table(PLASTIC, 0, 1, 80)
    rep = convergence_check(table, 0)
    assert rep.onset is None
    kinds = {v.kind for v in rep.violations}
    assert "increase" in kinds
    assert max(v.n for v in rep.violations if v.kind == "increase") == 79


def test_alpha_expectation_structure() -> None:
    exp = alpha_expectations(4)
    by_level = {e.level: e for e in exp.levels}
    assert by_level[0].congruence == 2
    assert by_level[1].congruence == 0
    assert by_level[2].congruence == 0
    assert by_level[3].congruence == -1
    assert by_level[4].constant == ("plus_one",)
    odd = alpha_expectations(3)
    assert {e.level: e for e in odd.levels}[3].constant == ("alt_odd_plus",)


def test_beta_expectation_structure() -> None:
    exp = beta_expectations(3)
    by_level = {e.level: e for e in exp.levels}
    for k in range(3):
        assert by_level[k].congruence == 1
    assert by_level[3].constant == ("alt_odd_plus",)


def test_heart_expectation_structure() -> None:
    exp = heart_expectations(5, 4)
    by_level = {e.level: e for e in exp.levels}
    assert by_level[0].congruence == 5
    assert by_level[1].congruence == 0
    assert by_level[2].congruence == 0
    assert by_level[3].congruence == -1
    assert set(by_level[4].constant) == {"plus_one", "alt_odd_plus"}


def test_run_suite_golden_levels_and_recurrences() -> None:
    suite = run_suite(GOLDEN, p_hi=47)
    assert suite.k_max == 1
    lvl0 = suite.level_report(0)
    assert lvl0.recurrence is not None
    assert tuple(lvl0.recurrence.coeffs) == (1, 1)
    assert lvl0.characteristic == IntPolynomial.from_coeffs([-1, -1, 1])
    assert lvl0.congruence is not None and lvl0.congruence.branch.kind == "plus_one"
    lvl1 = suite.level_report(1)
    assert lvl1.constant is not None and lvl1.constant.kind == "alt_odd_plus"


def test_run_suite_grading_pass_and_fail() -> None:
    from pisotlab.conjectures import ExpectationSet, LevelExpectation

    good = ExpectationSet(
        "golden", (LevelExpectation(0, congruence=1, max_onset_prime=2),)
    )
    bad = ExpectationSet(
        "golden", (LevelExpectation(0, congruence=-1, max_onset_prime=2),)
    )
    ok = run_suite(GOLDEN, good, p_hi=31)
    assert ok.passed
    not_ok = run_suite(GOLDEN, bad, p_hi=31)
    assert not not_ok.passed
    assert [o.passed for o in not_ok.outcomes] == [False]
    # a failed grade is an outcome, never an exception


def test_run_suite_delta2_pair_audit() -> None:
    suite = run_suite(DELTA2, p_hi=31)
    assert [(a.level_a, a.level_b) for a in suite.pair_audits] == [(3, 3)]
    assert suite.pair_audits[0].relation is PairRelation.ANTI_RECIPROCAL
    lvl3 = suite.level_report(3)
    assert lvl3.symmetry is SymmetryClass.ANTI_PALINDROMIC


def test_run_suite_second_smallest_pair_audit() -> None:
    field = NumberField.from_poly([-1, 0, 0, -1, 1])
    suite = run_suite(field, p_hi=31)
    assert [(a.level_a, a.level_b) for a in suite.pair_audits] == [(3, 3)]
    assert suite.pair_audits[0].relation is PairRelation.RECIPROCAL
    assert suite.level_report(3).symmetry is SymmetryClass.PALINDROMIC


def test_run_suite_convergence_toggle() -> None:
    off = run_suite(GOLDEN, p_hi=13)
    assert all(rep.convergence is None for rep in off.levels)
    on = run_suite(GOLDEN, p_hi=13, include_convergence=True)
    assert on.level_report(0).convergence is not None


def test_alpha2_suite_middle_level_zero_branch() -> None:
    field = NumberField.from_poly(alpha_poly(2))
    suite = run_suite(field, alpha_expectations(2, max_onset_prime=13), p_hi=47)
    assert suite.passed
    lvl1 = suite.level_report(1)
    assert lvl1.congruence is not None
    assert lvl1.congruence.branch.kind == "minus_one"
