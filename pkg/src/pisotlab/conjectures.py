"""Empirical pattern scanners for iterate tables.

Four instruments, each producing a small report object:

* :func:`congruence_scan` -- residues of ``u^k_p`` modulo primes ``p``,
  classified into a stable branch (zero / +1 / -1 / other constant / mixed).
* :func:`constant_detect` -- eventual constant-or-alternating ``+-1`` tails
  of an integer-part row.
* :func:`convergence_check` -- strict decrease of the certified fractional
  magnitudes along a row, with violation bookkeeping.
* :func:`run_suite` -- orchestrates the above across every level of a table
  and grades the outcome against optional expected-pattern annotations.

Everything here is exact: residues come either from exact integer parts or
from companion-matrix exponentiation modulo ``p`` seeded with exact initial
terms (the latter is flagged, since it silently assumes the detected
recurrence keeps holding past the exact window).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    ExactHalfInteger,
    IncomparableMagnitudes,
    InvalidParameters,
    NoRecurrenceFound,
    PisotLabError,
    PrecisionExhausted,
    RecurrenceUnavailable,
)
from .field import NumberField
from .poly import IntPolynomial, PairRelation, SymmetryClass, classify_pair, classify_symmetry
from .primes import primes_between
from .recurrence import (
    Recurrence,
    characteristic_of,
    detect_recurrence,
    modular_extend,
)
from .transform import IterateTable, build_table, frac_magnitudes, iterate_once

__all__ = [
    "BranchVerdict",
    "CongruenceReport",
    "congruence_scan",
    "ConstantVerdict",
    "constant_detect",
    "MagnitudeViolation",
    "ConvergenceReport",
    "convergence_check",
    "LevelExpectation",
    "ExpectationSet",
    "ExpectationOutcome",
    "alpha_expectations",
    "beta_expectations",
    "heart_expectations",
    "LevelReport",
    "PairAudit",
    "SuiteReport",
    "run_suite",
]

EXACT_LIMIT_DEFAULT = 300
MIN_BRANCH_RUN = 5
MIN_CONSTANT_RUN = 5

METHOD_EXACT = "exact"
METHOD_RECURRENCE = "recurrence_extended"


def centered_residue(value: int, p: int) -> int:
    """Residue of ``value`` mod ``p`` mapped into ``(-p/2, p/2]``."""
    r = value % p
    if 2 * r > p:
        r -= p
    return r


# ---------------------------------------------------------------------------
# congruence scan


@dataclass(frozen=True)
class BranchVerdict:
    """Stable residue branch of a prime scan.

    ``kind`` is one of ``zero``, ``plus_one``, ``minus_one``, ``other`` (some
    other constant centered value, stored in ``value``) or ``mixed`` (no
    stable tail of at least ``MIN_BRANCH_RUN`` primes).
    """

    kind: str
    value: int | None = None
    onset_prime: int | None = None

    def matches(self, expected_value: int) -> bool:
        if self.kind == "mixed":
            return False
        return self.value == expected_value


@dataclass(frozen=True)
class CongruenceReport:
    level: int
    p_lo: int
    p_hi: int
    primes: tuple[int, ...]
    residues: Mapping[int, int]  # prime -> residue in [0, p)
    centered: Mapping[int, int]  # prime -> residue in (-p/2, p/2]
    method: Mapping[int, str]  # prime -> METHOD_EXACT | METHOD_RECURRENCE
    branch: BranchVerdict

    def used_recurrence(self) -> bool:
        return any(m == METHOD_RECURRENCE for m in self.method.values())


def _classify_branch(
    primes: Sequence[int], centered: Mapping[int, int], min_run: int
) -> BranchVerdict:
    if not primes:
        return BranchVerdict("mixed")
    # Longest suffix of the prime list sharing one centered value.
    tail_value = centered[primes[-1]]
    start = len(primes) - 1
    while start > 0 and centered[primes[start - 1]] == tail_value:
        start -= 1
    run = len(primes) - start
    if run < min_run:
        return BranchVerdict("mixed")
    if tail_value == 0:
        kind = "zero"
    elif tail_value == 1:
        kind = "plus_one"
    elif tail_value == -1:
        kind = "minus_one"
    else:
        kind = "other"
    return BranchVerdict(kind, tail_value, primes[start])


def _exact_column(field: NumberField, level: int, n: int) -> int:
    """``u^level_n`` computed directly (one column, no table)."""
    x = field.theta_power(n)
    u = 0
    for _ in range(level + 1):
        x, u = iterate_once(field, n, x)
    return u


def congruence_scan(
    field: NumberField,
    level: int,
    p_lo: int,
    p_hi: int,
    *,
    exact_limit: int = EXACT_LIMIT_DEFAULT,
    table: IterateTable | None = None,
    recurrence: Recurrence | None = None,
    recurrence_n_start: int = 1,
    initial_terms: Sequence[int] | None = None,
    min_run: int = MIN_BRANCH_RUN,
) -> CongruenceReport:
    """Scan ``u^level_p mod p`` over primes ``p_lo <= p <= p_hi``.

    Primes up to ``exact_limit`` are evaluated exactly (reusing ``table``
    when it covers the column, otherwise recomputing the column).  Primes
    beyond ``exact_limit`` need a verified ``recurrence`` for the level's
    row; residues are then pushed forward with modular companion-matrix
    powers from exact initial terms.  ``recurrence_n_start`` says which
    exponent the recurrence's index 0 refers to.

    Raises :class:`RecurrenceUnavailable` if extension is needed but no
    recurrence was supplied, and propagates rounding failures from exact
    evaluation.
    """
    if level < 0:
        raise InvalidParameters("iterate level must be >= 0")
    if p_lo > p_hi:
        raise InvalidParameters("empty prime range")
    primes = tuple(primes_between(p_lo, p_hi))
    residues: dict[int, int] = {}
    centered: dict[int, int] = {}
    method: dict[int, str] = {}

    need_extension = any(p > exact_limit for p in primes)
    init: list[int] = []
    onset_n = 0
    if need_extension:
        if recurrence is None:
            raise RecurrenceUnavailable(
                "primes beyond exact_limit=%d need a verified recurrence for level %d"
                % (exact_limit, level)
            )
        onset_n = recurrence_n_start + recurrence.onset
        if initial_terms is not None:
            if len(initial_terms) < recurrence.order:
                raise InvalidParameters(
                    "need at least %d initial terms" % recurrence.order
                )
            init = [int(v) for v in initial_terms[: recurrence.order]]
        else:
            init = [
                _table_or_column(field, table, level, onset_n + i)
                for i in range(recurrence.order)
            ]

    for p in primes:
        if p <= exact_limit:
            u = _table_or_column(field, table, level, p)
            method[p] = METHOD_EXACT
        else:
            assert recurrence is not None
            u = modular_extend(
                recurrence,
                init,
                p,
                p - onset_n,
                start_index=0,
            )
            method[p] = METHOD_RECURRENCE
        residues[p] = u % p
        centered[p] = centered_residue(u, p)

    branch = _classify_branch(primes, centered, min_run)
    return CongruenceReport(
        level, p_lo, p_hi, primes, residues, centered, method, branch
    )


def _table_or_column(
    field: NumberField, table: IterateTable | None, level: int, n: int
) -> int:
    if table is not None and table.has(level, n):
        return table.u(level, n)
    return _exact_column(field, level, n)


# ---------------------------------------------------------------------------
# constant / alternating tails


@dataclass(frozen=True)
class ConstantVerdict:
    """Eventual-tail classification of an integer-part row.

    kind: ``plus_one`` | ``minus_one`` | ``alt_odd_plus`` (odd n -> +1,
    even n -> -1) | ``alt_odd_minus`` (the reverse) | ``none``.
    ``exact`` records whether every matched cell had an exactly zero
    fractional part (the iterate *is* the integer, not merely near it).
    """

    kind: str
    onset: int | None = None
    run_length: int = 0
    exact: bool = False


_TAIL_PATTERNS = {
    "plus_one": lambda n: 1,
    "minus_one": lambda n: -1,
    "alt_odd_plus": lambda n: 1 if n % 2 else -1,
    "alt_odd_minus": lambda n: -1 if n % 2 else 1,
}


def constant_detect(
    table: IterateTable, level: int, *, min_run: int = MIN_CONSTANT_RUN
) -> ConstantVerdict:
    """Classify the tail of row ``level`` as constant/alternating ±1.

    The pattern must hold from its onset to the end of the contiguous row.
    Constants win ties against alternators (a run of equal values matches
    an alternator only for run length 1).
    """
    ns = _contiguous_ns(table, level)
    if not ns:
        return ConstantVerdict("none")
    values = {n: table.u(level, n) for n in ns}

    best_kind = "none"
    best_onset: int | None = None
    for kind in ("plus_one", "minus_one", "alt_odd_plus", "alt_odd_minus"):
        pattern = _TAIL_PATTERNS[kind]
        onset: int | None = None
        # walk backwards collecting the longest matching suffix
        for n in reversed(ns):
            if values[n] == pattern(n):
                onset = n
            else:
                break
        if onset is None:
            continue
        run = ns[-1] - onset + 1
        if run < min_run:
            continue
        if best_onset is None or onset < best_onset:
            best_kind, best_onset = kind, onset
    if best_onset is None:
        return ConstantVerdict("none")
    run = ns[-1] - best_onset + 1
    exact = all(table.cell(level, n).exact_zero for n in ns if n >= best_onset)
    return ConstantVerdict(best_kind, best_onset, run, exact)


def _contiguous_ns(table: IterateTable, level: int) -> list[int]:
    ns = sorted(cell.n for cell in table.cells_at_level(level))
    out: list[int] = []
    for n in ns:
        if out and n != out[-1] + 1:
            break
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# convergence of fractional magnitudes


@dataclass(frozen=True)
class MagnitudeViolation:
    n: int  # left index of the offending adjacent pair (n, n+1)
    kind: str  # 'increase' | 'plateau' | 'resurgence'


@dataclass(frozen=True)
class ConvergenceReport:
    level: int
    n_lo: int
    n_hi: int
    onset: int | None
    violations: tuple[MagnitudeViolation, ...]
    zero_tail_from: int | None

    @property
    def erratic_window(self) -> tuple[int, int] | None:
        """Index range of pre-onset violations, if any."""
        bad = [v.n for v in self.violations if self.onset is None or v.n < self.onset]
        if not bad:
            return None
        return (min(bad), max(bad))


def convergence_check(
    table: IterateTable, level: int, *, comparator_cap_bits: int = 1 << 16
) -> ConvergenceReport:
    """Find the onset past which ``|frac(I^level(theta^n))|`` strictly decreases.

    Adjacent magnitudes are compared through certified interval refinement.
    Pairs that are exactly zero on both sides count as converged (the row
    has collapsed to honest integers) but are still recorded as ``plateau``
    violations for reporting.  ``onset`` is ``None`` when no tail of the
    tabulated range is strict-or-zero.

    Raises :class:`IncomparableMagnitudes` when a pair cannot be separated
    within the precision cap.
    """
    row = frac_magnitudes(table, level, comparator_cap_bits=comparator_cap_bits)
    stuck = row.incomparable_pairs()
    if stuck:
        raise IncomparableMagnitudes(
            "magnitude pairs %s undecided at %d bits" % (stuck, comparator_cap_bits)
        )
    entries = row.entries
    if not entries:
        return ConvergenceReport(level, 0, 0, None, (), None)
    ns = [e.n for e in entries]
    n_lo, n_hi = ns[0], ns[-1]

    zero_tail_from: int | None = None
    for e in reversed(entries):
        if e.exact_zero:
            zero_tail_from = e.n
        else:
            break

    violations: list[MagnitudeViolation] = []
    blocking: list[int] = []  # left indices that rule out an onset at/below them
    for i, status in enumerate(row.pair_order):
        a, b = entries[i], entries[i + 1]
        if status == "gt":
            continue
        if status == "eq":
            violations.append(MagnitudeViolation(a.n, "plateau"))
            both_zero = a.exact_zero and b.exact_zero
            in_zero_tail = zero_tail_from is not None and a.n >= zero_tail_from
            if not (both_zero and in_zero_tail):
                blocking.append(a.n)
            continue
        # status == 'lt': magnitude grew
        if a.exact_zero and not b.exact_zero:
            violations.append(MagnitudeViolation(a.n, "resurgence"))
        else:
            violations.append(MagnitudeViolation(a.n, "increase"))
        blocking.append(a.n)

    if not blocking:
        onset: int | None = n_lo
    else:
        cand = max(blocking) + 1
        onset = cand if cand < n_hi else None
    return ConvergenceReport(
        level, n_lo, n_hi, onset, tuple(violations), zero_tail_from
    )


# ---------------------------------------------------------------------------
# expectations


@dataclass(frozen=True)
class LevelExpectation:
    """What a level's scans are expected to show.

    ``congruence`` is an expected centered residue value; ``constant`` is a
    tuple of acceptable :class:`ConstantVerdict` kinds.  ``None`` fields are
    not checked.
    """

    level: int
    congruence: int | None = None
    max_onset_prime: int | None = None
    constant: tuple[str, ...] | None = None
    max_onset_index: int | None = None
    recurrence_coeffs: tuple[int, ...] | None = None


@dataclass(frozen=True)
class ExpectationSet:
    name: str
    levels: tuple[LevelExpectation, ...]

    def max_level(self) -> int:
        return max((e.level for e in self.levels), default=0)


@dataclass(frozen=True)
class ExpectationOutcome:
    level: int
    aspect: str  # 'congruence' | 'constant' | 'recurrence'
    passed: bool
    expected: str
    observed: str


def alpha_expectations(n: int, *, max_onset_prime: int | None = None) -> ExpectationSet:
    """Residue/tail pattern for the degree-``n+1`` field with top row -2.

    Level 0 residue 2, middle levels 0, level ``n-1`` residue -1, level
    ``n`` constant +1 (even ``n``) or alternating odd->+1 (odd ``n``).
    """
    if n < 1:
        raise InvalidParameters("n must be >= 1")
    levels = [LevelExpectation(0, congruence=2, max_onset_prime=max_onset_prime)]
    for k in range(1, n - 1):
        levels.append(
            LevelExpectation(k, congruence=0, max_onset_prime=max_onset_prime)
        )
    if n >= 2:
        levels.append(
            LevelExpectation(n - 1, congruence=-1, max_onset_prime=max_onset_prime)
        )
    top = ("plus_one",) if n % 2 == 0 else ("alt_odd_plus",)
    levels.append(LevelExpectation(n, constant=top))
    return ExpectationSet("alpha_%d" % n, tuple(levels))


def beta_expectations(n: int, *, max_onset_prime: int | None = None) -> ExpectationSet:
    """All levels below ``n`` residue 1; top level constant/alternating +1."""
    if n < 1:
        raise InvalidParameters("n must be >= 1")
    levels = [
        LevelExpectation(k, congruence=1, max_onset_prime=max_onset_prime)
        for k in range(n)
    ]
    top = ("plus_one",) if n % 2 == 0 else ("alt_odd_plus",)
    levels.append(LevelExpectation(n, constant=top))
    return ExpectationSet("beta_%d" % n, tuple(levels))


def heart_expectations(
    m0: int, n: int, *, max_onset_prime: int | None = None
) -> ExpectationSet:
    """Generalized pattern for degree-``n+1`` heart-family fields.

    Level 0 residue ``m0``, strictly-middle levels residue 0, level
    ``n-2``... point of care: the penultimate *congruence* level is
    ``n-1`` (residue -1) and the top integer-part row sits at level ``n``.
    """
    if n < 1:
        raise InvalidParameters("n must be >= 1")
    levels = [LevelExpectation(0, congruence=m0, max_onset_prime=max_onset_prime)]
    for k in range(1, n - 1):
        levels.append(
            LevelExpectation(k, congruence=0, max_onset_prime=max_onset_prime)
        )
    if n >= 2:
        levels.append(
            LevelExpectation(n - 1, congruence=-1, max_onset_prime=max_onset_prime)
        )
    levels.append(LevelExpectation(n, constant=("plus_one", "alt_odd_plus")))
    return ExpectationSet("heart_%d_n%d" % (m0, n), tuple(levels))


# ---------------------------------------------------------------------------
# suite


@dataclass(frozen=True)
class PairAudit:
    level_a: int
    level_b: int
    relation: PairRelation


@dataclass
class LevelReport:
    level: int
    u_head: tuple[int, ...]
    recurrence: Recurrence | None = None
    recurrence_error: str | None = None
    characteristic: IntPolynomial | None = None
    symmetry: SymmetryClass | None = None
    congruence: CongruenceReport | None = None
    congruence_error: str | None = None
    constant: ConstantVerdict | None = None
    convergence: ConvergenceReport | None = None
    convergence_error: str | None = None


@dataclass
class SuiteReport:
    min_poly: IntPolynomial
    n_lo: int
    n_hi: int
    k_max: int
    p_lo: int
    p_hi: int
    levels: list[LevelReport] = dc_field(default_factory=list)
    pair_audits: list[PairAudit] = dc_field(default_factory=list)
    outcomes: list[ExpectationOutcome] = dc_field(default_factory=list)
    table_failures: dict[tuple[int, int], str] = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    def level_report(self, level: int) -> LevelReport:
        for rep in self.levels:
            if rep.level == level:
                return rep
        raise InvalidParameters("no report for level %d" % level)


def run_suite(
    field: NumberField,
    expectations: ExpectationSet | None = None,
    *,
    p_lo: int = 2,
    p_hi: int = 97,
    k_max: int | None = None,
    n_lo: int = 1,
    n_hi: int | None = None,
    exact_limit: int = EXACT_LIMIT_DEFAULT,
    include_convergence: bool = False,
    min_run: int = MIN_BRANCH_RUN,
) -> SuiteReport:
    """Run every scanner across levels ``0..k_max`` of one field.

    ``k_max`` defaults to ``degree - 1`` (or high enough to cover the
    expectations).  ``n_hi`` defaults to covering every prime that must be
    evaluated exactly, with a floor of 60 exponents.  Residues for primes
    beyond ``exact_limit`` automatically reuse the level's detected
    recurrence; if detection failed, the level's congruence slot carries
    the error note instead.
    """
    d = field.degree
    if k_max is None:
        k_max = d - 1
        if expectations is not None:
            k_max = max(k_max, expectations.max_level())
    exact_top = min(p_hi, exact_limit)
    if n_hi is None:
        n_hi = max(60, exact_top)
    table = build_table(field, k_max, n_lo, n_hi)

    report = SuiteReport(field.min_poly, n_lo, n_hi, k_max, p_lo, p_hi)
    report.table_failures = dict(table.failures)

    for k in range(k_max + 1):
        ns = _contiguous_ns(table, k)
        head = tuple(table.u(k, n) for n in ns[:12])
        rep = LevelReport(k, head)

        seq = [table.u(k, n) for n in ns]
        if len(seq) >= 8:
            try:
                rep.recurrence = detect_recurrence(seq)
            except NoRecurrenceFound as exc:
                rep.recurrence_error = str(exc)
        else:
            rep.recurrence_error = "row too short for detection"
        if rep.recurrence is not None and rep.recurrence.is_integral:
            rep.characteristic = characteristic_of(rep.recurrence)
            rep.symmetry = classify_symmetry(rep.characteristic)

        try:
            rec = rep.recurrence if (rep.recurrence and rep.recurrence.is_integral) else None
            rep.congruence = congruence_scan(
                field,
                k,
                p_lo,
                p_hi,
                exact_limit=exact_limit,
                table=table,
                recurrence=rec,
                recurrence_n_start=ns[0] if ns else 1,
                min_run=min_run,
            )
        except (RecurrenceUnavailable, ExactHalfInteger, PrecisionExhausted) as exc:
            rep.congruence_error = "%s: %s" % (type(exc).__name__, exc)

        rep.constant = constant_detect(table, k)

        if include_convergence:
            try:
                rep.convergence = convergence_check(table, k)
            except IncomparableMagnitudes as exc:
                rep.convergence_error = str(exc)

        report.levels.append(rep)

    report.pair_audits = _pair_audits(report.levels, d, k_max)
    if expectations is not None:
        report.outcomes = _grade(report, expectations)
    return report


def _pair_audits(levels: Sequence[LevelReport], d: int, k_max: int) -> list[PairAudit]:
    """Mirror-pair comparisons between characteristic polynomials.

    Levels ``m`` and ``d - m + 2`` are paired whenever both fall inside the
    tabulated range and both rows produced integral recurrences.
    """
    by_level = {rep.level: rep for rep in levels}
    audits: list[PairAudit] = []
    for m in range(k_max + 1):
        j = d - m + 2
        if j < m or j > k_max:
            continue
        a, b = by_level.get(m), by_level.get(j)
        if a is None or b is None:
            continue
        if a.characteristic is None or b.characteristic is None:
            continue
        if a.characteristic.degree != b.characteristic.degree:
            continue
        audits.append(PairAudit(m, j, classify_pair(a.characteristic, b.characteristic)))
    return audits


def _grade(report: SuiteReport, expectations: ExpectationSet) -> list[ExpectationOutcome]:
    outcomes: list[ExpectationOutcome] = []
    for exp in expectations.levels:
        try:
            rep = report.level_report(exp.level)
        except InvalidParameters:
            outcomes.append(
                ExpectationOutcome(
                    exp.level, "coverage", False, "level tabulated", "level missing"
                )
            )
            continue
        if exp.congruence is not None:
            outcomes.append(_grade_congruence(rep, exp))
        if exp.constant is not None:
            outcomes.append(_grade_constant(rep, exp))
        if exp.recurrence_coeffs is not None:
            outcomes.append(_grade_recurrence(rep, exp))
    return outcomes


def _grade_congruence(rep: LevelReport, exp: LevelExpectation) -> ExpectationOutcome:
    expected = "centered residue %d" % exp.congruence
    if exp.max_onset_prime is not None:
        expected += " from prime <= %d" % exp.max_onset_prime
    if rep.congruence is None:
        return ExpectationOutcome(
            exp.level, "congruence", False, expected,
            "scan failed: %s" % rep.congruence_error,
        )
    branch = rep.congruence.branch
    observed = "branch %s" % branch.kind
    if branch.kind != "mixed":
        observed += " (value %d, onset prime %s)" % (branch.value, branch.onset_prime)
    ok = branch.matches(exp.congruence)
    if ok and exp.max_onset_prime is not None:
        ok = branch.onset_prime is not None and branch.onset_prime <= exp.max_onset_prime
    return ExpectationOutcome(exp.level, "congruence", ok, expected, observed)


def _grade_constant(rep: LevelReport, exp: LevelExpectation) -> ExpectationOutcome:
    expected = "tail in %s" % (exp.constant,)
    if exp.max_onset_index is not None:
        expected += " from n <= %d" % exp.max_onset_index
    verdict = rep.constant
    if verdict is None:
        return ExpectationOutcome(exp.level, "constant", False, expected, "not scanned")
    observed = "tail %s (onset %s, run %d)" % (
        verdict.kind, verdict.onset, verdict.run_length,
    )
    ok = verdict.kind in exp.constant
    if ok and exp.max_onset_index is not None:
        ok = verdict.onset is not None and verdict.onset <= exp.max_onset_index
    return ExpectationOutcome(exp.level, "constant", ok, expected, observed)


def _grade_recurrence(rep: LevelReport, exp: LevelExpectation) -> ExpectationOutcome:
    expected = "coefficients %s" % (exp.recurrence_coeffs,)
    if rep.recurrence is None:
        return ExpectationOutcome(
            exp.level, "recurrence", False, expected,
            "detection failed: %s" % rep.recurrence_error,
        )
    observed = "order %d coefficients %s (onset %d)" % (
        rep.recurrence.order, rep.recurrence.coeffs, rep.recurrence.onset,
    )
    ok = tuple(Fraction(c) for c in rep.recurrence.coeffs) == tuple(
        Fraction(c) for c in exp.recurrence_coeffs
    )
    return ExpectationOutcome(exp.level, "recurrence", ok, expected, observed)
