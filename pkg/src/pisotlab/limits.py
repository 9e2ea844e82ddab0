"""Logarithmic-equation families whose roots are Pisot limit points.

Three families, parametrized by integers ``m >= 2``, ``n >= 1`` (and
``1 <= l < m`` for the middle one):

* club:   -ln(m - x)/ln x = n                    <=>  x^{n+1} - m x^n + 1 = 0
* heart:  (-ln(m - x) + ln(x - m + l))/ln x = n  <=>  x^{n+1} - m x^n + x - m + l = 0
* spade:  -ln(x - m)/ln x = n                    <=>  x^{n+1} - m x^n - 1 = 0

The polynomial reductions are rederived algebra, so every solved root is
pushed back through the *original* logarithmic equation with interval
arithmetic and gated on the residual.  A failed gate means the algebra is
wrong, not that precision ran out -- the two cases raise different errors.

Also here: certified evaluation of the closed-form log identities attached
to the alpha/beta families and a certified ordering chain of the small
limit points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .certify import PisotCertificate, Verdict, certify_pisot, refine_root, sign_at
from .conjectures import ExpectationSet, SuiteReport, heart_expectations, run_suite
from .errors import (
    IncomparableAdjacent,
    InvalidParameters,
    NoRootInInterval,
    NotPisot,
    PrecisionExhausted,
    ResidualTooLarge,
)
from .field import NumberField
from .intervals import RatInterval, interval_to_iv, iv_to_interval
from .poly import (
    IntPolynomial,
    alpha_poly,
    beta_poly,
    delta2_poly,
    family_poly,
    strip_unit_root,
)

__all__ = [
    "LogEquationSpec",
    "LimitPointSolution",
    "solve_log_equation",
    "verify_identity",
    "IDENTITY_KINDS",
    "ChainEntry",
    "OrderingReport",
    "ordering_check",
    "GeneralizedCongruenceReport",
    "generalized_congruence_check",
]

DEFAULT_TOL = Fraction(1, 10**30)
DEFAULT_SOLVE_BITS = 192

_FAMILIES = ("club", "heart", "spade")


@dataclass(frozen=True)
class LogEquationSpec:
    """One member of the club/heart/spade equation families."""

    family: str
    m: int
    n: int
    l: int | None = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise InvalidParameters("unknown family %r" % (self.family,))
        if self.m < 2:
            raise InvalidParameters("m must be >= 2 (integer limit points are excluded)")
        if self.n < 1:
            raise InvalidParameters("n must be >= 1")
        if self.family == "heart":
            if self.l is None or not (1 <= self.l < self.m):
                raise InvalidParameters("heart needs 1 <= l < m")
        elif self.l is not None:
            raise InvalidParameters("l only applies to the heart family")

    @property
    def root_window(self) -> tuple[int, int]:
        """Open interval the Pisot root must fall in."""
        if self.family == "spade":
            return (self.m, self.m + 1)
        return (self.m - 1, self.m)

    def polynomial(self) -> IntPolynomial:
        return family_poly(self.family, self.m, self.n, self.l)

    def label(self) -> str:
        if self.family == "heart":
            return "heart(m=%d,n=%d,l=%d)" % (self.m, self.n, self.l)
        return "%s(m=%d,n=%d)" % (self.family, self.m, self.n)


@dataclass(frozen=True)
class LimitPointSolution:
    spec: LogEquationSpec
    poly: IntPolynomial  # after removing (x-1) factors
    unit_root_multiplicity: int
    root: RatInterval
    certificate: PisotCertificate
    residual: RatInterval  # certified |LHS - n| at the root
    residual_bits: int


def solve_log_equation(
    spec: LogEquationSpec,
    tol: Fraction = DEFAULT_TOL,
    *,
    precision_bits: int = DEFAULT_SOLVE_BITS,
    max_bits: int = 1 << 14,
) -> LimitPointSolution:
    """Solve one log-equation spec to a certified Pisot limit point.

    Builds the family polynomial, strips any (x-1) factor, certifies the
    remaining polynomial, confirms the dominant root sits strictly inside
    the family's promised window, and finally re-evaluates the original
    logarithmic equation at the root.  The residual must certify below
    ``tol``; a residual certified *above* ``tol`` raises
    :class:`ResidualTooLarge` (the polynomial reduction would be wrong).
    """
    if tol <= 0:
        raise InvalidParameters("tolerance must be positive")
    raw = spec.polynomial()
    reduced, mult = strip_unit_root(raw)
    lo_end, hi_end = spec.root_window
    if reduced.degree < 1:
        raise NoRootInInterval(
            "%s collapses to a constant after removing (x-1)^%d" % (spec.label(), mult)
        )
    if sign_at(reduced, Fraction(lo_end)) == 0 or sign_at(reduced, Fraction(hi_end)) == 0:
        raise NoRootInInterval(
            "%s has a root exactly on the boundary of ]%d, %d[" % (spec.label(), lo_end, hi_end)
        )
    if sign_at(reduced, Fraction(lo_end)) * sign_at(reduced, Fraction(hi_end)) > 0:
        raise NoRootInInterval(
            "%s has no sign change across ]%d, %d[" % (spec.label(), lo_end, hi_end)
        )

    cert = certify_pisot(reduced)
    if cert.verdict is Verdict.NOT_PISOT or cert.dominant_root is None:
        raise NotPisot(
            "%s solved to a non-Pisot root: %s" % (spec.label(), cert.failure_reason),
            certificate=cert,
        )

    root = refine_root(reduced, cert.dominant_root, precision_bits + 8)
    if not root.strictly_inside(Fraction(lo_end), Fraction(hi_end)):
        raise NoRootInInterval(
            "dominant root %s of %s falls outside ]%d, %d[" % (root, spec.label(), lo_end, hi_end)
        )

    bits = precision_bits
    while True:
        root = refine_root(reduced, root, bits + 8)
        expr = _family_log_expr(spec, root, bits)
        residual = expr.shift(-Fraction(spec.n)).abs_()
        if residual.hi < tol:
            return LimitPointSolution(spec, reduced, mult, root, cert, residual, bits)
        if residual.lo > tol:
            raise ResidualTooLarge(
                "%s: log-equation residual certified in %s, above tol %s"
                % (spec.label(), residual, tol),
                residual=residual,
                tolerance=tol,
            )
        bits *= 2
        if bits > max_bits:
            raise PrecisionExhausted(
                "residual for %s still straddles tol at %d bits" % (spec.label(), max_bits),
                bits=max_bits,
            )


def _family_log_expr(spec: LogEquationSpec, root: RatInterval, prec: int) -> RatInterval:
    """Certified enclosure of the original equation's LHS at the root."""
    m = spec.m
    args: list[tuple[int, Fraction]] = []  # (sign, offset): sign * ln(offset + sign*x) ... see below
    # Express each log argument as an affine image of x and check positivity.
    if spec.family == "club":
        log_terms = [(-1, RatInterval.point(m) - root)]  # -ln(m - x)
    elif spec.family == "heart":
        log_terms = [
            (-1, RatInterval.point(m) - root),
            (+1, root.shift(Fraction(spec.l - m))),  # +ln(x - m + l)
        ]
    else:  # spade
        log_terms = [(-1, root.shift(Fraction(-m)))]  # -ln(x - m)
    for _, arg in log_terms:
        if arg.lo <= 0:
            raise PrecisionExhausted(
                "log argument enclosure %s touches zero; refine the root" % (arg,),
                bits=prec,
            )
    del args

    old = mpmath.iv.prec
    mpmath.iv.prec = prec
    try:
        ln_x = mpmath.iv.log(interval_to_iv(root, prec))
        total = mpmath.iv.mpf(0)
        for sign, arg in log_terms:
            term = mpmath.iv.log(interval_to_iv(arg, prec))
            total = total + term if sign > 0 else total - term
        return iv_to_interval(total / ln_x)
    finally:
        mpmath.iv.prec = old


# ---------------------------------------------------------------------------
# closed-form identities


IDENTITY_KINDS = ("I", "II", "alpha2_pair", "alpha3_extra", "delta_prime")


def verify_identity(kind: str, n: int | None = None, precision_bits: int = 256) -> RatInterval:
    """Certified residual enclosure for one of the closed-form log identities.

    * ``I``    (needs n):  -ln(2 - beta_n)/ln(beta_n) = n + 1
    * ``II``   (needs n):  (-ln(2 - alpha_n) + ln(alpha_n - 1))/ln(alpha_n) = n
    * ``alpha2_pair``:     -ln(2 - alpha_2)/ln(alpha_2) = 5/2  and
                           -ln(alpha_2 - 1)/ln(alpha_2) = 1/2  (max of both residuals)
    * ``alpha3_extra``:    (-ln(2 - alpha_3) + ln(alpha_3 - alpha_1))/ln(alpha_3) = 1
    * ``delta_prime``:     (-ln(2 - d) + ln(d - 1))/ln(d) = 7/2 for the degree-4
                           limit point d ~ 1.9051661677
    """
    if kind not in IDENTITY_KINDS:
        raise InvalidParameters("unknown identity kind %r" % (kind,))
    if precision_bits < 64:
        raise InvalidParameters("precision must be at least 64 bits")
    if kind in ("I", "II"):
        if n is None or n < 1:
            raise InvalidParameters("identity %s needs n >= 1" % kind)
    prec = precision_bits

    if kind == "I":
        x = _unit_window_root(beta_poly(n), prec)
        return _log_combo(prec, x, [(-1, _two_minus(x))], Fraction(n + 1))
    if kind == "II":
        x = _unit_window_root(alpha_poly(n), prec)
        terms = [(-1, _two_minus(x)), (+1, x.shift(Fraction(-1)))]
        return _log_combo(prec, x, terms, Fraction(n))
    if kind == "alpha2_pair":
        x = _unit_window_root(alpha_poly(2), prec)
        r1 = _log_combo(prec, x, [(-1, _two_minus(x))], Fraction(5, 2))
        r2 = _log_combo(prec, x, [(-1, x.shift(Fraction(-1)))], Fraction(1, 2))
        return RatInterval(max(r1.lo, r2.lo), max(r1.hi, r2.hi))
    if kind == "alpha3_extra":
        x3 = _unit_window_root(alpha_poly(3), prec)
        x1 = _unit_window_root(alpha_poly(1), prec)
        terms = [(-1, _two_minus(x3)), (+1, x3 - x1)]
        return _log_combo(prec, x3, terms, Fraction(1))
    # delta_prime
    x = _unit_window_root(delta2_poly(), prec)
    terms = [(-1, _two_minus(x)), (+1, x.shift(Fraction(-1)))]
    return _log_combo(prec, x, terms, Fraction(7, 2))


def _two_minus(x: RatInterval) -> RatInterval:
    return RatInterval.point(2) - x


def _unit_window_root(p: IntPolynomial, prec: int) -> RatInterval:
    """The unique root of a limit-point family polynomial in ]1, 2[.

    These polynomials have all conjugates strictly inside the unit circle,
    so the window contains exactly one root and plain sign-change bisection
    certifies it.
    """
    lo, hi = Fraction(1), Fraction(2)
    if sign_at(p, lo) * sign_at(p, hi) >= 0:
        raise NoRootInInterval("no sign change for %s on ]1, 2[" % (p,))
    return refine_root(p, RatInterval(lo, hi), prec + 8)


def _log_combo(
    prec: int,
    x: RatInterval,
    terms: list[tuple[int, RatInterval]],
    claim: Fraction,
) -> RatInterval:
    """|sum(sign * ln(arg)) / ln(x) - claim| as a certified enclosure."""
    for _, arg in terms:
        if arg.lo <= 0:
            raise PrecisionExhausted(
                "log argument enclosure %s touches zero at %d bits" % (arg, prec),
                bits=prec,
            )
    old = mpmath.iv.prec
    mpmath.iv.prec = prec
    try:
        ln_x = mpmath.iv.log(interval_to_iv(x, prec))
        total = mpmath.iv.mpf(0)
        for sign, arg in terms:
            term = mpmath.iv.log(interval_to_iv(arg, prec))
            total = total + term if sign > 0 else total - term
        expr = total / ln_x
        claim_iv = interval_to_iv(RatInterval.point(claim), prec)
        return iv_to_interval(expr - claim_iv).abs_()
    finally:
        mpmath.iv.prec = old


# ---------------------------------------------------------------------------
# the ordering chain


@dataclass(frozen=True)
class ChainEntry:
    label: str
    poly: IntPolynomial
    enclosure: RatInterval
    bits: int


@dataclass(frozen=True)
class OrderingReport:
    entries: tuple[ChainEntry, ...]
    gaps: tuple[Fraction, ...]  # certified lower bound on entry[i+1] - entry[i]
    all_below_two: bool
    merged_first_pair: bool  # alpha_1 = beta_1 confirmed by polynomial identity

    @property
    def strictly_increasing(self) -> bool:
        return all(g > 0 for g in self.gaps)


def ordering_check(count: int, precision_bits: int = 128) -> OrderingReport:
    """Certified chain of the small limit points.

    alpha_1 = beta_1 < alpha_2 < beta_2 < alpha_3 < delta'_2 < beta_3 <
    alpha_4 < beta_4 < ... with every entry certified below 2.  The first
    equality is established exactly (the two defining polynomials are
    identical); every inequality is certified by disjoint enclosures.
    """
    if count < 2:
        raise InvalidParameters("count must be >= 2")
    merged = alpha_poly(1) == beta_poly(1)
    if not merged:  # pragma: no cover - algebra guarantees equality
        raise InvalidParameters("expected alpha_1 and beta_1 to share a polynomial")

    chain: list[tuple[str, IntPolynomial]] = [("alpha_1=beta_1", alpha_poly(1))]
    for i in range(2, count + 1):
        chain.append(("alpha_%d" % i, alpha_poly(i)))
        if i == 3 and count >= 3:
            chain.append(("delta_prime_2", delta2_poly()))
        chain.append(("beta_%d" % i, beta_poly(i)))

    bits = precision_bits
    cap = max(precision_bits * 16, 1 << 12)
    while True:
        entries = [
            ChainEntry(label, p, _unit_window_root(p, bits), bits)
            for label, p in chain
        ]
        gaps: list[Fraction] = []
        ok = True
        for a, b in zip(entries, entries[1:]):
            gap = b.enclosure.lo - a.enclosure.hi
            gaps.append(gap)
            if gap <= 0:
                ok = False
        if ok:
            below = all(e.enclosure.hi < 2 for e in entries)
            return OrderingReport(tuple(entries), tuple(gaps), below, merged)
        bits *= 2
        if bits > cap:
            raise IncomparableAdjacent(
                "chain enclosures still overlap at %d bits" % cap, bits=cap
            )


# ---------------------------------------------------------------------------
# generalized congruence pattern for heart fields


@dataclass(frozen=True)
class GeneralizedCongruenceReport:
    solution: LimitPointSolution
    suite: SuiteReport
    expectations: ExpectationSet
    skipped_middle: bool  # n too small for strictly-middle congruence levels

    @property
    def passed(self) -> bool:
        return self.suite.passed


def generalized_congruence_check(
    spec: LogEquationSpec,
    p_hi: int = 97,
    *,
    tol: Fraction = DEFAULT_TOL,
    p_lo: int = 2,
    n_hi: int | None = None,
    exact_limit: int = 300,
) -> GeneralizedCongruenceReport:
    """Solve a heart-family equation and grade its iterate table against the
    generalized residue pattern (level 0 = m, middle levels = 0, level n-1 =
    -1, top level a +-1 tail).

    The top-level expectation follows the claimed pattern; fields with
    m - l > 1 empirically grow geometric top rows instead, and then this
    check honestly reports the failed expectation.
    """
    if spec.family != "heart":
        raise InvalidParameters("generalized congruences are stated for the heart family")
    solution = solve_log_equation(spec, tol)
    field = NumberField(solution.poly, solution.certificate)
    expectations = heart_expectations(spec.m, spec.n)
    suite = run_suite(
        field,
        expectations,
        p_lo=p_lo,
        p_hi=p_hi,
        n_hi=n_hi,
        exact_limit=exact_limit,
    )
    return GeneralizedCongruenceReport(
        solution, suite, expectations, skipped_middle=spec.n <= 2
    )
