"""Linear recurrences on integer sequences: exact detection, coefficient
prediction from a minimal polynomial, comparison, and fast modular
extension.

Detection policy: smallest order whose relation fits the tail window of the
sequence exactly (window length 2*order + 4), with the onset then walked
back as far as the relation keeps holding.  All linear algebra is exact
over Fraction, so a detected recurrence is a statement about the sequence,
not an approximation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    IndexBelowOnset,
    InvalidParameters,
    NoRecurrenceFound,
    NonExactDivision,
    VariantInapplicable,
)
from .poly import (
    IntPolynomial,
    alpha_poly,
    beta_poly,
    delta2_poly,
    plastic_poly,
    poly_from_terms,
)


@dataclass(frozen=True)
class Recurrence:
    """u_i = sum_{k=1}^{order} coeffs[k-1] * u_{i-k}, valid for every index
    i >= onset + order (indices into the analysed sequence)."""

    order: int
    coeffs: tuple[Fraction | int, ...]
    onset: int

    @property
    def is_integral(self) -> bool:
        return all(
            isinstance(c, int) or c.denominator == 1 for c in self.coeffs
        )

    def predict(self, history: Sequence) -> Fraction | int:
        """Next term from the last `order` terms (most recent last)."""
        if len(history) < self.order:
            raise InvalidParameters("history shorter than the order")
        return sum(c * history[-k] for k, c in enumerate(self.coeffs, start=1))


def _solve_exact(rows: list[list[int]], rhs: list[int], j: int):
    """Gauss-Jordan over Q.  Returns a particular solution (free variables
    set to 0) or None when the system is inconsistent."""
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(rows, rhs)]
    nrows = len(m)
    pivots: list[int] = []
    r = 0
    for c in range(j):
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if m[i][j] != 0 and all(m[i][c] == 0 for c in range(j)):
            return None
    sol = [Fraction(0)] * j
    for row_idx, c in enumerate(pivots):
        sol[c] = m[row_idx][j]
    return sol


def _holds_at(seq: Sequence[int], b: Sequence[Fraction], i: int) -> bool:
    return seq[i] == sum(c * seq[i - 1 - k] for k, c in enumerate(b))


def detect_recurrence(
    seq: Sequence[int], max_order: int | None = None
) -> Recurrence:
    """Find the smallest-order linear recurrence fitting the tail of ``seq``.

    The fit window is the last 2*order + 4 terms; the order search is
    therefore capped at len(seq)//2 - 2 regardless of ``max_order``.  Raises
    NoRecurrenceFound when nothing fits.
    """
    seq = list(seq)
    length = len(seq)
    hard_cap = length // 2 - 2
    cap = hard_cap if max_order is None else min(max_order, hard_cap)
    if cap < 1:
        raise NoRecurrenceFound(f"sequence of length {length} is too short")
    for j in range(1, cap + 1):
        w = 2 * j + 4
        first_eq = length - w + j
        rows = [[seq[i - k] for k in range(1, j + 1)] for i in range(first_eq, length)]
        rhs = [seq[i] for i in range(first_eq, length)]
        b = _solve_exact(rows, rhs, j)
        if b is None:
            continue
        if not all(_holds_at(seq, b, i) for i in range(first_eq, length)):
            continue  # defensive; a consistent solve should never land here
        last_bad = -1
        for i in range(j, length):
            if not _holds_at(seq, b, i):
                last_bad = i
        onset = max(0, last_bad + 1 - j)
        coeffs = tuple(
            int(c) if c.denominator == 1 else c for c in b
        )
        return Recurrence(order=j, coeffs=coeffs, onset=onset)
    raise NoRecurrenceFound(
        f"no linear recurrence of order <= {cap} fits the sequence tail"
    )


def characteristic_of(r: Recurrence) -> IntPolynomial:
    """x^order - b_1 x^(order-1) - ... - b_order (integer coefficients
    required)."""
    if not r.is_integral:
        raise InvalidParameters(
            "characteristic polynomial needs integer recurrence coefficients"
        )
    terms = [(r.order, 1)] + [
        (r.order - k, -int(c)) for k, c in enumerate(r.coeffs, start=1)
    ]
    return poly_from_terms(terms)


# -- coefficient predictions from a minimal polynomial ------------------------


@dataclass(frozen=True)
class PredictedRecurrence:
    variant: str
    level: int                 # iterate level the prediction addresses
    coeffs: tuple[int, ...]    # b_1..b_order

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def characteristic(self) -> IntPolynomial:
        terms = [(self.order, 1)] + [
            (self.order - k, -c) for k, c in enumerate(self.coeffs, start=1)
        ]
        return poly_from_terms(terms)


VARIANTS = (
    "zero_iterate",
    "top_iterate_1deg",
    "alpha_form",
    "alpha_form_adjusted",
    "beta_odd",
    "beta_even",
)


def _is_recognized_limit_point(p: IntPolynomial) -> bool:
    d = p.degree
    if d >= 2 and (p == alpha_poly(d - 1) or p == beta_poly(d - 1)):
        return True
    return p == delta2_poly()


def predicted_recurrence(min_poly: IntPolynomial, variant: str) -> PredictedRecurrence:
    """Recurrence coefficients a conjecture family predicts for the iterate
    sequences of the Pisot number with this minimal polynomial.

    Variants:
      zero_iterate         level 0,   b_i = -a_{d-i} (the companion relation)
      top_iterate_1deg     level d-2, b_j = +-a_j with the parity sign rule;
                           inapplicable to the plastic number and recognized
                           limit-point polynomials
      alpha_form           level d-2 for alpha_poly(d-1), coefficients as
                           stated: lag 1 -> (-1)^n, lag n -> (-2)^(n+1),
                           lag n+1 -> +1  (n = d-1)
      alpha_form_adjusted  same lags, but lag n -> 2*(-1)^(n+1); the reading
                           consistent with the general parity sign rule
      beta_odd / beta_even level d-2 for beta_poly(d-1) with odd / even d-1
    """
    if variant not in VARIANTS:
        raise InvalidParameters(f"unknown variant {variant!r}")
    if not min_poly.is_monic:
        raise InvalidParameters("minimal polynomial must be monic")
    d = min_poly.degree

    if variant == "zero_iterate":
        if d < 1:
            raise VariantInapplicable("zero_iterate needs degree >= 1")
        return PredictedRecurrence(
            variant=variant,
            level=0,
            coeffs=tuple(-min_poly.coeff(d - i) for i in range(1, d + 1)),
        )

    if variant == "top_iterate_1deg":
        if d < 3:
            raise VariantInapplicable("top_iterate_1deg needs degree >= 3")
        if min_poly == plastic_poly():
            raise VariantInapplicable("the plastic number is excluded")
        if _is_recognized_limit_point(min_poly):
            raise VariantInapplicable(
                "limit-point polynomial; use the alpha/beta variants"
            )
        if d % 2 == 1:
            coeffs = tuple(min_poly.coeff(j) for j in range(1, d + 1))
        else:
            coeffs = tuple(
                min_poly.coeff(j) if j % 2 == 0 else -min_poly.coeff(j)
                for j in range(1, d + 1)
            )
        return PredictedRecurrence(variant=variant, level=d - 2, coeffs=coeffs)

    n = d - 1
    if variant in ("alpha_form", "alpha_form_adjusted"):
        if n < 2 or min_poly != alpha_poly(n):
            raise VariantInapplicable(
                "alpha_form applies to alpha_poly(n) with n >= 2"
            )
        mid = (-2) ** (n + 1) if variant == "alpha_form" else 2 * (-1) ** (n + 1)
        terms = {1: (-1) ** n, n: mid, n + 1: 1}
        return PredictedRecurrence(
            variant=variant,
            level=n - 1,
            coeffs=tuple(terms.get(i, 0) for i in range(1, n + 2)),
        )

    if variant == "beta_odd":
        if n < 3 or n % 2 == 0 or min_poly != beta_poly(n):
            raise VariantInapplicable(
                "beta_odd applies to beta_poly(n) with odd n >= 3"
            )
        coeffs = tuple(
            1 if i % 2 == 1 else -1 for i in range(1, n + 1)
        ) + (1,)
        return PredictedRecurrence(variant=variant, level=n - 1, coeffs=coeffs)

    # beta_even
    if n < 2 or n % 2 == 1 or min_poly != beta_poly(n):
        raise VariantInapplicable(
            "beta_even applies to beta_poly(n) with even n >= 2"
        )
    coeffs = (-1,) * n + (1,)
    return PredictedRecurrence(variant="beta_even", level=n - 1, coeffs=coeffs)


# -- comparison ----------------------------------------------------------------


@dataclass(frozen=True)
class RecurrenceComparison:
    verdict: str  # 'equal' | 'equal_up_to_onset' | 'mismatch'
    mismatch_positions: tuple[int, ...] = ()


def compare_recurrence(
    detected: Recurrence, predicted: PredictedRecurrence
) -> RecurrenceComparison:
    """equal: same order and coefficients.  equal_up_to_onset: the detected
    (minimal) characteristic divides the predicted one, so the prediction is
    a valid but non-minimal description of the tail.  mismatch otherwise,
    with differing lags listed when the orders agree."""
    pc = predicted.coeffs
    dc = tuple(detected.coeffs)
    if detected.order == len(pc) and all(a == b for a, b in zip(dc, pc)):
        return RecurrenceComparison("equal")
    if detected.is_integral:
        try:
            predicted.characteristic().exact_div(characteristic_of(detected))
            return RecurrenceComparison("equal_up_to_onset")
        except NonExactDivision:
            pass
    if detected.order == len(pc):
        positions = tuple(
            i for i, (a, b) in enumerate(zip(dc, pc), start=1) if a != b
        )
        return RecurrenceComparison("mismatch", positions)
    return RecurrenceComparison("mismatch")


# -- modular extension ----------------------------------------------------------


def modular_extend(
    r: Recurrence,
    initial_terms: Sequence[int],
    p: int,
    target_index: int,
    start_index: int | None = None,
) -> int:
    """u_{target_index} mod p, where initial_terms are the exact values
    u_{start}, ..., u_{start + order - 1} (start defaults to r.onset).

    Companion-matrix exponentiation, O(order^3 log target_index).
    """
    if not r.is_integral:
        raise InvalidParameters("modular extension needs integer coefficients")
    j = r.order
    if len(initial_terms) != j:
        raise InvalidParameters(f"need exactly {j} initial terms")
    if p < 2:
        raise InvalidParameters("modulus must be >= 2")
    start = r.onset if start_index is None else start_index
    if target_index < start:
        raise IndexBelowOnset(
            f"index {target_index} precedes the recurrence onset {start}"
        )
    if target_index < start + j:
        return initial_terms[target_index - start] % p
    coeffs = [int(c) % p for c in r.coeffs]
    mat = [[0] * j for _ in range(j)]
    mat[0] = coeffs[:]
    for i in range(1, j):
        mat[i][i - 1] = 1
    steps = target_index - (start + j - 1)
    power = _mat_pow(mat, steps, p)
    state = [initial_terms[j - 1 - i] % p for i in range(j)]  # newest first
    return sum(power[0][i] * state[i] for i in range(j)) % p


def _mat_mul(a, b, p):
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(n):
            f = ai[k]
            if f == 0:
                continue
            bk = b[k]
            for col in range(n):
                oi[col] = (oi[col] + f * bk[col]) % p
    return out


def _mat_pow(m, e, p):
    n = len(m)
    result = [[1 if i == k else 0 for k in range(n)] for i in range(n)]
    base = [row[:] for row in m]
    while e:
        if e & 1:
            result = _mat_mul(result, base, p)
        base = _mat_mul(base, base, p)
        e >>= 1
    return result
