"""Dense integer polynomials with exact arithmetic, plus the coefficient
symmetry classifiers and the named polynomial families used throughout the
package.

Coefficients are stored ascending (index i holds the coefficient of x**i)
and trailing zeros are stripped, so equal polynomials compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegreeMismatch, InvalidParameters, NonExactDivision


class SymmetryClass(Enum):
    PALINDROMIC = "palindromic"
    ANTI_PALINDROMIC = "anti_palindromic"
    SEMI_PALINDROMIC = "semi_palindromic"
    NONE = "none"


class PairRelation(Enum):
    RECIPROCAL = "reciprocal"
    ANTI_RECIPROCAL = "anti_reciprocal"
    SEMI_RECIPROCAL = "semi_reciprocal"
    NONE = "none"


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class IntPolynomial:
    """An integer polynomial in one variable.

    >>> p = IntPolynomial.from_coeffs([-1, -1, 1])   # x^2 - x - 1
    >>> p.degree
    2
    >>> str(p)
    'x^2 - x - 1'
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.coeffs, tuple):
            object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if self.coeffs and self.coeffs[-1] == 0:
            object.__setattr__(self, "coeffs", _strip(self.coeffs))
        for c in self.coeffs:
            if not isinstance(c, int):
                raise InvalidParameters(f"integer coefficients required, got {c!r}")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        return cls(_strip(int(c) for c in coeffs))

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def x_power(cls, n: int, scale: int = 1) -> "IntPolynomial":
        if n < 0:
            raise InvalidParameters("exponent must be >= 0")
        return cls.from_coeffs([0] * n + [scale])

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial mapped to -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise InvalidParameters("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, i: int) -> int:
        """Coefficient of x**i (0 beyond the stored degree)."""
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, x):
        """Evaluate by Horner's rule; exact for int / Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(_strip(out))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            if other == 0:
                return IntPolynomial(())
            return IntPolynomial(tuple(other * c for c in self.coeffs))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(_strip(out))

    __rmul__ = __mul__

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        """Exact polynomial quotient; raises NonExactDivision if the division
        leaves a remainder or produces non-integer coefficients.

        >>> num = IntPolynomial.from_coeffs([1, 0, -2, 1])   # x^3 - 2x^2 + 1
        >>> den = IntPolynomial.from_coeffs([-1, 1])         # x - 1
        >>> str(num.exact_div(den))
        'x^2 - x - 1'
        """
        if other.is_zero:
            raise NonExactDivision("division by the zero polynomial")
        if self.is_zero:
            return IntPolynomial(())
        if self.degree < other.degree:
            raise NonExactDivision("dividend degree below divisor degree")
        rem = list(self.coeffs)
        ddeg, dlead = other.degree, other.leading
        q = [0] * (self.degree - ddeg + 1)
        for k in range(len(q) - 1, -1, -1):
            c = rem[k + ddeg]
            if c % dlead != 0:
                raise NonExactDivision(
                    f"coefficient {c} not divisible by leading term {dlead}"
                )
            q[k] = c // dlead
            if q[k]:
                for i, dc in enumerate(other.coeffs):
                    rem[k + i] -= q[k] * dc
        if any(rem):
            raise NonExactDivision("nonzero remainder")
        return IntPolynomial(_strip(q))

    def reverse(self) -> "IntPolynomial":
        """Coefficient reversal x^deg * p(1/x) (the reciprocal polynomial)."""
        if self.is_zero:
            return self
        return IntPolynomial(_strip(reversed(self.coeffs)))

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(
            _strip(i * c for i, c in enumerate(self.coeffs) if i > 0)
        )

    def monic_normalized(self) -> "IntPolynomial":
        """Flip the overall sign if needed so the leading coefficient is +1.

        Only defined when the leading coefficient is +-1.
        """
        if self.is_zero or abs(self.leading) != 1:
            raise InvalidParameters("leading coefficient must be +-1")
        return self if self.leading == 1 else -self

    def shift_mul_x(self, k: int) -> "IntPolynomial":
        """Multiply by x**k."""
        if self.is_zero:
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                xs = "x" if i == 1 else f"x^{i}"
                body = xs if mag == 1 else f"{mag}{xs}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def poly_from_terms(terms: Iterable[tuple[int, int]]) -> IntPolynomial:
    """Build a polynomial from (exponent, coefficient) pairs, summing
    repeated exponents (the parametric families below collide at small n)."""
    terms = list(terms)
    if not terms:
        return IntPolynomial(())
    out = [0] * (max(e for e, _ in terms) + 1)
    for e, c in terms:
        if e < 0:
            raise InvalidParameters("negative exponent")
        out[e] += c
    return IntPolynomial(_strip(out))


# ---------------------------------------------------------------------------
# coefficient symmetry


def classify_symmetry(p: IntPolynomial) -> SymmetryClass:
    """Classify the coefficient symmetry of ``p``.

    With n = deg p and coefficients a_0..a_n:

    * palindromic:        a_i == a_{n-i} for all i;
    * anti-palindromic:   a_i == -a_{n-i} for all i;
    * semi-palindromic:   a_i == -a_{n-i} for even i < n and
                          a_i ==  a_{n-i} for odd i.

    First match in that order wins; NONE otherwise.  Degree must be >= 1.
    """
    n = p.degree
    if n < 1:
        raise InvalidParameters("classification needs degree >= 1")
    a = [p.coeff(i) for i in range(n + 1)]
    if all(a[i] == a[n - i] for i in range(n + 1)):
        return SymmetryClass.PALINDROMIC
    if all(a[i] == -a[n - i] for i in range(n + 1)):
        return SymmetryClass.ANTI_PALINDROMIC
    even_ok = all(a[i] == -a[n - i] for i in range(0, n, 2))
    odd_ok = all(a[i] == a[n - i] for i in range(1, n + 1, 2))
    if even_ok and odd_ok:
        return SymmetryClass.SEMI_PALINDROMIC
    return SymmetryClass.NONE


def classify_pair(p: IntPolynomial, q: IntPolynomial) -> PairRelation:
    """Classify the coefficient relation between two polynomials of equal
    degree n (coefficients a_i of p, b_i of q):

    * reciprocal:         a_i ==  b_{n-i} for all i;
    * anti-reciprocal:    a_i == -b_{n-i} for all i;
    * semi-reciprocal:    a_i == -b_{n-i} for even i < n and
                          a_i ==  b_{n-i} for odd i.

    Raises DegreeMismatch when the degrees differ.
    """
    n = p.degree
    if n < 1 or q.degree < 1:
        raise InvalidParameters("classification needs degree >= 1")
    if q.degree != n:
        raise DegreeMismatch(f"degrees differ: {n} vs {q.degree}")
    a = [p.coeff(i) for i in range(n + 1)]
    b = [q.coeff(i) for i in range(n + 1)]
    if all(a[i] == b[n - i] for i in range(n + 1)):
        return PairRelation.RECIPROCAL
    if all(a[i] == -b[n - i] for i in range(n + 1)):
        return PairRelation.ANTI_RECIPROCAL
    even_ok = all(a[i] == -b[n - i] for i in range(0, n, 2))
    odd_ok = all(a[i] == b[n - i] for i in range(1, n + 1, 2))
    if even_ok and odd_ok:
        return PairRelation.SEMI_RECIPROCAL
    return PairRelation.NONE


# ---------------------------------------------------------------------------
# named families


def alpha_poly(n: int) -> IntPolynomial:
    """x^{n+1} - 2 x^n + x - 1, the minimal polynomial of the n-th point of
    the first limit family (degree n + 1); n >= 1."""
    if n < 1:
        raise InvalidParameters("alpha_poly needs n >= 1")
    return poly_from_terms([(n + 1, 1), (n, -2), (1, 1), (0, -1)])


def beta_poly(n: int) -> IntPolynomial:
    """(x^{n+2} - 2 x^{n+1} + 1) / (x - 1), the minimal polynomial of the
    n-th point of the second limit family (degree n + 1); n >= 1."""
    if n < 1:
        raise InvalidParameters("beta_poly needs n >= 1")
    num = poly_from_terms([(n + 2, 1), (n + 1, -2), (0, 1)])
    den = IntPolynomial.from_coeffs([-1, 1])
    return num.exact_div(den).monic_normalized()


def delta2_poly() -> IntPolynomial:
    """x^4 - x^3 - 2 x^2 + 1, whose dominant root (about 1.9052) is the
    smallest limit point of the Pisot set beyond the two main families."""
    return IntPolynomial.from_coeffs([1, 0, -2, -1, 1])


def plastic_poly() -> IntPolynomial:
    """x^3 - x - 1, minimal polynomial of the smallest Pisot number."""
    return IntPolynomial.from_coeffs([-1, -1, 0, 1])


_FAMILIES = ("club", "heart", "spade")


def family_poly(family: str, m: int, n: int, l: int | None = None) -> IntPolynomial:
    """Polynomial whose dominant root solves one of the three logarithmic
    equation families.

    * club:   x^{n+1} - m x^n + 1          (root meant in ]m-1, m[)
    * heart:  x^{n+1} - m x^n + x - m + l  (root meant in ]m-1, m[, 1 <= l < m)
    * spade:  x^{n+1} - m x^n - 1          (root meant in ]m, m+1[)

    Parameters: m >= 2, n >= 1; ``l`` only for heart.
    """
    if family not in _FAMILIES:
        raise InvalidParameters(f"unknown family {family!r}")
    if m < 2:
        raise InvalidParameters("family_poly needs m >= 2")
    if n < 1:
        raise InvalidParameters("family_poly needs n >= 1")
    if family == "heart":
        if l is None:
            raise InvalidParameters("heart needs the third parameter l")
        if not 1 <= l < m:
            raise InvalidParameters("heart needs 1 <= l < m")
        return poly_from_terms([(n + 1, 1), (n, -m), (1, 1), (0, l - m)])
    if l is not None:
        raise InvalidParameters(f"{family} takes no third parameter")
    if family == "club":
        return poly_from_terms([(n + 1, 1), (n, -m), (0, 1)])
    return poly_from_terms([(n + 1, 1), (n, -m), (0, -1)])


def strip_unit_root(p: IntPolynomial) -> tuple[IntPolynomial, int]:
    """Divide out every (x - 1) factor; returns (quotient, multiplicity)."""
    k = 0
    den = IntPolynomial.from_coeffs([-1, 1])
    while not p.is_zero and p(1) == 0:
        p = p.exact_div(den)
        k += 1
    return p, k


def rational_eval(p: IntPolynomial, num: int, den_pow2: int) -> Fraction:
    """Exact p(num / 2**den_pow2) as a Fraction."""
    return Fraction(p(Fraction(num, 1 << den_pow2)))
