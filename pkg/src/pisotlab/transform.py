"""Iterated fractional-part transform on powers of theta.

Starting from x = theta^n, one step maps x to theta^n * (x - [x]) where [x]
is the nearest integer.  Every iterate stays inside Z[theta], so the whole
table is exact; the recorded integer parts u^k_n are the observables that
the rest of the package studies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ExactHalfInteger,
    InvalidParameters,
    PisotLabError,
    PrecisionExhausted,
)
from .field import FieldElement, NumberField
from .intervals import RatInterval


@dataclass(frozen=True)
class IterateCell:
    level: int
    n: int
    element: FieldElement          # the iterate I^level(theta^n) itself
    integer_part: int              # [I^level(theta^n)]
    magnitude: RatInterval         # enclosure of |I^level - integer_part|
    bits: int                      # theta precision that certified the cell
    exact_zero: bool               # fractional part is exactly 0


def iterate_once(
    field: NumberField, n: int, x: FieldElement
) -> tuple[FieldElement, int]:
    """One transform step at exponent n: returns (theta^n * (x - [x]), [x])."""
    u = field.nearest_integer(x)
    nxt = field.element_mul(field.theta_power(n), x.shift_constant(-u))
    return nxt, u


class IterateTable:
    """Exact iterate data for levels 0..k_max and exponents n_lo..n_hi.

    Columns that hit a rounding failure (exact half-integer, precision cap)
    stop early; the failure is recorded instead of the missing cells.
    """

    def __init__(self, field: NumberField, k_max: int, n_lo: int, n_hi: int):
        self.field = field
        self.k_max = k_max
        self.n_lo = n_lo
        self.n_hi = n_hi
        self._cells: dict[tuple[int, int], IterateCell] = {}
        self.failures: dict[tuple[int, int], str] = {}

    def _store(self, cell: IterateCell) -> None:
        self._cells[(cell.level, cell.n)] = cell

    def has(self, k: int, n: int) -> bool:
        return (k, n) in self._cells

    def cell(self, k: int, n: int) -> IterateCell:
        try:
            return self._cells[(k, n)]
        except KeyError:
            if (k, n) in self.failures:
                raise PisotLabError(
                    f"cell (level {k}, n {n}) unavailable: {self.failures[(k, n)]}"
                ) from None
            raise InvalidParameters(f"cell (level {k}, n {n}) outside the table")

    def u(self, k: int, n: int) -> int:
        """The integer part u^k_n."""
        return self.cell(k, n).integer_part

    def u_sequence(self, k: int) -> tuple[int, list[int]]:
        """(n_lo, [u^k_n ...]) over the contiguous run available at level k."""
        out = []
        n = self.n_lo
        while n <= self.n_hi and self.has(k, n):
            out.append(self._cells[(k, n)].integer_part)
            n += 1
        return self.n_lo, out

    def cells_at_level(self, k: int) -> list[IterateCell]:
        return [
            self._cells[(k, n)]
            for n in range(self.n_lo, self.n_hi + 1)
            if (k, n) in self._cells
        ]


def build_table(
    field: NumberField, k_max: int, n_lo: int = 1, n_hi: int = 60
) -> IterateTable:
    """Compute iterates column by column; exact throughout."""
    if k_max < 0 or n_lo < 1 or n_hi < n_lo:
        raise InvalidParameters("need k_max >= 0 and 1 <= n_lo <= n_hi")
    table = IterateTable(field, k_max, n_lo, n_hi)
    for n in range(n_lo, n_hi + 1):
        x = field.theta_power(n)
        for k in range(k_max + 1):
            try:
                u, enclosure, bits = field.round_with_enclosure(x)
            except (ExactHalfInteger, PrecisionExhausted) as exc:
                table.failures[(k, n)] = f"{type(exc).__name__}: {exc}"
                break
            diff = x.shift_constant(-u)
            table._store(
                IterateCell(
                    level=k,
                    n=n,
                    element=x,
                    integer_part=u,
                    magnitude=enclosure.shift(-u).abs_(),
                    bits=bits,
                    exact_zero=diff.is_zero,
                )
            )
            if k < k_max:
                x = field.element_mul(field.theta_power(n), diff)
    return table


# -- certified magnitude rows -------------------------------------------------


class MagEntry:
    """One refinable magnitude |I^k(theta^n) - u^k_n|."""

    __slots__ = ("n", "interval", "bits", "exact_zero", "_diff")

    def __init__(self, cell: IterateCell):
        self.n = cell.n
        self.interval = cell.magnitude
        self.bits = max(cell.bits, 8)
        self.exact_zero = cell.exact_zero
        self._diff = cell.element.shift_constant(-cell.integer_part)

    def refine(self, field: NumberField) -> None:
        if self.exact_zero:
            return
        self.bits *= 2
        self.interval = field.eval_interval(self._diff, self.bits).abs_()


@dataclass(frozen=True)
class MagnitudeRow:
    level: int
    entries: tuple[MagEntry, ...]
    # per adjacent pair (n, n+1): 'lt', 'gt', 'eq', or None when the pair
    # could not be separated within the bit cap
    pair_order: tuple[str | None, ...]

    def incomparable_pairs(self) -> list[tuple[int, int]]:
        return [
            (self.entries[i].n, self.entries[i + 1].n)
            for i, s in enumerate(self.pair_order)
            if s is None
        ]


def _pair_status(a: MagEntry, b: MagEntry) -> str | None:
    if a.exact_zero and b.exact_zero:
        return "eq"
    if a._diff == b._diff or a._diff == -b._diff:
        return "eq"  # identical absolute value, certified structurally
    if a.exact_zero:
        return "lt" if b.interval.lo > 0 else None
    if b.exact_zero:
        return "gt" if a.interval.lo > 0 else None
    if a.interval.hi < b.interval.lo:
        return "lt"
    if b.interval.hi < a.interval.lo:
        return "gt"
    return None


def frac_magnitudes(
    table: IterateTable, k: int, *, comparator_cap_bits: int = 1 << 16
) -> MagnitudeRow:
    """Magnitude enclosures for level k, refined until every adjacent pair is
    ordered (or certified equal); pairs still ambiguous at the cap are left
    as None in pair_order rather than raised here."""
    cells = table.cells_at_level(k)
    if not cells:
        raise InvalidParameters(f"no cells available at level {k}")
    entries = [MagEntry(c) for c in cells]
    order: list[str | None] = []
    for a, b in zip(entries, entries[1:]):
        status = _pair_status(a, b)
        while status is None and max(a.bits, b.bits) < comparator_cap_bits:
            a.refine(table.field)
            b.refine(table.field)
            status = _pair_status(a, b)
        order.append(status)
    return MagnitudeRow(level=k, entries=tuple(entries), pair_order=tuple(order))
