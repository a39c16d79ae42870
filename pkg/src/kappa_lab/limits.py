"""Certified enclosures of the limit constants of n^2 kappa(A_n).

The four parity-split series::

    A1 = sum_{d even} kappa_O(S_d) + sum_{d odd} e(d)
    A2 = sum_{d even} e(d)         + sum_{d odd} kappa_O(S_d)
    B1 = sum_{d odd} Q(S_d)
    B2 = sum_{d even} Q(S_d)

where ``e(d)`` is the even pair weight (kappa_E(S_d) for d >= 2 and 4 for
d <= 1, see :func:`kappa_lab.probabilities.kappa_even_weight`).  Along even n,
n^2 kappa(A_n) tends to A1 - 2 B1; along odd n, to A2 - 2 B2.

An enclosure of a series truncated after D terms is ``[partial, partial + C/D]``
where ``C/d^2`` bounds every term beyond D.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .bounds import c_kappa, c_split
from .exceptions import UsageError
from .probabilities import kappa_alt, kappa_even, kappa_even_weight, kappa_odd, q_split
from .rounding import DEFAULT_DIGITS, decimal_string, format_rational
from .series import DEFAULT_ORDER


@dataclass(frozen=True)
class Enclosure:
    lo: Fraction
    hi: Fraction
    terms_used: int
    tail_constant: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains(self, other: Enclosure) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def widened(self, by) -> Enclosure:
        return Enclosure(self.lo - by, self.hi + by, self.terms_used, self.tail_constant)

    def to_dict(self, name: str, digits: int = DEFAULT_DIGITS) -> dict:
        return {
            "constant": name,
            "D": self.terms_used,
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
            "width": format_rational(self.width),
            "decimal_mid": decimal_string(self.mid, digits),
            "precision": digits,
        }


@dataclass(frozen=True)
class PartialConstants:
    A1: Fraction
    A2: Fraction
    B1: Fraction
    B2: Fraction
    D: int


def _check_depth(D: int, order: int, lowest: int = 0) -> None:
    if D < lowest:
        raise UsageError(f"D must be >= {lowest}, got {D}")
    if D > order:
        raise UsageError(f"D = {D} exceeds the truncation order {order}")


def partial_constants(D: int, order: int = DEFAULT_ORDER) -> PartialConstants:
    """Exact partial sums over 0 <= d <= D."""
    _check_depth(D, order)
    a1 = a2 = b1 = b2 = Fraction(0)
    for d in range(D + 1):
        e, o, q = kappa_even_weight(d), kappa_odd(d), q_split(d)
        if d % 2:
            a1 += e
            a2 += o
            b1 += q
        else:
            a1 += o
            a2 += e
            b2 += q
    return PartialConstants(a1, a2, b1, b2, D)


def tail_constants() -> dict[str, Fraction]:
    """Uniform constants C with term_d <= C / d^2."""
    ck4 = 4 * c_kappa()
    c2 = c_split()
    return {"A1": ck4, "A2": ck4, "B1": c2, "B2": c2}


def enclose_constants(D: int = DEFAULT_ORDER, order: int = DEFAULT_ORDER) -> dict[str, Enclosure]:
    """Enclosures of A1, A2, B1, B2 from D terms plus the tail majorant C/D."""
    _check_depth(D, order, lowest=2)
    p = partial_constants(D, order)
    tails = tail_constants()
    out = {}
    for name in ("A1", "A2", "B1", "B2"):
        partial = getattr(p, name)
        out[name] = Enclosure(partial, partial + tails[name] / D, D, tails[name])
    return out


def alternating_limits(D: int = DEFAULT_ORDER, order: int = DEFAULT_ORDER) -> dict[str, Enclosure]:
    """Enclosures of the even-n limit A1 - 2 B1 and odd-n limit A2 - 2 B2."""
    enc = enclose_constants(D, order)
    out = {}
    for parity, a, b in (("even", "A1", "B1"), ("odd", "A2", "B2")):
        A, B = enc[a], enc[b]
        out[parity] = Enclosure(
            A.lo - 2 * B.hi, A.hi - 2 * B.lo, D, A.tail_constant + 2 * B.tail_constant
        )
    return out


def finite_n_allowance(n: int) -> Fraction:
    """Coarse allowance (4 C_kappa + 2 C_2) / ceil(n/4) between n^2 kappa(A_n) and its limit."""
    return (4 * c_kappa() + 2 * c_split()) / ceil(n / 4)


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    parity: str
    value_n2_kappaE: Fraction
    value_n2_Q: Fraction
    value_n2_kappaAlt: Fraction
    enclosure_mid_distance: Fraction


def convergence_table(
    n_from: int, n_to: int, D: int | None = None, order: int = DEFAULT_ORDER
) -> list[ConvergenceRow]:
    """n^2 kappa_E, n^2 Q and n^2 kappa(A_n) per n, with the distance to the
    midpoint of the matching-parity limit enclosure (D defaults to *order*)."""
    if n_to > order:
        raise UsageError(f"n_to = {n_to} exceeds the truncation order {order}")
    if n_from > n_to:
        raise UsageError(f"empty range {n_from}..{n_to}")
    limits = alternating_limits(order if D is None else D, order)
    rows = []
    for n in range(max(n_from, 0), n_to + 1):
        parity = "odd" if n % 2 else "even"
        sq = n * n
        alt = sq * kappa_alt(n)
        rows.append(
            ConvergenceRow(
                n,
                parity,
                sq * kappa_even(n),
                sq * q_split(n),
                alt,
                abs(alt - limits[parity].mid),
            )
        )
    return rows
