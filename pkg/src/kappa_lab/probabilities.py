"""Conjugacy probabilities of S_n and A_n, computed exactly.

Two independent routes produce every sequence:

* ``"enumeration"`` walks every partition of n and sums class weights
  (the method of record for n <= 60);
* ``"generating_function"`` reads coefficients off truncated products
  (the method of record beyond that, up to the configured order).

Boundary conventions for n in {0, 1}: kappa = kappa_E = Q = 1, kappa_O = 0,
kappa(A_n) = 1.  The recursions of the inequality and limit machinery need a
different quantity at those sizes, the *pair weight*
``4 * P(both even and conjugate)``, exposed as :func:`kappa_even_weight`.  It
agrees with :func:`kappa_even` for n >= 2 and equals 4 for n <= 1.
"""
from __future__ import annotations

import logging
import sys
import threading
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .exceptions import UsageError
from .series import (
    DEFAULT_ORDER,
    PowerSeries,
    coefficient,
    series_exp,
    series_mul,
    series_product_sparse,
)

logger = logging.getLogger(__name__)

ENUMERATION_LIMIT = 60

ENUMERATION = "enumeration"
GENERATING_FUNCTION = "generating_function"
BRUTE_FORCE = "brute_force"
METHODS = (ENUMERATION, GENERATING_FUNCTION, BRUTE_FORCE)

QUANTITIES = ("kappa_sym", "kappa_even", "kappa_odd", "q_split", "s_below", "kappa_alt")


# ---------------------------------------------------------------------------
# enumeration route


@dataclass(frozen=True)
class _ClassSums:
    """Per-n sums over partitions, all exact."""

    n: int
    kappa: Fraction          # sum z^-2
    even: Fraction           # sum over even lambda of z^-2
    odd: Fraction            # sum over odd lambda of z^-2
    split: Fraction          # sum over split lambda of z^-2
    alt_direct: Fraction     # sum over even lambda of (2 if split else 4) z^-2
    total: Fraction          # sum z^-1
    even_total: Fraction     # sum over even lambda of z^-1
    below: tuple[Fraction, ...]  # below[k] = sum of z^-1 over lambda with largest part < k


def _sweep(n_max: int) -> list[dict]:
    """Tally (z, odd?, split?, largest part) over all partitions of every n <= n_max.

    Parts are appended in non-increasing order, so each node of the search
    tree is itself a partition of its running total and is visited exactly once.
    """
    tallies = [defaultdict(int) for _ in range(n_max + 1)]
    tallies[0][(1, 0, True, 0)] = 1

    def extend(total, last, mult, z, parts, split, top):
        room = n_max - total
        for d in range(min(last, room), 0, -1):
            if d == last:
                m = mult + 1
                zz = z * d * m
                sp = False
            else:
                m = 1
                zz = z * d
                sp = split and d & 1 == 1
            t = total + d
            tp = top or d
            tallies[t][(zz, (t - parts - 1) & 1, sp, tp)] += 1
            if t < n_max:
                extend(t, d, m, zz, parts + 1, sp, tp)

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, n_max + 100))
    try:
        extend(0, n_max + 1, 0, 1, 0, True, 0)
    finally:
        sys.setrecursionlimit(limit)
    return tallies


def _summarize(n: int, tally: dict) -> _ClassSums:
    big = factorial(n)
    sq = big * big
    kappa = even = odd = split = alt = 0
    total = even_total = 0
    by_top = defaultdict(int)
    for (z, odd_flag, split_flag, top), count in tally.items():
        size = big // z
        w1 = count * size
        w2 = w1 * size
        kappa += w2
        total += w1
        by_top[top] += w1
        if odd_flag:
            odd += w2
        else:
            even += w2
            even_total += w1
            alt += (2 if split_flag else 4) * w2
            if split_flag:
                split += w2
    below = [Fraction(0)]
    running = 0
    for k in range(1, n + 2):
        running += by_top.get(k - 1, 0)
        below.append(Fraction(running, big))
    return _ClassSums(
        n=n,
        kappa=Fraction(kappa, sq),
        even=Fraction(even, sq),
        odd=Fraction(odd, sq),
        split=Fraction(split, sq),
        alt_direct=Fraction(alt, sq),
        total=Fraction(total, big),
        even_total=Fraction(even_total, big),
        below=tuple(below),
    )


_lock = threading.RLock()
_class_sums: dict[int, _ClassSums] = {}


def class_sums(n: int) -> _ClassSums:
    """Enumeration sums for partitions of *n* (cached, write-once)."""
    if n < 0:
        raise UsageError(f"n must be >= 0, got {n}")
    with _lock:
        if n not in _class_sums:
            known = max(_class_sums, default=0)
            # grow geometrically so walking n upwards costs O(1) sweeps
            top = max(n, min(2 * known, ENUMERATION_LIMIT))
            logger.info("enumerating partitions of all sizes up to %d", top)
            tallies = _sweep(top)
            for m, tally in enumerate(tallies):
                _class_sums.setdefault(m, _summarize(m, tally))
        return _class_sums[n]


# ---------------------------------------------------------------------------
# generating-function route


@dataclass(frozen=True)
class _SeriesTables:
    order: int
    kappa: PowerSeries   # sum_n (sum_lambda z^-2) x^n
    signed: PowerSeries  # same with each class weighted by its sign
    split: PowerSeries   # prod over odd d of (1 + x^d / d^2)

    def even(self, n: int) -> Fraction:
        return (self.kappa[n] + self.signed[n]) / 2

    def odd(self, n: int) -> Fraction:
        return (self.kappa[n] - self.signed[n]) / 2


def _part_factor(d: int, order: int, signed: bool) -> PowerSeries:
    """sum_m x^{dm} / (d^m m!)^2, optionally times the sign (-1)^{(d-1)m}."""
    coeffs = [Fraction(0)] * (order + 1)
    m = 0
    while d * m <= order:
        w = Fraction(1, (d**m * factorial(m)) ** 2)
        if signed and (d - 1) * m % 2:
            w = -w
        coeffs[d * m] = w
        m += 1
    return PowerSeries(coeffs, order=order)


_series_tables: dict[int, _SeriesTables] = {}
_below_series: dict[tuple[int, int, bool], PowerSeries] = {}


def series_tables(order: int = DEFAULT_ORDER) -> _SeriesTables:
    """Generating functions truncated at *order* (cached, write-once)."""
    with _lock:
        cached = [t for o, t in _series_tables.items() if o >= order]
        if cached:
            return min(cached, key=lambda t: t.order)
        logger.info("building generating functions to order %d", order)
        kappa = signed = PowerSeries.one(order)
        for d in range(1, order + 1):
            kappa = series_mul(kappa, _part_factor(d, order, signed=False))
            signed = series_mul(signed, _part_factor(d, order, signed=True))
        split = series_product_sparse(
            ((d, Fraction(1, d * d)) for d in range(1, order + 1, 2)), order
        )
        tables = _SeriesTables(order, kappa, signed, split)
        _series_tables[order] = tables
        return tables


def below_series(k: int, order: int, signed: bool = False) -> PowerSeries:
    """exp(sum_{d<k} x^d/d): coefficient n is s_k(n).

    With *signed*, each d-cycle carries its sign (-1)^(d-1), so coefficient n
    is P(cycles < k and even) - P(cycles < k and odd).
    """
    with _lock:
        for (kk, o, sg), s in _below_series.items():
            if kk == k and sg == signed and o >= order:
                return s
        coeffs = [Fraction(0)] * (order + 1)
        for d in range(1, min(k, order + 1)):
            coeffs[d] = Fraction(-1 if signed and d % 2 == 0 else 1, d)
        s = series_exp(PowerSeries(coeffs, order=order))
        _below_series[(k, order, signed)] = s
        return s


def clear_caches() -> None:
    """Drop every memoized table (used to time computations from a cold start)."""
    with _lock:
        _class_sums.clear()
        _series_tables.clear()
        _below_series.clear()


def _tables_for(n: int) -> _SeriesTables:
    return series_tables(max(n, DEFAULT_ORDER))


# ---------------------------------------------------------------------------
# public sequences


def _route(n: int, method: str | None) -> str:
    if n < 0:
        raise UsageError(f"n must be >= 0, got {n}")
    if method is None:
        return ENUMERATION if n <= ENUMERATION_LIMIT else GENERATING_FUNCTION
    if method not in (ENUMERATION, GENERATING_FUNCTION):
        raise UsageError(f"unknown method {method!r}")
    return method


def kappa_sym(n: int, method: str | None = None) -> Fraction:
    """Probability that two uniform elements of S_n are conjugate."""
    if _route(n, method) == ENUMERATION:
        return class_sums(n).kappa
    return _tables_for(n).kappa[n]


def _even_sum(n: int, method: str | None) -> Fraction:
    if _route(n, method) == ENUMERATION:
        return class_sums(n).even
    return _tables_for(n).even(n)


def _odd_sum(n: int, method: str | None) -> Fraction:
    if _route(n, method) == ENUMERATION:
        return class_sums(n).odd
    return _tables_for(n).odd(n)


def kappa_even(n: int, method: str | None = None) -> Fraction:
    """Probability of conjugacy given both permutations are even."""
    if n < 2:
        _route(n, method)
        return Fraction(1)
    # P(both even) = 1/4 once n >= 2
    return 4 * _even_sum(n, method)


def kappa_odd(n: int, method: str | None = None) -> Fraction:
    """Probability of conjugacy given both permutations are odd."""
    if n < 2:
        _route(n, method)
        return Fraction(0)
    return 4 * _odd_sum(n, method)


def kappa_even_weight(n: int, method: str | None = None) -> Fraction:
    """``4 * P(both even and conjugate)``; the term the recursions actually use."""
    return 4 * _even_sum(n, method)


def q_split(n: int, method: str | None = None) -> Fraction:
    """Probability both permutations share a cycle type of distinct odd parts."""
    if _route(n, method) == ENUMERATION:
        return class_sums(n).split
    return _tables_for(n).split[n]


def s_below(k: int, n: int, method: str | None = None) -> Fraction:
    """Probability that a uniform element of S_n has every cycle shorter than k."""
    if k < 1:
        raise UsageError(f"k must be >= 1, got {k}")
    if _route(n, method) == ENUMERATION:
        below = class_sums(n).below
        return below[min(k, n + 1)]
    return coefficient(below_series(min(k, n + 1), max(n, DEFAULT_ORDER)), n)


def s_below_even(k: int, n: int) -> Fraction:
    """P(every cycle shorter than k | even) for a uniform element of S_n."""
    if k < 1:
        raise UsageError(f"k must be >= 1, got {k}")
    if n < 2:
        return s_below(k, n, GENERATING_FUNCTION)
    k = min(k, n + 1)
    order = max(n, DEFAULT_ORDER)
    # P(even) = 1/2, so the conditional is twice the even part (g + h) / 2
    return below_series(k, order)[n] + below_series(k, order, signed=True)[n]


def kappa_alt(n: int, method: str | None = None) -> Fraction:
    """Probability that two uniform elements of A_n are conjugate in A_n."""
    if n < 2:
        _route(n, method)
        return Fraction(1)
    return kappa_even(n, method) - 2 * q_split(n, method)


def kappa_alt_direct(n: int) -> Fraction:
    """kappa(A_n) summed class by class: split S_n-classes count half."""
    if n < 2:
        raise UsageError(f"kappa_alt_direct needs n >= 2, got {n}")
    return class_sums(n).alt_direct


def compute(quantity: str, n: int, method: str | None = None, k: int | None = None) -> Fraction:
    """Dispatch by quantity name."""
    if quantity == "s_below":
        if k is None:
            raise UsageError("s_below needs k")
        return s_below(k, n, method)
    funcs = {
        "kappa_sym": kappa_sym,
        "kappa_even": kappa_even,
        "kappa_odd": kappa_odd,
        "q_split": q_split,
        "kappa_alt": kappa_alt,
    }
    if quantity not in funcs:
        raise UsageError(f"unknown quantity {quantity!r}; expected one of {QUANTITIES}")
    return funcs[quantity](n, method)


def method_of_record(n: int) -> str:
    return _route(n, None)


# ---------------------------------------------------------------------------
# tables


def quantity_label(quantity: str, k: int | None = None) -> str:
    return f"s_below({k})" if quantity == "s_below" else quantity


@dataclass
class ProbTable:
    """Values of one quantity, keyed by n, all produced by one method."""

    quantity: str
    method: str
    values: dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise UsageError(f"unknown method {self.method!r}")

    def add(self, n: int, value: Fraction) -> None:
        if n in self.values and self.values[n] != value:
            raise ValueError(f"{self.quantity}[{n}] already set to a different value")
        if not 0 <= value <= 1:
            raise ValueError(f"{self.quantity}[{n}] = {value} is not a probability")
        self.values[n] = value


def prob_table(quantity: str, ns, method: str | None = None, k: int | None = None) -> list[ProbTable]:
    """Tabulate *quantity* over *ns*; one table per method actually used."""
    tables: dict[str, ProbTable] = {}
    label = quantity_label(quantity, k)
    for n in ns:
        used = _route(n, method)
        table = tables.setdefault(used, ProbTable(label, used))
        table.add(n, compute(quantity, n, used, k))
    return list(tables.values())
