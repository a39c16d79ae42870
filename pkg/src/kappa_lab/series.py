"""Exact rationals and truncated formal power series.

Every probability in the package is an :data:`ExactQ` (a
:class:`fractions.Fraction`, always stored in lowest terms with a positive
denominator).  :class:`PowerSeries` is a dense, immutable truncated series
whose coefficients are exact rationals; terms of degree above the
truncation order are discarded by every operation.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from fractions import Fraction

from .exceptions import UsageError

ExactQ = Fraction

DEFAULT_ORDER = 300

_ZERO = Fraction(0)
_ONE = Fraction(1)


class PowerSeries:
    """Truncated power series ``c_0 + c_1 x + ... + c_N x^N`` over ExactQ."""

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable, order: int | None = None):
        coeffs = [Fraction(c) for c in coefficients]
        if order is None:
            if not coeffs:
                raise UsageError("cannot infer truncation order from no coefficients")
            order = len(coeffs) - 1
        if order < 0:
            raise UsageError(f"truncation order must be >= 0, got {order}")
        if len(coeffs) > order + 1:
            if any(coeffs[order + 1:]):
                raise UsageError(
                    f"{len(coeffs)} coefficients given for truncation order {order}"
                )
            coeffs = coeffs[: order + 1]
        coeffs.extend([_ZERO] * (order + 1 - len(coeffs)))
        self._coeffs = tuple(coeffs)

    @classmethod
    def _wrap(cls, coeffs: Sequence[Fraction]) -> PowerSeries:
        obj = cls.__new__(cls)
        obj._coeffs = tuple(coeffs)
        return obj

    @classmethod
    def zero(cls, order: int) -> PowerSeries:
        return cls._wrap([_ZERO] * (order + 1))

    @classmethod
    def one(cls, order: int) -> PowerSeries:
        return cls.monomial(0, 1, order)

    @classmethod
    def monomial(cls, degree: int, weight, order: int) -> PowerSeries:
        coeffs = [_ZERO] * (order + 1)
        if degree <= order:
            coeffs[degree] = Fraction(weight)
        return cls._wrap(coeffs)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def __len__(self) -> int:
        return len(self._coeffs)

    def __getitem__(self, n: int) -> Fraction:
        return coefficient(self, n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __add__(self, other: PowerSeries) -> PowerSeries:
        _check_orders(self, other)
        return PowerSeries._wrap([a + b for a, b in zip(self._coeffs, other._coeffs)])

    def __sub__(self, other: PowerSeries) -> PowerSeries:
        _check_orders(self, other)
        return PowerSeries._wrap([a - b for a, b in zip(self._coeffs, other._coeffs)])

    def __neg__(self) -> PowerSeries:
        return PowerSeries._wrap([-a for a in self._coeffs])

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return series_mul(self, other)
        scalar = Fraction(other)
        return PowerSeries._wrap([a * scalar for a in self._coeffs])

    __rmul__ = __mul__

    def __repr__(self) -> str:
        terms = [f"{c}*x^{i}" for i, c in enumerate(self._coeffs) if c]
        return f"PowerSeries({' + '.join(terms) or '0'}; order={self.order})"


def _check_orders(a: PowerSeries, b: PowerSeries) -> None:
    if a.order != b.order:
        raise UsageError(f"truncation orders differ: {a.order} != {b.order}")


def series_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Cauchy product of two series sharing a truncation order."""
    _check_orders(a, b)
    order = a.order
    ca, cb = a.coefficients, b.coefficients
    # iterate over the sparser operand; generating-function factors are mostly zero
    sparse_a = [(i, c) for i, c in enumerate(ca) if c]
    sparse_b = [(j, c) for j, c in enumerate(cb) if c]
    if len(sparse_a) > len(sparse_b):
        sparse_a, sparse_b = sparse_b, sparse_a
    out = [_ZERO] * (order + 1)
    for i, x in sparse_a:
        for j, y in sparse_b:
            if i + j > order:
                break
            out[i + j] += x * y
    return PowerSeries._wrap(out)


def series_product_sparse(factors: Iterable[tuple[int, object]], order: int) -> PowerSeries:
    """Truncated product of ``(1 + w x^d)`` over ``(d, w)`` in *factors*.

    Factors with ``d > order`` cannot reach the retained terms and are skipped.
    """
    coeffs = [_ZERO] * (order + 1)
    coeffs[0] = _ONE
    top = 0  # highest degree that can be nonzero so far
    for d, w in factors:
        if d <= 0:
            raise UsageError(f"factor degree must be positive, got {d}")
        if d > order:
            continue
        w = Fraction(w)
        if not w:
            continue
        top = min(order, top + d)
        # descending so each factor is used at most once
        for n in range(top, d - 1, -1):
            c = coeffs[n - d]
            if c:
                coeffs[n] += w * c
    return PowerSeries._wrap(coeffs)


def series_exp(f: PowerSeries) -> PowerSeries:
    """``exp(f)`` for a series with zero constant term.

    Uses ``g' = f' g``, i.e. ``n g_n = sum_{j=1}^n j f_j g_{n-j}``.
    """
    if f.coefficients[0]:
        raise UsageError("series_exp needs a zero constant term")
    order = f.order
    weighted = [(j, j * c) for j, c in enumerate(f.coefficients) if j and c]
    g = [_ZERO] * (order + 1)
    g[0] = _ONE
    for n in range(1, order + 1):
        acc = _ZERO
        for j, jf in weighted:
            if j > n:
                break
            gn = g[n - j]
            if gn:
                acc += jf * gn
        g[n] = acc / n
    return PowerSeries._wrap(g)


def coefficient(f: PowerSeries, n: int) -> Fraction:
    """Exact coefficient of ``x^n``."""
    if n < 0 or n > f.order:
        raise UsageError(f"degree {n} outside 0..{f.order}")
    return f.coefficients[n]
