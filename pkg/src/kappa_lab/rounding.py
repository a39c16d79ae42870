"""Outward-rounded transcendental bounds and fixed-point rendering of rationals."""
from __future__ import annotations

import math
import threading
from fractions import Fraction

import mpmath
from mpmath import libmp

DEFAULT_DIGITS = 50

# the interval context's precision is global state
_iv_lock = threading.Lock()


def _bits(digits: int) -> int:
    return math.ceil(digits * math.log2(10)) + 16


def _as_fraction(raw) -> Fraction:
    p, q = libmp.to_rational(raw)
    return Fraction(int(p), int(q))


def log_bounds(x, digits: int = DEFAULT_DIGITS) -> tuple[Fraction, Fraction]:
    """Rational ``(lo, hi)`` with ``lo <= log(x) <= hi``.

    Evaluated in mpmath interval arithmetic, then widened by one unit in the
    last requested digit so the enclosure never depends on the library's
    final rounding step.
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"log of non-positive {x}")
    iv = mpmath.iv
    with _iv_lock:
        old = iv.prec
        iv.prec = _bits(digits)
        try:
            enclosure = iv.log(iv.mpf(x.numerator) / iv.mpf(x.denominator))
            lo_raw, hi_raw = enclosure._mpi_
        finally:
            iv.prec = old
    slack = Fraction(1, 10**digits) * (1 + abs(_as_fraction(hi_raw)))
    return _as_fraction(lo_raw) - slack, _as_fraction(hi_raw) + slack


def decimal_string(q, places: int = DEFAULT_DIGITS) -> str:
    """Render a rational with exactly *places* decimals, rounding half to even."""
    q = Fraction(q)
    sign = "-" if q < 0 else ""
    num, den = abs(q.numerator), q.denominator
    scaled, rem = divmod(num * 10**places, den)
    if 2 * rem > den or (2 * rem == den and scaled % 2):
        scaled += 1
    if places == 0:
        return f"{sign}{scaled}"
    digits = str(scaled).rjust(places + 1, "0")
    if sign and not scaled:
        sign = ""
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def parse_decimal(text: str) -> Fraction:
    """Exact rational value of a decimal literal such as ``"0.19076"``."""
    return Fraction(text)


def format_rational(q) -> str:
    """``"p/q"`` (denominator always shown) for lossless interchange."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)
