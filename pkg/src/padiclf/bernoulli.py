"""Bernoulli numbers of arbitrary order, with two independent routes.

The production route expands the generating function t/(e^t - 1) (and its
r-th powers) as a :class:`~padiclf.rings.TruncSeries`; the cross-check route
uses the classical recurrence together with the binomial convolution that
the product of generating functions forces.  Values are memoized per order
and can be persisted to a line-oriented text cache (``r n num/den`` per
line, sorted by (r, n)).
"""

from __future__ import annotations

import os
import threading
from fractions import Fraction
from math import comb, factorial

from .rings import TruncSeries, exp_linear

__all__ = [
    "BernoulliTable",
    "bernoulli",
    "bernoulli_recurrence",
    "multi_bernoulli",
    "multi_bernoulli_recurrence",
    "multi_bernoulli_poly",
    "multi_bernoulli_poly_series",
    "base_series",
    "cache_records",
    "save_cache",
    "load_cache",
    "CACHE_FILENAME",
]

CACHE_FILENAME = "multi_bernoulli_cache.txt"


class BernoulliTable:
    """Memo table of order-r Bernoulli numbers: ``values[n]`` holds the value at n."""

    __slots__ = ("order", "values")

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("order must be a positive integer")
        self.order = order
        self.values: dict[int, Fraction] = {}


_TABLES: dict[int, BernoulliTable] = {}
_SERIES_ROWS: dict[int, list[Fraction]] = {}
_LOCK = threading.Lock()


def base_series(order: int) -> TruncSeries:
    """The series t/(e^t - 1), truncated to ``order`` coefficients.

    Built as the inverse of (e^t - 1)/t, whose coefficient j is 1/(j+1)!.
    """
    denom = TruncSeries([Fraction(1, factorial(j + 1)) for j in range(order)], order)
    return denom.inverse()


def _series_row(r: int, upto: int) -> list[Fraction]:
    """Coefficients of (t/(e^t-1))^r through t^upto, cached and growable."""
    row = _SERIES_ROWS.get(r)
    if row is not None and len(row) > upto:
        return row
    K = max(upto + 1, 2 * len(row) if row else 0, 8)
    series = base_series(K) ** r
    fresh = [Fraction(c) for c in series.coeffs]
    with _LOCK:
        current = _SERIES_ROWS.get(r)
        if current is None or len(current) < len(fresh):
            _SERIES_ROWS[r] = fresh
    return _SERIES_ROWS[r]


def _check_args(n: int, r: int):
    if not isinstance(n, int) or n < 0:
        raise ValueError("index n must be a nonnegative integer")
    if not isinstance(r, int) or r < 1:
        raise ValueError("order r must be a positive integer")


def multi_bernoulli(n: int, r: int) -> Fraction:
    """Order-r Bernoulli number: n! times the t^n coefficient of (t/(e^t-1))^r."""
    _check_args(n, r)
    table = _TABLES.get(r)
    if table is not None:
        v = table.values.get(n)
        if v is not None:
            return v
    row = _series_row(r, n)
    with _LOCK:
        table = _TABLES.setdefault(r, BernoulliTable(r))
        for k in range(len(row)):
            if k not in table.values:
                table.values[k] = row[k] * factorial(k)
    return _TABLES[r].values[n]


def bernoulli(n: int) -> Fraction:
    """Classical Bernoulli number B_n (first convention, B_1 = -1/2)."""
    return multi_bernoulli(n, 1)


_RECURRENCE: list[Fraction] = [Fraction(1)]
_REC_LOCK = threading.Lock()


def bernoulli_recurrence(n: int) -> Fraction:
    """B_n via the recurrence sum_{k<n} C(n+1, k) B_k = -(n+1) B_n shifted.

    Independent of the series route; used as its oracle.
    """
    _check_args(n, 1)
    if n < len(_RECURRENCE):
        return _RECURRENCE[n]
    with _REC_LOCK:
        while len(_RECURRENCE) <= n:
            m = len(_RECURRENCE)
            acc = Fraction(0)
            for k in range(m):
                acc += comb(m + 1, k) * _RECURRENCE[k]
            _RECURRENCE.append(-acc / (m + 1))
    return _RECURRENCE[n]


def multi_bernoulli_recurrence(n: int, r: int) -> Fraction:
    """Order-r value via binomial convolution of lower orders.

    Uses the identity forced by multiplying generating functions:
    the order-(r) coefficient is the binomial convolution of the
    order-(r-1) row with the classical row.
    """
    _check_args(n, r)
    if r == 1:
        return bernoulli_recurrence(n)
    return sum(
        (
            comb(n, k) * multi_bernoulli_recurrence(k, r - 1) * bernoulli_recurrence(n - k)
            for k in range(n + 1)
        ),
        Fraction(0),
    )


def multi_bernoulli_poly(n: int, r: int, x) -> Fraction:
    """Order-r Bernoulli polynomial value: sum_k C(n,k) B_k^(r) x^(n-k)."""
    _check_args(n, r)
    x = Fraction(x)
    acc = Fraction(0)
    xpow = Fraction(1)
    # iterate k from n down so x powers build up from x^0
    for k in range(n, -1, -1):
        acc += comb(n, k) * multi_bernoulli(k, r) * xpow
        xpow *= x
    return acc


def multi_bernoulli_poly_series(n: int, r: int, x) -> Fraction:
    """Oracle for the polynomial route: n! times coefficient n of (t/(e^t-1))^r e^(xt)."""
    _check_args(n, r)
    K = n + r + 1
    series = (base_series(K) ** r) * exp_linear(Fraction(x), K)
    return Fraction(series[n]) * factorial(n)


# -- persistent cache -------------------------------------------------------


def cache_records() -> list[tuple[int, int, Fraction]]:
    """Snapshot of all memoized values as (r, n, value), sorted by (r, n)."""
    with _LOCK:
        records = [
            (r, n, v)
            for r, table in _TABLES.items()
            for n, v in table.values.items()
        ]
    records.sort(key=lambda t: (t[0], t[1]))
    return records


def save_cache(directory: str) -> str:
    """Write every memoized value to ``directory``; returns the file path."""
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, CACHE_FILENAME)
    lines = [f"{r} {n} {v.numerator}/{v.denominator}\n" for r, n, v in cache_records()]
    with open(path, "w", encoding="ascii") as fh:
        fh.writelines(lines)
    return path


def load_cache(directory: str) -> int:
    """Merge a cache file written by :func:`save_cache`; returns records loaded."""
    path = os.path.join(directory, CACHE_FILENAME)
    if not os.path.exists(path):
        return 0
    count = 0
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            r_s, n_s, frac = line.split()
            r, n, value = int(r_s), int(n_s), Fraction(frac)
            with _LOCK:
                table = _TABLES.setdefault(r, BernoulliTable(r))
                table.values.setdefault(n, value)
            count += 1
    return count
