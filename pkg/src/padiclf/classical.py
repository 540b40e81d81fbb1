"""Character-weighted Bernoulli numbers and the classical multivariate L-values.

Exact objects first: ``gen_multi_bernoulli`` evaluates the closed f^(n-r)
character-weighted sum of order-r Bernoulli polynomial values, and
``gen_multi_bernoulli_series`` recomputes the same number from the defining
generating function, so the two can be compared by exact cyclotomic
equality.  ``multi_L_special`` assembles the special value at a negative
integer out of multiple-Hurwitz building blocks and checks it against the
closed form before returning.  ``multi_L_numeric`` is the only float in the
module: direct summation of the defining Dirichlet series in its region of
absolute convergence, used as a sanity oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .bernoulli import multi_bernoulli_poly
from .characters import DirichletCharacter
from .errors import RouteMismatchError
from .rings import CycloNumber, TruncSeries, exp_linear

__all__ = [
    "LValueReport",
    "composition_counts",
    "gen_multi_bernoulli",
    "gen_multi_bernoulli_series",
    "multi_hurwitz_special",
    "multi_L_special",
    "multi_L_numeric",
]


@dataclass(frozen=True)
class LValueReport:
    """A computed value plus how it was obtained and any cross-check residual."""

    params: dict
    value: object
    route: str
    residual: object | None = None


def composition_counts(r: int, lo: int, hi: int) -> dict[int, int]:
    """Number of r-tuples with entries in [lo, hi] adding up to each total.

    Computed by iterated convolution; cost r * (hi - lo + 1) * r * hi, tiny at
    the moduli this package targets.
    """
    if r < 1 or hi < lo:
        raise ValueError("need r >= 1 and a nonempty range")
    counts = {0: 1}
    for _ in range(r):
        nxt: dict[int, int] = {}
        for sigma, c in counts.items():
            for a in range(lo, hi + 1):
                nxt[sigma + a] = nxt.get(sigma + a, 0) + c
        counts = nxt
    return counts


def gen_multi_bernoulli(
    n: int, r: int, chi: DirichletCharacter, modulus: int | None = None
) -> CycloNumber:
    """Order-r generalized Bernoulli number attached to chi, closed form.

    Evaluates M^(n-r) * sum over r-tuples in [0, M-1] of
    B_n^(r)((a_1+...+a_r)/M) * chi(a_1+...+a_r), grouped by the tuple sum.
    M defaults to the character's modulus; any positive multiple gives the
    same value (modulus stability of the generating function).
    """
    f = chi.modulus
    M = modulus if modulus is not None else f
    if M % f != 0 or M < 1:
        raise ValueError("summation modulus must be a positive multiple of the character modulus")
    weights = composition_counts(r, 0, M - 1)
    acc = CycloNumber.zero(chi.zeta_order)
    for sigma, w in weights.items():
        cv = chi.value(sigma)
        if cv.is_zero():
            continue
        acc = acc + cv * (w * multi_bernoulli_poly(n, r, Fraction(sigma, M)))
    return acc * (Fraction(M) ** (n - r))


def gen_multi_bernoulli_series(
    n: int, r: int, chi: DirichletCharacter, modulus: int | None = None
) -> CycloNumber:
    """Generating-function route for the same number.

    n! times the t^n coefficient of
    sum over r-tuples in [1, M] of chi(sum) t^r e^(t*sum) / (e^(Mt)-1)^r,
    computed with truncated series over the character's cyclotomic field at
    order K = n + r + 1.
    """
    f = chi.modulus
    M = modulus if modulus is not None else f
    if M % f != 0 or M < 1:
        raise ValueError("summation modulus must be a positive multiple of the character modulus")
    K = n + r + 1
    weights = composition_counts(r, 1, M)
    # numerator: sum_sigma w(sigma) chi(sigma) e^(sigma t)
    num = TruncSeries([CycloNumber.zero(chi.zeta_order)], K)
    for sigma, w in weights.items():
        cv = chi.value(sigma)
        if cv.is_zero():
            continue
        num = num + exp_linear(Fraction(sigma), K) * (cv * w)
    # t^r/(e^(Mt)-1)^r equals the inverse r-th power of (e^(Mt)-1)/t
    g = TruncSeries(
        [Fraction(M) ** (j + 1) / factorial(j + 1) for j in range(K)], K
    )
    series = num * (g.inverse() ** r)
    coeff = series[n]
    if isinstance(coeff, (int, Fraction)):
        coeff = CycloNumber.from_rational(coeff, chi.zeta_order)
    return coeff * factorial(n)


def multi_hurwitz_special(n: int, r: int, a_vec, F: int) -> Fraction:
    """Special value at -n of the r-fold Hurwitz sum along residues a_vec mod F.

    Equals F^n (-1)^r n!/(n+r)! B_(n+r)^(r)((a_1+...+a_r)/F).  Each entry must
    satisfy 0 < a_i < F; the value depends on the entries only through their sum.
    """
    if n < 1 or r < 1:
        raise ValueError("n and r must be positive integers")
    a_vec = list(a_vec)
    if len(a_vec) != r:
        raise ValueError("a_vec must have exactly r entries")
    for a in a_vec:
        if not 0 < a < F:
            raise ValueError("residues must satisfy 0 < a_i < F")
    return _hurwitz_sigma(n, r, sum(a_vec), F)


def _hurwitz_sigma(n: int, r: int, sigma: int, F: int) -> Fraction:
    sign = -1 if r % 2 else 1
    return (
        Fraction(F) ** n
        * Fraction(sign * factorial(n), factorial(n + r))
        * multi_bernoulli_poly(n + r, r, Fraction(sigma, F))
    )


def multi_L_special(
    n: int, r: int, chi: DirichletCharacter, F: int | None = None
) -> CycloNumber:
    """Value of the r-fold Dirichlet L-function at -n, by two routes.

    Assembles the sum over r-tuples in [1, F] of chi(sum) times the Hurwitz
    special value, grouped by the tuple sum, and checks it exactly against
    (-1)^r n!/(n+r)! times the order-r generalized Bernoulli number at index
    n + r computed at modulus F.  Raises RouteMismatchError if the two
    disagree; returns the common value.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    f = chi.modulus
    F = F if F is not None else f
    if F % f != 0 or F < 1:
        raise ValueError("F must be a positive multiple of the character modulus")
    weights = composition_counts(r, 1, F)
    assembled = CycloNumber.zero(chi.zeta_order)
    for sigma, w in weights.items():
        cv = chi.value(sigma)
        if cv.is_zero():
            continue
        assembled = assembled + cv * (w * _hurwitz_sigma(n, r, sigma, F))
    sign = -1 if r % 2 else 1
    closed = gen_multi_bernoulli(n + r, r, chi, modulus=F) * Fraction(
        sign * factorial(n), factorial(n + r)
    )
    if assembled != closed:
        raise RouteMismatchError(
            f"special-value routes disagree at n={n}, r={r}, chi mod {f}, F={F}"
        )
    return assembled


def multi_L_numeric(s: float, r: int, chi: DirichletCharacter, tol: float = 1e-9) -> complex:
    """Direct summation of the r-fold Dirichlet series for real s > r.

    Sums c_r(k) chi(k) k^(-s) with c_r(k) = C(k+r-1, r-1) (the number of
    r-tuples of nonnegative integers adding to k), stopping once the
    integral-comparison tail bound K^(r-s) / ((s-r) (r-1)!) drops below tol.
    Character values are embedded as complex floats via exp(2*pi*i/m).
    """
    if r < 1:
        raise ValueError("r must be a positive integer")
    s = float(s)
    if not s > r:
        raise ValueError("the series converges only for s > r")
    if tol <= 0:
        raise ValueError("tol must be positive")
    f = chi.modulus
    table = [chi.value(a).to_complex() for a in range(f)]
    acc = 0j
    k = 0
    fact = factorial(r - 1)
    while True:
        k += 1
        cv = table[k % f]
        if cv != 0:
            acc += comb(k + r - 1, r - 1) * cv * k ** (-s)
        if k ** (r - s) / ((s - r) * fact) < tol:
            return acc
