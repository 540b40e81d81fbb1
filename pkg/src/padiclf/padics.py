"""Finite-precision p-adic arithmetic with conservative precision tracking.

A :class:`PAdicNumber` is ``unit * p**valuation`` known modulo
``p**(valuation + digits)``; the guaranteed absolute precision
(``abs_prec = valuation + digits``) is carried through every operation and
never overstated: addition takes the minimum of the operands' absolute
precisions, multiplication and division keep the minimum relative
precision.  Exact int/Fraction operands mix in without adding uncertainty.
The only exact value is the exact zero (infinite precision); a zero that
arises from cancellation remembers the precision at which it is
indistinguishable from zero.

Module functions supply the standard analytic toolbox on the units:
Teichmuller lifts, the projection <a> = a/omega(a) onto 1 + qZ_p, the
Iwasawa logarithm/exponential on their convergence domains with proven
per-term valuation stopping rules, powers with p-adic exponents, and
binomial coefficients with p-adic arguments.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from math import factorial, gcd

__all__ = [
    "PAdicNumber",
    "q_of",
    "teichmuller",
    "angle_bracket",
    "padic_log",
    "padic_exp",
    "padic_pow",
    "padic_binomial",
    "rational_binomial",
]


def q_of(p: int) -> int:
    """The conductor of the Teichmuller character: p for odd p, 4 for p = 2."""
    return 4 if p == 2 else p


def _vp_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero integer")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _vp_fraction(x: Fraction, p: int) -> int:
    return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)


class PAdicNumber:
    """A p-adic number known to finite absolute precision.

    Nonzero: ``unit`` in [1, p**digits) coprime to p, ``valuation`` an int;
    the value is unit * p**valuation + O(p**(valuation + digits)).
    Cancellation zero: ``unit == 0`` with ``valuation`` recording the
    absolute precision (the value is O(p**valuation)).  Exact zero:
    ``unit == 0`` and infinite ``valuation``.
    """

    __slots__ = ("p", "valuation", "unit", "digits")

    def __init__(self, p: int, valuation, unit: int, digits: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "digits", digits)

    def __setattr__(self, name, value):
        raise AttributeError("PAdicNumber is immutable")

    # -- constructors -----------------------------------------------------------

    @classmethod
    def _normalized(cls, p: int, valuation: int, raw: int, digits: int) -> "PAdicNumber":
        """Build from raw (possibly p-divisible) value * p**valuation known mod p**(valuation+digits)."""
        if digits <= 0:
            return cls.zero(p, abs_prec=valuation + digits)
        modulus = p**digits
        raw %= modulus
        if raw == 0:
            return cls.zero(p, abs_prec=valuation + digits)
        shift = _vp_int(raw, p)
        if shift >= digits:
            return cls.zero(p, abs_prec=valuation + digits)
        if shift:
            valuation += shift
            digits -= shift
            raw = (raw // p**shift) % (p**digits)
        return cls(p, valuation, raw, digits)

    @classmethod
    def zero(cls, p: int, abs_prec=None) -> "PAdicNumber":
        """Exact zero by default; with abs_prec, a zero known mod p**abs_prec."""
        if abs_prec is None:
            return cls(p, math.inf, 0, 0)
        return cls(p, abs_prec, 0, 0)

    @classmethod
    def from_rational(cls, x, p: int, digits: int) -> "PAdicNumber":
        """Embed an exact rational with ``digits`` digits of relative precision."""
        if digits < 1:
            raise ValueError("need at least one digit of precision")
        x = Fraction(x)
        if x == 0:
            return cls.zero(p)
        v = _vp_fraction(x, p)
        unit_frac = x / Fraction(p) ** v
        modulus = p**digits
        num = unit_frac.numerator % modulus
        den_inv = pow(unit_frac.denominator, -1, modulus)
        return cls(p, v, (num * den_inv) % modulus, digits)

    # -- structure ---------------------------------------------------------------

    @property
    def abs_prec(self):
        """Guaranteed absolute precision: the value is known mod p**abs_prec."""
        if self.unit == 0:
            return self.valuation
        return self.valuation + self.digits

    def is_zero(self) -> bool:
        """True when indistinguishable from zero at the guaranteed precision."""
        return self.unit == 0

    def is_exact_zero(self) -> bool:
        return self.unit == 0 and self.valuation == math.inf

    def is_unit(self) -> bool:
        return self.unit != 0 and self.valuation == 0

    def residue(self, k: int | None = None) -> int:
        """The value mod p**k (k defaults to abs_prec; must not exceed it)."""
        if k is None:
            if self.unit == 0:
                raise ValueError("zero has no canonical residue without a precision")
            k = self.abs_prec
        if k > self.abs_prec:
            raise ValueError("requested residue beyond the guaranteed precision")
        if self.unit == 0 or self.valuation >= k:
            return 0
        if self.valuation < 0:
            raise ValueError("negative valuation: not a p-adic integer")
        return (self.unit * self.p**self.valuation) % self.p**k

    def truncate_abs(self, abs_prec: int) -> "PAdicNumber":
        """Forget precision beyond p**abs_prec (conservative restatement)."""
        if abs_prec >= self.abs_prec:
            if abs_prec > self.abs_prec:
                raise ValueError("cannot increase precision by truncation")
            return self
        if self.unit == 0 or self.valuation >= abs_prec:
            return PAdicNumber.zero(self.p, abs_prec=abs_prec)
        return PAdicNumber._normalized(
            self.p, self.valuation, self.unit, abs_prec - self.valuation
        )

    # -- arithmetic -----------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PAdicNumber):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        if isinstance(other, (int, Fraction)):
            return Fraction(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, Fraction):
            return self._add_exact(o)
        a, b = self, o
        if a.is_exact_zero():
            return b
        if b.is_exact_zero():
            return a
        A = min(a.abs_prec, b.abs_prec)
        v0 = min(a.valuation, b.valuation)
        if v0 >= A:
            return PAdicNumber.zero(self.p, abs_prec=A)
        modulus = self.p ** (A - v0)
        total = 0
        for x in (a, b):
            if x.unit:
                total += x.unit * self.p ** (x.valuation - v0)
        return PAdicNumber._normalized(self.p, v0, total % modulus, A - v0)

    __radd__ = __add__

    def _add_exact(self, c: Fraction) -> "PAdicNumber":
        if c == 0:
            return self
        if self.is_exact_zero():
            raise ValueError("adding an exact nonzero rational to the exact zero is not representable")
        A = self.abs_prec
        vc = _vp_fraction(c, self.p)
        v0 = min(self.valuation if self.unit else A, vc)
        if v0 >= A:
            return PAdicNumber.zero(self.p, abs_prec=A)
        digits = A - v0
        modulus = self.p**digits
        total = 0
        if self.unit:
            total += self.unit * self.p ** (self.valuation - v0)
        scaled = c / Fraction(self.p) ** v0
        total += scaled.numerator * pow(scaled.denominator, -1, modulus)
        return PAdicNumber._normalized(self.p, v0, total % modulus, digits)

    def __neg__(self):
        if self.unit == 0:
            return self
        return PAdicNumber(self.p, self.valuation, (-self.unit) % self.p**self.digits, self.digits)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, Fraction):
            return self._add_exact(-o)
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, Fraction):
            return self._mul_exact(o)
        a, b = self, o
        if a.unit == 0 or b.unit == 0:
            if a.is_exact_zero() or b.is_exact_zero():
                return PAdicNumber.zero(self.p)
            # O(p^Aa) * (u p^vb + O(p^Ab)) is O(p^(Aa+vb)); vb reads as Ab for a zero
            va = a.valuation if a.unit else a.abs_prec
            vb = b.valuation if b.unit else b.abs_prec
            zero_abs = (a.abs_prec + vb) if a.unit == 0 else (b.abs_prec + va)
            return PAdicNumber.zero(self.p, abs_prec=zero_abs)
        digits = min(a.digits, b.digits)
        unit = (a.unit * b.unit) % self.p**digits
        return PAdicNumber._normalized(self.p, a.valuation + b.valuation, unit, digits)

    __rmul__ = __mul__

    def _mul_exact(self, c: Fraction) -> "PAdicNumber":
        if c == 0:
            return PAdicNumber.zero(self.p)
        vc = _vp_fraction(c, self.p)
        if self.unit == 0:
            if self.is_exact_zero():
                return self
            return PAdicNumber.zero(self.p, abs_prec=self.valuation + vc)
        modulus = self.p**self.digits
        scaled = c / Fraction(self.p) ** vc
        cu = scaled.numerator * pow(scaled.denominator, -1, modulus)
        return PAdicNumber._normalized(self.p, self.valuation + vc, (self.unit * cu) % modulus, self.digits)

    def inverse(self) -> "PAdicNumber":
        if self.unit == 0:
            raise ZeroDivisionError("inverse of (indistinguishable-from) zero")
        modulus = self.p**self.digits
        return PAdicNumber(self.p, -self.valuation, pow(self.unit, -1, modulus), self.digits)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, Fraction):
            if o == 0:
                raise ZeroDivisionError("division by zero")
            return self._mul_exact(1 / o)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if isinstance(o, Fraction):
            return self.inverse()._mul_exact(o)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            if self.unit == 0:
                raise ZeroDivisionError("0**0 at finite precision")
            return PAdicNumber(self.p, 0, 1 % self.p**self.digits, self.digits)
        base = self if k > 0 else self.inverse()
        k = abs(k)
        if base.unit == 0:
            if base.is_exact_zero():
                return base
            return PAdicNumber.zero(self.p, abs_prec=base.valuation * k)
        modulus = self.p**base.digits
        return PAdicNumber._normalized(
            self.p, base.valuation * k, pow(base.unit, k, modulus), base.digits
        )

    def scale_count(self, w: int) -> "PAdicNumber":
        """Multiply by a positive integer with the same precision outcome as
        adding the value w times (conservative: the true product is known a
        little better when p divides w)."""
        if w < 1:
            raise ValueError("count must be a positive integer")
        if self.unit == 0:
            return self
        return PAdicNumber._normalized(self.p, self.valuation, self.unit * w, self.digits)

    # -- comparison, rendering ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PAdicNumber):
            return NotImplemented
        return (
            self.p == other.p
            and self.valuation == other.valuation
            and self.unit == other.unit
            and self.digits == other.digits
        )

    def __hash__(self):
        return hash((self.p, self.valuation, self.unit, self.digits))

    def agrees_with(self, other: "PAdicNumber") -> bool:
        """True when the difference vanishes at the common guaranteed precision."""
        return (self - other).is_zero()

    def __repr__(self):
        return f"PAdicNumber({self})"

    def __str__(self):
        if self.is_exact_zero():
            return "0"
        if self.unit == 0:
            return f"0 * {self.p}^{self.valuation} + O({self.p}^{self.valuation})"
        return f"{self.unit} * {self.p}^{self.valuation} + O({self.p}^{self.abs_prec})"

    _PATTERN = re.compile(
        r"^\s*(?P<u>\d+)\s*\*\s*(?P<p>\d+)\^(?P<v>-?\d+)\s*\+\s*O\(\s*(?P=p)\^(?P<A>-?\d+)\s*\)\s*$"
    )

    @classmethod
    def parse(cls, text: str, p: int | None = None) -> "PAdicNumber":
        """Inverse of ``str``; ``p`` must be supplied for the exact zero "0"."""
        text = text.strip()
        if text == "0":
            if p is None:
                raise ValueError("parsing the exact zero needs an explicit prime")
            return cls.zero(p)
        m = cls._PATTERN.match(text)
        if not m:
            raise ValueError(f"not a p-adic rendering: {text!r}")
        u = int(m.group("u"))
        pp = int(m.group("p"))
        v = int(m.group("v"))
        A = int(m.group("A"))
        if p is not None and p != pp:
            raise ValueError("prime mismatch while parsing")
        if u == 0:
            return cls.zero(pp, abs_prec=A)
        return cls._normalized(pp, v, u, A - v)

    def to_json_obj(self) -> dict:
        if self.is_exact_zero():
            return {"valuation": None, "unit": "0", "precision": None}
        if self.unit == 0:
            return {"valuation": self.valuation, "unit": "0", "precision": self.valuation}
        return {"valuation": self.valuation, "unit": str(self.unit), "precision": self.abs_prec}

    @classmethod
    def from_json_obj(cls, obj: dict, p: int) -> "PAdicNumber":
        unit = int(obj["unit"])
        if obj["precision"] is None:
            return cls.zero(p)
        if unit == 0:
            return cls.zero(p, abs_prec=obj["precision"])
        return cls._normalized(p, obj["valuation"], unit, obj["precision"] - obj["valuation"])


# -- Teichmuller and friends ----------------------------------------------------------


def teichmuller(a: int, p: int, digits: int) -> PAdicNumber:
    """The root of unity in Z_p congruent to a (mod p; mod 4 when p = 2).

    For odd p this is the fixed point of x -> x**p starting from a; for
    p = 2 it is the sign determined by a mod 4.
    """
    if gcd(a, p) != 1:
        raise ValueError("argument must be coprime to p")
    if digits < 1:
        raise ValueError("need at least one digit of precision")
    modulus = p**digits
    if p == 2:
        x = 1 if a % 4 == 1 else modulus - 1
        return PAdicNumber(p, 0, x, digits)
    x = a % modulus
    while True:
        nxt = pow(x, p, modulus)
        if nxt == x:
            return PAdicNumber(p, 0, x, digits)
        x = nxt


def angle_bracket(a: int, p: int, digits: int) -> PAdicNumber:
    """<a> = a / teichmuller(a), a unit congruent to 1 mod q."""
    result = teichmuller(a, p, digits).inverse()._mul_exact(Fraction(a))
    return result


def _check_one_plus_q(x: PAdicNumber) -> int:
    """Valuation of x - 1, validated against the log convergence domain."""
    p = x.p
    need = 2 if p == 2 else 1
    z = x - Fraction(1)
    v = z.valuation if z.unit else z.abs_prec
    if x.unit == 0 or x.valuation != 0 or v < need:
        raise ValueError(f"argument must be congruent to 1 mod {q_of(p)}")
    return v


def padic_log(x: PAdicNumber) -> PAdicNumber:
    """Iwasawa logarithm on 1 + qZ_p via the alternating series in (x - 1).

    Truncation is sound: summation stops at index k once every later term m
    is proven to satisfy v(term_m) = m*v(z) - v_p(m) >= the accumulated
    absolute precision, using v_p(m) <= log_p(m).
    """
    p = x.p
    _check_one_plus_q(x)
    z = x - Fraction(1)
    if z.unit == 0:
        return PAdicNumber.zero(p, abs_prec=None if z.is_exact_zero() else z.abs_prec)
    vz = z.valuation
    acc = z
    zk = z
    k = 1
    while True:
        k += 1
        # stop when p**(k*vz - target) >= k guarantees the dropped tail
        target = acc.abs_prec
        exponent = k * vz - target
        if exponent >= 0 and p**exponent >= k:
            return acc
        zk = zk * z
        term = zk._mul_exact(Fraction((-1) ** (k + 1), k))
        acc = acc + term


def padic_exp(y: PAdicNumber) -> PAdicNumber:
    """p-adic exponential, convergent for v(y) >= 1 (>= 2 when p = 2).

    Stops at index k once (p-1)*(m*v(y) - target) >= m - 1 holds for every
    later m, which dominates v_p(m!) = (m - s_p(m))/(p - 1).
    """
    p = y.p
    need = 2 if p == 2 else 1
    if y.is_exact_zero():
        raise ValueError("exp of the exact zero has no finite-precision representation")
    vy = y.valuation if y.unit else y.abs_prec
    if vy < need:
        raise ValueError(f"exponential requires valuation >= {need} for p = {p}")
    if y.unit == 0:
        # exp(O(p^A)) = 1 + O(p^A)
        return PAdicNumber(p, 0, 1, y.abs_prec)
    acc = PAdicNumber.from_rational(1, p, y.abs_prec) + y
    term = y
    k = 1
    while True:
        k += 1
        target = acc.abs_prec
        if (p - 1) * (k * vy - target) >= k - 1:
            return acc
        term = (term * y)._mul_exact(Fraction(1, k))
        acc = acc + term


def padic_pow(b: PAdicNumber, s) -> PAdicNumber:
    """b**s for b congruent to 1 mod q and |s|_p <= 1.

    Integer exponents use exact binary powering; other exponents go through
    exp(s * log b).  The two routes agree on integers within precision.
    """
    p = b.p
    if isinstance(s, PAdicNumber):
        if s.p != p:
            raise ValueError("mixed primes")
        if s.unit != 0 and s.valuation < 0:
            raise ValueError("exponent must satisfy |s|_p <= 1")
        _check_one_plus_q(b)
        if s.is_exact_zero():
            return PAdicNumber(p, 0, 1, b.digits)
        return padic_exp(s * padic_log(b))
    if isinstance(s, Fraction) and s.denominator == 1:
        s = int(s)
    if isinstance(s, int):
        _check_one_plus_q(b)
        return b**s
    if isinstance(s, Fraction):
        if _vp_fraction(s, p) < 0:
            raise ValueError("exponent must satisfy |s|_p <= 1")
        _check_one_plus_q(b)
        return padic_exp(padic_log(b)._mul_exact(s))
    raise TypeError("exponent must be an int, Fraction, or PAdicNumber")


def rational_binomial(x, m: int) -> Fraction:
    """Generalized binomial coefficient C(x, m) for exact rational x."""
    if m < 0:
        raise ValueError("lower index must be nonnegative")
    x = Fraction(x)
    acc = Fraction(1)
    for i in range(m):
        acc *= x - i
    return acc / factorial(m)


def padic_binomial(x, m: int):
    """C(x, m) = x(x-1)...(x-m+1)/m!.

    Exact int/Fraction arguments give an exact Fraction (in particular
    exact zero for integer 0 <= x < m); a PAdicNumber argument gives a
    PAdicNumber whose absolute precision drops by v_p(m!) from the division.
    """
    if isinstance(x, (int, Fraction)):
        return rational_binomial(x, m)
    if not isinstance(x, PAdicNumber):
        raise TypeError("argument must be an int, Fraction, or PAdicNumber")
    if m < 0:
        raise ValueError("lower index must be nonnegative")
    p = x.p
    acc = PAdicNumber.from_rational(1, p, x.abs_prec if x.unit else 1)
    for i in range(m):
        acc = acc * (x - Fraction(i))
    return acc._mul_exact(Fraction(1, factorial(m)))
