"""Exact arithmetic foundation: rationals, cyclotomic numbers, truncated series.

Three scalar layers, all immutable and exact:

* ``Fraction`` (aliased ``Rational``) is the base coefficient domain.
* :class:`CycloNumber` is an element of the m-th cyclotomic field, stored as
  a rational coordinate vector modulo the m-th cyclotomic polynomial, so
  root-of-unity identities hold by exact equality.  Elements of different
  orders combine by lifting both to the lcm order.
* :class:`TruncSeries` is a formal power series truncated to a fixed number
  of coefficients; coefficient j of a product depends only on inputs up to
  j, so every retained coefficient is exact.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import gcd, lcm, factorial
from typing import Sequence, Union

Rational = Fraction

Scalar = Union[int, Fraction, "CycloNumber"]

__all__ = [
    "Rational",
    "CycloNumber",
    "TruncSeries",
    "cyclotomic_polynomial",
    "euler_phi",
    "exp_linear",
]


def euler_phi(n: int) -> int:
    """Euler's totient of a positive integer."""
    if n < 1:
        raise ValueError("euler_phi requires n >= 1")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if m > 1:
        result -= result // m
    return result


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Quotient of two integer polynomials known to divide exactly.

    ``den`` must be monic.  Coefficients ascending.
    """
    num = list(num)
    dd = len(den) - 1
    qd = len(num) - 1 - dd
    quot = [0] * (qd + 1)
    for i in range(qd, -1, -1):
        c = num[i + dd]
        quot[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num):
        raise ArithmeticError("polynomial division was not exact")
    return quot


_PHI_CACHE: dict[int, tuple[int, ...]] = {}
_PHI_LOCK = threading.Lock()


def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients (ascending, monic) of the m-th cyclotomic polynomial.

    Computed by dividing x^m - 1 by the cyclotomic polynomials of the proper
    divisors of m.  Cached; cache writes are idempotent so concurrent fills
    are harmless.
    """
    if m < 1:
        raise ValueError("order must be >= 1")
    cached = _PHI_CACHE.get(m)
    if cached is not None:
        return cached
    if m == 1:
        phi = (-1, 1)
    else:
        num = [0] * (m + 1)
        num[0] = -1
        num[m] = 1
        den = [1]
        for d in range(1, m):
            if m % d == 0:
                den = _mul_int_poly(den, cyclotomic_polynomial(d))
        phi = tuple(_poly_div_exact(num, den))
    with _PHI_LOCK:
        _PHI_CACHE.setdefault(m, phi)
    return _PHI_CACHE[m]


def _mul_int_poly(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _reduce_mod_phi(coeffs: list[Fraction], m: int) -> tuple[Fraction, ...]:
    """Reduce a rational polynomial in zeta_m modulo the m-th cyclotomic polynomial."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    work = list(coeffs)
    if len(work) < deg:
        work += [Fraction(0)] * (deg - len(work))
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c:
            base = i - deg
            for j in range(deg + 1):
                work[base + j] -= c * phi[j]
    return tuple(work[:deg])


class CycloNumber:
    """An element of the m-th cyclotomic field.

    The element is a rational polynomial in the primitive m-th root of unity
    zeta_m, reduced modulo the m-th cyclotomic polynomial, so the coordinate
    vector has length deg(Phi_m) exactly and zeta_m**m == 1 holds.  Plain
    rationals embed as the vector (r, 0, ..., 0); binary operations accept
    int and Fraction operands and lift mixed orders to the lcm order.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence[Fraction]):
        deg = len(cyclotomic_polynomial(order)) - 1
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != deg:
            raise ValueError(
                f"order-{order} cyclotomic vector needs {deg} coordinates, got {len(coeffs)}"
            )
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycloNumber is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rational(cls, value, order: int = 1) -> "CycloNumber":
        v = Fraction(value)
        deg = len(cyclotomic_polynomial(order)) - 1
        return cls(order, (v,) + (Fraction(0),) * (deg - 1))

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "CycloNumber":
        """The root of unity zeta_order**power."""
        power %= order
        coeffs = [Fraction(0)] * (power + 1)
        coeffs[power] = Fraction(1)
        return cls(order, _reduce_mod_phi(coeffs, order))

    @classmethod
    def zero(cls, order: int = 1) -> "CycloNumber":
        return cls.from_rational(0, order)

    @classmethod
    def one(cls, order: int = 1) -> "CycloNumber":
        return cls.from_rational(1, order)

    # -- order changes -----------------------------------------------------

    def lift(self, new_order: int) -> "CycloNumber":
        """Re-express in the cyclotomic field of a multiple order."""
        if new_order == self.order:
            return self
        if new_order % self.order != 0:
            raise ValueError(f"cannot lift order {self.order} to {new_order}")
        stride = new_order // self.order
        out = [Fraction(0)] * ((len(self.coeffs) - 1) * stride + 1)
        for j, c in enumerate(self.coeffs):
            out[j * stride] = c
        return CycloNumber(new_order, _reduce_mod_phi(out, new_order))

    def descend(self, new_order: int) -> "CycloNumber":
        """Re-express in the subfield of a divisor order.

        Raises ValueError when the element does not lie in that subfield.
        """
        if new_order == self.order:
            return self
        if self.order % new_order != 0:
            raise ValueError(f"{new_order} does not divide order {self.order}")
        deg_small = len(cyclotomic_polynomial(new_order)) - 1
        basis = [CycloNumber.zeta(new_order, j).lift(self.order).coeffs for j in range(deg_small)]
        solution = _solve_exact(basis, self.coeffs)
        if solution is None:
            raise ValueError("element does not lie in the requested subfield")
        return CycloNumber(new_order, solution)

    def _pair(self, other: "CycloNumber") -> tuple["CycloNumber", "CycloNumber"]:
        if self.order == other.order:
            return self, other
        m = lcm(self.order, other.order)
        return self.lift(m), other.lift(m)

    @staticmethod
    def _coerce(value) -> "CycloNumber | None":
        if isinstance(value, CycloNumber):
            return value
        if isinstance(value, (int, Fraction)):
            return CycloNumber.from_rational(value)
        return None

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._pair(o)
        return CycloNumber(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycloNumber(self.order, tuple(c * f for c in self.coeffs))
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self._pair(other)
        prod = [Fraction(0)] * (2 * len(a.coeffs) - 1)
        for i, ai in enumerate(a.coeffs):
            if ai:
                for j, bj in enumerate(b.coeffs):
                    if bj:
                        prod[i + j] += ai * bj
        return CycloNumber(a.order, _reduce_mod_phi(prod, a.order))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        """Multiplicative inverse (the cyclotomic field is a field)."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        inv = _poly_modular_inverse(list(self.coeffs), phi)
        return CycloNumber(self.order, _reduce_mod_phi(inv, self.order))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return self * Fraction(f.denominator, f.numerator)
        if isinstance(other, CycloNumber):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNumber.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "CycloNumber":
        """Image under zeta_m -> zeta_m**-1 (complex conjugation)."""
        m = self.order
        out = [Fraction(0)] * m
        for j, c in enumerate(self.coeffs):
            out[(m - j) % m] += c
        return CycloNumber(m, _reduce_mod_phi(out, m))

    # -- predicates and conversions -------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        if self.order == 1:
            return True
        if self.order == 2:
            return True  # Q(zeta_2) = Q
        try:
            self.descend(1)
            return True
        except ValueError:
            return False

    def to_rational(self) -> Fraction:
        if self.order == 1:
            return self.coeffs[0]
        if self.order == 2:
            # zeta_2 = -1, basis is the constant 1
            return self.coeffs[0]
        return self.descend(1).coeffs[0]

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.order)
        acc = 0j
        for j in range(len(self.coeffs) - 1, -1, -1):
            acc = acc * z + complex(self.coeffs[j])
        return acc

    def multiplicative_order(self, bound: int | None = None) -> int:
        """Order as a root of unity; raises ValueError if not one."""
        limit = bound if bound is not None else lcm(2, self.order)
        power = CycloNumber.one(self.order)
        for d in range(1, limit + 1):
            power = power * self
            if power == 1:
                return d
        raise ValueError("element is not a root of unity of the expected order")

    # -- comparison and formatting -------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._pair(o)
        return a.coeffs == b.coeffs

    __hash__ = None  # mutable-free but equality is up-to-lifting; not hashable

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CycloNumber({self.order}, {self.coeffs!r})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                parts.append(str(c))
            elif j == 1:
                parts.append(f"({c})*z{self.order}")
            else:
                parts.append(f"({c})*z{self.order}^{j}")
        return " + ".join(parts)

    def to_json_obj(self):
        if self.order == 1:
            return str(self.coeffs[0])
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json_obj(cls, obj) -> "CycloNumber":
        if isinstance(obj, str):
            return cls.from_rational(Fraction(obj))
        return cls(obj["order"], tuple(Fraction(c) for c in obj["coeffs"]))


def _solve_exact(
    basis: Sequence[Sequence[Fraction]], target: Sequence[Fraction]
) -> tuple[Fraction, ...] | None:
    """Solve sum_j y_j basis[j] = target exactly; None when inconsistent."""
    rows = len(target)
    cols = len(basis)
    mat = [[Fraction(basis[j][i]) for j in range(cols)] + [Fraction(target[i])] for i in range(rows)]
    pivot_cols: list[int] = []
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, rows) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        inv = 1 / mat[row][col]
        mat[row] = [v * inv for v in mat[row]]
        for r in range(rows):
            if r != row and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [v - factor * w for v, w in zip(mat[r], mat[row])]
        pivot_cols.append(col)
        row += 1
        if row == rows:
            break
    for r in range(row, rows):
        if mat[r][cols] != 0:
            return None
    solution = [Fraction(0)] * cols
    for r, col in enumerate(pivot_cols):
        solution[col] = mat[r][cols]
    # verify free columns kept zero (rank-deficient consistent systems are fine)
    return tuple(solution)


def _poly_modular_inverse(a: list[Fraction], mod: list[Fraction]) -> list[Fraction]:
    """Inverse of a modulo mod over Q via the extended Euclidean algorithm."""

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def divmod_poly(num, den):
        num = list(num)
        q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
        dlead = den[-1]
        while len(num) >= len(den) and trim(list(num)):
            if num[-1] == 0:
                num.pop()
                continue
            shift = len(num) - len(den)
            c = num[-1] / dlead
            q[shift] += c
            for i, d in enumerate(den):
                num[shift + i] -= c * d
            num.pop()
        return q, trim(num)

    r0, r1 = trim(list(mod)), trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while r1:
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, trim(r)
        qs = _mul_frac_poly(q, s1)
        s_next = [x - y for x, y in _zip_pad(s0, qs)]
        s0, s1 = s1, trim(s_next)
    if len(r0) != 1:
        raise ZeroDivisionError("element shares a factor with the modulus")
    scale = 1 / r0[0]
    return [c * scale for c in s0]


def _mul_frac_poly(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else [Fraction(0)]
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)


class TruncSeries:
    """Formal power series truncated to ``order`` coefficients.

    Coefficients may be int, Fraction, or CycloNumber; mixed coefficient
    rings combine through the CycloNumber coercions.  All arithmetic is
    exact on the retained coefficients.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence[Scalar], order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs)
        if order < 1:
            raise ValueError("series order must be >= 1")
        if len(coeffs) < order:
            coeffs += [Fraction(0)] * (order - len(coeffs))
        elif len(coeffs) > order:
            coeffs = coeffs[:order]
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls([Fraction(1)], order)

    def __getitem__(self, j: int):
        return self.coeffs[j]

    def _check(self, other: "TruncSeries"):
        if self.order != other.order:
            raise ValueError(f"series order mismatch: {self.order} != {other.order}")

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check(other)
        return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check(other)
        return TruncSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __neg__(self):
        return TruncSeries([-a for a in self.coeffs], self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            return TruncSeries([c * other for c in self.coeffs], self.order)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check(other)
        K = self.order
        out: list[Scalar] = [Fraction(0)] * K
        for i, ai in enumerate(self.coeffs):
            if isinstance(ai, (int, Fraction)) and ai == 0:
                continue
            if isinstance(ai, CycloNumber) and ai.is_zero():
                continue
            for j in range(K - i):
                bj = other.coeffs[j]
                out[i + j] = out[i + j] + ai * bj
        return TruncSeries(out, K)

    __rmul__ = __mul__

    def __pow__(self, r: int) -> "TruncSeries":
        if not isinstance(r, int) or r < 0:
            raise ValueError("series powers take nonnegative integer exponents")
        result = TruncSeries.one(self.order)
        base = self
        while r:
            if r & 1:
                result = result * base
            base = base * base
            r >>= 1
        return result

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse; requires an invertible constant term."""
        c0 = self.coeffs[0]
        inv0 = _invert_scalar(c0)
        K = self.order
        out: list[Scalar] = [inv0] + [Fraction(0)] * (K - 1)
        for j in range(1, K):
            acc: Scalar = Fraction(0)
            for i in range(1, j + 1):
                acc = acc + self.coeffs[i] * out[j - i]
            out[j] = -(inv0 * acc)
        return TruncSeries(out, K)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def __repr__(self):
        return f"TruncSeries({list(self.coeffs)!r})"


def _invert_scalar(c: Scalar) -> Scalar:
    if isinstance(c, CycloNumber):
        return c.inverse()
    f = Fraction(c)
    if f == 0:
        raise ZeroDivisionError("constant term is not invertible")
    return Fraction(f.denominator, f.numerator)


def exp_linear(c: Scalar, order: int) -> TruncSeries:
    """The series of exp(c*t): coefficient j equals c**j / j!."""
    if order < 1:
        raise ValueError("series order must be >= 1")
    coeffs: list[Scalar] = [Fraction(1)]
    power: Scalar = Fraction(1) if isinstance(c, (int, Fraction)) else CycloNumber.one(c.order)
    for j in range(1, order):
        power = power * c
        coeffs.append(power * Fraction(1, factorial(j)))
    return TruncSeries(coeffs, order)
