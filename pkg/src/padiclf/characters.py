"""Dirichlet characters with exact cyclotomic values.

A character mod f is stored as a full table on the residues coprime to f,
each value encoded as an exponent of a fixed root of unity zeta_e (so the
table is ``{residue: exponent}`` plus the root order e).  Products, powers,
conductors, and parity are then integer bookkeeping, and
:meth:`DirichletCharacter.value` materializes exact
:class:`~padiclf.rings.CycloNumber` values on demand.  Evaluation at any
integer first reduces mod f and returns 0 when the argument shares a factor
with f.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from itertools import product
from math import gcd, lcm

from .rings import CycloNumber, euler_phi

__all__ = [
    "DirichletCharacter",
    "trivial_character",
    "char_enumerate",
    "teichmuller_char",
    "twist",
    "char_label",
    "char_from_label",
    "unit_group_generators",
    "is_prime",
    "primitive_root",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def _order_mod(a: int, m: int, group_order: int) -> int:
    """Multiplicative order of a modulo m, dividing group_order."""
    order = group_order
    for p, _ in _factorize(group_order):
        while order % p == 0 and pow(a, order // p, m) == 1:
            order //= p
    return order


def primitive_root(q: int) -> int:
    """Smallest primitive root modulo an odd prime power (or modulo 2 or 4)."""
    if q in (2,):
        return 1
    if q == 4:
        return 3
    fac = _factorize(q)
    if len(fac) != 1 or fac[0][0] == 2:
        raise ValueError(f"{q} is not an odd prime power")
    phi = euler_phi(q)
    for g in range(2, q):
        if gcd(g, q) != 1:
            continue
        if _order_mod(g, q, phi) == phi:
            return g
    raise ArithmeticError("no primitive root found")  # unreachable for valid q


_GEN_CACHE: dict[int, tuple[tuple[int, int], ...]] = {}
_DLOG_CACHE: dict[int, dict[int, tuple[int, ...]]] = {}
_CACHE_LOCK = threading.Lock()


def unit_group_generators(f: int) -> tuple[tuple[int, int], ...]:
    """Generators of the unit group mod f as ``(generator, order)`` pairs.

    The list is in a fixed documented order: the 2-power component first
    (handled by the {-1, 5} generators when 8 | f), then odd prime powers in
    ascending order, each contributing one cyclic generator lifted to a
    residue that is 1 modulo the complementary factor.
    """
    if f < 1:
        raise ValueError("modulus must be >= 1")
    cached = _GEN_CACHE.get(f)
    if cached is not None:
        return cached
    gens: list[tuple[int, int]] = []
    for p, e in _factorize(f):
        q = p**e
        rest = f // q
        if p == 2:
            if e == 1:
                continue  # trivial component
            local = [(q - 1, 2)] if e == 2 else [(q - 1, 2), (5, 2 ** (e - 2))]
        else:
            local = [(primitive_root(q), euler_phi(q))]
        for g, order in local:
            if rest == 1:
                lifted = g % f
            else:
                # CRT lift: g mod q, 1 mod rest
                inv_rest = pow(rest, -1, q)
                inv_q = pow(q, -1, rest)
                lifted = (g * rest * inv_rest + 1 * q * inv_q) % f
            gens.append((lifted, order))
    result = tuple(gens)
    with _CACHE_LOCK:
        _GEN_CACHE.setdefault(f, result)
    return _GEN_CACHE[f]


def _dlog_table(f: int) -> dict[int, tuple[int, ...]]:
    """Map each residue coprime to f to its exponent vector over the generators."""
    cached = _DLOG_CACHE.get(f)
    if cached is not None:
        return cached
    gens = unit_group_generators(f)
    table: dict[int, tuple[int, ...]] = {}
    ranges = [range(order) for _, order in gens]
    for exps in product(*ranges):
        a = 1 % f
        for (g, _), k in zip(gens, exps):
            a = (a * pow(g, k, f)) % f
        table[a] = exps
    if len(table) != euler_phi(f):
        raise ArithmeticError(f"unit group enumeration incomplete for modulus {f}")
    with _CACHE_LOCK:
        _DLOG_CACHE.setdefault(f, table)
    return _DLOG_CACHE[f]


class DirichletCharacter:
    """A Dirichlet character mod f with values in roots of unity.

    ``exponents[a]`` gives k with chi(a) = zeta_order_root**k for each residue
    a coprime to f.  Instances are normalized so the root order equals the
    multiplicative order of the character.
    """

    __slots__ = ("modulus", "zeta_order", "exponents", "label", "_conductor")

    def __init__(
        self,
        modulus: int,
        zeta_order: int,
        exponents: dict[int, int],
        label: str | None = None,
    ):
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        exps = {a % modulus: k % zeta_order for a, k in exponents.items()}
        if len(exps) != euler_phi(modulus):
            raise ValueError("value table must cover every residue coprime to the modulus")
        # normalize: shrink the root order to the character's actual order
        shrink = zeta_order
        for k in exps.values():
            shrink = gcd(shrink, k)
            if shrink == 1:
                break
        if shrink > 1:
            zeta_order //= shrink
            exps = {a: k // shrink for a, k in exps.items()}
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "zeta_order", zeta_order)
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "_conductor", None)

    def __setattr__(self, name, value):
        raise AttributeError("DirichletCharacter is immutable")

    # -- evaluation -----------------------------------------------------------

    @property
    def order(self) -> int:
        """Multiplicative order of the character."""
        return self.zeta_order

    def value(self, x: int) -> CycloNumber:
        """chi(x): reduces x mod the modulus; 0 when gcd(x, modulus) > 1."""
        a = x % self.modulus
        k = self.exponents.get(a)
        if k is None:
            return CycloNumber.zero(self.zeta_order)
        return CycloNumber.zeta(self.zeta_order, k)

    __call__ = value

    @property
    def values(self) -> dict[int, CycloNumber]:
        """Full value table on the residues coprime to the modulus."""
        return {a: CycloNumber.zeta(self.zeta_order, k) for a, k in sorted(self.exponents.items())}

    def is_trivial(self) -> bool:
        return all(k == 0 for k in self.exponents.values())

    @property
    def parity(self) -> int:
        """chi(-1) as +1 or -1."""
        k = self.exponents[(self.modulus - 1) % self.modulus]
        if k == 0:
            return 1
        if 2 * k == self.zeta_order:
            return -1
        raise ArithmeticError("value at -1 is not a sign")  # impossible for valid tables

    # -- conductor --------------------------------------------------------------

    def conductor(self) -> int:
        """Smallest modulus d | f through which the character factors."""
        if self._conductor is not None:
            return self._conductor
        f = self.modulus
        result = f
        for d in range(1, f + 1):
            if f % d != 0:
                continue
            if all(
                self.exponents[a] == 0
                for a in self.exponents
                if a % d == 1 % d
            ):
                result = d
                break
        object.__setattr__(self, "_conductor", result)
        return result

    def is_primitive(self) -> bool:
        return self.conductor() == self.modulus

    def primitive_character(self) -> "DirichletCharacter":
        """The character mod conductor inducing this one."""
        d = self.conductor()
        if d == self.modulus:
            return self
        f = self.modulus
        exps: dict[int, int] = {}
        for b in range(d):
            if gcd(b, d) != 1:
                continue
            a = b
            while gcd(a, f) != 1:
                a += d
            exps[b] = self.exponents[a % f]
        return DirichletCharacter(d, self.zeta_order, exps)

    # -- group operations --------------------------------------------------------

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        M = lcm(self.modulus, other.modulus)
        E = lcm(self.zeta_order, other.zeta_order)
        s1 = E // self.zeta_order
        s2 = E // other.zeta_order
        exps = {}
        for a in range(M):
            if gcd(a, M) != 1:
                continue
            k = (self.exponents[a % self.modulus] * s1 + other.exponents[a % other.modulus] * s2) % E
            exps[a] = k
        return DirichletCharacter(M, E, exps).primitive_character()

    def __pow__(self, k: int) -> "DirichletCharacter":
        e = self.zeta_order
        exps = {a: (v * k) % e for a, v in self.exponents.items()}
        return DirichletCharacter(self.modulus, e, exps).primitive_character()

    def inverse(self) -> "DirichletCharacter":
        """The inverse character (complex-conjugate value table)."""
        return self ** (-1)

    # -- comparison and formatting -------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.zeta_order == other.zeta_order
            and self.exponents == other.exponents
        )

    def __hash__(self):
        return hash((self.modulus, self.zeta_order, tuple(sorted(self.exponents.items()))))

    def __repr__(self):
        name = self.label or f"chi mod {self.modulus}"
        return f"<DirichletCharacter {name}, order {self.order}>"


def trivial_character(modulus: int = 1) -> DirichletCharacter:
    exps = {a: 0 for a in range(modulus) if gcd(a, modulus) == 1}
    return DirichletCharacter(modulus, 1, exps, label="triv" if modulus == 1 else None)


def char_enumerate(f: int) -> list[DirichletCharacter]:
    """All phi(f) characters mod f, ordered lexicographically in exponent
    vectors over the fixed generator list of :func:`unit_group_generators`.

    Character k in the list carries label ``f"{f}.{k}"``.
    """
    gens = unit_group_generators(f)
    dlog = _dlog_table(f)
    orders = [order for _, order in gens]
    e = 1
    for o in orders:
        e = lcm(e, o)
    chars = []
    for idx, ks in enumerate(product(*[range(o) for o in orders])):
        exps = {}
        for a, vec in dlog.items():
            exps[a] = sum(k * x * (e // o) for k, x, o in zip(ks, vec, orders)) % e
        chars.append(DirichletCharacter(f, e, exps, label=f"{f}.{idx}"))
    return chars


def teichmuller_char(p: int) -> DirichletCharacter:
    """The Teichmuller character: modulus p (4 when p = 2), order p-1 (2 for p = 2).

    Its value at a is the root of unity that the p-adic Teichmuller lift of a
    maps to; concretely chi(g**j) = zeta_(p-1)**j for the smallest primitive
    root g mod p, matching the embedding used by the p-adic layer.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return DirichletCharacter(4, 2, {1: 0, 3: 1})
    g = primitive_root(p)
    exps = {pow(g, j, p): j for j in range(p - 1)}
    return DirichletCharacter(p, p - 1, exps)


def twist(chi: DirichletCharacter, n: int, p: int) -> DirichletCharacter:
    """chi times the (-n)-th power of the Teichmuller character, conductor-reduced."""
    return chi * (teichmuller_char(p) ** (-n))


def char_label(chi: DirichletCharacter) -> str:
    """Stable label: ``triv`` for the conductor-1 character, else ``f.k``."""
    if chi.modulus == 1:
        return "triv"
    for idx, candidate in enumerate(char_enumerate(chi.modulus)):
        if candidate == chi:
            return f"{chi.modulus}.{idx}"
    raise ArithmeticError("character not found in its own modulus enumeration")


def char_from_label(label: str) -> DirichletCharacter:
    """Resolve ``triv`` or ``f.k`` labels (inverse of :func:`char_label`)."""
    if label == "triv":
        return trivial_character(1)
    try:
        f_s, k_s = label.split(".")
        f, k = int(f_s), int(k_s)
    except ValueError:
        raise ValueError(f"malformed character label {label!r}; expected 'triv' or 'f.k'")
    if f < 1:
        raise ValueError(f"character modulus must be positive in label {label!r}")
    chars = char_enumerate(f)
    if not 0 <= k < len(chars):
        raise ValueError(f"character index {k} out of range for modulus {f}")
    return chars[k]
