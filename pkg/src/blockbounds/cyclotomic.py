"""Exact arithmetic in Z[zeta] for zeta a primitive p^n-th root of unity.

Elements are stored over the power basis 1, zeta, ..., zeta^(m-1) with
m = p^(n-1)(p-1). Any power zeta^e with e >= m is rewritten through
Phi_{p^n}(zeta) = 0, so every element has exactly one representation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class PrimePowerModulus:
    p: int
    n: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.n < 1:
            raise ValueError(f"exponent n={self.n} must be positive")

    @property
    def order(self) -> int:
        """p^n."""
        return self.p**self.n

    @property
    def m(self) -> int:
        """Degree p^(n-1)(p-1) of the cyclotomic field."""
        return self.p ** (self.n - 1) * (self.p - 1)

    def units(self) -> list[int]:
        return [a for a in range(1, self.order) if a % self.p]

    def require_odd(self) -> None:
        if self.p == 2:
            raise ValueError("cyclotomic arithmetic is only supported for odd p")


def _canonicalize(mod: PrimePowerModulus, full: list[int]) -> tuple[int, ...]:
    # full has length p^n, index = exponent
    m, step = mod.m, mod.p ** (mod.n - 1)
    for e in range(len(full) - 1, m - 1, -1):
        c = full[e]
        if c:
            full[e] = 0
            base = e - m
            for k in range(mod.p - 1):
                full[base + k * step] -= c
    return tuple(full[:m])


@dataclass(frozen=True)
class CycInt:
    """An element of Z[zeta], zeta = exp(2 pi i / p^n)."""

    modulus: PrimePowerModulus
    coeffs: tuple[int, ...]

    def __post_init__(self):
        self.modulus.require_odd()
        if len(self.coeffs) != self.modulus.m:
            raise ValueError("coefficient vector has wrong length")

    @classmethod
    def from_exponents(cls, modulus: PrimePowerModulus, terms: dict[int, int] | Iterable[int]) -> CycInt:
        """Sum of c * zeta^e over ``terms`` (a dict e -> c, or exponents with coefficient 1)."""
        q = modulus.order
        full = [0] * q
        items = terms.items() if isinstance(terms, dict) else ((e, 1) for e in terms)
        for e, c in items:
            full[e % q] += c
        return cls(modulus, _canonicalize(modulus, full))

    @classmethod
    def zero(cls, modulus: PrimePowerModulus) -> CycInt:
        return cls(modulus, (0,) * modulus.m)

    @classmethod
    def integer(cls, modulus: PrimePowerModulus, c: int) -> CycInt:
        return cls(modulus, (c,) + (0,) * (modulus.m - 1))

    def _check(self, other: CycInt) -> None:
        if not isinstance(other, CycInt) or other.modulus != self.modulus:
            raise ValueError("modulus mismatch")

    def _coerce(self, other) -> CycInt:
        if isinstance(other, int):
            return CycInt.integer(self.modulus, other)
        self._check(other)
        return other

    def __add__(self, other) -> CycInt:
        other = self._coerce(other)
        return CycInt(self.modulus, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CycInt:
        return CycInt(self.modulus, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> CycInt:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> CycInt:
        return self._coerce(other) - self

    def __mul__(self, other) -> CycInt:
        if isinstance(other, int):
            return CycInt(self.modulus, tuple(other * a for a in self.coeffs))
        self._check(other)
        q = self.modulus.order
        full = [0] * q
        b = [(j, y) for j, y in enumerate(other.coeffs) if y]
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in b:
                    full[(i + j) % q] += x * y
        return CycInt(self.modulus, _canonicalize(self.modulus, full))

    __rmul__ = __mul__

    def galois(self, g: int) -> CycInt:
        mod = self.modulus
        if g % mod.p == 0:
            raise ValueError(f"{g} is not coprime to p={mod.p}")
        q = mod.order
        full = [0] * q
        for i, c in enumerate(self.coeffs):
            if c:
                full[(i * g) % q] += c
        return CycInt(mod, _canonicalize(mod, full))

    def conj(self) -> CycInt:
        return self.galois(-1)

    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> int:
        if not self.is_rational:
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __str__(self) -> str:
        terms = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "1" if e == 0 else ("z" if e == 1 else f"z^{e}")
            if e == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def reduce_power(modulus: PrimePowerModulus, e: int) -> CycInt:
    """Canonical coefficient vector of zeta^e."""
    return CycInt.from_exponents(modulus, {e: 1})


def zeta(modulus: PrimePowerModulus) -> CycInt:
    return reduce_power(modulus, 1)


def add(a: CycInt, b: CycInt) -> CycInt:
    return a + b


def mul(a: CycInt, b: CycInt) -> CycInt:
    return a * b


def conj(a: CycInt) -> CycInt:
    return a.conj()


def galois_apply(g: int, a: CycInt) -> CycInt:
    return a.galois(g)


def trace_over(h: UnitSubgroup | Iterable[int], a: CycInt) -> CycInt:
    """Sum of the Galois conjugates of ``a`` over the elements of ``h``."""
    elements = h.elements if isinstance(h, UnitSubgroup) else tuple(h)
    total = CycInt.zero(a.modulus)
    for g in elements:
        total = total + a.galois(g)
    if isinstance(h, UnitSubgroup):
        for g in h.generators():
            assert total.galois(g) == total
    return total


def full_unit_sum(modulus: PrimePowerModulus, e: int) -> int:
    """Sum of mu(zeta^e) over all mu in (Z/p^n)^x, an ordinary integer."""
    q = modulus.order
    if e % q == 0:
        return modulus.m
    if e % (q // modulus.p) != 0:
        return 0
    return -(q // modulus.p)


# -- unit subgroups ---------------------------------------------------------


def _valuation(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class UnitSubgroup:
    """A subgroup of (Z/p^n Z)^x, stored as its sorted element list."""

    modulus: PrimePowerModulus
    elements: tuple[int, ...]
    _gens: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        q = self.modulus.order
        els = set(self.elements)
        one = 1 % q
        if one not in els:
            raise ValueError("subgroup must contain 1")
        for a in els:
            if gcd(a, self.modulus.p) != 1 and q > 1:
                raise ValueError(f"{a} is not a unit mod {q}")
            for b in els:
                if (a * b) % q not in els:
                    raise ValueError("elements are not closed under multiplication")
        if self.modulus.p != 2 and (self.modulus.p - 1) % self.r:
            raise ValueError("p'-part of the order must divide p-1")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def s(self) -> int:
        return _valuation(self.order, self.modulus.p)

    @property
    def r(self) -> int:
        return self.order // self.modulus.p**self.s

    def __contains__(self, g: int) -> bool:
        return g % self.modulus.order in self.elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def generators(self) -> tuple[int, ...]:
        if self._gens:
            return self._gens
        gens: list[int] = []
        span = {1 % self.modulus.order}
        for g in self.elements:
            if g not in span:
                gens.append(g)
                span = set(_closure(self.modulus, gens))
        return tuple(gens)

    def generator(self) -> int:
        """A single generator; raises if the subgroup is not cyclic."""
        q = self.modulus.order
        for g in self.elements:
            if multiplicative_order(g, q) == self.order:
                return g
        raise ValueError("subgroup is not cyclic")

    def p_prime_part(self) -> UnitSubgroup:
        """O_{p'}: the elements whose order divides r."""
        q = self.modulus.order
        els = tuple(g for g in self.elements if pow(g, self.r, q) == 1 % q)
        return UnitSubgroup(self.modulus, els)

    def p_part(self) -> UnitSubgroup:
        q = self.modulus.order
        ps = self.modulus.p**self.s
        els = tuple(g for g in self.elements if pow(g, ps, q) == 1 % q)
        return UnitSubgroup(self.modulus, els)

    def stabilizer(self, action) -> UnitSubgroup:
        """Elements g with action(g) true, assumed to form a subgroup."""
        return UnitSubgroup(self.modulus, tuple(g for g in self.elements if action(g)))

    def is_trivial(self) -> bool:
        return self.order == 1


def multiplicative_order(g: int, q: int) -> int:
    if q == 1:
        return 1
    g %= q
    k, x = 1, g
    while x != 1:
        x = x * g % q
        k += 1
        if k > q:
            raise ValueError(f"{g} is not a unit mod {q}")
    return k


def _closure(modulus: PrimePowerModulus, gens: Sequence[int]) -> list[int]:
    q = modulus.order
    seen = {1 % q}
    frontier = [1 % q]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a * g % q
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return sorted(seen)


def subgroup_from_generators(modulus: PrimePowerModulus, gens: Sequence[int]) -> UnitSubgroup:
    q = modulus.order
    gens = [g % q for g in gens]
    for g in gens:
        if gcd(g, modulus.p) != 1:
            raise ValueError(f"{g} is not coprime to p={modulus.p}")
    return UnitSubgroup(modulus, tuple(_closure(modulus, gens)), tuple(g for g in gens if g != 1 % q))


def subgroup_from_generator(modulus: PrimePowerModulus, g: int) -> UnitSubgroup:
    return subgroup_from_generators(modulus, [g])


def trivial_subgroup(modulus: PrimePowerModulus) -> UnitSubgroup:
    return subgroup_from_generators(modulus, [])


def cyclic_subgroups(modulus: PrimePowerModulus) -> list[UnitSubgroup]:
    """Every cyclic subgroup of the unit group, ordered by (order, elements)."""
    q = modulus.order
    found = {}
    for g in range(1, q + 1):
        if g % modulus.p == 0 and q > 1:
            continue
        h = subgroup_from_generator(modulus, g)
        found.setdefault(h.elements, h)
    return sorted(found.values(), key=lambda h: (h.order, h.elements))


def orbits_on_residues(h: UnitSubgroup, level: int) -> list[tuple[int, ...]]:
    """Orbits of h acting by multiplication on {1 <= j <= p^level : p does not divide j}."""
    p = h.modulus.p
    q = p**level
    seen: set[int] = set()
    orbits = []
    for j in range(1, q + 1):
        if j % p == 0 or j in seen:
            continue
        orb = sorted({(g * j) % q for g in h.elements})
        seen.update(orb)
        orbits.append(tuple(orb))
    return orbits
