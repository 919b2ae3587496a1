"""Integral bases for fixed fields of unit subgroups acting on Q(zeta_{p^n}).

The basis consists of traces over O_{p'}(N) of powers zeta^t, where the
exponents t come from the recursively built sets S_i and T_i. Orbit
representatives are always the smallest residue, and basis elements are
listed in ascending order of t.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _linalg as la
from .cyclotomic import CycInt, PrimePowerModulus, UnitSubgroup, orbits_on_residues, reduce_power, trace_over
from .errors import CapExceeded


class NotInFixedRing(ValueError):
    """The element is not an integral combination of the fixed-field basis."""


DEFAULT_VERIFY_CAP = 343


@dataclass(frozen=True)
class FixedFieldBasis:
    modulus: PrimePowerModulus
    subgroup: UnitSubgroup
    t_indices: tuple[int, ...]
    basis_elems: tuple[CycInt, ...]

    @property
    def change_of_basis(self) -> list[list[int]]:
        """Rows: the power-basis coefficients of each basis element."""
        return [list(b.coeffs) for b in self.basis_elems]

    def __len__(self) -> int:
        return len(self.basis_elems)

    def combine(self, coeffs) -> CycInt:
        total = CycInt.zero(self.modulus)
        for c, b in zip(coeffs, self.basis_elems):
            total = total + b * c
        return total


def _check_subgroup(modulus: PrimePowerModulus, subgroup: UnitSubgroup) -> None:
    if subgroup.modulus != modulus:
        raise ValueError("subgroup lives in a different unit group")


def build_s_sets(modulus: PrimePowerModulus, subgroup: UnitSubgroup, up_to_level: int) -> list[tuple[int, ...]]:
    """[S_1, ..., S_level]: smallest representatives of O_{p'}(N)-orbits mod p^i."""
    _check_subgroup(modulus, subgroup)
    opp = subgroup.p_prime_part()
    return [tuple(orb[0] for orb in orbits_on_residues(opp, i)) for i in range(1, up_to_level + 1)]


def build_t_sets(modulus: PrimePowerModulus, subgroup: UnitSubgroup, level: int | None = None) -> tuple[int, ...]:
    """The index set T_level (default level n), sorted ascending.

    T_1 = S_1 and T_i = p T_{i-1} together with s + j p^(i-1) for s in
    S_{i-1}, j = 0..p-2.
    """
    p = modulus.p
    level = modulus.n if level is None else level
    s_sets = build_s_sets(modulus, subgroup, level)
    t = set(s_sets[0])
    for i in range(2, level + 1):
        t = {p * x for x in t} | {s + j * p ** (i - 1) for s in s_sets[i - 2] for j in range(p - 1)}
    return tuple(sorted(t))


def build_basis(modulus: PrimePowerModulus, subgroup: UnitSubgroup) -> FixedFieldBasis:
    modulus.require_odd()
    _check_subgroup(modulus, subgroup)
    s = subgroup.s
    opp = subgroup.p_prime_part()
    t_set = build_t_sets(modulus, subgroup, modulus.n - s)
    exponents = tuple(sorted(modulus.p**s * t for t in t_set))
    elems = tuple(trace_over(opp, reduce_power(modulus, t)) for t in exponents)
    expected = modulus.p ** (modulus.n - s - 1) * (modulus.p - 1) // subgroup.r
    assert len(elems) == expected, (len(elems), expected)
    for g in subgroup.generators():
        for b in elems:
            assert b.galois(g) == b
    return FixedFieldBasis(modulus, subgroup, exponents, elems)


def express(a: CycInt, basis: FixedFieldBasis) -> list[int]:
    """Integer coordinates of ``a`` in the fixed-field basis."""
    if a.modulus != basis.modulus:
        raise ValueError("modulus mismatch")
    cols = la.transpose(basis.change_of_basis)
    sol = la.solve(cols, a.coeffs)
    if sol is None or any(x.denominator != 1 for x in sol):
        raise NotInFixedRing(f"{a} is not in the Z-span of the basis")
    return [int(x) for x in sol]


def fixed_lattice(modulus: PrimePowerModulus, subgroup: UnitSubgroup) -> list[list[int]]:
    """Z-basis (power-basis coordinates) of the N-fixed elements of Z[zeta].

    Computed as the integer kernel of (g - 1) for the generators g, with no
    reference to the S/T construction.
    """
    m = modulus.m
    constraints: list[list[int]] = []
    for g in subgroup.generators():
        images = [reduce_power(modulus, e).galois(g) for e in range(m)]
        # column e of (g - 1) is image(zeta^e) - zeta^e
        for row in range(m):
            constraints.append([images[e].coeffs[row] - int(row == e) for e in range(m)])
    if not constraints:
        return la.identity(m)
    return la.integer_kernel(constraints)


def verify_basis(basis: FixedFieldBasis, cap: int = DEFAULT_VERIFY_CAP) -> bool:
    """Independent check that ``basis`` is a Z-basis of the fixed ring of integers."""
    modulus = basis.modulus
    if modulus.order > cap:
        raise CapExceeded(f"p^n = {modulus.order} exceeds the verification cap {cap}")
    vecs = basis.change_of_basis
    if not vecs or la.rank(vecs) != len(vecs):
        return False
    lattice = fixed_lattice(modulus, basis.subgroup)
    if len(lattice) != len(vecs):
        return False
    cols = la.transpose(vecs)
    for v in lattice:
        sol = la.solve(cols, v)
        if sol is None or any(x.denominator != 1 for x in sol):
            return False
    lat_cols = la.transpose(lattice)
    for v in vecs:
        sol = la.solve(lat_cols, v)
        if sol is None or any(x.denominator != 1 for x in sol):
            return False
    return True
