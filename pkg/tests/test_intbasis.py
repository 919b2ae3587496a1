from __future__ import annotations

import pytest

from blockbounds.cyclotomic import CycInt, PrimePowerModulus, cyclic_subgroups, reduce_power, subgroup_from_generator, trivial_subgroup
from blockbounds.errors import CapExceeded
from blockbounds.intbasis import (
    FixedFieldBasis,
    NotInFixedRing,
    build_basis,
    build_s_sets,
    build_t_sets,
    express,
    verify_basis,
)

M9 = PrimePowerModulus(3, 2)


def test_s_and_t_sets():
    m3 = PrimePowerModulus(3, 1)
    minus = subgroup_from_generator(M9, 8)
    assert build_s_sets(m3, trivial_subgroup(m3), 1) == [(1, 2)]
    assert build_s_sets(M9, minus, 2) == [(1,), (1, 2, 4)]
    assert build_t_sets(m3, trivial_subgroup(m3)) == (1, 2)
    assert build_t_sets(M9, minus) == (1, 3, 4)
    m5 = PrimePowerModulus(5, 1)
    assert build_t_sets(m5, subgroup_from_generator(m5, 4)) == (1, 2)


def test_basis_examples():
    m3 = PrimePowerModulus(3, 1)
    b = build_basis(m3, trivial_subgroup(m3))
    assert b.basis_elems == (reduce_power(m3, 1), reduce_power(m3, 2))

    b = build_basis(M9, subgroup_from_generator(M9, 8))
    pair = [reduce_power(M9, t) + reduce_power(M9, -t) for t in (1, 3, 4)]
    assert b.t_indices == (1, 3, 4)
    assert list(b.basis_elems) == pair

    b = build_basis(M9, subgroup_from_generator(M9, 4))
    assert b.t_indices == (3, 6)
    assert list(b.basis_elems) == [reduce_power(M9, 3), reduce_power(M9, 6)]


def test_express():
    m3 = PrimePowerModulus(3, 1)
    b = build_basis(m3, trivial_subgroup(m3))
    assert express(CycInt.integer(m3, 1), b) == [-1, -1]
    for i, e in enumerate(b.basis_elems):
        assert express(e, b) == [int(i == j) for j in range(len(b))]
    bm = build_basis(M9, subgroup_from_generator(M9, 8))
    a = reduce_power(M9, 2) + reduce_power(M9, -2)
    assert bm.combine(express(a, bm)) == a
    with pytest.raises(NotInFixedRing):
        express(reduce_power(M9, 1), bm)


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2)])
def test_every_cyclic_subgroup_gives_a_basis(p, n):
    mod = PrimePowerModulus(p, n)
    for h in cyclic_subgroups(mod):
        b = build_basis(mod, h)
        assert len(b) == p ** (n - h.s - 1) * (p - 1) // h.r
        assert verify_basis(b)


def test_verify_basis_rejects_broken_bases():
    b = build_basis(M9, subgroup_from_generator(M9, 8))
    dropped = FixedFieldBasis(b.modulus, b.subgroup, b.t_indices[1:], b.basis_elems[1:])
    doubled = FixedFieldBasis(b.modulus, b.subgroup, b.t_indices, (b.basis_elems[0] * 2,) + b.basis_elems[1:])
    assert not verify_basis(dropped)
    assert not verify_basis(doubled)


def test_verify_cap():
    mod = PrimePowerModulus(5, 2)
    b = build_basis(mod, subgroup_from_generator(mod, 24))
    with pytest.raises(CapExceeded):
        verify_basis(b, cap=24)
