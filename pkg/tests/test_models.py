from __future__ import annotations

from collections import Counter
from math import gcd

import pytest

from blockbounds import _linalg as la
from blockbounds.cyclotomic import CycInt, PrimePowerModulus, cyclic_subgroups, multiplicative_order, reduce_power
from blockbounds.errors import CapExceeded
from blockbounds.intbasis import build_basis
from blockbounds.lattice import congruent
from blockbounds.models import (
    brauer_diff,
    conjugacy_count,
    cyclic_cartan,
    finallem_bound,
    k0_semidirect,
    l2_major_bound,
    metacyclic_class_count,
    metacyclic_coefficient_gram,
    metacyclic_q,
    navarro_check,
    perturbed,
    semidirect_coefficients,
    semidirect_gram_sum,
    semidirect_gram_sum_check,
    semidirect_model,
    verify_orthogonality,
)
from blockbounds.ortho import SubsectionSpec, build_m

from conftest import KIYOTA_POWER, KIYOTA_TRACE


def _units(q):
    return [g for g in range(1, q) if gcd(g, q) == 1]


# -- semidirect ---------------------------------------------------------------


def test_k0_formula_examples():
    assert k0_semidirect(3, 1, 2, 0) == 3
    assert k0_semidirect(5, 1, 4, 0) == 5  # (5 + 15) / 4
    assert k0_semidirect(5, 1, 2, 0) == 4  # (5 + 3) / 2
    assert k0_semidirect(5, 2, 4, 0) == 10
    assert k0_semidirect(7, 1, 3, 0) == 5
    with pytest.raises(ValueError):
        k0_semidirect(7, 1, 4, 0)
    with pytest.raises(ValueError):
        k0_semidirect(2, 3)


def test_oracle_small_groups():
    assert conjugacy_count(3, 1, 2) == (3, 3)
    assert conjugacy_count(5, 1, 2) == (5, 5)
    assert conjugacy_count(3, 2, 8) == (6, 6)
    with pytest.raises(CapExceeded):
        conjugacy_count(7, 2, 3, cap=100)


def _odd_cases(limit):
    for p in (3, 5, 7, 11, 13):
        n = 1
        while p**n <= limit:
            q = p**n
            seen = set()
            for g in _units(q):
                order = multiplicative_order(g, q)
                if q * order > limit:
                    continue
                key = frozenset(pow(g, j, q) for j in range(order))
                if key in seen:
                    continue
                seen.add(key)
                yield p, n, g
            n += 1


@pytest.mark.parametrize("p,n,g", list(_odd_cases(10**4)))
def test_k0_formula_matches_oracle(p, n, g):
    q = p**n
    order = multiplicative_order(g, q)
    s = 0
    while order % p == 0:
        order //= p
        s += 1
    assert k0_semidirect(p, n, order, s) == conjugacy_count(p, n, g)[1]
    assert k0_semidirect(p, n, gamma=g) == conjugacy_count(p, n, g)[1]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_k0_even_branch_matches_oracle(n):
    q = 2**n
    for g in _units(q):
        assert k0_semidirect(2, n, gamma=g) == conjugacy_count(2, n, g)[1], g


def test_semidirect_rows_and_gram():
    mdl = semidirect_model(3, 1, 1)
    b = build_basis(mdl.modulus, mdl.subgroup)
    assert semidirect_coefficients(mdl, b) == [[-1, -1], [1, 0], [0, 1]]
    assert la.gram_of_rows(semidirect_coefficients(mdl, b), 2) == [[2, 1], [1, 2]]

    mdl = semidirect_model(3, 1, 2)
    b = build_basis(mdl.modulus, mdl.subgroup)
    assert la.gram_of_rows(semidirect_coefficients(mdl, b), 1) == [[3]]

    mdl = semidirect_model(5, 1, 4)
    b = build_basis(mdl.modulus, mdl.subgroup)
    assert la.gram_of_rows(semidirect_coefficients(mdl, b), 2) == [[3, 2], [2, 3]]
    assert semidirect_gram_sum(mdl, b) == 4


def test_basis_mismatch_rejected():
    mdl = semidirect_model(5, 1, 4)
    other = build_basis(mdl.modulus, semidirect_model(5, 1, 2).subgroup)
    with pytest.raises(ValueError):
        semidirect_coefficients(mdl, other)


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2)])
def test_gram_sum_equals_k0(p, n):
    mod = PrimePowerModulus(p, n)
    for h in cyclic_subgroups(mod):
        g = h.generator()
        mdl = semidirect_model(p, n, g)
        b = build_basis(mod, h)
        assert semidirect_gram_sum_check(mdl, b)
        assert semidirect_gram_sum(mdl, b) == k0_semidirect(p, n, h.r, h.s)
        # the nonzero entries of the column account for the height-zero characters
        assert mdl.row_count == k0_semidirect(p, n, h.r, h.s)


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (5, 1), (7, 1)])
def test_power_basis_gram_is_the_one_character_matrix(p, n):
    mod = PrimePowerModulus(p, n)
    for h in cyclic_subgroups(mod):
        g = h.generator()
        a = semidirect_coefficients(semidirect_model(p, n, g))
        spec = SubsectionSpec.create(p, n, [[1]], [g], [[1]])
        assert build_m(spec) == la.gram_of_rows(a, mod.m)


# -- metacyclic ---------------------------------------------------------------


def test_kiyota_rows():
    mdl = metacyclic_q(3, 1, 1, 2, 2, 2)
    mod = PrimePowerModulus(3, 1)
    z, z2 = reduce_power(mod, 1), reduce_power(mod, 2)
    one = CycInt.integer(mod, 1)
    got = Counter()
    for row in mdl.rows:
        got[row.entries] += row.multiplicity
    assert got == Counter({(one, one): 3, (z2, z): 1, (z, z2): 1, (-one, -one): 1})
    assert mdl.row_count == 6 == finallem_bound(3, 1, 1, 2, 2, 2)


def test_kiyota_gram_and_orthogonality():
    mdl = metacyclic_q(3, 1, 1, 2, 2, 2)
    assert verify_orthogonality(mdl)
    gram = metacyclic_coefficient_gram(mdl)
    assert gram == KIYOTA_TRACE
    assert congruent(gram, KIYOTA_POWER)
    assert not verify_orthogonality(perturbed(mdl, 0))


def test_p5_model_row_count():
    mdl = metacyclic_q(5, 1, 1, 2, 2, 2)
    assert mdl.family_sizes() == (1, 4, 4, 4)
    assert mdl.row_count == 13 == metacyclic_class_count(5, 1, 1, 2, 2, 2)


def test_trivial_twist_reduces_to_semidirect_rows():
    p, n1, n2, l1 = 7, 1, 1, 3
    mdl = metacyclic_q(p, n1, n2, l1, 1, 1)
    semi = semidirect_model(p, n1, mdl.gamma1)
    got = Counter()
    for row in mdl.rows:
        (entry,) = row.entries
        got[entry] += row.multiplicity
    want = Counter({v: mult * p**n2 for v, mult in semi.rows})
    assert got == want


def _metacyclic_params(max_order):
    for p in (3, 5, 7):
        divs = [d for d in range(1, p) if (p - 1) % d == 0]
        for l1 in divs:
            for l2 in divs:
                for d in range(1, gcd(l1, l2) + 1):
                    if gcd(l1, l2) % d:
                        continue
                    for n1, n2 in ((1, 1), (2, 1), (1, 2)):
                        if p ** (n1 + n2) * d * l1 * l2 <= max_order:
                            yield p, n1, n2, l1, l2, d


@pytest.mark.parametrize("params", list(_metacyclic_params(6000)))
def test_metacyclic_models_against_class_count(params):
    p, n1, n2, l1, l2, d = params
    mdl = metacyclic_q(*params)
    assert verify_orthogonality(mdl)
    assert mdl.family_sizes() == mdl.expected_family_sizes()
    assert mdl.row_count == brauer_diff(p, n1, n2, l1, l2) + l1 * l2 // (d * d)
    assert mdl.row_count == metacyclic_class_count(*params)
    assert mdl.row_count <= finallem_bound(*params)


def test_metacyclic_parameter_checks():
    with pytest.raises(ValueError):
        metacyclic_q(3, 1, 1, 2, 2, 3)
    with pytest.raises(ValueError):
        metacyclic_q(5, 1, 1, 3, 2, 1)
    with pytest.raises(ValueError):
        metacyclic_q(5, 1, 1, 4, 2, 2, gamma1=4)


# -- closed forms -------------------------------------------------------------


def test_finallem_values():
    assert finallem_bound(3, 1, 1, 2, 2, 2) == 6
    assert finallem_bound(7, 1, 1, 6, 6, 6) == 14
    for p in (3, 5, 7):
        for n1 in range(1, 4):
            for n2 in range(1, 4):
                if p ** (n1 + n2) <= 625:
                    assert finallem_bound(p, n1, n2, 1, 1, 1) == p ** (n1 + n2)


def test_brauer_diff_values():
    assert brauer_diff(3, 1, 1, 2, 2) == 5
    assert brauer_diff(5, 1, 1, 4, 2) == 12
    assert brauer_diff(5, 2, 1, 1, 1) == 5**3 - 1
    with pytest.raises(ValueError):
        brauer_diff(5, 1, 1, 3, 1)


def test_l2_major_bound_values():
    assert l2_major_bound(9, 2, [[5, 4], [4, 5]]) == 36
    assert l2_major_bound(9, 2, 5, 4, 5) == 36
    assert l2_major_bound(3, 2, [[2, 1], [1, 2]]) == 9
    assert l2_major_bound(7, 1, 1, 0, 1) == 2 * 7


def test_navarro_check_values():
    assert navarro_check(9, 2, 3, 9, 3)
    assert navarro_check(9, 2, 3, 9, 9)
    assert not navarro_check(9, 2, 9, 9, 3)
    with pytest.raises(ValueError):
        navarro_check(0, 1, 1, 1, 1)


def test_cyclic_cartan_values():
    assert cyclic_cartan(9, 2) == [[5, 4], [4, 5]]
    assert cyclic_cartan(7, 1) == [[7]]
    assert cyclic_cartan(7, 3) == [[3, 2, 2], [2, 3, 2], [2, 2, 3]]
    with pytest.raises(ValueError):
        cyclic_cartan(9, 3)
