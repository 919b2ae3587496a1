from __future__ import annotations

import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockbounds import _linalg as la
from blockbounds.cyclotomic import PrimePowerModulus
from blockbounds.lattice import congruent, prune
from blockbounds.models import semidirect_reduced_gram
from blockbounds.ortho import (
    ActionCartanMismatch,
    InvalidSpec,
    SubsectionSpec,
    block_of,
    build_m,
    build_m_stable,
    neg_residue,
    w_count,
)

from conftest import EXAMPLE_M, example_spec, kiyota_spec


def test_neg_residue():
    m3, m9 = PrimePowerModulus(3, 1), PrimePowerModulus(3, 2)
    assert [neg_residue(i, m3) for i in range(5)] == [1] * 5
    assert neg_residue(1, m9) == 2
    assert neg_residue(0, m9) == 3


def test_w_count_small():
    trivial = SubsectionSpec.create(3, 1, [[1]])
    assert w_count(0, 0, 0, 1, trivial) == 2
    assert w_count(0, 1, 0, 1, trivial) == 1
    stable = SubsectionSpec.create(3, 1, [[1]], [2], [[1]])
    assert w_count(0, 0, 0, 1, stable) == 3
    with pytest.raises(ValueError):
        w_count(0, 0, 0, 2, trivial)


def test_example_matrix_exact():
    m = build_m(example_spec())
    assert m == EXAMPLE_M
    assert m.trace() == 38 and m.rank() == 4


def test_kiyota_diagonal_block():
    m = build_m(kiyota_spec())
    assert block_of(m, 0, 0, 2) == [[5, 1], [1, 2]]


def test_one_character_cases():
    for c in (1, 3, 9):
        assert build_m(SubsectionSpec.create(3, 1, [[c]])) == [[2 * c, c], [c, 2 * c]]
    assert build_m(SubsectionSpec.create(3, 1, [[3]], [2], [[1]])) == [[9, 0], [0, 0]]


def test_stable_construction():
    assert build_m_stable(SubsectionSpec.create(3, 1, [[3]], [2], [[1]])) == [[9]]
    two = SubsectionSpec.create(3, 1, [[2, 1], [1, 2]])  # det 3
    assert build_m_stable(two) == la.kron([[2, 1], [1, 2]], [[2, 1], [1, 2]])
    five = SubsectionSpec.create(5, 1, [[5]], [4], [[1]])
    t = semidirect_reduced_gram(PrimePowerModulus(5, 1), five.subgroup)
    assert build_m_stable(five) == [[5 * x for x in r] for r in t]
    with pytest.raises(ValueError):
        build_m_stable(example_spec())


@pytest.mark.parametrize("p,n,g", [(3, 1, 2), (3, 2, 8), (3, 2, 4), (5, 1, 4), (5, 1, 2), (7, 1, 6)])
def test_stable_construction_is_reduced_power_basis_matrix(p, n, g):
    spec = SubsectionSpec.create(p, n, [[1]], [g], [[1]])
    stable = build_m_stable(spec)
    assert congruent(prune(build_m(spec)).reduced, stable)


def test_action_must_preserve_cartan():
    with pytest.warns(UserWarning):
        spec = SubsectionSpec.create(3, 1, [[3, 1], [1, 2]], [2], [[2, 1]])
    with pytest.raises(ActionCartanMismatch):
        build_m(spec)


def test_invalid_specs():
    with pytest.raises(InvalidSpec):
        SubsectionSpec.create(3, 1, [[1, 2], [2, 1]])
    with pytest.raises(InvalidSpec):
        SubsectionSpec.create(3, 1, [[2, 1], [1, 2]], [2], [[1, 1]])
    with pytest.raises(InvalidSpec):
        # -1 has order 2 but the 3-cycle has order 3
        SubsectionSpec.create(7, 1, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], [6], [[2, 3, 1]])
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        SubsectionSpec.create(3, 1, [[2]])
    assert caught


@st.composite
def random_specs(draw):
    p = draw(st.sampled_from([3, 5, 7]))
    l = draw(st.integers(1, 3))
    c = draw(st.integers(1, 3))
    d = c + draw(st.integers(1, 2))
    # constant diagonal and off-diagonal: every permutation action is allowed
    cartan = [[d if i == j else c for j in range(l)] for i in range(l)]
    g = draw(st.integers(1, p - 1))
    perm = draw(st.permutations(list(range(1, l + 1))))
    return p, cartan, g, perm


@given(random_specs())
@settings(max_examples=40, deadline=None)
def test_random_specs_give_symmetric_psd_blocks(data):
    p, cartan, g, perm = data
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            spec = SubsectionSpec.create(p, 1, cartan, [g], [perm])
        except InvalidSpec:
            return
    m = build_m(spec)
    mm = spec.modulus.m
    for s in range(spec.l):
        for t in range(spec.l):
            assert block_of(m, s, t, mm) == la.transpose(block_of(m, t, s, mm))
    assert m.rank() is not None
