from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockbounds import _linalg as la
from blockbounds.gram_search import max_k
from blockbounds.qforms import (
    NotIntegral,
    QuadraticForm,
    bound_outer,
    bound_stable,
    change_basic_set,
    dynkin_a,
    minimum_at_least_one,
    sum_of_squares,
    tensor,
    weighted_sum,
)

from conftest import EXAMPLE_CARTAN, EXAMPLE_REDUCED, KIYOTA_TRACE

INTEGRAL_FORMS = [
    sum_of_squares(1),
    sum_of_squares(2),
    dynkin_a(1),
    dynkin_a(2),
    dynkin_a(3),
    QuadraticForm.from_coefficients({(0, 0): 1, (1, 1): 1, (0, 1): 1}, 2),
    QuadraticForm.from_coefficients({(0, 0): 2, (1, 1): 1, (2, 2): 1, (0, 1): -1, (1, 2): 1}, 3),
]


def test_dynkin_forms():
    assert dynkin_a(1)((3,)) == 9
    q = dynkin_a(2)
    assert q.doubled_gram == [[2, -1], [-1, 2]]
    assert q((1, 1)) == 1 and q((2, 1)) == 3
    assert q.integral
    with pytest.raises(ValueError):
        dynkin_a(0)


@pytest.mark.parametrize("t", range(1, 9))
def test_dynkin_minimum(t):
    assert minimum_at_least_one(dynkin_a(t))


def test_tensor_with_unit_form_is_identity():
    q = dynkin_a(3)
    assert tensor(sum_of_squares(1), q).bilinear == q.bilinear


def test_tensor_minimum_and_integrality():
    a2a2 = tensor(dynkin_a(2), dynkin_a(2))
    assert minimum_at_least_one(a2a2)
    assert a2a2((1, 0, 0, 0)) == 1
    assert not a2a2.integral
    assert minimum_at_least_one(tensor(dynkin_a(2), dynkin_a(3)))


def test_half_square_fails():
    assert not minimum_at_least_one(QuadraticForm(((1,),), 2))


def test_rank_cap():
    with pytest.raises(ValueError):
        minimum_at_least_one(dynkin_a(13))


def test_weighted_sums():
    assert weighted_sum(dynkin_a(2), KIYOTA_TRACE) == 6
    assert weighted_sum(dynkin_a(4), EXAMPLE_CARTAN) == 6
    assert weighted_sum(dynkin_a(3), [[0] * 3] * 3) == 0
    c = [[1 + (i == j) for j in range(3)] for i in range(3)]
    assert weighted_sum(tensor(dynkin_a(3), dynkin_a(3)), la.kron(c, c)) == 16
    with pytest.raises(ValueError):
        weighted_sum(dynkin_a(2), EXAMPLE_CARTAN)


def test_bounds():
    assert bound_outer(dynkin_a(4), EXAMPLE_CARTAN, 3) == 18
    assert bound_stable(dynkin_a(4), EXAMPLE_CARTAN, 3) == 18
    for n, d in ((1, 1), (2, 3)):
        assert bound_outer(sum_of_squares(1), [[3**d]], 3**n) == 3 ** (n + d)
    with pytest.raises(NotIntegral):
        bound_outer(tensor(dynkin_a(2), dynkin_a(2)), la.kron(KIYOTA_TRACE, KIYOTA_TRACE), 3)


def test_change_basic_set():
    assert change_basic_set(KIYOTA_TRACE, [[1, 0], [0, 1]]) == KIYOTA_TRACE
    assert change_basic_set(KIYOTA_TRACE, [[1, 0], [-1, 1]]) == [[5, -1], [-1, 2]]
    assert change_basic_set(KIYOTA_TRACE, [[1, 0], [1, 1]]) == [[5, 9], [9, 18]]
    with pytest.raises(ValueError):
        change_basic_set(KIYOTA_TRACE, [[2, 0], [0, 1]])


@st.composite
def unimodular(draw, n):
    s = la.identity(n)
    for _ in range(draw(st.integers(0, 6))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i != j:
            c = draw(st.integers(-2, 2))
            s[i] = [a + c * b for a, b in zip(s[i], s[j])]
    return s


@given(unimodular(4), st.sampled_from([dynkin_a(4), tensor(dynkin_a(2), dynkin_a(2))]))
@settings(max_examples=40, deadline=None)
def test_pairing_is_basic_set_invariant(s, q):
    moved = la.matmul(la.matmul(s, EXAMPLE_REDUCED), la.transpose(s))
    assert weighted_sum(q.contragredient(s), moved) == weighted_sum(q, EXAMPLE_REDUCED)


@pytest.mark.parametrize("q", INTEGRAL_FORMS, ids=str)
@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_tensor_with_dynkin_keeps_minimum(q, t):
    assert q.integral and q.is_positive_definite()
    assert minimum_at_least_one(q)
    assert minimum_at_least_one(tensor(q, dynkin_a(t)))


@pytest.mark.parametrize(
    "m,q",
    [
        (KIYOTA_TRACE, dynkin_a(2)),
        (EXAMPLE_REDUCED, dynkin_a(4)),
        (EXAMPLE_REDUCED, sum_of_squares(4)),
        ([[2, 1], [1, 2]], dynkin_a(2)),
    ],
)
def test_counting_argument(m, q):
    # rows of any decomposition each contribute at least 1
    res = max_k(m)
    total = sum(q(row) for row in res.witness.rows)
    assert total == weighted_sum(q, m)
    assert res.k <= total


def test_string_form():
    assert str(dynkin_a(2)) == "1*x1^2 - 1*x1x2 + 1*x2^2"
    assert QuadraticForm.from_bilinear([[Fraction(1, 4)]]).denom == 4
