from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rdqm.core.exceptions import InvalidInput, PoleInSeries
from rdqm.services.qseries import (
    SeriesSpec,
    hyper,
    poch,
    poch_product,
    qhyper,
    qpoch,
    qpoch_inverse_base_identity_check,
    qpoch_product,
)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=30)
unit_interval = st.fractions(min_value=Fraction(1, 50), max_value=Fraction(49, 50), max_denominator=60)
orders = st.integers(min_value=0, max_value=6)


def test_poch_basics():
    assert poch(Fraction(1), 5) == factorial(5)
    assert poch(Fraction(7, 3), 0) == 1
    assert poch(Fraction(-2), 3) == 0


def test_qpoch_basics():
    q = Fraction(1, 2)
    assert qpoch(Fraction(3), q, 0) == 1
    assert qpoch(q, q, 2) == (1 - q) * (1 - q * q)
    assert qpoch(Fraction(1), q, 3) == 0


def test_negative_order_rejected():
    with pytest.raises(InvalidInput):
        poch(Fraction(1), -1)
    with pytest.raises(InvalidInput):
        qpoch(Fraction(1), Fraction(1, 2), -1)


@settings(max_examples=120)
@given(rationals, orders, orders)
def test_pochhammer_splitting(a, m, n):
    assert poch(a, m + n) == poch(a, m) * poch(a + m, n)


@settings(max_examples=120)
@given(rationals, unit_interval, orders, orders)
def test_q_pochhammer_splitting(a, q, m, n):
    assert qpoch(a, q, m + n) == qpoch(a, q, m) * qpoch(a * q ** m, q, n)


@settings(max_examples=120)
@given(rationals.filter(lambda v: v != 0), unit_interval, orders)
def test_inverse_base_identity(a, q, n):
    assert qpoch_inverse_base_identity_check(a, q, n)


@given(st.permutations([Fraction(1, 3), Fraction(-2, 5), Fraction(7, 4)]), unit_interval, orders)
def test_product_is_permutation_invariant(params, q, n):
    base = [Fraction(1, 3), Fraction(-2, 5), Fraction(7, 4)]
    assert poch_product(params, n) == poch_product(base, n)
    assert qpoch_product(params, q, n) == qpoch_product(base, q, n)


@settings(max_examples=100)
@given(
    st.integers(min_value=0, max_value=6),
    rationals,
    st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=30),
)
def test_chu_vandermonde(n, b, c):
    # ₂F₁(−n, b; c | 1) = (c−b)_n / (c)_n
    assert hyper([-n, b], [c], 1, n) == poch(c - b, n) / poch(c, n)


@settings(max_examples=100)
@given(
    st.integers(min_value=0, max_value=5),
    unit_interval,
    unit_interval,
    unit_interval,
)
def test_q_chu_vandermonde(n, b, c, q):
    # ₂φ₁(q⁻ⁿ, b; c | q; q) = (c/b;q)_n bⁿ / (c;q)_n
    lhs = qhyper([q ** (-n), b], [c], q, q, n)
    assert lhs == qpoch(c / b, q, n) * b ** n / qpoch(c, q, n)


def test_series_degree_zero_is_one():
    assert hyper([0, Fraction(3)], [Fraction(2)], Fraction(5), 0) == 1


def test_series_requires_terminator():
    with pytest.raises(InvalidInput):
        SeriesSpec((Fraction(1), Fraction(2)), (Fraction(3),), Fraction(1), 2)


def test_series_pole_reported():
    with pytest.raises(PoleInSeries) as info:
        hyper([-2, 1], [-1], 1, 2)
    assert info.value.order == 2


def test_q_series_rejects_unit_base():
    with pytest.raises(InvalidInput):
        qhyper([1], [], Fraction(1), Fraction(1), 0)
