from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rdqm.core.exact import (
    ProportionalityStatus,
    TriDiagMatrix,
    det_exact,
    divided_difference,
    eigenvalues_symmetric_tridiag,
    fit_proportionality,
    format_rational,
    make_context,
    parse_rational,
    rat,
    to_bigfloat,
    tolerance,
    tridiag_determinant,
)
from rdqm.core.exceptions import DivisionByZero, InvalidInput

small_fractions = st.fractions(min_value=-10, max_value=10, max_denominator=50)
nonzero_fractions = small_fractions.filter(lambda v: v != 0)


def test_parse_rational_literals():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-2") == Fraction(-2)
    assert parse_rational("6/8") == Fraction(3, 4)


def test_parse_rational_rejects_zero_denominator():
    with pytest.raises(DivisionByZero):
        parse_rational("1/0")


@pytest.mark.parametrize("text", ["abc", "1/", "1.5", "", "1 /2"])
def test_parse_rational_rejects_malformed(text):
    with pytest.raises(InvalidInput):
        parse_rational(text)


def test_rat_normalizes_sign():
    value = rat(3, -6)
    assert value == Fraction(-1, 2)
    assert value.denominator > 0


def test_format_rational():
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-5, 10)) == "-1/2"


@given(small_fractions)
def test_format_parse_inverse(value):
    assert parse_rational(format_rational(value)) == value


@given(small_fractions, small_fractions, small_fractions)
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x + y + z == z + y + x


def test_fit_proportionality_ratio():
    report = fit_proportionality([2, 4, 0, -6], [1, 2, 0, -3])
    assert report.status is ProportionalityStatus.PROPORTIONAL
    assert report.ratio == 2


def test_fit_proportionality_both_zero():
    report = fit_proportionality([0, 0], [0, 0])
    assert report.status is ProportionalityStatus.BOTH_ZERO
    assert not report.proportional


def test_fit_proportionality_zero_on_one_side_is_mismatch():
    report = fit_proportionality([1, 0], [1, 1])
    assert report.status is ProportionalityStatus.MISMATCH
    assert report.mismatch_index == 1


def test_fit_proportionality_needs_two_samples():
    with pytest.raises(InvalidInput):
        fit_proportionality([1], [1])


@given(nonzero_fractions, st.lists(nonzero_fractions, min_size=2, max_size=8))
def test_fit_recovers_ratio(ratio, values):
    report = fit_proportionality([ratio * v for v in values], values)
    assert report.proportional
    assert report.ratio == ratio


def test_det_exact():
    assert det_exact([[1, 2], [3, 4]]) == -2
    assert det_exact([]) == 1
    assert det_exact([[0, 1], [1, 0]]) == -1


@given(st.lists(small_fractions, min_size=1, max_size=5), st.data())
def test_continuant_matches_dense_determinant(diag, data):
    n = len(diag)
    upper = data.draw(st.lists(small_fractions, min_size=n - 1, max_size=n - 1))
    lower = data.draw(st.lists(small_fractions, min_size=n - 1, max_size=n - 1))
    matrix = TriDiagMatrix(tuple(diag), tuple(upper), tuple(lower))
    products = [u * l for u, l in zip(upper, lower)]
    assert tridiag_determinant(diag, products) == det_exact(matrix.to_dense(Fraction(0)))


def test_tridiag_apply():
    matrix = TriDiagMatrix((2, 2, 2), (-1, -1), (-1, -1))
    assert matrix.apply([1, 1, 1]) == [1, 0, 1]
    assert matrix.trace() == 6


def test_tridiag_rejects_bad_shapes():
    with pytest.raises(InvalidInput):
        TriDiagMatrix((1, 2), (1, 1), (1,))


@given(st.lists(small_fractions, min_size=2, max_size=6))
def test_divided_difference_kills_low_degree(coefficients):
    # polinômio de grau len-1 avaliado em len+1 nós
    nodes = [Fraction(k) for k in range(len(coefficients) + 1)]
    values = [sum(c * t ** j for j, c in enumerate(coefficients)) for t in nodes]
    assert divided_difference(nodes, values) == 0


def test_divided_difference_leading_coefficient():
    nodes = [Fraction(0), Fraction(1), Fraction(3)]
    values = [5 * t * t + 2 for t in nodes]
    assert divided_difference(nodes, values) == 5


def test_eigenvalues_of_small_matrix():
    ctx = make_context(128)
    eigenvalues = eigenvalues_symmetric_tridiag([2, 2], [-1], ctx)
    tol = tolerance(ctx, 100)
    assert abs(eigenvalues[0] - 1) < tol
    assert abs(eigenvalues[1] - 3) < tol


def test_small_eigenvalue_keeps_relative_accuracy():
    ctx = make_context(128)
    d0, d1, e = Fraction(1, 10**40), Fraction(1), Fraction(1, 10**30)
    small, large = eigenvalues_symmetric_tridiag([d0, d1], [e], ctx)
    det = to_bigfloat(d0 * d1 - e * e, ctx)
    assert small > 0
    assert abs(small * large - det) <= abs(det) * tolerance(ctx, 100)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6), st.data())
def test_eigenvalue_sum_equals_trace(diag, data):
    offdiag = data.draw(st.lists(st.integers(-20, 20), min_size=len(diag) - 1, max_size=len(diag) - 1))
    ctx = make_context(128)
    eigenvalues = eigenvalues_symmetric_tridiag(diag, offdiag, ctx)
    assert eigenvalues == sorted(eigenvalues)
    assert abs(sum(eigenvalues) - sum(diag)) < tolerance(ctx, 80)


def test_eigenvalues_reject_bad_shapes():
    with pytest.raises(InvalidInput):
        eigenvalues_symmetric_tridiag([1, 2], [1, 2])


def test_to_bigfloat_precision():
    ctx = make_context(256)
    value = to_bigfloat(Fraction(1, 3), ctx)
    assert abs(value * 3 - 1) < tolerance(ctx, 250)
