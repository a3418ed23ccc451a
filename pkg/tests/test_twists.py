from fractions import Fraction

import pytest

from rdqm.core.exceptions import InvalidInput
from rdqm.services import twists
from rdqm.services.families import safe_params
from rdqm.services.twist_catalog import ADDING

ALL_TWISTS = [(fam, token) for fam in twists.xi_families() for token in twists.registered_twists(fam)]
DEFAULT_TWISTS = [(fam, twists.default_twist(fam)) for fam in twists.xi_families()]
RATIO_PAIRS = [(fam, pair) for fam in twists.xi_families() for pair in twists.ratio_pairs(fam)]


def _ids(case):
    fam, token = case
    return f"{fam.value}/{token}" if isinstance(token, str) else f"{fam.value}/{token[0]}-{token[1]}"


def _grid(ps):
    return range(0, ps.N + 1) if ps.record.finite else range(0, 6)


def test_krawtchouk_twist_constants(k_point):
    tp = twists.make_twist(k_point, "i")
    assert tp.alpha == -1
    assert tp.alpha_prime == -1
    assert tp.alpha_source == "printed"
    # B′(x) = −(2/3)(x+1), D′(x) = (x−6)/3
    assert tp.Bprime(2) == -2
    assert tp.Dprime(3) == -1
    assert tp.Bprime(-1) == 0
    assert tp.Dprime(k_point.N + 1) == 0


def test_krawtchouk_pseudo_virtual_polynomial(k_point):
    # ξ̌₁(x) = (4 − 3x)/7
    assert twists.eval_xi(k_point, "i", 1, 0) == Fraction(4, 7)
    assert twists.eval_xi(k_point, "i", 1, 2) == Fraction(-2, 7)
    assert twists.eval_xi(k_point, "i", 0, 3) == 1
    for v in range(4):
        assert twists.pseudo_energy(k_point, "i", v) == -v - 1


def test_charlier_pseudo_virtual_polynomial():
    ps = safe_params("c")
    tp = twists.make_twist(ps, "i")
    assert (tp.alpha, tp.alpha_prime) == (-1, -1)
    assert twists.eval_xi(ps, "i", 1, 0) == Fraction(1, 3)


@pytest.mark.parametrize("case", ALL_TWISTS, ids=_ids)
def test_twist_is_involution_and_satisfies_relations(case):
    fam, token = case
    ps = safe_params(fam)
    tp = twists.make_twist(ps, token)
    assert twists.check_involution(ps, token)
    xs = range(-1, ps.N + 2) if ps.record.finite else range(0, 9)
    assert twists.check_twist_relations(tp, xs)
    assert all(twists.check_pseudo_energy(ps, token, v) for v in range(5))


@pytest.mark.parametrize("case", DEFAULT_TWISTS, ids=_ids)
def test_xi_difference_equation_and_degree(case):
    fam, token = case
    ps = safe_params(fam)
    for v in range(3):
        assert twists.check_xi_degree(ps, token, v)
        for x in _grid(ps):
            assert twists.check_xi_difference_equation(ps, token, v, x), (v, x)


@pytest.mark.parametrize("case", DEFAULT_TWISTS, ids=_ids)
def test_printed_forms_agree_with_definition(case):
    fam, token = case
    ps = safe_params(fam)
    for v in range(3):
        verdicts = twists.check_xi_forms(ps, token, v, _grid(ps))
        assert verdicts and all(verdicts.values()), verdicts


@pytest.mark.parametrize("case", RATIO_PAIRS, ids=_ids)
def test_xi_proportionality_between_twists(case):
    fam, (first, second) = case
    ps = safe_params(fam)
    for v in range(3):
        result = twists.check_xi_proportionality(ps, second, first, v)
        assert result.passed, (v, result.report)


def test_adding_twist_has_no_pseudo_virtual_polynomial(qr_point):
    rule = twists.get_rule(qr_point.family, "iii")
    assert rule.energy_relation == ADDING
    with pytest.raises(InvalidInput):
        twists.eval_xi(qr_point, "iii", 1, 0)
    assert twists.expected_pseudo_energy(qr_point, "iii", 0) == twists.families.eval_energy(
        qr_point, qr_point.N + 1
    )


def test_unknown_twist_rejected(k_point):
    with pytest.raises(InvalidInput):
        twists.get_rule(k_point.family, "iii")
    with pytest.raises(InvalidInput):
        twists.eval_xi(k_point, "i", -1, 0)
