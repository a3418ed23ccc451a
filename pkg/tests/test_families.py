from fractions import Fraction

import pytest

from rdqm.core.exceptions import InvalidInput, InvalidParameters
from rdqm.services import families
from rdqm.services.family_catalog import REGISTRY, FamilyId

ALL_FAMILIES = list(REGISTRY)
FINITE = [fam for fam, record in REGISTRY.items() if record.finite]


def _grid(ps):
    return range(0, ps.N + 1) if ps.record.finite else range(0, 7)


def _degrees(ps):
    return range(0, min(ps.N, 4) + 1) if ps.record.finite else range(0, 5)


def test_registry_has_nineteen_families():
    assert len(REGISTRY) == 19
    assert sum(1 for record in REGISTRY.values() if record.finite) == 11


def test_resolve_family_tokens():
    assert families.resolve_family("QB") is FamilyId.QB
    assert families.resolve_family(FamilyId.R) is FamilyId.R
    with pytest.raises(InvalidInput):
        families.resolve_family("wilson")


def test_make_params_computes_lattice_slot():
    qr = families.make_params("qr", {"q": "1/2", "a": "1/5000", "b": "1/3", "d": "1/10"}, 5)
    assert qr.values[2] == 32
    assert qr.N == 5
    r = families.make_params("r", {"a": "13/2", "b": "3/4", "d": "1/2"}, 5)
    assert r.values[2] == -5
    k = families.make_params("k", {"p": "1/3"}, 4)
    assert k.values == (Fraction(1, 3), Fraction(4))


def test_make_params_errors():
    with pytest.raises(InvalidInput):
        families.make_params("qr", {"a": "1/2", "b": "1/3", "d": "1/10"}, 5)
    with pytest.raises(InvalidParameters):
        families.make_params("qha", {"q": "3/2", "a": "1/3", "b": "1/5"}, 5)
    with pytest.raises(InvalidInput):
        families.make_params("k", {"p": "1/3", "z": "1"}, 4)
    with pytest.raises(InvalidInput):
        families.make_params("c", {"a": "1", "q": "1/2"})


def test_describe_uses_rational_literals(qr_point):
    described = qr_point.describe()
    assert described["c"] == "32"
    assert described["q"] == "1/2"
    assert described["N"] == "5"


@pytest.mark.parametrize("family", ALL_FAMILIES, ids=lambda f: f.value)
def test_normalization_and_boundaries(family):
    ps = families.safe_params(family)
    assert all(families.eval_polynomial(ps, n, 0) == 1 for n in _degrees(ps))
    assert families.check_boundaries(ps)
    assert families.check_positivity(ps)


@pytest.mark.parametrize("family", ALL_FAMILIES, ids=lambda f: f.value)
def test_difference_equation(family):
    ps = families.safe_params(family)
    for n in _degrees(ps):
        for x in _grid(ps):
            assert families.check_difference_equation(ps, n, x), (n, x)


@pytest.mark.parametrize("family", ALL_FAMILIES, ids=lambda f: f.value)
def test_energy_ordering_and_varphi(family):
    ps = families.safe_params(family)
    assert families.check_energy_ordering(ps)
    assert all(families.check_varphi_identity(ps, x) for x in _grid(ps))


@pytest.mark.parametrize("family", FINITE, ids=lambda f: f.value)
def test_ground_state_forms_and_orthogonality(family):
    ps = families.safe_params(family)
    assert families.check_phi0_forms(ps)
    for n in range(ps.N + 1):
        for m in range(n, ps.N + 1):
            assert families.orthogonality_check(ps, n, m).passed, (n, m)


@pytest.mark.parametrize("family", ALL_FAMILIES, ids=lambda f: f.value)
def test_alternate_points_build(family):
    points = families.sample_param_sets(family)
    assert len(points) >= 3
    assert len(set(points)) == len(points)


def test_krawtchouk_values(k_point):
    # P̌₁(x) = 1 − x/(pN) com p = 1/3, N = 5
    assert families.eval_polynomial(k_point, 1, 1) == Fraction(2, 5)
    assert families.eval_energy(k_point, 3) == 3
    assert families.B(k_point, 2) == 1
    assert families.D(k_point, 3) == 2


def test_shape_invariance_and_forward_shift(k_point, r_point):
    assert families.check_shape_invariance(k_point, range(0, k_point.N))
    assert families.check_shape_invariance(r_point, range(0, r_point.N))
    assert all(families.check_forward_shift(k_point, n, x) for n in range(1, 4) for x in range(5))


def test_negative_energy_index_needs_flag(r_point):
    with pytest.raises(InvalidInput):
        families.eval_energy(r_point, -1)
    # E₋₁ = −1·(−1 + d̃), d̃ = 3/4
    assert families.eval_energy(r_point, -1, allow_negative=True) == Fraction(1, 4)


def test_racah_reflection(r_point):
    assert families.reflection_constant(r_point, 1) == Fraction(-39, 38)
    for n in range(3):
        for x in range(r_point.N + 1):
            assert families.check_reflection_symmetry(r_point, x, n)


def test_q_inversion(qr_point):
    inverted = families.inverted_params(qr_point)
    assert inverted.q == 2
    assert inverted.N == 5
    for n in range(3):
        for x in range(qr_point.N + 1):
            assert families.check_q_inversion(qr_point, n, x)


@pytest.mark.parametrize("family", ["lqj", "qb"])
def test_alternate_polynomial_forms(family):
    ps = families.safe_params(family)
    verdicts = families.check_polynomial_forms(ps, range(4), range(7))
    assert verdicts and all(verdicts.values()), verdicts
    with pytest.raises(InvalidInput):
        families.eval_polynomial_form(ps, "wilson", 1, 0)


@pytest.mark.parametrize("family", ["ha", "dha"])
def test_hahn_sample_points_avoid_integer_sums(family):
    for ps in families.sample_param_sets(family):
        a, b, _ = ps.values
        assert all(value.denominator != 1 for value in (a, b, a + b)), ps.describe()
