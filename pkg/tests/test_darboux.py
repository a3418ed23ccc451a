import pytest

from rdqm.core.exceptions import InvalidInput
from rdqm.services import darboux, families, twists


@pytest.fixture
def qr_bundle(qr_point):
    return darboux.build_hamiltonian(qr_point)


def test_q_racah_point_inside_range(qr_point):
    verdicts = darboux.validate_parameter_range(qr_point)
    assert darboux.range_satisfied(verdicts), [v.name for v in verdicts if not v.satisfied]
    assert {"d < q^2", "b < q", "B, D > 0"} <= {v.name for v in verdicts}


def test_q_racah_inequality_violation_reported():
    ps = families.make_params("qr", {"q": "1/2", "a": "1/5000", "b": "1/3", "d": "3/10"}, 5)
    verdicts = {v.name: v.satisfied for v in darboux.validate_parameter_range(ps, vs=())}
    assert verdicts["d < q^2"] is False
    assert verdicts["0 < ac < d < 1"] is True


def test_krawtchouk_range_depends_on_degree(k_point):
    assert darboux.range_satisfied(darboux.validate_parameter_range(k_point, vs=(0,)))
    # ξ̌₁(x) = (4 − 3x)/7 troca de sinal
    assert not darboux.range_satisfied(darboux.validate_parameter_range(k_point, vs=(1,)))


def test_semi_infinite_family_rejected():
    with pytest.raises(InvalidInput):
        darboux.build_hamiltonian(families.safe_params("c"))


def test_hamiltonian_and_ground_state(qr_point, qr_bundle):
    assert qr_bundle.size == qr_point.N + 1
    assert all(darboux.check_htilde_eigen(qr_bundle, n) for n in range(qr_point.N + 1))
    assert darboux.check_gauge_consistency(qr_bundle)
    report = darboux.ground_state(qr_bundle)
    assert report.weights[0] == 1
    assert report.balance_exact
    assert report.passed


def test_phitilde0_closed_form(qr_point):
    assert darboux.check_phitilde0_closed_form(qr_point)
    with pytest.raises(InvalidInput):
        darboux.check_phitilde0_closed_form(families.safe_params("r"))


@pytest.mark.parametrize("v", [0, 1, 2])
def test_pseudo_virtual_vector_defect(qr_bundle, v):
    report = darboux.pseudo_virtual_vector_defect(qr_bundle, v)
    assert report.interior_zero
    assert report.boundary_exact
    assert report.almost_zero_mode
    assert report.passed


@pytest.mark.parametrize("d1", [0, 1, 2])
def test_deformed_potentials(qr_point, d1):
    bundle = darboux.build_deformed(qr_point, d1)
    assert bundle.size == qr_point.N + 2
    assert bundle.Etilde == twists.pseudo_energy(qr_point, "i", d1)
    checks = darboux.check_deformed_potentials(bundle)
    assert all(checks.values()), checks


@pytest.mark.parametrize("d1", [0, 1, 2])
def test_deformed_spectrum(qr_point, d1):
    bundle = darboux.build_deformed(qr_point, d1)
    report = darboux.deformed_spectrum_check(bundle)
    assert report.passed
    assert report.new_level_multiplicity == 1
    assert len(report.eigenvalues) == qr_point.N + 2


def test_new_level_below_ground(qr_point):
    bundle = darboux.build_deformed(qr_point, 0)
    assert bundle.Etilde < 0
    assert bundle.Etilde == families.eval_energy(qr_point, -1, allow_negative=True)


@pytest.mark.parametrize("ell", [1, 2])
def test_deletion_special_case(qr_point, ell):
    inst = darboux.eigenstate_deletion_special_case(qr_point, ell)
    assert inst.report.proportional
    assert inst.idx.Dbar == tuple(range(1, ell + 1))
    assert darboux.check_deletion_spectrum(qr_point, ell)


def test_deletion_requires_positive_level(qr_point):
    with pytest.raises(InvalidInput):
        darboux.eigenstate_deletion_special_case(qr_point, 0)


def test_tolerance_follows_precision(qr_point):
    bundle = darboux.build_hamiltonian(qr_point, precision_bits=128)
    assert bundle.ctx.prec == 128
    assert darboux.ground_state(bundle).tolerance == bundle.ctx.mpf(2) ** -64
