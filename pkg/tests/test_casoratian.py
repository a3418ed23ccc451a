from fractions import Fraction

import pytest

from rdqm.api.schemas import RecordStatus
from rdqm.core.exceptions import InvalidInput
from rdqm.pipeline.commands import identity_tasks
from rdqm.pipeline.records import execute_task
from rdqm.services import casoratian, families
from rdqm.services.family_catalog import REGISTRY


def _identity_matrix():
    for family in REGISTRY:
        for index, ps in enumerate(families.sample_param_sets(family)):
            tag = "safe" if index == 0 else f"alt{index}"
            for task in identity_tasks(ps, tag):
                yield pytest.param(task, id=task.id)


def test_index_sets_complement():
    idx = casoratian.build_index_sets([2, 1], 3)
    assert idx.D == (1, 2)
    assert idx.Dbar == (0, 3)
    assert idx.M == 2
    assert idx.Nbar == 2
    assert idx.ell == idx.ell_bar == 2
    assert idx.sums_consistent()
    assert idx.degree_bound == 3 + 3 + 2 + 2 + 2


def test_enumerated_index_sets():
    sets = casoratian.enumerate_index_sets(3, 4)
    assert len(sets) == 50
    assert all(idx.sums_consistent() for idx in sets)
    assert len({(idx.D, idx.calN) for idx in sets}) == 50


@pytest.mark.parametrize("D, calN", [([], 2), ([1, 1], 2), ([-1], 2), ([3], 2)])
def test_index_sets_rejected(D, calN):
    with pytest.raises(InvalidInput):
        casoratian.build_index_sets(D, calN)


def test_casoratian_of_simple_functions():
    assert casoratian.casoratian_WC([], 4) == 1
    assert casoratian.casoratian_WC([lambda y: Fraction(1), lambda y: Fraction(y)], 7) == 1
    squares = casoratian.casoratian_WC([lambda y: Fraction(y), lambda y: Fraction(y * y)], 0)
    assert squares == 0


def test_varphi_small_orders(qr_point):
    assert casoratian.varphi_M(qr_point, 0, 3) == 1
    assert casoratian.varphi_M(qr_point, 1, 3) == 1
    eta = lambda x: families.eta(qr_point, x)
    assert casoratian.varphi_M(qr_point, 2, 0) == (eta(1) - eta(0)) / eta(1)
    with pytest.raises(InvalidInput):
        casoratian.varphi_M(qr_point, -1, 0)


def test_trivial_identity_has_unit_ratio(k_point):
    inst = casoratian.run_identity(k_point, [0], 0)
    assert inst.report.proportional
    assert inst.report.ratio == 1
    assert len(inst.x_grid) >= inst.required_points


def test_q_racah_identity_matches_closed_constant(qr_point):
    inst = casoratian.run_identity(qr_point, [1, 2], 3)
    assert inst.report.proportional
    assert inst.constant_A == inst.report.ratio


def test_column_order_flips_sign(qr_point):
    ascending = casoratian.verify_identity(casoratian.build_instance(qr_point, [1, 2], 3))
    swapped_inst = casoratian.build_instance(qr_point, [1, 2], 3, order=[2, 1])
    swapped = casoratian.verify_identity(swapped_inst)
    assert swapped.ratio == -ascending.ratio
    with pytest.raises(InvalidInput):
        casoratian.qracah_constant_A(swapped_inst)


def test_order_must_permute_degrees(qr_point):
    with pytest.raises(InvalidInput):
        casoratian.build_instance(qr_point, [1, 2], 3, order=[1, 3])


@pytest.mark.parametrize("family", list(REGISTRY), ids=lambda f: f.value)
def test_single_degree_identity(family):
    ps = families.safe_params(family)
    inst = casoratian.run_identity(ps, [1], 2)
    assert inst.report.proportional
    assert inst.report.ratio != 0


def test_leading_coefficient_matches_divided_difference(qr_point):
    for n in range(1, 4):
        assert casoratian.leading_coefficient_cn(qr_point, n) == families.eta_leading_coefficient(qr_point, n)
    with pytest.raises(InvalidInput):
        casoratian.leading_coefficient_cn(families.safe_params("r"), 1)


def test_eta_recurrence(qr_point):
    for D, calN in [([1], 1), ([1, 2], 3), ([0, 2, 3], 4)]:
        idx = casoratian.build_index_sets(D, calN)
        assert casoratian.check_eta_recurrence(qr_point, idx, range(-2, 6))


@pytest.mark.parametrize("task", list(_identity_matrix()))
def test_identity_matrix_at_every_sample_point(task):
    record = execute_task(task)
    assert record.status is RecordStatus.PROPORTIONAL, record.details
    assert record.ratio not in (None, "0")
    if "constant_A" in record.details:
        assert record.details["constant_A_matches"] is True


def test_identity_matrix_sizes():
    r_tasks = identity_tasks(families.safe_params("r"))
    ha_tasks = identity_tasks(families.safe_params("ha"))
    default_r = [t for t in r_tasks if t.twist == "i"]
    default_ha = [t for t in ha_tasks if t.twist == "i"]
    assert len(default_r) == len(casoratian.enumerate_index_sets(3, 4))
    assert len(default_ha) == len(casoratian.enumerate_index_sets(2, 3))


def test_alternate_points_tag_identity_ids():
    alternate = families.sample_param_sets("k")[1]
    task = identity_tasks(alternate, "alt1")[0]
    assert task.id.startswith("identity/k/i/alt1/M")
    assert task.params == alternate
