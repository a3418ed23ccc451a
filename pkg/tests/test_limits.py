from fractions import Fraction

import pytest

from rdqm.core.exceptions import InvalidInput
from rdqm.services.families import safe_params
from rdqm.services.family_catalog import FamilyId
from rdqm.services.limits import LIMIT_EDGES, get_edge, limit_relation_check

EDGES = list(LIMIT_EDGES.values())


def _edge_id(edge):
    return f"{edge.source.value}->{edge.target.value}"


def test_limit_graph_has_seventeen_edges():
    assert len(LIMIT_EDGES) == 17
    assert {edge.source for edge in EDGES} <= set(FamilyId)


@pytest.mark.parametrize("edge", EDGES, ids=_edge_id)
def test_limit_relation_converges(edge):
    report = limit_relation_check(edge.source, edge.target, safe_params(edge.target), n=1, x=1)
    assert report.passed, report.to_details()


@pytest.mark.parametrize("edge", [e for e in EDGES if e.exact_point is not None], ids=_edge_id)
def test_exact_endpoint_reproduces_target(edge):
    report = limit_relation_check(edge.source, edge.target, safe_params(edge.target), n=2, x=1)
    assert report.exact_deviation == 0


def test_unknown_edge_rejected():
    with pytest.raises(InvalidInput):
        get_edge("k", "r")


def test_target_family_must_match():
    with pytest.raises(InvalidInput):
        limit_relation_check("ha", "k", safe_params("r"), n=1, x=1)


def test_report_verdicts():
    edge = get_edge("ha", "k")
    report = limit_relation_check(
        "ha", "k", safe_params("k"), n=1, x=1, t_values=[Fraction(10) ** 2, Fraction(10) ** 3]
    )
    assert report.strictly_decreasing
    assert report.t_values == (Fraction(100), Fraction(1000))
    assert edge.t_sequence[-1] > report.t_values[-1]
    assert len(report.to_details()["deviation"]) == 2
