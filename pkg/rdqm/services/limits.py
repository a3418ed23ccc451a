# rdqm/services/limits.py
"""
Relações de limite entre as famílias.

Cada aresta leva os parâmetros da família alvo a um caminho de parâmetros
da família fonte indexado por t; o polinômio fonte é avaliado exatamente
em cada t e comparado com o alvo.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence, Tuple

from loguru import logger

from ..core.exact import format_rational
from ..core.exceptions import InvalidInput
from .families import ParamSet, eval_polynomial, resolve_family
from .family_catalog import FamilyId
from .qseries import qpoch

Embedding = Callable[[ParamSet, Fraction], ParamSet]

GROWING = tuple(Fraction(10) ** k for k in (2, 4, 6, 8, 10))
SHRINKING = tuple(Fraction(1, 10 ** k) for k in (2, 4, 6, 8, 10))
LATTICE = tuple(Fraction(k) for k in (10, 20, 30, 40, 60))


@dataclass(frozen=True)
class LimitEdge:
    source: FamilyId
    target: FamilyId
    embed: Embedding
    t_sequence: Tuple[Fraction, ...]
    description: str
    mirror_x: bool = False
    """x ↦ N−x na fonte (N = t)"""

    prefactor: Optional[Callable[[ParamSet, int], Fraction]] = None
    exact_point: Optional[Fraction] = None
    """Valor de t em que a fonte coincide exatamente com o alvo"""


@dataclass(frozen=True)
class LimitReport:
    source: FamilyId
    target: FamilyId
    n: int
    x: int
    t_values: Tuple[Fraction, ...]
    deviations: Tuple[Fraction, ...]
    threshold: Fraction
    exact_deviation: Optional[Fraction] = None

    @property
    def identically_zero(self) -> bool:
        return all(d == 0 for d in self.deviations)

    @property
    def strictly_decreasing(self) -> bool:
        return all(a > b for a, b in zip(self.deviations, self.deviations[1:]))

    @property
    def passed(self) -> bool:
        if self.exact_deviation not in (None, 0):
            return False
        if self.identically_zero:
            return True
        return self.strictly_decreasing and self.deviations[-1] < self.threshold

    def to_details(self) -> dict:
        return {
            "t": [format_rational(t) for t in self.t_values],
            "deviation": [format_rational(d) for d in self.deviations],
            "exact_deviation": None if self.exact_deviation is None else format_rational(self.exact_deviation),
        }


def _qha_to_lqj_prefactor(ps: ParamSet, n: int) -> Fraction:
    a, b = ps.values
    q = ps.q
    return (-a) ** n * q ** (n * (n + 1) // 2) * qpoch(b * q, q, n) / qpoch(a * q, q, n)


def _r_from_ha(ps: ParamSet, t: Fraction) -> ParamSet:
    a, b, n = ps.values
    return ParamSet(FamilyId.R, (a, b + n + t, -n, t))


def _r_from_dha(ps: ParamSet, t: Fraction) -> ParamSet:
    a, b, n = ps.values
    return ParamSet(FamilyId.R, (a, t, -n, a + b - 1))


def _ha_from_k(ps: ParamSet, t: Fraction) -> ParamSet:
    p, n = ps.values
    return ParamSet(FamilyId.HA, (1 + p * t, 1 + (1 - p) * t, n))


def _qr_from_qha(ps: ParamSet, t: Fraction) -> ParamSet:
    a, b, qn = ps.values
    return ParamSet(FamilyId.QR, (a, b * qn * t, 1 / qn, t), ps.q)


def _qr_from_dqha(ps: ParamSet, t: Fraction) -> ParamSet:
    a, b, qn = ps.values
    return ParamSet(FamilyId.QR, (a, t, 1 / qn, a * b / ps.q), ps.q)


def _qha_from_qqk(ps: ParamSet, t: Fraction) -> ParamSet:
    p, qn = ps.values
    return ParamSet(FamilyId.QHA, (t, p * ps.q, qn), ps.q)


def _qha_from_qk(ps: ParamSet, t: Fraction) -> ParamSet:
    p, qn = ps.values
    return ParamSet(FamilyId.QHA, (t, -p * ps.q / t, qn), ps.q)


def _dqha_from_dqk(ps: ParamSet, t: Fraction) -> ParamSet:
    c, qn = ps.values
    return ParamSet(FamilyId.DQHA, (t, c * ps.q / (qn * t), qn), ps.q)


def _qha_from_aqk(ps: ParamSet, t: Fraction) -> ParamSet:
    p, qn = ps.values
    return ParamSet(FamilyId.QHA, (p * ps.q, t, qn), ps.q)


def _ha_from_m(ps: ParamSet, t: Fraction) -> ParamSet:
    beta, c = ps.values
    return ParamSet(FamilyId.HA, (beta, 1 + (1 - c) * t / c, t))


def _m_from_c(ps: ParamSet, t: Fraction) -> ParamSet:
    a = ps.values[0]
    return ParamSet(FamilyId.M, (t, a / (a + t)))


def _qha_from_lqj(ps: ParamSet, t: Fraction) -> ParamSet:
    a, b = ps.values
    q = ps.q
    return ParamSet(FamilyId.QHA, (a * q, b * q, q ** int(t)), q)


def _qha_from_qm(ps: ParamSet, t: Fraction) -> ParamSet:
    b, c = ps.values
    q = ps.q
    return ParamSet(FamilyId.QHA, (b * q, -(q ** -int(t)) / (b * c), q ** int(t)), q)


def _lqj_from_lql(ps: ParamSet, t: Fraction) -> ParamSet:
    return ParamSet(FamilyId.LQJ, (ps.values[0], t), ps.q)


def _qm_from_ascii(ps: ParamSet, t: Fraction) -> ParamSet:
    a = ps.values[0]
    return ParamSet(FamilyId.QM, (-a / t, t), ps.q)


def _lqj_from_qb(ps: ParamSet, t: Fraction) -> ParamSet:
    a = ps.values[0]
    return ParamSet(FamilyId.LQJ, (t, -a / (t * ps.q)), ps.q)


def _qm_from_qc(ps: ParamSet, t: Fraction) -> ParamSet:
    return ParamSet(FamilyId.QM, (t, ps.values[0]), ps.q)


def _edge(source, target, embed, t_sequence, description, **kwargs) -> LimitEdge:
    return LimitEdge(source, target, embed, t_sequence, description, **kwargs)


LIMIT_EDGES: Dict[Tuple[FamilyId, FamilyId], LimitEdge] = {
    (edge.source, edge.target): edge
    for edge in (
        _edge(FamilyId.R, FamilyId.HA, _r_from_ha, GROWING, "λ = (a, b+N+d, −N, d), d → ∞"),
        _edge(FamilyId.R, FamilyId.DHA, _r_from_dha, GROWING, "λ = (a, b′, −N, a+b−1), b′ → ∞"),
        _edge(FamilyId.HA, FamilyId.K, _ha_from_k, GROWING, "(a, b) = (1+pt, 1+(1−p)t), t → ∞"),
        _edge(FamilyId.QR, FamilyId.QHA, _qr_from_qha, SHRINKING, "(a, bq^N d, q^(−N), d), d → 0"),
        _edge(FamilyId.QR, FamilyId.DQHA, _qr_from_dqha, SHRINKING, "(a, b′, q^(−N), ab/q), b′ → 0"),
        _edge(FamilyId.QHA, FamilyId.QQK, _qha_from_qqk, GROWING, "(a, pq, q^N), a → ∞"),
        _edge(FamilyId.QHA, FamilyId.QK, _qha_from_qk, SHRINKING, "(a, −pq/a, q^N), a → 0"),
        _edge(FamilyId.DQHA, FamilyId.DQK, _dqha_from_dqk, SHRINKING, "(a, cq^(1−N)/a, q^N), a → 0"),
        _edge(
            FamilyId.QHA, FamilyId.AQK, _qha_from_aqk, SHRINKING,
            "(pq, b, q^N), b → 0", exact_point=Fraction(0),
        ),
        _edge(FamilyId.HA, FamilyId.M, _ha_from_m, GROWING, "(β, 1+(1−c)N/c, N), N → ∞"),
        _edge(FamilyId.M, FamilyId.C, _m_from_c, GROWING, "(β, a/(a+β)), β → ∞"),
        _edge(
            FamilyId.QHA, FamilyId.LQJ, _qha_from_lqj, LATTICE,
            "x ↦ N−x, (aq, bq, q^N), N → ∞",
            mirror_x=True, prefactor=_qha_to_lqj_prefactor,
        ),
        _edge(FamilyId.QHA, FamilyId.QM, _qha_from_qm, LATTICE, "(bq, −q^(−N)/(bc), q^N), N → ∞"),
        _edge(
            FamilyId.LQJ, FamilyId.LQL, _lqj_from_lql, SHRINKING,
            "(a, b), b → 0", exact_point=Fraction(0),
        ),
        _edge(FamilyId.QM, FamilyId.ASCII, _qm_from_ascii, SHRINKING, "(−a/c, c), c → 0"),
        _edge(FamilyId.LQJ, FamilyId.QB, _lqj_from_qb, SHRINKING, "(a′, −a/(a′q)), a′ → 0"),
        _edge(
            FamilyId.QM, FamilyId.QC, _qm_from_qc, SHRINKING,
            "(b, a), b → 0", exact_point=Fraction(0),
        ),
    )
}


def get_edge(source, target) -> LimitEdge:
    key = (resolve_family(source), resolve_family(target))
    try:
        return LIMIT_EDGES[key]
    except KeyError:
        raise InvalidInput(
            f"Aresta de limite inexistente: {key[0].value} → {key[1].value}",
            source=key[0].value,
            target=key[1].value,
        )


def _source_value(edge: LimitEdge, ps_target: ParamSet, n: int, x: int, t: Fraction) -> Fraction:
    source = edge.embed(ps_target, t)
    source_x = int(t) - x if edge.mirror_x else x
    return eval_polynomial(source, n, source_x)


def limit_relation_check(
    source,
    target,
    ps_target: ParamSet,
    n: int,
    x: int,
    t_values: Optional[Sequence[Fraction]] = None,
    threshold_exponent: int = 6,
) -> LimitReport:
    """
    Desvios |fonte(t) − alvo| ao longo do caminho de parâmetros.

    Passa quando todos são nulos ou quando decrescem estritamente com
    desvio final < 10^(−threshold_exponent).
    """
    edge = get_edge(source, target)
    if ps_target.family is not edge.target:
        raise InvalidInput("Parâmetros não são da família alvo", family=ps_target.label)

    expected = eval_polynomial(ps_target, n, x)
    if edge.prefactor is not None:
        expected *= edge.prefactor(ps_target, n)

    ts = tuple(Fraction(t) for t in (t_values or edge.t_sequence))
    deviations = tuple(abs(_source_value(edge, ps_target, n, x, t) - expected) for t in ts)

    exact_deviation = None
    if edge.exact_point is not None:
        exact_deviation = abs(_source_value(edge, ps_target, n, x, edge.exact_point) - expected)

    report = LimitReport(
        source=edge.source,
        target=edge.target,
        n=n,
        x=x,
        t_values=ts,
        deviations=deviations,
        threshold=Fraction(1, 10 ** threshold_exponent),
        exact_deviation=exact_deviation,
    )
    logger.debug(
        f"Limite {edge.source.value}→{edge.target.value} (n={n}, x={x}): "
        f"desvio final {float(deviations[-1]):.3e}"
    )
    return report
