# rdqm/services/twist_catalog.py
"""
Tabelas de torção por família.

Cada regra descreve a involução 𝔱 sobre (x, λ, q): o tipo do mapa em x
(reflexão −x−1 ou translação x−N−1), o mapa afim em λ, a troca q → 1/q,
os valores publicados de α e α′ (quando existem) e as formas fechadas
publicadas de ξ̌_v. As razões entre ξ̌ de torções distintas ficam em
`ratios`.

Mapas em λ são escritos como expressões em l1, l2, ... ("2-l1-l3+l4").
Nas famílias clássicas o valor novo é c0 + ∑coef·λⱼ; nas famílias q é
tq^c0 ∏wⱼ^coef com wⱼ = vⱼ (tq = q) ou 1/vⱼ (tq = 1/q).
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

from .family_catalog import FamilyId
from .qseries import hyper, poch, poch_product, qhyper, qpoch, qpoch_product

XiForm = Callable[[object, int, int], Fraction]
Affine = Tuple[int, Tuple[Tuple[int, int], ...]]

REFLECT = "reflect"
SHIFT = "shift"

DELETING = "deleting"
"""Ẽ_v = E_{−v−1}"""

ADDING = "adding"
"""Ẽ_v = E_{v+N+1}"""

_TERM = re.compile(r"[+-]?[^+-]+")


def _affine(expr: str) -> Affine:
    constant = 0
    coefs: Dict[int, int] = {}
    for term in _TERM.findall(expr.replace(" ", "")):
        sign = -1 if term.startswith("-") else 1
        body = term.lstrip("+-")
        if "l" in body:
            factor, index = body.split("l")
            j = int(index) - 1
            coefs[j] = coefs.get(j, 0) + sign * (int(factor) if factor else 1)
        else:
            constant += sign * int(body)
    return constant, tuple(sorted(coefs.items()))


@dataclass(frozen=True)
class TwistRule:
    token: str
    kind: str
    slots: Tuple[Affine, ...]
    inverse_base: bool = False
    energy_relation: str = DELETING
    alpha: Optional[Callable[[object], Fraction]] = None
    alpha_prime: Optional[Callable[[object], Fraction]] = None
    xi_forms: Dict[str, XiForm] = field(default_factory=dict)

    @property
    def has_xi(self) -> bool:
        return self.energy_relation == DELETING


@dataclass(frozen=True)
class XiRatio:
    """ξ̌^(second)_v = ξ̌^(first)_v · constant(ps, v)."""

    first: str
    second: str
    constant: Callable[[object, int], Fraction]


@dataclass(frozen=True)
class TwistTable:
    family: FamilyId
    rules: Tuple[TwistRule, ...]
    ratios: Tuple[XiRatio, ...] = ()

    @property
    def default_token(self) -> str:
        return self.rules[0].token

    def tokens(self) -> Tuple[str, ...]:
        return tuple(rule.token for rule in self.rules)

    def get(self, token: str) -> Optional[TwistRule]:
        return next((rule for rule in self.rules if rule.token == token), None)


def _rule(token, kind, *exprs, **kwargs) -> TwistRule:
    return TwistRule(token=token, kind=kind, slots=tuple(_affine(e) for e in exprs), **kwargs)


def _exchanged(rule: TwistRule) -> TwistRule:
    """Variante com 𝔱(λ₁) ↔ 𝔱(λ₂)."""
    slots = (rule.slots[1], rule.slots[0]) + rule.slots[2:]
    return TwistRule(
        token=f"{rule.token}:ab",
        kind=rule.kind,
        slots=slots,
        inverse_base=rule.inverse_base,
        energy_relation=rule.energy_relation,
        alpha=rule.alpha,
        alpha_prime=rule.alpha_prime,
        xi_forms=dict(rule.xi_forms),
    )


def _one(ps, v: int) -> Fraction:
    return Fraction(1)


def _qn(ps) -> Fraction:
    """q^N das famílias finitas q (c = q^(−N) em qR)."""
    return ps.q ** ps.N


# ============================================
# R E q-RACAH
# ============================================

def _r_dt(ps) -> Fraction:
    a, b, c, d = ps.values
    return a + b + c - d - 1


def _r_xi_i(ps, v, x):
    a, b, c, d = ps.values
    dt = _r_dt(ps)
    return hyper([-v, v + 2 - dt, x + 1, 1 - x - d], [2 - a, 2 - b, 2 - c], 1, v)


def _r_xi_ii(ps, v, x):
    a, b, c, d = ps.values
    dt = _r_dt(ps)
    return hyper([-v, v + 2 - dt, 1 - x - c, x + a + b - dt], [1 + a - dt, 1 + b - dt, 2 - c], 1, v)


def _r_ratio(ps, v):
    a, b, c, d = ps.values
    dt = _r_dt(ps)
    return poch_product([2 - a, 2 - b], v) / poch_product([1 + a - dt, 1 + b - dt], v)


def _qr_dt(ps) -> Fraction:
    a, b, c, d = ps.values
    return a * b * c / (d * ps.q)


def _qr_xi_i(ps, v, x):
    a, b, c, d = ps.values
    q, dt = ps.q, _qr_dt(ps)
    return qhyper(
        [q ** -v, q ** (v + 2) / dt, q ** (x + 1), q ** (1 - x) / d],
        [q * q / a, q * q / b, q * q / c], q, q, v,
    )


def _qr_xi_ii(ps, v, x):
    a, b, c, d = ps.values
    q, dt = ps.q, _qr_dt(ps)
    return qhyper(
        [q ** -v, q ** (v + 2) / dt, q ** (1 - x) / c, a * b * q ** x / dt],
        [q * a / dt, q * b / dt, q * q / c], q, q, v,
    )


def _qr_ratio(ps, v):
    a, b, c, d = ps.values
    q, dt = ps.q, _qr_dt(ps)
    top = d ** v * qpoch_product([q * q / a, q * q / b], q, v)
    return top / (c ** v * qpoch_product([q * a / dt, q * b / dt], q, v))


def _r_alpha(ps):
    return Fraction(1)


def _r_alpha_prime(ps):
    return 1 - _r_dt(ps)


def _qr_alpha(ps):
    return _qr_dt(ps) / ps.q


def _qr_alpha_tilde(ps):
    return ps.q


def _qr_alpha_prime(ps):
    return -(1 - ps.q) * (1 - _qr_dt(ps) / ps.q)


_R_I = _rule("i", REFLECT, "2-l1", "2-l2", "2-l3", "2-l4",
             alpha=_r_alpha, alpha_prime=_r_alpha_prime, xi_forms={"printed": _r_xi_i})
_R_II = _rule("ii", SHIFT, "2-l1-l3+l4", "2-l2-l3+l4", "2-l3", "2-2l3+l4",
              alpha=_r_alpha, alpha_prime=_r_alpha_prime, xi_forms={"printed": _r_xi_ii})
_R_III = ("1+l1-l4", "1+l2-l4", "2-l3", "2-l4")
_R_IV = ("1+l1-l3", "1+l2-l3", "2-l3", "2-2l3+l4")

_QR_I = _rule("i", REFLECT, "2-l1", "2-l2", "2-l3", "2-l4",
              alpha=_qr_alpha, alpha_prime=_qr_alpha_prime, xi_forms={"printed": _qr_xi_i})
_QR_II = _rule("ii", SHIFT, "2-l1-l3+l4", "2-l2-l3+l4", "2-l3", "2-2l3+l4",
               alpha=_qr_alpha, alpha_prime=_qr_alpha_prime, xi_forms={"printed": _qr_xi_ii})
_QR_IT = _rule("i~", REFLECT, "2-l1", "2-l2", "2-l3", "2-l4", inverse_base=True,
               alpha=_qr_alpha_tilde, alpha_prime=_qr_alpha_prime, xi_forms={"printed": _qr_xi_i})
_QR_IIT = _rule("ii~", SHIFT, "2-l1-l3+l4", "2-l2-l3+l4", "2-l3", "2-2l3+l4", inverse_base=True,
                alpha=_qr_alpha_tilde, alpha_prime=_qr_alpha_prime, xi_forms={"printed": _qr_xi_ii})


# ============================================
# FINITAS REDUZIDAS
# ============================================

def _ha_xi_i(ps, v, x):
    a, b, n = ps.values
    return hyper([-v, v + 3 - a - b, x + 1], [2 - a, n + 2], 1, v)


def _ha_xi_ii(ps, v, x):
    a, b, n = ps.values
    return hyper([-v, v + 3 - a - b, n + 1 - x], [2 - b, n + 2], 1, v)


def _ha_ratio(ps, v):
    a, b, _ = ps.values
    return poch(2 - a, v) / poch(b - v - 1, v)


def _dha_xi_i(ps, v, x):
    a, b, n = ps.values
    return hyper([-v, 2 - x - a - b, x + 1], [2 - a, n + 2], 1, v)


def _dha_xi_ii(ps, v, x):
    a, b, n = ps.values
    return hyper([-v, x + a + b + n, n + 1 - x], [b + n + 1, n + 2], 1, v)


def _dha_ratio(ps, v):
    a, b, n = ps.values
    return poch(2 - a, v) / poch(b + n + 1, v)


def _k_xi_i(ps, v, x):
    p, n = ps.values
    return hyper([-v, x + 1], [n + 2], 1 / p, v)


def _k_xi_ii(ps, v, x):
    p, n = ps.values
    return hyper([-v, n + 1 - x], [n + 2], 1 / (1 - p), v)


def _k_ratio(ps, v):
    p, _ = ps.values
    return (1 - 1 / p) ** (-v)


def _qha_xi_it(ps, v, x):
    a, b, _ = ps.values
    q, qn = ps.q, _qn(ps)
    return qhyper(
        [q ** -v, q ** (v + 3) / (a * b), q ** (x + 1)], [q * q / a, qn * q * q], q,
        b * qn * q ** -x, v,
    )


def _qha_xi_ii(ps, v, x):
    a, b, _ = ps.values
    q, qn = ps.q, _qn(ps)
    return qhyper(
        [q ** -v, q ** (v + 3) / (a * b), qn * q ** (1 - x)], [q * q / b, qn * q * q], q, q, v,
    )


def _qha_ratio(ps, v):
    a, b, _ = ps.values
    q = ps.q
    return qpoch(q * q / a, q, v) / qpoch(b * q ** (-v - 1), q, v)


def _dqha_xi_it(ps, v, x):
    a, b, _ = ps.values
    q, qn = ps.q, _qn(ps)
    return qhyper(
        [q ** -v, q ** (2 - x) / (a * b), q ** (x + 1)], [q * q / a, qn * q * q], q,
        b * qn * q ** (v + 1), v,
    )


def _dqha_xi_iit(ps, v, x):
    a, b, _ = ps.values
    q, qn = ps.q, _qn(ps)
    return qhyper(
        [q ** -v, a * b * qn * q ** x, qn * q ** (1 - x)], [b * qn * q, qn * q * q], q,
        q ** (v + 2) / a, v,
    )


def _dqha_ratio(ps, v):
    a, b, _ = ps.values
    q, qn = ps.q, _qn(ps)
    return qpoch(q * q / a, q, v) / qpoch(b * qn * q, q, v)


def _qqk_xi_it(ps, v, x):
    p, _ = ps.values
    q, qn = ps.q, _qn(ps)
    return qhyper([q ** -v, q ** (x + 1)], [qn * q * q], q, p * qn * q ** (1 - x), v)


def _qk_xi_it(ps, v, x):
    p, _ = ps.values
    q, qn = ps.q, _qn(ps)
    return qhyper(
        [q ** -v, -q ** (v + 2) / p, q ** (x + 1)], [qn * q * q], q, -p * qn * q ** (-x - 1), v,
    )


def _qk_xi_ii(ps, v, x):
    p, _ = ps.values
    q, qn = ps.q, _qn(ps)
    return qhyper(
        [q ** -v, -q ** (v + 2) / p, qn * q ** (1 - x)], [qn * q * q, 0], q, q, v,
    )


def _qk_ratio(ps, v):
    p, _ = ps.values
    q = ps.q
    return (-p) ** (-v) * q ** (v * (v + 2))


def _dqk_xi_it(ps, v, x):
    c, _ = ps.values
    q, qn = ps.q, _qn(ps)
    return qhyper(
        [q ** -v, qn * q ** (1 - x) / c, q ** (x + 1)], [qn * q * q], q, c * q ** v, v,
    )


def _dqk_xi_iit(ps, v, x):
    c, _ = ps.values
    q, qn = ps.q, _qn(ps)
    return qhyper(
        [q ** -v, c * q ** (x + 1), qn * q ** (1 - x)], [qn * q * q], q, q ** v / c, v,
    )


def _dqk_ratio(ps, v):
    c, _ = ps.values
    return c ** (-v)


def _aqk_xi_it(ps, v, x):
    p, _ = ps.values
    q, qn = ps.q, _qn(ps)
    return qhyper(
        [q ** -v, q ** (x + 1)], [q / p, qn * q * q], q, qn * q ** (v + 2 - x) / p, v,
    )


def _alpha_q(ps):
    return ps.q


def _alpha_one(ps):
    return Fraction(1)


def _alpha_minus_one(ps):
    return Fraction(-1)


def _qha_alpha_ii(ps):
    a, b, _ = ps.values
    return a * b / ps.q ** 2


def _qk_alpha_ii(ps):
    p, _ = ps.values
    return -p / ps.q


# ============================================
# SEMI-INFINITAS
# ============================================

def _m_xi(ps, v, x):
    beta, c = ps.values
    return hyper([-v, x + 1], [2 - beta], 1 - 1 / c, v)


def _c_xi(ps, v, x):
    a = ps.values[0]
    return hyper([-v, x + 1], [], 1 / a, v)


def _lqj_xi_jacobi(ps, v, x):
    a, b = ps.values
    q = ps.q
    prefactor = (-b) ** (-v) * q ** (v * (v + 1) // 2) * qpoch(q / a, q, v) / qpoch(q / b, q, v)
    return prefactor * qhyper([q ** -v, q ** (v + 1) / (a * b)], [q / a], q, b * q ** (x + 1), v)


def _lqj_xi_balanced(ps, v, x):
    a, b = ps.values
    q = ps.q
    return qhyper([q ** -v, q ** (v + 1) / (a * b), q ** (x + 1)], [q / b, 0], q, q, v)


def _qm_xi(ps, v, x):
    b, c = ps.values
    q = ps.q
    return qhyper([q ** -v, q ** (x + 1)], [q / b], q, -q ** -x / (b * c), v)


def _lql_xi_series(ps, v, x):
    a = ps.values[0]
    q = ps.q
    return qhyper([q ** -v, q ** (x + 1)], [0], q, q ** (v + 1) / a, v)


def _lql_xi_confluent(ps, v, x):
    a = ps.values[0]
    q = ps.q
    prefactor = (-a) ** (-v) * q ** (v * (v + 1) // 2) * qpoch(a * q ** -v, q, v)
    return prefactor * qhyper([q ** -v], [q / a], q, q ** (v + x + 2) / a, v)


def _ascii_xi(ps, v, x):
    a = ps.values[0]
    q = ps.q
    return qhyper([q ** -v, q ** (x + 1)], [0], q, q ** -x / a, v)


def _qb_xi_power(ps, v, x):
    a = ps.values[0]
    q = ps.q
    return q ** (v * (x + 1)) * qhyper(
        [q ** -v, q ** (x + 1)], [], q, -q ** (2 * v + 1 - x) / a, v,
    )


def _qb_xi_bessel(ps, v, x):
    a = ps.values[0]
    q = ps.q
    return (-a) ** (-v) * q ** (v * (v + 2)) * qhyper(
        [q ** -v, -q ** (v + 2) / a], [], q, -a * q ** (x - 1), v,
    )


def _qb_xi_balanced(ps, v, x):
    a = ps.values[0]
    q = ps.q
    return qhyper([q ** -v, -q ** (v + 2) / a, q ** (x + 1)], [0, 0], q, q, v)


def _qc_xi(ps, v, x):
    a = ps.values[0]
    q = ps.q
    return qhyper([q ** -v, q ** (x + 1)], [], q, -q ** (-x - 1) / a, v)


# ============================================
# REGISTRO
# ============================================

TWIST_TABLES: Dict[FamilyId, TwistTable] = {
    FamilyId.R: TwistTable(
        FamilyId.R,
        rules=(
            _R_I,
            _R_II,
            _rule("iii", REFLECT, *_R_III, energy_relation=ADDING),
            _rule("iv", SHIFT, *_R_IV, energy_relation=ADDING),
            _exchanged(_R_I),
            _exchanged(_R_II),
        ),
        ratios=(
            XiRatio("i", "ii", _r_ratio),
            XiRatio("i", "i:ab", _one),
            XiRatio("ii", "ii:ab", _one),
        ),
    ),
    FamilyId.QR: TwistTable(
        FamilyId.QR,
        rules=(
            _QR_I,
            _QR_II,
            _QR_IT,
            _QR_IIT,
            _rule("iii", REFLECT, *_R_III, energy_relation=ADDING),
            _rule("iv", SHIFT, *_R_IV, energy_relation=ADDING),
            _rule("iii~", REFLECT, *_R_III, inverse_base=True, energy_relation=ADDING),
            _rule("iv~", SHIFT, *_R_IV, inverse_base=True, energy_relation=ADDING),
            _exchanged(_QR_I),
            _exchanged(_QR_II),
            _exchanged(_QR_IT),
            _exchanged(_QR_IIT),
        ),
        ratios=(
            XiRatio("i", "ii", _qr_ratio),
            XiRatio("i", "i~", _one),
            XiRatio("ii", "ii~", _one),
            XiRatio("i", "i:ab", _one),
            XiRatio("ii", "ii:ab", _one),
            XiRatio("i~", "i~:ab", _one),
            XiRatio("ii~", "ii~:ab", _one),
        ),
    ),
    FamilyId.HA: TwistTable(
        FamilyId.HA,
        rules=(
            _rule("i", REFLECT, "2-l1", "2-l2", "-2-l3", alpha=_alpha_one, xi_forms={"printed": _ha_xi_i}),
            _rule("ii", SHIFT, "2-l2", "2-l1", "-2-l3", alpha=_alpha_one, xi_forms={"printed": _ha_xi_ii}),
        ),
        ratios=(XiRatio("i", "ii", _ha_ratio),),
    ),
    FamilyId.DHA: TwistTable(
        FamilyId.DHA,
        rules=(
            _rule("i", REFLECT, "2-l1", "2-l2", "-2-l3", alpha=_alpha_minus_one,
                  xi_forms={"printed": _dha_xi_i}),
            _rule("ii", SHIFT, "1+l2+l3", "1+l1+l3", "-2-l3", alpha=_alpha_minus_one,
                  xi_forms={"printed": _dha_xi_ii}),
        ),
        ratios=(XiRatio("i", "ii", _dha_ratio),),
    ),
    FamilyId.K: TwistTable(
        FamilyId.K,
        rules=(
            _rule("i", REFLECT, "l1", "-2-l2", alpha=_alpha_minus_one, xi_forms={"printed": _k_xi_i}),
            _rule("ii", SHIFT, "1-l1", "-2-l2", alpha=_alpha_minus_one, xi_forms={"printed": _k_xi_ii}),
        ),
        ratios=(XiRatio("i", "ii", _k_ratio),),
    ),
    FamilyId.QHA: TwistTable(
        FamilyId.QHA,
        rules=(
            _rule("i~", REFLECT, "2-l1", "2-l2", "-2-l3", inverse_base=True, alpha=_alpha_q,
                  xi_forms={"printed": _qha_xi_it}),
            _rule("ii", SHIFT, "2-l2", "2-l1", "-2-l3", alpha=_qha_alpha_ii,
                  xi_forms={"printed": _qha_xi_ii}),
        ),
        ratios=(XiRatio("i~", "ii", _qha_ratio),),
    ),
    FamilyId.DQHA: TwistTable(
        FamilyId.DQHA,
        rules=(
            _rule("i~", REFLECT, "2-l1", "2-l2", "-2-l3", inverse_base=True, alpha=_alpha_q,
                  xi_forms={"printed": _dqha_xi_it}),
            _rule("ii~", SHIFT, "1+l2+l3", "1+l1+l3", "-2-l3", inverse_base=True, alpha=_alpha_q,
                  xi_forms={"printed": _dqha_xi_iit}),
        ),
        ratios=(XiRatio("i~", "ii~", _dqha_ratio),),
    ),
    FamilyId.QQK: TwistTable(
        FamilyId.QQK,
        rules=(
            _rule("i~", REFLECT, "-l1", "-2-l2", inverse_base=True, xi_forms={"printed": _qqk_xi_it}),
        ),
    ),
    FamilyId.QK: TwistTable(
        FamilyId.QK,
        rules=(
            _rule("i~", REFLECT, "2-l1", "-2-l2", inverse_base=True, alpha=_alpha_q,
                  xi_forms={"printed": _qk_xi_it}),
            _rule("ii", SHIFT, "2-l1", "-2-l2", alpha=_qk_alpha_ii, xi_forms={"printed": _qk_xi_ii}),
        ),
        ratios=(XiRatio("i~", "ii", _qk_ratio),),
    ),
    FamilyId.DQK: TwistTable(
        FamilyId.DQK,
        rules=(
            _rule("i~", REFLECT, "-l1", "-2-l2", inverse_base=True, alpha=_alpha_q,
                  xi_forms={"printed": _dqk_xi_it}),
            _rule("ii~", SHIFT, "l1", "-2-l2", inverse_base=True, alpha=_alpha_q,
                  xi_forms={"printed": _dqk_xi_iit}),
        ),
        ratios=(XiRatio("i~", "ii~", _dqk_ratio),),
    ),
    FamilyId.AQK: TwistTable(
        FamilyId.AQK,
        rules=(
            _rule("i~", REFLECT, "-l1", "-2-l2", inverse_base=True, xi_forms={"printed": _aqk_xi_it}),
        ),
    ),
    FamilyId.M: TwistTable(
        FamilyId.M,
        rules=(_rule("i", REFLECT, "2-l1", "l2", xi_forms={"printed": _m_xi}),),
    ),
    FamilyId.C: TwistTable(
        FamilyId.C,
        rules=(_rule("i", REFLECT, "-l1", xi_forms={"printed": _c_xi}),),
    ),
    FamilyId.LQJ: TwistTable(
        FamilyId.LQJ,
        rules=(
            _rule("i~", REFLECT, "-l1", "-l2", inverse_base=True,
                  xi_forms={"jacobi": _lqj_xi_jacobi, "balanced": _lqj_xi_balanced}),
        ),
    ),
    FamilyId.QM: TwistTable(
        FamilyId.QM,
        rules=(_rule("i~", REFLECT, "-l1", "-l2", inverse_base=True, xi_forms={"printed": _qm_xi}),),
    ),
    FamilyId.LQL: TwistTable(
        FamilyId.LQL,
        rules=(
            _rule("i~", REFLECT, "-l1", inverse_base=True,
                  xi_forms={"series": _lql_xi_series, "confluent": _lql_xi_confluent}),
        ),
    ),
    FamilyId.ASCII: TwistTable(
        FamilyId.ASCII,
        rules=(_rule("i~", REFLECT, "-l1", inverse_base=True, xi_forms={"printed": _ascii_xi}),),
    ),
    FamilyId.QB: TwistTable(
        FamilyId.QB,
        rules=(
            _rule("i~", REFLECT, "2-l1", inverse_base=True,
                  xi_forms={"power": _qb_xi_power, "bessel": _qb_xi_bessel, "balanced": _qb_xi_balanced}),
        ),
    ),
    FamilyId.QC: TwistTable(
        FamilyId.QC,
        rules=(_rule("i~", REFLECT, "-l1", inverse_base=True, xi_forms={"printed": _qc_xi}),),
    ),
}
