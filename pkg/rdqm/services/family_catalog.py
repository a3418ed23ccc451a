# rdqm/services/family_catalog.py
"""
Dados fundamentais das 19 famílias: potenciais B e D, energias, coordenada
senoidal η, φ, polinômios P̌_n, φ₀² (fechada, quando existe) e os pontos de
parâmetros usados pelas suítes.

Os avaliadores recebem um objeto com `.values` (λ aditivo ou q^λ
multiplicativo) e `.q` (base; None nas famílias clássicas). Não há validação
aqui: polos aparecem como ZeroDivisionError/PoleInSeries e são tratados em
`families`.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, Optional, Tuple

from .qseries import hyper, poch_product, qhyper, qpoch, qpoch_product

Evaluator = Callable[[Any, int], Fraction]


class FamilyId(str, Enum):
    R = "r"
    QR = "qr"
    HA = "ha"
    DHA = "dha"
    K = "k"
    QHA = "qha"
    DQHA = "dqha"
    QQK = "qqk"
    QK = "qk"
    DQK = "dqk"
    AQK = "aqk"
    M = "m"
    C = "c"
    LQJ = "lqj"
    QM = "qm"
    LQL = "lql"
    ASCII = "ascii"
    QB = "qb"
    QC = "qc"


@dataclass(frozen=True)
class SamplePoint:
    """Ponto racional de parâmetros; `note` registra as desigualdades satisfeitas."""

    named: Dict[str, str]
    N: Optional[int] = None
    note: str = ""


@dataclass(frozen=True)
class FamilyRecord:
    family: FamilyId
    label: str
    param_names: Tuple[str, ...]
    finite: bool
    q_family: bool
    delta: Tuple[int, ...]
    kappa_power: int
    """κ = q^kappa_power (κ = 1 nas famílias clássicas)"""

    lattice_slot: Optional[Tuple[int, str]]
    """(índice, tipo) do parâmetro que carrega N: minus_n, n, q_minus_n, q_n"""

    B: Evaluator
    D: Evaluator
    energy: Evaluator
    eta: Evaluator
    varphi: Evaluator
    polynomial: Callable[[Any, int, int], Fraction]
    safe_point: SamplePoint
    alternate_points: Tuple[SamplePoint, ...] = ()
    phi0_sq: Optional[Evaluator] = None
    dtilde: Optional[Callable[[Any], Fraction]] = None
    polynomial_alternates: Dict[str, Callable[[Any, int, int], Fraction]] = field(default_factory=dict)


def _qx(ps, x: int) -> Fraction:
    return ps.q ** x


# ============================================
# RACAH E q-RACAH
# ============================================

def _r_dtilde(ps) -> Fraction:
    a, b, c, d = ps.values
    return a + b + c - d - 1


def _r_B(ps, x):
    a, b, c, d = ps.values
    return -(x + a) * (x + b) * (x + c) * (x + d) / ((2 * x + d) * (2 * x + 1 + d))


def _r_D(ps, x):
    a, b, c, d = ps.values
    return -(x + d - a) * (x + d - b) * (x + d - c) * x / ((2 * x - 1 + d) * (2 * x + d))


def _r_energy(ps, n):
    return n * (n + _r_dtilde(ps))


def _r_eta(ps, x):
    d = ps.values[3]
    return x * (x + d)


def _r_varphi(ps, x):
    d = ps.values[3]
    return (2 * x + d + 1) / (d + 1)


def _r_polynomial(ps, n, x):
    a, b, c, d = ps.values
    return hyper([-n, n + _r_dtilde(ps), -x, x + d], [a, b, c], 1, n)


def _r_phi0_sq(ps, x):
    a, b, c, d = ps.values
    ratio = poch_product([a, b, c, d], x) / poch_product([d - a + 1, d - b + 1, d - c + 1, 1], x)
    return ratio * (2 * x + d) / d


def _qr_dtilde(ps) -> Fraction:
    a, b, c, d = ps.values
    return a * b * c / (d * ps.q)


def _qr_B(ps, x):
    a, b, c, d = ps.values
    t = _qx(ps, x)
    numerator = (1 - a * t) * (1 - b * t) * (1 - c * t) * (1 - d * t)
    return -numerator / ((1 - d * t * t) * (1 - d * t * t * ps.q))


def _qr_D(ps, x):
    a, b, c, d = ps.values
    t = _qx(ps, x)
    numerator = (1 - d * t / a) * (1 - d * t / b) * (1 - d * t / c) * (1 - t)
    return -_qr_dtilde(ps) * numerator / ((1 - d * t * t / ps.q) * (1 - d * t * t))


def _qr_energy(ps, n):
    return (ps.q ** (-n) - 1) * (1 - _qr_dtilde(ps) * ps.q ** n)


def _qr_eta(ps, x):
    d = ps.values[3]
    return (ps.q ** (-x) - 1) * (1 - d * _qx(ps, x))


def _qr_varphi(ps, x):
    d, q = ps.values[3], ps.q
    return (q ** (-x) - d * q ** (x + 1)) / (1 - d * q)


def _qr_polynomial(ps, n, x):
    a, b, c, d = ps.values
    q = ps.q
    return qhyper(
        [q ** (-n), _qr_dtilde(ps) * q ** n, q ** (-x), d * q ** x], [a, b, c], q, q, n
    )


def _qr_phi0_sq(ps, x):
    a, b, c, d = ps.values
    q = ps.q
    top = qpoch_product([a, b, c, d], q, x)
    bottom = qpoch_product([d * q / a, d * q / b, d * q / c, q], q, x) * _qr_dtilde(ps) ** x
    return top / bottom * (1 - d * q ** (2 * x)) / (1 - d)


# ============================================
# FINITAS REDUZIDAS
# ============================================

def _ha_B(ps, x):
    a, b, n = ps.values
    return (x + a) * (n - x)


def _ha_D(ps, x):
    a, b, n = ps.values
    return x * (b + n - x)


def _ha_energy(ps, n):
    a, b, _ = ps.values
    return n * (n + a + b - 1)


def _ha_polynomial(ps, n, x):
    a, b, big_n = ps.values
    return hyper([-n, n + a + b - 1, -x], [a, -big_n], 1, n)


def _dha_B(ps, x):
    a, b, n = ps.values
    return (x + a) * (x + a + b - 1) * (n - x) / ((2 * x - 1 + a + b) * (2 * x + a + b))


def _dha_D(ps, x):
    a, b, n = ps.values
    return x * (x + b - 1) * (x + a + b + n - 1) / ((2 * x - 2 + a + b) * (2 * x - 1 + a + b))


def _dha_eta(ps, x):
    a, b, _ = ps.values
    return x * (x + a + b - 1)


def _dha_varphi(ps, x):
    a, b, _ = ps.values
    return (2 * x + a + b) / (a + b)


def _dha_polynomial(ps, n, x):
    a, b, big_n = ps.values
    return hyper([-n, x + a + b - 1, -x], [a, -big_n], 1, n)


def _k_B(ps, x):
    p, n = ps.values
    return p * (n - x)


def _k_D(ps, x):
    p, _ = ps.values
    return (1 - p) * x


def _k_polynomial(ps, n, x):
    p, big_n = ps.values
    return hyper([-n, -x], [-big_n], 1 / p, n)


def _qha_B(ps, x):
    a, b, qn = ps.values
    t = _qx(ps, x)
    return (1 - a * t) * (t / qn - 1)


def _qha_D(ps, x):
    a, b, qn = ps.values
    t = _qx(ps, x)
    return a / ps.q * (1 - t) * (t / qn - b)


def _qha_energy(ps, n):
    a, b, _ = ps.values
    q = ps.q
    return (q ** (-n) - 1) * (1 - a * b * q ** (n - 1))


def _qha_polynomial(ps, n, x):
    a, b, qn = ps.values
    q = ps.q
    return qhyper([q ** (-n), a * b * q ** (n - 1), q ** (-x)], [a, 1 / qn], q, q, n)


def _dqha_B(ps, x):
    a, b, qn = ps.values
    q, t = ps.q, _qx(ps, x)
    return (t / qn - 1) * (1 - a * t) * (1 - a * b * t / q) / ((1 - a * b * t * t / q) * (1 - a * b * t * t))


def _dqha_D(ps, x):
    a, b, qn = ps.values
    q, t = ps.q, _qx(ps, x)
    prefactor = a * t / (q * qn)
    numerator = (1 - t) * (1 - a * b * t * qn / q) * (1 - b * t / q)
    return prefactor * numerator / ((1 - a * b * t * t / q ** 2) * (1 - a * b * t * t / q))


def _dqha_eta(ps, x):
    a, b, _ = ps.values
    q = ps.q
    return (q ** (-x) - 1) * (1 - a * b * q ** (x - 1))


def _dqha_varphi(ps, x):
    a, b, _ = ps.values
    q = ps.q
    return (q ** (-x) - a * b * q ** x) / (1 - a * b)


def _dqha_polynomial(ps, n, x):
    a, b, qn = ps.values
    q = ps.q
    return qhyper([q ** (-n), a * b * q ** (x - 1), q ** (-x)], [a, 1 / qn], q, q, n)


def _qqk_B(ps, x):
    p, qn = ps.values
    t = _qx(ps, x)
    return t / p * (t / qn - 1)


def _qqk_D(ps, x):
    p, qn = ps.values
    t = _qx(ps, x)
    return (1 - t) * (1 - t / (ps.q * p * qn))


def _qqk_polynomial(ps, n, x):
    p, qn = ps.values
    q = ps.q
    return qhyper([q ** (-n), q ** (-x)], [1 / qn], q, p * q ** (n + 1), n)


def _qk_B(ps, x):
    _, qn = ps.values
    return _qx(ps, x) / qn - 1


def _qk_D(ps, x):
    p, _ = ps.values
    return p * (1 - _qx(ps, x))


def _qk_energy(ps, n):
    p, _ = ps.values
    q = ps.q
    return (q ** (-n) - 1) * (1 + p * q ** n)


def _qk_polynomial(ps, n, x):
    p, qn = ps.values
    q = ps.q
    return qhyper([q ** (-n), q ** (-x), -p * q ** n], [1 / qn, 0], q, q, n)


def _dqk_B(ps, x):
    c, qn = ps.values
    q, t = ps.q, _qx(ps, x)
    return (t / qn - 1) * (1 - c * t / qn) / ((1 - c * t * t / qn) * (1 - c * t * t * q / qn))


def _dqk_D(ps, x):
    c, qn = ps.values
    q, t = ps.q, _qx(ps, x)
    prefactor = -c * t * t / (q * qn * qn)
    return prefactor * (1 - t) * (1 - c * t) / ((1 - c * t * t / (q * qn)) * (1 - c * t * t / qn))


def _dqk_eta(ps, x):
    c, qn = ps.values
    q = ps.q
    return (q ** (-x) - 1) * (1 - c * q ** x / qn)


def _dqk_varphi(ps, x):
    c, qn = ps.values
    q = ps.q
    return (q ** (-x) - c * q / qn * q ** x) / (1 - c * q / qn)


def _dqk_polynomial(ps, n, x):
    c, qn = ps.values
    q = ps.q
    return qhyper([q ** (-n), q ** (-x), c * q ** x / qn], [1 / qn, 0], q, q, n)


def _aqk_B(ps, x):
    p, qn = ps.values
    t = _qx(ps, x)
    return (t / qn - 1) * (1 - p * t * ps.q)


def _aqk_D(ps, x):
    p, qn = ps.values
    t = _qx(ps, x)
    return p * t / qn * (1 - t)


def _aqk_polynomial(ps, n, x):
    p, qn = ps.values
    q = ps.q
    return qhyper([q ** (-n), q ** (-x), 0], [p * q, 1 / qn], q, q, n)


# ============================================
# SEMI-INFINITAS
# ============================================

def _m_B(ps, x):
    beta, c = ps.values
    return c / (1 - c) * (x + beta)


def _m_D(ps, x):
    _, c = ps.values
    return Fraction(x) / (1 - c)


def _m_polynomial(ps, n, x):
    beta, c = ps.values
    return hyper([-n, -x], [beta], 1 - 1 / c, n)


def _c_B(ps, x):
    return ps.values[0]


def _c_D(ps, x):
    return Fraction(x)


def _c_polynomial(ps, n, x):
    a = ps.values[0]
    return hyper([-n, -x], [], -1 / a, n)


def _lqj_B(ps, x):
    a, b = ps.values
    return a * (ps.q ** (-x) - b * ps.q)


def _lqj_D(ps, x):
    return ps.q ** (-x) - 1


def _lqj_energy(ps, n):
    a, b = ps.values
    q = ps.q
    return (q ** (-n) - 1) * (1 - a * b * q ** (n + 1))


def _lqj_polynomial(ps, n, x):
    a, b = ps.values
    q = ps.q
    return qhyper([q ** (-n), a * b * q ** (n + 1), q ** (-x)], [b * q], q, q ** x / a, n)


def _lqj_polynomial_little(ps, n, x):
    a, b = ps.values
    q = ps.q
    prefactor = (-a) ** (-n) * q ** (-(n * (n + 1) // 2)) * qpoch(a * q, q, n) / qpoch(b * q, q, n)
    return prefactor * qhyper([q ** (-n), a * b * q ** (n + 1)], [a * q], q, q ** (x + 1), n)


def _qm_B(ps, x):
    b, c = ps.values
    t = _qx(ps, x)
    return c * t * (1 - b * t * ps.q)


def _qm_D(ps, x):
    b, c = ps.values
    t = _qx(ps, x)
    return (1 - t) * (1 + b * c * t)


def _qm_polynomial(ps, n, x):
    b, c = ps.values
    q = ps.q
    return qhyper([q ** (-n), q ** (-x)], [b * q], q, -q ** (n + 1) / c, n)


def _lql_B(ps, x):
    return ps.values[0] * ps.q ** (-x)


def _lql_polynomial(ps, n, x):
    a = ps.values[0]
    q = ps.q
    return qhyper([q ** (-n), q ** (-x)], [], q, q ** x / a, n)


def _ascii_B(ps, x):
    a = ps.values[0]
    return a * ps.q ** (2 * x + 1)


def _ascii_D(ps, x):
    a = ps.values[0]
    t = _qx(ps, x)
    return (1 - t) * (1 - a * t)


def _ascii_polynomial(ps, n, x):
    a = ps.values[0]
    q = ps.q
    return qhyper([q ** (-n), q ** (-x)], [], q, q ** n / a, n)


def _qb_B(ps, x):
    return ps.values[0]


def _qb_energy(ps, n):
    a = ps.values[0]
    q = ps.q
    return (q ** (-n) - 1) * (1 + a * q ** n)


def _qb_polynomial(ps, n, x):
    a = ps.values[0]
    q = ps.q
    return qhyper([q ** (-n), -a * q ** n, q ** (-x)], [], q, -(q ** x) / a, n)


def _qb_polynomial_power(ps, n, x):
    a = ps.values[0]
    q = ps.q
    return q ** (n * x) * qhyper([q ** (-n), q ** (-x)], [0], q, -q ** (1 - n) / a, n)


def _qb_polynomial_bessel(ps, n, x):
    a = ps.values[0]
    q = ps.q
    return (-a) ** (-n) * q ** (-n * n) * qhyper([q ** (-n), -a * q ** n], [0], q, q ** (x + 1), n)


def _qc_B(ps, x):
    return ps.values[0] * _qx(ps, x)


def _qc_polynomial(ps, n, x):
    a = ps.values[0]
    q = ps.q
    return qhyper([q ** (-n), q ** (-x)], [0], q, -q ** (n + 1) / a, n)


# ============================================
# FORMAS COMPARTILHADAS
# ============================================

def _energy_n(ps, n):
    return Fraction(n)


def _energy_inverse_q(ps, n):
    return ps.q ** (-n) - 1


def _energy_one_minus_q(ps, n):
    return 1 - ps.q ** n


def _eta_x(ps, x):
    return Fraction(x)


def _eta_inverse_q(ps, x):
    return ps.q ** (-x) - 1


def _eta_one_minus_q(ps, x):
    return 1 - ps.q ** x


def _varphi_one(ps, x):
    return Fraction(1)


def _varphi_inverse_q(ps, x):
    return ps.q ** (-x)


def _varphi_q(ps, x):
    return ps.q ** x


def _d_inverse_q(ps, x):
    return ps.q ** (-x) - 1


def _d_one_minus_q(ps, x):
    return 1 - ps.q ** x


# ============================================
# REGISTRO
# ============================================

def _point(N: Optional[int] = None, note: str = "", **named: str) -> SamplePoint:
    return SamplePoint(named=named, N=N, note=note)


REGISTRY: Dict[FamilyId, FamilyRecord] = {
    FamilyId.R: FamilyRecord(
        family=FamilyId.R, label="R", param_names=("a", "b", "c", "d"),
        finite=True, q_family=False, delta=(1, 1, 1, 1), kappa_power=0,
        lattice_slot=(2, "minus_n"),
        B=_r_B, D=_r_D, energy=_r_energy, eta=_r_eta, varphi=_r_varphi,
        polynomial=_r_polynomial, phi0_sq=_r_phi0_sq, dtilde=_r_dtilde,
        safe_point=_point(5, "a>N+d, 0<b<1, 0<d<b: B(x)>0 em [0,N−1], D(x)>0 em [1,N]",
                          a="13/2", b="3/4", d="1/2"),
        alternate_points=(
            _point(4, a="11/2", b="2/3", d="1/3"),
            _point(3, a="9/2", b="4/5", d="2/5"),
        ),
    ),
    FamilyId.QR: FamilyRecord(
        family=FamilyId.QR, label="qR", param_names=("a", "b", "c", "d"),
        finite=True, q_family=True, delta=(1, 1, 1, 1), kappa_power=-1,
        lattice_slot=(2, "q_minus_n"),
        B=_qr_B, D=_qr_D, energy=_qr_energy, eta=_qr_eta, varphi=_qr_varphi,
        polynomial=_qr_polynomial, phi0_sq=_qr_phi0_sq, dtilde=_qr_dtilde,
        safe_point=_point(5, "0<ac<d<1, qd<b<1, ac<dq, b<q, d<q², sem polos em ξ̌",
                          q="1/2", a="1/5000", b="1/3", d="1/10"),
        alternate_points=(
            _point(4, q="1/3", a="1/10000", b="1/5", d="1/20"),
            _point(3, q="2/3", a="1/100", b="1/2", d="1/5"),
        ),
    ),
    FamilyId.HA: FamilyRecord(
        family=FamilyId.HA, label="Ha", param_names=("a", "b", "N"),
        finite=True, q_family=False, delta=(1, 1, -1), kappa_power=0,
        lattice_slot=(2, "n"),
        B=_ha_B, D=_ha_D, energy=_ha_energy, eta=_eta_x, varphi=_varphi_one,
        polynomial=_ha_polynomial,
        safe_point=_point(5, "a, b > 0; a, b e a+b não inteiros (a+b inteiro anula o lado direito)",
                          a="3/2", b="7/3"),
        alternate_points=(_point(4, a="5/2", b="5/4"), _point(3, a="7/3", b="9/4")),
    ),
    FamilyId.DHA: FamilyRecord(
        family=FamilyId.DHA, label="dHa", param_names=("a", "b", "N"),
        finite=True, q_family=False, delta=(1, 0, -1), kappa_power=0,
        lattice_slot=(2, "n"),
        B=_dha_B, D=_dha_D, energy=_energy_n, eta=_dha_eta, varphi=_dha_varphi,
        polynomial=_dha_polynomial,
        safe_point=_point(5, "a, b > 0; a e a+b não inteiros", a="3/2", b="7/4"),
        alternate_points=(_point(4, a="5/2", b="5/4"), _point(3, a="4/3", b="3/2")),
    ),
    FamilyId.K: FamilyRecord(
        family=FamilyId.K, label="K", param_names=("p", "N"),
        finite=True, q_family=False, delta=(0, -1), kappa_power=0,
        lattice_slot=(1, "n"),
        B=_k_B, D=_k_D, energy=_energy_n, eta=_eta_x, varphi=_varphi_one,
        polynomial=_k_polynomial,
        safe_point=_point(5, "0<p<1", p="1/3"),
        alternate_points=(_point(4, p="1/4"), _point(3, p="2/3")),
    ),
    FamilyId.QHA: FamilyRecord(
        family=FamilyId.QHA, label="qHa", param_names=("a", "b", "q^N"),
        finite=True, q_family=True, delta=(1, 1, -1), kappa_power=-1,
        lattice_slot=(2, "q_n"),
        B=_qha_B, D=_qha_D, energy=_qha_energy, eta=_eta_inverse_q, varphi=_varphi_inverse_q,
        polynomial=_qha_polynomial,
        safe_point=_point(5, "0<a<1, 0<b<1", q="1/2", a="1/3", b="1/5"),
        alternate_points=(
            _point(4, q="1/3", a="1/2", b="1/4"),
            _point(3, q="2/3", a="1/5", b="1/7"),
        ),
    ),
    FamilyId.DQHA: FamilyRecord(
        family=FamilyId.DQHA, label="dqHa", param_names=("a", "b", "q^N"),
        finite=True, q_family=True, delta=(1, 0, -1), kappa_power=-1,
        lattice_slot=(2, "q_n"),
        B=_dqha_B, D=_dqha_D, energy=_energy_inverse_q, eta=_dqha_eta, varphi=_dqha_varphi,
        polynomial=_dqha_polynomial,
        safe_point=_point(5, "0<a<1, 0<b<1", q="1/2", a="1/3", b="1/5"),
        alternate_points=(
            _point(4, q="1/3", a="1/2", b="1/4"),
            _point(3, q="2/3", a="1/5", b="1/7"),
        ),
    ),
    FamilyId.QQK: FamilyRecord(
        family=FamilyId.QQK, label="qqK", param_names=("p", "q^N"),
        finite=True, q_family=True, delta=(1, -1), kappa_power=1,
        lattice_slot=(1, "q_n"),
        B=_qqk_B, D=_qqk_D, energy=_energy_one_minus_q, eta=_eta_inverse_q,
        varphi=_varphi_inverse_q, polynomial=_qqk_polynomial,
        safe_point=_point(5, "p > q^(−N)", q="1/2", p="100"),
        alternate_points=(_point(4, q="1/3", p="100"), _point(3, q="2/3", p="10")),
    ),
    FamilyId.QK: FamilyRecord(
        family=FamilyId.QK, label="qK", param_names=("p", "q^N"),
        finite=True, q_family=True, delta=(2, -1), kappa_power=-1,
        lattice_slot=(1, "q_n"),
        B=_qk_B, D=_qk_D, energy=_qk_energy, eta=_eta_inverse_q, varphi=_varphi_inverse_q,
        polynomial=_qk_polynomial,
        safe_point=_point(5, "p > 0", q="1/2", p="1/3"),
        alternate_points=(_point(4, q="1/3", p="1/2"), _point(3, q="2/3", p="2")),
    ),
    FamilyId.DQK: FamilyRecord(
        family=FamilyId.DQK, label="dqK", param_names=("c", "q^N"),
        finite=True, q_family=True, delta=(0, -1), kappa_power=-1,
        lattice_slot=(1, "q_n"),
        B=_dqk_B, D=_dqk_D, energy=_energy_inverse_q, eta=_dqk_eta, varphi=_dqk_varphi,
        polynomial=_dqk_polynomial,
        safe_point=_point(5, "c < 0", q="1/2", c="-1/3"),
        alternate_points=(_point(4, q="1/3", c="-1/2"), _point(3, q="2/3", c="-2")),
    ),
    FamilyId.AQK: FamilyRecord(
        family=FamilyId.AQK, label="aqK", param_names=("p", "q^N"),
        finite=True, q_family=True, delta=(1, -1), kappa_power=-1,
        lattice_slot=(1, "q_n"),
        B=_aqk_B, D=_aqk_D, energy=_energy_inverse_q, eta=_eta_inverse_q,
        varphi=_varphi_inverse_q, polynomial=_aqk_polynomial,
        safe_point=_point(5, "0 < pq < 1", q="1/2", p="1/3"),
        alternate_points=(_point(4, q="1/3", p="1/4"), _point(3, q="2/3", p="1/2")),
    ),
    FamilyId.M: FamilyRecord(
        family=FamilyId.M, label="M", param_names=("beta", "c"),
        finite=False, q_family=False, delta=(1, 0), kappa_power=0,
        lattice_slot=None,
        B=_m_B, D=_m_D, energy=_energy_n, eta=_eta_x, varphi=_varphi_one,
        polynomial=_m_polynomial,
        safe_point=_point(None, "β > 0, 0<c<1", beta="3/2", c="1/3"),
        alternate_points=(_point(None, beta="5/2", c="1/2"), _point(None, beta="4/3", c="1/4")),
    ),
    FamilyId.C: FamilyRecord(
        family=FamilyId.C, label="C", param_names=("a",),
        finite=False, q_family=False, delta=(0,), kappa_power=0,
        lattice_slot=None,
        B=_c_B, D=_c_D, energy=_energy_n, eta=_eta_x, varphi=_varphi_one,
        polynomial=_c_polynomial,
        safe_point=_point(None, "a > 0", a="3/2"),
        alternate_points=(_point(None, a="2/3"), _point(None, a="5/2")),
    ),
    FamilyId.LQJ: FamilyRecord(
        family=FamilyId.LQJ, label="lqJ", param_names=("a", "b"),
        finite=False, q_family=True, delta=(1, 1), kappa_power=-1,
        lattice_slot=None,
        B=_lqj_B, D=_lqj_D, energy=_lqj_energy, eta=_eta_one_minus_q, varphi=_varphi_q,
        polynomial=_lqj_polynomial,
        polynomial_alternates={"little_jacobi": _lqj_polynomial_little},
        safe_point=_point(None, "0<a<1/q, b<1/q", q="1/2", a="1/3", b="1/5"),
        alternate_points=(
            _point(None, q="1/3", a="1/2", b="1/4"),
            _point(None, q="2/3", a="1/5", b="1/3"),
        ),
    ),
    FamilyId.QM: FamilyRecord(
        family=FamilyId.QM, label="qM", param_names=("b", "c"),
        finite=False, q_family=True, delta=(1, -1), kappa_power=1,
        lattice_slot=None,
        B=_qm_B, D=_qm_D, energy=_energy_one_minus_q, eta=_eta_inverse_q,
        varphi=_varphi_inverse_q, polynomial=_qm_polynomial,
        safe_point=_point(None, "0<bq<1, c>0", q="1/2", b="1/3", c="1/5"),
        alternate_points=(
            _point(None, q="1/3", b="1/2", c="2/5"),
            _point(None, q="2/3", b="1/4", c="2"),
        ),
    ),
    FamilyId.LQL: FamilyRecord(
        family=FamilyId.LQL, label="lqL", param_names=("a",),
        finite=False, q_family=True, delta=(1,), kappa_power=-1,
        lattice_slot=None,
        B=_lql_B, D=_d_inverse_q, energy=_energy_inverse_q, eta=_eta_one_minus_q,
        varphi=_varphi_q, polynomial=_lql_polynomial,
        safe_point=_point(None, "a > 0", q="1/2", a="1/3"),
        alternate_points=(_point(None, q="1/3", a="1/2"), _point(None, q="2/3", a="1/4")),
    ),
    FamilyId.ASCII: FamilyRecord(
        family=FamilyId.ASCII, label="ASCII", param_names=("a",),
        finite=False, q_family=True, delta=(0,), kappa_power=1,
        lattice_slot=None,
        B=_ascii_B, D=_ascii_D, energy=_energy_one_minus_q, eta=_eta_inverse_q,
        varphi=_varphi_inverse_q, polynomial=_ascii_polynomial,
        safe_point=_point(None, "0<a<1", q="1/2", a="1/3"),
        alternate_points=(_point(None, q="1/3", a="1/2"), _point(None, q="2/3", a="1/4")),
    ),
    FamilyId.QB: FamilyRecord(
        family=FamilyId.QB, label="qB", param_names=("a",),
        finite=False, q_family=True, delta=(2,), kappa_power=-1,
        lattice_slot=None,
        B=_qb_B, D=_d_inverse_q, energy=_qb_energy, eta=_eta_one_minus_q, varphi=_varphi_q,
        polynomial=_qb_polynomial,
        polynomial_alternates={"power": _qb_polynomial_power, "bessel": _qb_polynomial_bessel},
        safe_point=_point(None, "a > 0", q="1/2", a="1/3"),
        alternate_points=(_point(None, q="1/3", a="1/2"), _point(None, q="2/3", a="1/4")),
    ),
    FamilyId.QC: FamilyRecord(
        family=FamilyId.QC, label="qC", param_names=("a",),
        finite=False, q_family=True, delta=(-1,), kappa_power=1,
        lattice_slot=None,
        B=_qc_B, D=_d_one_minus_q, energy=_energy_one_minus_q, eta=_eta_inverse_q,
        varphi=_varphi_inverse_q, polynomial=_qc_polynomial,
        safe_point=_point(None, "a > 0", q="1/2", a="1/3"),
        alternate_points=(_point(None, q="1/3", a="1/2"), _point(None, q="2/3", a="1/4")),
    ),
}
