# rdqm/services/casoratian.py
"""
Casoratianos, produtos auxiliares φ_M, conjuntos de índices (𝒟, 𝒟̄) e o
verificador exato das identidades de Casorati

    φ_M(x−M;λ)⁻¹ W_C[ξ̌_{d₁},…,ξ̌_{d_M}](x−M;λ)
        ∝ φ_N̄(x;λ̄)⁻¹ W_C[P̌_{e₁},…,P̌_{e_N̄}](x;λ̄),   λ̄ = λ − (𝒩+1)δ,

incluindo a constante fechada A do caso q-Racah com torção (i).

A verificação é pontual e exata num ponto racional de parâmetros; a grade
tem pelo menos 2L+2 pontos, L = ∑d + ∑e + M + N̄ + 2, o que basta para que
a igualdade na grade implique a igualdade das funções.
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from loguru import logger

from ..core.exact import ProportionalityReport, ProportionalityStatus, det_exact, fit_proportionality
from ..core.exceptions import (
    DegenerateInstance,
    EvaluationPole,
    IdentityFalsified,
    InvalidInput,
    PoleInSeries,
)
from . import families, twists
from .families import ParamSet
from .family_catalog import FamilyId
from .qseries import qpoch, qpoch_product

Function = Callable[[int], Fraction]


# ============================================
# CASORATIANO E φ_M
# ============================================

def casoratian_WC(fs: Sequence[Function], x: int) -> Fraction:
    """W_C[f₁,…,f_n](x) = det(f_k(x+j−1)); n = 0 → 1."""
    n = len(fs)
    if n == 0:
        return Fraction(1)
    matrix = [[Fraction(f(x + j)) for f in fs] for j in range(n)]
    return det_exact(matrix)


def varphi_M(ps: ParamSet, M: int, x: int) -> Fraction:
    """
    φ_M(x;λ) = ∏_{1≤j<k≤M} (η(x+k−1) − η(x+j−1)) / η(k−j).

    Raises:
        EvaluationPole: η(k−j) = 0
    """
    if M < 0:
        raise InvalidInput("M negativo", M=M)
    value = Fraction(1)
    for j in range(1, M + 1):
        for k in range(j + 1, M + 1):
            denominator = families.eta(ps, k - j)
            if denominator == 0:
                raise EvaluationPole("η(k−j) nulo em φ_M", family=ps.label, M=M, gap=k - j)
            value *= (families.eta(ps, x + k - 1) - families.eta(ps, x + j - 1)) / denominator
    return value


# ============================================
# CONJUNTOS DE ÍNDICES
# ============================================

@dataclass(frozen=True)
class IndexSets:
    M: int
    D: Tuple[int, ...]
    calN: int
    Dbar: Tuple[int, ...]

    @property
    def Nbar(self) -> int:
        return self.calN + 1 - self.M

    @property
    def ell(self) -> int:
        """ℓ_𝒟 = ∑d − M(M−1)/2."""
        return sum(self.D) - self.M * (self.M - 1) // 2

    @property
    def ell_bar(self) -> int:
        return sum(self.Dbar) - self.Nbar * (self.Nbar - 1) // 2

    @property
    def degree_bound(self) -> int:
        """L = ∑d + ∑e + M + N̄ + 2."""
        return sum(self.D) + sum(self.Dbar) + self.M + self.Nbar + 2

    def lambda_bar(self, ps: ParamSet) -> ParamSet:
        """λ̄ = λ − (𝒩+1)δ."""
        return ps.shift_by(-(self.calN + 1))

    def sums_consistent(self) -> bool:
        """∑e = ∑d + 𝒩(𝒩+1)/2 − 𝒩M e ℓ_𝒟̄ = ℓ_𝒟."""
        expected = sum(self.D) + self.calN * (self.calN + 1) // 2 - self.calN * self.M
        return sum(self.Dbar) == expected and self.ell_bar == self.ell

    def describe(self) -> Dict[str, object]:
        return {"D": list(self.D), "calN": self.calN, "Dbar": list(self.Dbar)}


def build_index_sets(D: Sequence[int], calN: int) -> IndexSets:
    """
    𝒟̄ = {0,…,𝒩} ∖ {𝒩−d_j}, ambos em ordem crescente.

    Raises:
        InvalidInput: 𝒟 vazio, repetido, negativo ou 𝒩 < max 𝒟
    """
    degrees = [int(d) for d in D]
    if not degrees:
        raise InvalidInput("𝒟 vazio")
    if len(set(degrees)) != len(degrees):
        raise InvalidInput("𝒟 com índices repetidos", D=degrees)
    if min(degrees) < 0:
        raise InvalidInput("𝒟 com índice negativo", D=degrees)
    if calN < max(degrees):
        raise InvalidInput("𝒩 menor que max 𝒟", D=degrees, calN=calN)
    removed = {calN - d for d in degrees}
    dbar = tuple(e for e in range(calN + 1) if e not in removed)
    return IndexSets(M=len(degrees), D=tuple(sorted(degrees)), calN=calN, Dbar=dbar)


def enumerate_index_sets(max_M: int, max_calN: int) -> List[IndexSets]:
    """Todos (𝒟, 𝒩) com |𝒟| ≤ max_M, 𝒟 ⊆ {0,…,max_calN}, max 𝒟 ≤ 𝒩 ≤ max_calN."""
    result = []
    for M in range(1, max_M + 1):
        for degrees in combinations(range(max_calN + 1), M):
            for calN in range(max(degrees), max_calN + 1):
                result.append(build_index_sets(degrees, calN))
    return result


# ============================================
# INSTÂNCIAS
# ============================================

@dataclass(frozen=True)
class IdentityInstance:
    family: FamilyId
    twist: str
    params: ParamSet
    idx: IndexSets
    x_grid: Tuple[int, ...]
    skipped: Tuple[int, ...]
    order: Tuple[int, ...]
    """Ordem das colunas ξ̌ no Casoratiano do lado esquerdo"""

    lhs: Tuple[Fraction, ...] = ()
    rhs: Tuple[Fraction, ...] = ()
    report: Optional[ProportionalityReport] = None
    constant_A: Optional[Fraction] = None

    @property
    def required_points(self) -> int:
        return 2 * self.idx.degree_bound + 2


def _side_functions(ps: ParamSet, idx: IndexSets, twist: str, order: Sequence[int]):
    lam_bar = idx.lambda_bar(ps)

    def lhs(x: int) -> Optional[Fraction]:
        base = x - idx.M
        phi = varphi_M(ps, idx.M, base)
        if phi == 0:
            return None
        fs = [lambda y, d=d: twists.eval_xi(ps, twist, d, y) for d in order]
        return casoratian_WC(fs, base) / phi

    def rhs(x: int) -> Optional[Fraction]:
        phi = varphi_M(lam_bar, idx.Nbar, x)
        if phi == 0:
            return None
        fs = [lambda y, e=e: families.eval_polynomial(lam_bar, e, y) for e in idx.Dbar]
        return casoratian_WC(fs, x) / phi

    return lhs, rhs


def build_instance(
    ps: ParamSet,
    D: Sequence[int],
    calN: int,
    twist: Optional[str] = None,
    order: Optional[Sequence[int]] = None,
) -> IdentityInstance:
    """
    Monta a instância e a grade: começa em x = −M−1 e sobe, pulando zeros
    de φ e polos, até 2L+2 pontos.

    Raises:
        DegenerateInstance: grade insuficiente
    """
    idx = build_index_sets(D, calN)
    token = twist or twists.default_twist(ps.family)
    twists.get_rule(ps.family, token)
    columns = tuple(order) if order is not None else idx.D
    if sorted(columns) != list(idx.D):
        raise InvalidInput("Ordem não é permutação de 𝒟", order=list(columns), D=list(idx.D))

    lhs_fn, rhs_fn = _side_functions(ps, idx, token, columns)
    needed = 2 * idx.degree_bound + 2
    start = -idx.M - 1
    limit = start + 4 * needed + 32

    grid, skipped, lhs, rhs = [], [], [], []
    x = start
    while len(grid) < needed and x < limit:
        try:
            left, right = lhs_fn(x), rhs_fn(x)
        except (EvaluationPole, PoleInSeries):
            left = right = None
        if left is None or right is None:
            skipped.append(x)
        else:
            grid.append(x)
            lhs.append(left)
            rhs.append(right)
        x += 1

    if len(grid) < needed:
        raise DegenerateInstance(
            "Grade insuficiente para a cota de grau",
            family=ps.label,
            D=list(idx.D),
            calN=calN,
            points=len(grid),
            required=needed,
        )
    if skipped:
        logger.debug(f"{ps.label} 𝒟={list(idx.D)} 𝒩={calN}: pontos pulados {skipped}")

    return IdentityInstance(
        family=ps.family,
        twist=token,
        params=ps,
        idx=idx,
        x_grid=tuple(grid),
        skipped=tuple(skipped),
        order=columns,
        lhs=tuple(lhs),
        rhs=tuple(rhs),
    )


def verify_identity(inst: IdentityInstance, strict: bool = True) -> ProportionalityReport:
    """
    Ajusta LHS = r·RHS na grade da instância.

    Raises:
        DegenerateInstance: os dois lados nulos em toda a grade
        IdentityFalsified: razão inconsistente (com strict)
    """
    if len(inst.x_grid) < inst.required_points:
        raise DegenerateInstance(
            "Grade abaixo da cota de grau",
            points=len(inst.x_grid),
            required=inst.required_points,
        )
    report = fit_proportionality(inst.lhs, inst.rhs, inst.skipped)
    context = dict(family=inst.params.label, twist=inst.twist, **inst.idx.describe())
    if report.status is ProportionalityStatus.BOTH_ZERO:
        raise DegenerateInstance("Os dois lados se anulam em toda a grade", **context)
    if report.status is ProportionalityStatus.MISMATCH and strict:
        raise IdentityFalsified(
            "Identidade de Casorati falsificada",
            x=inst.x_grid[report.mismatch_index],
            **context,
        )
    return report


def run_identity(
    ps: ParamSet,
    D: Sequence[int],
    calN: int,
    twist: Optional[str] = None,
    strict: bool = True,
) -> IdentityInstance:
    """Instância verificada; para qR com torção (i) inclui a constante A."""
    inst = build_instance(ps, D, calN, twist)
    report = verify_identity(inst, strict=strict)
    constant = None
    if ps.family is FamilyId.QR and inst.twist == "i":
        constant = qracah_constant_A(inst)
    return replace(inst, report=report, constant_A=constant)


# ============================================
# CONSTANTE A (q-RACAH)
# ============================================

def leading_coefficient_cn(ps: ParamSet, n: int) -> Fraction:
    """c_n(λ) = (d̃qⁿ;q)_n / (a,b,c;q)_n: coeficiente de ηⁿ em P̌_n."""
    if ps.family is not FamilyId.QR:
        raise InvalidInput("c_n só para qR", family=ps.label)
    a, b, c, _ = ps.values
    q = ps.q
    denominator = qpoch_product([a, b, c], q, n)
    if denominator == 0:
        raise EvaluationPole("Denominador nulo em c_n", family=ps.label, n=n)
    return qpoch(families.dtilde(ps) * q ** n, q, n) / denominator


def _pair_product(degrees: Sequence[int], q: Fraction) -> Fraction:
    value = Fraction(1)
    for i, j in combinations(range(len(degrees)), 2):
        value *= 1 - q ** (degrees[j] - degrees[i])
    return value


def qracah_constant_A(inst: IdentityInstance) -> Fraction:
    """Constante A fechada para qR, torção (i), 𝒟 e 𝒟̄ crescentes."""
    ps = inst.params
    if ps.family is not FamilyId.QR or inst.twist != "i":
        raise InvalidInput("A só existe para qR com torção (i)", family=ps.label, twist=inst.twist)
    if list(inst.order) != sorted(inst.order):
        raise InvalidInput("A exige 𝒟 crescente", order=list(inst.order))

    idx = inst.idx
    M, nbar = idx.M, idx.Nbar
    q, d = ps.q, ps.values[3]
    twisted = twists.make_twist(ps, "i").twisted
    lam_bar = idx.lambda_bar(ps)

    value = Fraction(1)
    for dj in idx.D:
        value *= leading_coefficient_cn(twisted, dj)
    for ej in idx.Dbar:
        value /= leading_coefficient_cn(lam_bar, ej)

    value *= _pair_product(idx.D, q) / _pair_product(idx.Dbar, q)

    for i in range(1, M + 1):
        value *= (1 - d * q ** i) ** (M - i)
    for i in range(1, nbar + 1):
        value /= (1 - d * q ** (-nbar - M + i)) ** (nbar - i)

    exponent = sum((M + 1 - j) * dj for j, dj in enumerate(idx.D, start=1))
    exponent += sum(j * ej for j, ej in enumerate(idx.Dbar, start=1))
    exponent -= M * (M - 1) * (2 * M - 1) // 6
    exponent -= (nbar - 1) * nbar * (nbar + 1) // 6
    return value * d ** (-sum(idx.D)) * q ** exponent


def check_eta_recurrence(ps: ParamSet, idx: IndexSets, xs: Sequence[int]) -> bool:
    """η(x; λ̄+(N̄−1)δ) = q^(−M) η(x−M; λ+(M−1)δ) + (q^(−M)−1)(1−d/q) (qR)."""
    if ps.family is not FamilyId.QR:
        raise InvalidInput("Recorrência de η só para qR", family=ps.label)
    q, d = ps.q, ps.values[3]
    left_params = idx.lambda_bar(ps).shift_by(idx.Nbar - 1)
    right_params = ps.shift_by(idx.M - 1)
    shift = (q ** -idx.M - 1) * (1 - d / q)
    return all(
        families.eta(left_params, x)
        == q ** -idx.M * families.eta(right_params, x - idx.M) + shift
        for x in xs
    )
