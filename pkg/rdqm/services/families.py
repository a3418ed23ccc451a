# rdqm/services/families.py
"""
Conjunto de parâmetros das famílias e as operações sobre elas:
avaliação exata de B, D, E_n, η, φ, P̌_n e φ₀², deslocamento λ → λ + kδ,
equação de diferenças, ortogonalidade, simetrias e invariância de forma.

Parâmetros das famílias q são guardados multiplicativamente (a = q^λ₁);
os das famílias clássicas, aditivamente.
"""

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from loguru import logger

from ..core.exact import divided_difference, format_rational, parse_rational
from ..core.exceptions import EvaluationPole, InvalidInput, InvalidParameters, PoleInSeries
from .family_catalog import REGISTRY, FamilyId, FamilyRecord, SamplePoint
from .qseries import poch_product, qpoch_product

RationalLike = Union[Fraction, int, str]


def _to_rational(value: RationalLike) -> Fraction:
    if isinstance(value, str):
        return parse_rational(value)
    return Fraction(value)


@lru_cache(maxsize=4096)
def lattice_exponent(value: Fraction, q: Fraction) -> int:
    """
    Inteiro k com q^k = value exatamente.

    Raises:
        InvalidParameters: value não é potência inteira de q
    """
    if value <= 0 or q <= 0 or q == 1:
        raise InvalidParameters("Parâmetro de rede não é potência de q", value=value, q=q)
    log_value = math.log(value.numerator) - math.log(value.denominator)
    log_q = math.log(q.numerator) - math.log(q.denominator)
    guess = round(log_value / log_q)
    for k in (guess, guess - 1, guess + 1):
        if q ** k == value:
            return k
    raise InvalidParameters("Parâmetro de rede não é potência de q", value=value, q=q)


# ============================================
# CONJUNTO DE PARÂMETROS
# ============================================

@dataclass(frozen=True)
class ParamSet:
    """
    Família + vetor de parâmetros (+ base q nas famílias q).

    Conjuntos torcidos reutilizam esta classe: q pode ser > 1 e N
    negativo (ex.: Ha torcido tem N′ = −2−N).
    """

    family: FamilyId
    values: Tuple[Fraction, ...]
    q: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "family", FamilyId(self.family))
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        if self.q is not None:
            object.__setattr__(self, "q", Fraction(self.q))
        record = self.record
        if len(self.values) != len(record.param_names):
            raise InvalidInput(
                f"{record.label} espera {len(record.param_names)} parâmetros",
                family=record.label,
                received=len(self.values),
            )
        if record.q_family != (self.q is not None):
            raise InvalidInput("Base q incompatível com a família", family=record.label)

    @property
    def record(self) -> FamilyRecord:
        return REGISTRY[self.family]

    @property
    def label(self) -> str:
        return self.record.label

    @property
    def N(self) -> Optional[int]:
        slot = self.record.lattice_slot
        if slot is None:
            return None
        index, kind = slot
        value = self.values[index]
        if kind == "q_minus_n":
            return -lattice_exponent(value, self.q)
        if kind == "q_n":
            return lattice_exponent(value, self.q)
        size = -value if kind == "minus_n" else value
        if size.denominator != 1:
            raise InvalidParameters("Tamanho da rede não inteiro", family=self.label, value=value)
        return int(size)

    @property
    def kappa(self) -> Fraction:
        if self.q is None:
            return Fraction(1)
        return self.q ** self.record.kappa_power

    def shift_by(self, k: int) -> "ParamSet":
        """λ → λ + kδ (multiplica por q^(kδᵢ) nas famílias q)."""
        delta = self.record.delta
        if self.q is None:
            values = tuple(v + k * d for v, d in zip(self.values, delta))
        else:
            values = tuple(v * self.q ** (k * d) for v, d in zip(self.values, delta))
        return replace(self, values=values)

    def named(self) -> Dict[str, Fraction]:
        return dict(zip(self.record.param_names, self.values))

    def describe(self) -> Dict[str, str]:
        """Parâmetros como literais "p/q" para relatórios."""
        description = {name: format_rational(v) for name, v in self.named().items()}
        if self.q is not None:
            description["q"] = format_rational(self.q)
        if self.record.finite:
            description["N"] = str(self.N)
        return description


def resolve_family(family: Union[FamilyId, str]) -> FamilyId:
    """Token da CLI (r, qr, ha, ...) ou FamilyId."""
    if isinstance(family, FamilyId):
        return family
    try:
        return FamilyId(str(family).strip().lower())
    except ValueError:
        raise InvalidInput(f"Família desconhecida: '{family}'", family=family)


def make_params(
    family: Union[FamilyId, str],
    named: Mapping[str, RationalLike],
    N: Optional[int] = None,
) -> ParamSet:
    """
    Monta um ParamSet a partir de nomes ("a", "b", "d", "q", "p", "beta", ...).

    O parâmetro de rede (c = −N em R, c = q^(−N) em qR, N ou q^N nas
    finitas reduzidas) é calculado a partir de N quando não vem nomeado.

    Raises:
        InvalidInput: nome desconhecido ou parâmetro ausente
        InvalidParameters: q fora de (0,1) ou N não positivo
    """
    record = REGISTRY[resolve_family(family)]

    values = {key: _to_rational(value) for key, value in named.items()}
    q = values.pop("q", None)
    if record.q_family:
        if q is None:
            raise InvalidInput("Família q exige o parâmetro q", family=record.label)
        if not 0 < q < 1:
            raise InvalidParameters("É necessário 0 < q < 1", family=record.label, q=q)
    elif q is not None:
        raise InvalidInput("Família clássica não aceita q", family=record.label)

    if record.lattice_slot is not None:
        index, kind = record.lattice_slot
        slot_name = record.param_names[index]
        if N is None and slot_name not in values:
            raise InvalidInput("Família finita exige N", family=record.label)
        if N is not None:
            if N < 1:
                raise InvalidParameters("N deve ser positivo", family=record.label, N=N)
            slot_value = {
                "minus_n": Fraction(-N),
                "n": Fraction(N),
                "q_minus_n": q ** (-N) if q is not None else None,
                "q_n": q ** N if q is not None else None,
            }[kind]
            if slot_name in values and values[slot_name] != slot_value:
                raise InvalidParameters(
                    f"{slot_name} incompatível com N",
                    family=record.label,
                    N=N,
                    value=values[slot_name],
                )
            values[slot_name] = slot_value

    unknown = set(values) - set(record.param_names)
    if unknown:
        raise InvalidInput(
            f"Parâmetros desconhecidos para {record.label}: {sorted(unknown)}",
            family=record.label,
        )
    missing = [name for name in record.param_names if name not in values]
    if missing:
        raise InvalidInput(f"Parâmetros ausentes: {missing}", family=record.label)

    ps = ParamSet(record.family, tuple(values[name] for name in record.param_names), q)
    if record.finite and ps.N < 1:
        raise InvalidParameters("N deve ser positivo", family=record.label, N=ps.N)
    return ps


def params_from_point(family: Union[FamilyId, str], point: SamplePoint) -> ParamSet:
    return make_params(family, point.named, point.N)


def safe_params(family: Union[FamilyId, str]) -> ParamSet:
    """Ponto seguro documentado da família."""
    record = REGISTRY[resolve_family(family)]
    return params_from_point(record.family, record.safe_point)


def sample_param_sets(family: Union[FamilyId, str]) -> List[ParamSet]:
    """Ponto seguro seguido dos pontos alternativos."""
    record = REGISTRY[resolve_family(family)]
    points = (record.safe_point,) + record.alternate_points
    return [params_from_point(record.family, point) for point in points]


# ============================================
# AVALIADORES
# ============================================

def _guard(ps: ParamSet, name: str, func, *args) -> Fraction:
    try:
        return Fraction(func(ps, *args))
    except ZeroDivisionError:
        raise EvaluationPole(f"Polo em {name}", family=ps.label, args=args)
    except PoleInSeries as exc:
        raise exc.with_family(ps.label)


def B(ps: ParamSet, x: int) -> Fraction:
    return _guard(ps, "B", ps.record.B, x)


def D(ps: ParamSet, x: int) -> Fraction:
    return _guard(ps, "D", ps.record.D, x)


def eta(ps: ParamSet, x: int) -> Fraction:
    return _guard(ps, "η", ps.record.eta, x)


def varphi(ps: ParamSet, x: int) -> Fraction:
    return _guard(ps, "φ", ps.record.varphi, x)


def dtilde(ps: ParamSet) -> Fraction:
    if ps.record.dtilde is None:
        raise InvalidInput("d̃ só existe para R e qR", family=ps.label)
    return _guard(ps, "d̃", lambda p: p.record.dtilde(p))


def eval_energy(ps: ParamSet, n: int, allow_negative: bool = False) -> Fraction:
    """E_n(λ); n negativo só com allow_negative (energias pseudo virtuais)."""
    if n < 0 and not allow_negative:
        raise InvalidInput("Índice de energia negativo", family=ps.label, n=n)
    return _guard(ps, "E_n", ps.record.energy, n)


@lru_cache(maxsize=65536)
def eval_polynomial(ps: ParamSet, n: int, x: int) -> Fraction:
    """P̌_n(x;λ) pela série terminante da família."""
    if n < 0:
        raise InvalidInput("Grau negativo", family=ps.label, n=n)
    return _guard(ps, "P̌_n", ps.record.polynomial, n, x)


def eval_polynomial_form(ps: ParamSet, form: str, n: int, x: int) -> Fraction:
    """Forma alternativa publicada de P̌_n (lqJ, qB)."""
    try:
        func = ps.record.polynomial_alternates[form]
    except KeyError:
        raise InvalidInput(f"Forma '{form}' inexistente", family=ps.label)
    return _guard(ps, f"P̌_n[{form}]", func, n, x)


def check_polynomial_forms(ps: ParamSet, degrees: Iterable[int], xs: Iterable[int]) -> Dict[str, bool]:
    """Cada forma alternativa de P̌_n contra a definição."""
    degrees, xs = list(degrees), list(xs)
    return {
        form: all(
            eval_polynomial_form(ps, form, n, x) == eval_polynomial(ps, n, x)
            for n in degrees for x in xs
        )
        for form in ps.record.polynomial_alternates
    }


def phi0_sq_product(ps: ParamSet, x: int) -> Fraction:
    """φ₀(x)² = ∏_{y<x} B(y)/D(y+1)."""
    value = Fraction(1)
    for y in range(x):
        denominator = D(ps, y + 1)
        if denominator == 0:
            raise EvaluationPole("D nulo no produto de φ₀²", family=ps.label, x=y + 1)
        value *= B(ps, y) / denominator
    return value


def phi0_sq(ps: ParamSet, x: int) -> Fraction:
    """φ₀(x)² pela forma fechada quando existe, senão pelo produto."""
    if ps.record.phi0_sq is None:
        return phi0_sq_product(ps, x)
    return _guard(ps, "φ₀²", ps.record.phi0_sq, x)


def ground_state_weights(ps: ParamSet) -> List[Fraction]:
    """φ₀(x)² para x ∈ [0,N], acumulado."""
    if not ps.record.finite:
        raise InvalidInput("Pesos só para famílias finitas", family=ps.label)
    weights = [Fraction(1)]
    for y in range(ps.N):
        denominator = D(ps, y + 1)
        if denominator == 0:
            raise EvaluationPole("D nulo no produto de φ₀²", family=ps.label, x=y + 1)
        weights.append(weights[-1] * B(ps, y) / denominator)
    return weights


# ============================================
# VERIFICAÇÕES
# ============================================

def check_difference_equation(ps: ParamSet, n: int, x: int) -> bool:
    """B(x)(P̌(x)−P̌(x+1)) + D(x)(P̌(x)−P̌(x−1)) = E_n P̌(x)."""
    center = eval_polynomial(ps, n, x)
    lhs = B(ps, x) * (center - eval_polynomial(ps, n, x + 1))
    lhs += D(ps, x) * (center - eval_polynomial(ps, n, x - 1))
    return lhs == eval_energy(ps, n) * center


@dataclass(frozen=True)
class OrthogonalityResult:
    n: int
    m: int
    value: Fraction
    off_diagonal_zero: bool
    diagonal_positive: bool

    @property
    def passed(self) -> bool:
        return self.off_diagonal_zero if self.n != self.m else self.diagonal_positive


def orthogonality_check(ps: ParamSet, n: int, m: int) -> OrthogonalityResult:
    """∑_x φ₀²(x) P̌_n(x) P̌_m(x) sobre [0,N], exato."""
    if not ps.record.finite:
        raise InvalidInput("Ortogonalidade só para famílias finitas", family=ps.label)
    total = Fraction(0)
    for x in range(ps.N + 1):
        total += phi0_sq(ps, x) * eval_polynomial(ps, n, x) * eval_polynomial(ps, m, x)
    return OrthogonalityResult(
        n=n,
        m=m,
        value=total,
        off_diagonal_zero=(n != m and total == 0),
        diagonal_positive=(n == m and total > 0),
    )


def check_boundaries(ps: ParamSet) -> bool:
    """D(0) = 0 e, nas finitas, B(N) = 0."""
    if D(ps, 0) != 0:
        return False
    return not ps.record.finite or B(ps, ps.N) == 0


def check_positivity(ps: ParamSet, span: int = 8) -> bool:
    """B(x) > 0 em [0,N−1] e D(x) > 0 em [1,N] (semi-infinitas: até span)."""
    upper = ps.N if ps.record.finite else span
    return all(B(ps, x) > 0 for x in range(upper)) and all(
        D(ps, x) > 0 for x in range(1, upper + 1)
    )


def check_varphi_identity(ps: ParamSet, x: int) -> bool:
    """φ(x)η(1) = η(x+1) − η(x)."""
    return varphi(ps, x) * eta(ps, 1) == eta(ps, x + 1) - eta(ps, x)


def check_energy_ordering(ps: ParamSet, count: Optional[int] = None) -> bool:
    """E_0 = 0 < E_1 < … < E_top."""
    top = count if count is not None else (ps.N if ps.record.finite else 8)
    energies = [eval_energy(ps, n) for n in range(top + 1)]
    return energies[0] == 0 and all(a < b for a, b in zip(energies, energies[1:]))


def eta_leading_coefficient(ps: ParamSet, n: int, points: Optional[Iterable[int]] = None) -> Fraction:
    """Coeficiente de ηⁿ em P̌_n, por diferença dividida sobre n+1 nós."""
    xs = list(points) if points is not None else list(range(n + 1))
    nodes = [eta(ps, x) for x in xs]
    values = [eval_polynomial(ps, n, x) for x in xs]
    return divided_difference(nodes, values)


def check_phi0_forms(ps: ParamSet) -> bool:
    """Forma fechada de φ₀² igual ao produto ∏ B(y)/D(y+1) em [0,N]."""
    if ps.record.phi0_sq is None:
        return True
    weights = ground_state_weights(ps)
    return all(phi0_sq(ps, x) == weights[x] for x in range(ps.N + 1))


def check_shape_invariance(ps: ParamSet, xs: Iterable[int]) -> bool:
    """
    Invariância de forma na forma fatorada:
    B(x+1;λ)D(x+1;λ) = κ²B(x;λ+δ)D(x+1;λ+δ) e
    B(x;λ)+D(x+1;λ) = κ(B(x;λ+δ)+D(x;λ+δ)) + E₁(λ).
    """
    shifted = ps.shift_by(1)
    kappa = ps.kappa
    energy = eval_energy(ps, 1)
    for x in xs:
        if B(ps, x + 1) * D(ps, x + 1) != kappa ** 2 * B(shifted, x) * D(shifted, x + 1):
            logger.debug(f"Invariância de forma (produto) falhou em x={x} para {ps.label}")
            return False
        if B(ps, x) + D(ps, x + 1) != kappa * (B(shifted, x) + D(shifted, x)) + energy:
            logger.debug(f"Invariância de forma (soma) falhou em x={x} para {ps.label}")
            return False
    return True


def check_forward_shift(ps: ParamSet, n: int, x: int) -> bool:
    """P̌_n(x) − P̌_n(x+1) = E_n/B(0) · φ(x) · P̌_{n−1}(x; λ+δ)."""
    if n == 0:
        return eval_polynomial(ps, 0, x) == eval_polynomial(ps, 0, x + 1)
    b0 = B(ps, 0)
    if b0 == 0:
        raise InvalidInput("Relação de deslocamento exige B(0) ≠ 0", family=ps.label)
    lhs = eval_polynomial(ps, n, x) - eval_polynomial(ps, n, x + 1)
    rhs = eval_energy(ps, n) / b0 * varphi(ps, x) * eval_polynomial(ps.shift_by(1), n - 1, x)
    return lhs == rhs


# ============================================
# SIMETRIAS (R, qR)
# ============================================

def reflected_params(ps: ParamSet) -> ParamSet:
    """λ′ = (λ₁+λ₃−λ₄, λ₂+λ₃−λ₄, λ₃, 2λ₃−λ₄)."""
    if ps.family not in (FamilyId.R, FamilyId.QR):
        raise InvalidInput("Reflexão só para R e qR", family=ps.label)
    a, b, c, d = ps.values
    if ps.q is None:
        values = (a + c - d, b + c - d, c, 2 * c - d)
    else:
        values = (a * c / d, b * c / d, c, c * c / d)
    return replace(ps, values=values)


def reflection_constant(ps: ParamSet, n: int) -> Fraction:
    """Constante K em P̌_n(N−x;λ′) = K·P̌_n(x;λ)."""
    a, b, c, d = ps.values
    dt = dtilde(ps)
    try:
        if ps.q is None:
            return poch_product([a, b], n) / poch_product([1 - a + dt, 1 - b + dt], n)
        q = ps.q
        top = c ** n * qpoch_product([a, b], q, n)
        return top / (d ** n * qpoch_product([dt * q / a, dt * q / b], q, n))
    except ZeroDivisionError:
        raise EvaluationPole("Polo na constante de reflexão", family=ps.label, n=n)


def check_reflection_symmetry(ps: ParamSet, x: int, n: int) -> bool:
    """B(N−x;λ′) = D(x;λ), D(N−x;λ′) = B(x;λ) e P̌_n(N−x;λ′) = K·P̌_n(x;λ)."""
    reflected = reflected_params(ps)
    mirror = ps.N - x
    if B(reflected, mirror) != D(ps, x) or D(reflected, mirror) != B(ps, x):
        return False
    return eval_polynomial(reflected, n, mirror) == reflection_constant(ps, n) * eval_polynomial(ps, n, x)


def inverted_params(ps: ParamSet) -> ParamSet:
    """(a,b,c,d,q) → (1/a,1/b,1/c,1/d,1/q): mesmos λ, base invertida."""
    if ps.family is not FamilyId.QR:
        raise InvalidInput("Inversão de q só para qR", family=ps.label)
    return ParamSet(ps.family, tuple(1 / v for v in ps.values), 1 / ps.q)


def check_q_inversion(ps: ParamSet, n: int, x: int) -> bool:
    """P̌_n(x;λ;q⁻¹) = P̌_n(x;λ;q)."""
    return eval_polynomial(inverted_params(ps), n, x) == eval_polynomial(ps, n, x)
