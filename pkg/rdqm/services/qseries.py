# rdqm/services/qseries.py
"""
Símbolos de Pochhammer, q-Pochhammer e séries (q-)hipergeométricas
terminantes sobre racionais exatos.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from ..core.exceptions import InvalidInput, PoleInSeries


def poch(a: Fraction, n: int) -> Fraction:
    """(a)_n = a(a+1)…(a+n−1); (a)_0 = 1."""
    if n < 0:
        raise InvalidInput("Ordem negativa em poch", order=n)
    result = Fraction(1)
    for j in range(n):
        result *= a + j
        if result == 0:
            break
    return result


def qpoch(a: Fraction, q: Fraction, n: int) -> Fraction:
    """(a;q)_n = (1−a)(1−aq)…(1−aq^(n−1)); (a;q)_0 = 1."""
    if n < 0:
        raise InvalidInput("Ordem negativa em qpoch", order=n)
    result = Fraction(1)
    power = Fraction(1)
    for _ in range(n):
        result *= 1 - a * power
        if result == 0:
            break
        power *= q
    return result


def poch_product(params: Iterable[Fraction], n: int) -> Fraction:
    """(a₁,…,a_r)_n."""
    result = Fraction(1)
    for a in params:
        result *= poch(a, n)
    return result


def qpoch_product(params: Iterable[Fraction], q: Fraction, n: int) -> Fraction:
    """(a₁,…,a_r;q)_n."""
    result = Fraction(1)
    for a in params:
        result *= qpoch(a, q, n)
    return result


def qpoch_inverse_base_identity_check(a: Fraction, q: Fraction, n: int) -> bool:
    """(a;q⁻¹)_n = (−a)ⁿ q^(−n(n−1)/2) (a⁻¹;q)_n, verificado exatamente."""
    if a == 0 or q == 0:
        raise InvalidInput("A identidade exige a ≠ 0 e q ≠ 0", a=a, q=q)
    a, q = Fraction(a), Fraction(q)
    lhs = qpoch(a, 1 / q, n)
    rhs = (-a) ** n * q ** (-(n * (n - 1) // 2)) * qpoch(1 / a, q, n)
    return lhs == rhs


@dataclass(frozen=True)
class SeriesSpec:
    """
    ₙFₛ (base None) ou ᵣφₛ (base q) terminante.

    Na versão q, parâmetros iguais a 0 contam em r e s como no símbolo
    usual: (0;q)_k = 1.
    """

    numerator_params: Tuple[Fraction, ...]
    denominator_params: Tuple[Fraction, ...]
    argument: Fraction
    termination_degree: int
    base: Optional[Fraction] = None

    def __post_init__(self):
        if self.termination_degree < 0:
            raise InvalidInput("Grau de terminação negativo", degree=self.termination_degree)
        if self.base is not None and (self.base <= 0 or self.base == 1):
            raise InvalidInput("A base q deve satisfazer q > 0 e q ≠ 1", q=self.base)
        if self.terminator() not in self.numerator_params:
            raise InvalidInput(
                "Nenhum parâmetro do numerador força a terminação",
                degree=self.termination_degree,
            )

    def terminator(self) -> Fraction:
        """−n para ₙFₛ, q^(−n) para ᵣφₛ."""
        if self.base is None:
            return Fraction(-self.termination_degree)
        return Fraction(self.base) ** (-self.termination_degree)

    @property
    def r(self) -> int:
        return len(self.numerator_params)

    @property
    def s(self) -> int:
        return len(self.denominator_params)


def hyper_terminating(spec: SeriesSpec) -> Fraction:
    """
    Soma finita ∑_{k=0}^{n} do termo geral, pela razão entre termos.

    No caso q cada passo carrega o fator ((−1) q^j)^(1+s−r), j = k−1,
    reproduzindo (−1)^((1+s−r)k) q^((1+s−r)k(k−1)/2).

    Raises:
        PoleInSeries: fator do denominador nulo numa ordem usada
    """
    q = spec.base
    z = Fraction(spec.argument)
    total = Fraction(1)
    term = Fraction(1)
    q_power = Fraction(1)  # q^j
    extra = 1 + spec.s - spec.r

    for k in range(1, spec.termination_degree + 1):
        j = k - 1
        numerator = Fraction(1)
        for a in spec.numerator_params:
            numerator *= (a + j) if q is None else (1 - a * q_power)
        if numerator == 0:
            break

        denominator = Fraction(k) if q is None else 1 - q_power * q
        for b in spec.denominator_params:
            factor = (b + j) if q is None else (1 - b * q_power)
            if factor == 0:
                raise PoleInSeries(b, k)
            denominator *= factor

        term = term * numerator / denominator * z
        if q is not None and extra:
            term *= (-q_power) ** extra
        total += term
        if q is not None:
            q_power *= q

    return total


# ============================================
# CONSTRUTORES
# ============================================

def hyper(
    numerator: Sequence[Fraction],
    denominator: Sequence[Fraction],
    argument: Fraction,
    degree: int,
) -> Fraction:
    """ₙFₛ(numerator; denominator | argument) terminando no grau dado."""
    spec = SeriesSpec(
        tuple(Fraction(a) for a in numerator),
        tuple(Fraction(b) for b in denominator),
        Fraction(argument),
        degree,
    )
    return hyper_terminating(spec)


def qhyper(
    numerator: Sequence[Fraction],
    denominator: Sequence[Fraction],
    q: Fraction,
    argument: Fraction,
    degree: int,
) -> Fraction:
    """ᵣφₛ(numerator; denominator | q; argument) terminando no grau dado."""
    spec = SeriesSpec(
        tuple(Fraction(a) for a in numerator),
        tuple(Fraction(b) for b in denominator),
        Fraction(argument),
        degree,
        Fraction(q),
    )
    return hyper_terminating(spec)
