# rdqm/services/twists.py
"""
Operações de torção: potenciais torcidos B′/D′ com as constantes α/α′,
polinômios de estado pseudo virtual ξ̌_v, energias Ẽ_v e as relações de
proporcionalidade entre torções.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from loguru import logger

from ..core.config import get_settings
from ..core.exact import ProportionalityReport, divided_difference, fit_proportionality
from ..core.exceptions import EvaluationPole, InvalidInput, NotATwist, PoleInSeries
from . import families
from .families import ParamSet, resolve_family
from .family_catalog import FamilyId
from .twist_catalog import ADDING, REFLECT, TWIST_TABLES, TwistRule, TwistTable, XiRatio

Evaluator = Callable[[int], Fraction]

MIN_VALIDATION_POINTS = 5


# ============================================
# REGRAS
# ============================================

def get_table(family) -> TwistTable:
    return TWIST_TABLES[resolve_family(family)]


def registered_twists(family) -> Tuple[str, ...]:
    return get_table(family).tokens()


def default_twist(family) -> str:
    """Primeira torção registrada da família (i ou i~)."""
    return get_table(family).default_token


def get_rule(family, token: str) -> TwistRule:
    table = get_table(family)
    rule = table.get(token)
    if rule is None:
        raise InvalidInput(
            f"Torção '{token}' não se aplica a {table.family.value}",
            family=table.family.value,
            twist=token,
            available=list(table.tokens()),
        )
    return rule


def twisted_params(ps: ParamSet, rule: TwistRule) -> ParamSet:
    """𝔱(λ) com 𝔱(q) = q ou 1/q."""
    if ps.q is None:
        values = tuple(
            constant + sum(coef * ps.values[j] for j, coef in terms)
            for constant, terms in rule.slots
        )
        return ParamSet(ps.family, values)

    new_q = 1 / ps.q if rule.inverse_base else ps.q
    bases = [1 / v if rule.inverse_base else v for v in ps.values]
    values = []
    for constant, terms in rule.slots:
        value = new_q ** constant
        for j, coef in terms:
            value *= bases[j] ** coef
        values.append(value)
    return ParamSet(ps.family, tuple(values), new_q)


def twist_x(ps: ParamSet, rule: TwistRule, x: int) -> int:
    """𝔱(x): −x−1 (reflexão) ou x−N−1 (translação)."""
    if rule.kind == REFLECT:
        return -x - 1
    return x - ps.N - 1


def check_involution(ps: ParamSet, token: str) -> bool:
    """𝔱(𝔱(λ)) = λ com a mesma base."""
    rule = get_rule(ps.family, token)
    twice = twisted_params(twisted_params(ps, rule), rule)
    return twice.values == ps.values and twice.q == ps.q


# ============================================
# POTENCIAIS TORCIDOS
# ============================================

def _sample_points(ps: ParamSet) -> List[int]:
    if ps.record.finite:
        return list(range(-2, ps.N + 3))
    return list(range(0, 11))


def _try(func: Evaluator, x: int) -> Optional[Fraction]:
    try:
        return func(x)
    except EvaluationPole:
        return None


def derive_constants(
    ps: ParamSet,
    Bprime: Evaluator,
    Dprime: Evaluator,
    points: Optional[Iterable[int]] = None,
    alpha_hint: Optional[Fraction] = None,
) -> Tuple[Fraction, Fraction]:
    """
    Resolve α, α′ de B(x)+D(x) = α(B′(x)+D′(x)) + α′ em dois pontos e
    valida B(x)D(x+1) = α²B′(x)D′(x+1) junto com a relação da soma.

    Quando B′+D′ é constante, α vem de alpha_hint.

    Raises:
        NotATwist: nenhum par (α, α′) consistente
    """
    xs = list(points) if points is not None else _sample_points(ps)

    sums: List[Tuple[int, Fraction, Fraction]] = []
    for x in xs:
        values = [_try(f, x) for f in (lambda y: families.B(ps, y), lambda y: families.D(ps, y), Bprime, Dprime)]
        if any(v is None for v in values):
            continue
        b, d, bp, dp = values
        sums.append((x, b + d, bp + dp))

    if len(sums) < 2:
        raise NotATwist("Pontos avaliáveis insuficientes", family=ps.label)

    alpha = alpha_hint
    x0, s0, t0 = sums[0]
    for _, s1, t1 in sums[1:]:
        if t1 != t0:
            solved = (s1 - s0) / (t1 - t0)
            if alpha is not None and solved != alpha:
                raise NotATwist(
                    "α publicado difere do α resolvido",
                    family=ps.label,
                    printed=alpha,
                    solved=solved,
                )
            alpha = solved
            break
    if alpha is None:
        raise NotATwist("B′+D′ constante: α indeterminado sem valor publicado", family=ps.label)
    if alpha == 0:
        raise NotATwist("α nulo", family=ps.label)

    alpha_prime = s0 - alpha * t0

    validated = 0
    for x, s, t in sums:
        if s != alpha * t + alpha_prime:
            raise NotATwist("Relação B+D falhou", family=ps.label, x=x)
        products = [
            _try(lambda y: families.D(ps, y), x + 1),
            _try(Dprime, x + 1),
        ]
        if any(v is None for v in products):
            continue
        if families.B(ps, x) * products[0] != alpha ** 2 * Bprime(x) * products[1]:
            raise NotATwist("Relação BD falhou", family=ps.label, x=x)
        validated += 1

    if validated < MIN_VALIDATION_POINTS:
        raise NotATwist(
            f"Apenas {validated} pontos validados",
            family=ps.label,
            required=MIN_VALIDATION_POINTS,
        )
    return alpha, alpha_prime


@dataclass(frozen=True)
class TwistedPotentials:
    params: ParamSet
    rule: TwistRule
    twisted: ParamSet
    alpha: Fraction
    alpha_prime: Fraction
    alpha_source: str
    alpha_prime_source: str

    def Bprime(self, x: int) -> Fraction:
        y = twist_x(self.params, self.rule, x)
        if self.rule.kind == REFLECT:
            return families.D(self.twisted, y)
        return families.B(self.twisted, y)

    def Dprime(self, x: int) -> Fraction:
        y = twist_x(self.params, self.rule, x)
        if self.rule.kind == REFLECT:
            return families.B(self.twisted, y)
        return families.D(self.twisted, y)

    @property
    def token(self) -> str:
        return self.rule.token


@lru_cache(maxsize=1024)
def make_twist(ps: ParamSet, token: str) -> TwistedPotentials:
    """
    Potenciais torcidos e constantes α, α′.

    Os valores publicados são conferidos contra os resolvidos; α′ sem valor
    publicado fica marcado como "derived".
    """
    rule = get_rule(ps.family, token)
    twisted = twisted_params(ps, rule)
    potentials = TwistedPotentials(ps, rule, twisted, Fraction(1), Fraction(0), "", "")

    hint = rule.alpha(ps) if rule.alpha is not None else None
    alpha, alpha_prime = derive_constants(
        ps, potentials.Bprime, potentials.Dprime, alpha_hint=hint
    )

    alpha_prime_source = "derived"
    if rule.alpha_prime is not None:
        printed = rule.alpha_prime(ps)
        if printed != alpha_prime:
            raise NotATwist(
                "α′ publicado difere do α′ resolvido",
                family=ps.label,
                twist=token,
                printed=printed,
                solved=alpha_prime,
            )
        alpha_prime_source = "printed"

    logger.debug(f"Torção {ps.label}/{token}: α={alpha}, α′={alpha_prime}")
    return TwistedPotentials(
        params=ps,
        rule=rule,
        twisted=twisted,
        alpha=alpha,
        alpha_prime=alpha_prime,
        alpha_source="printed" if hint is not None else "derived",
        alpha_prime_source=alpha_prime_source,
    )


def check_twist_relations(tp: TwistedPotentials, xs: Iterable[int]) -> bool:
    """B(x)D(x+1) = α²B′(x)D′(x+1) e B(x)+D(x) = α(B′(x)+D′(x)) + α′."""
    ps = tp.params
    for x in xs:
        try:
            product_ok = (
                families.B(ps, x) * families.D(ps, x + 1)
                == tp.alpha ** 2 * tp.Bprime(x) * tp.Dprime(x + 1)
            )
            sum_ok = (
                families.B(ps, x) + families.D(ps, x)
                == tp.alpha * (tp.Bprime(x) + tp.Dprime(x)) + tp.alpha_prime
            )
        except EvaluationPole:
            continue
        if not (product_ok and sum_ok):
            logger.debug(f"Relação de torção falhou em x={x} ({ps.label}/{tp.token})")
            return False
    return True


# ============================================
# ξ̌_v E Ẽ_v
# ============================================

def xi_v_max(ps: ParamSet) -> int:
    """Faixa segura de v: N nas finitas, semi_infinite_v_max nas demais."""
    if ps.record.finite:
        return ps.N
    return get_settings().semi_infinite_v_max


def eval_xi(ps: ParamSet, token: str, v: int, x: int, form: Optional[str] = None) -> Fraction:
    """
    ξ̌_v(x;λ) = P̌_v(𝔱(x); 𝔱(λ); 𝔱(q)); `form` escolhe uma forma publicada.

    Raises:
        InvalidInput: torção sem ξ̌ (iii, iv) ou forma inexistente
        PoleInSeries: polo na série
    """
    rule = get_rule(ps.family, token)
    if not rule.has_xi:
        raise InvalidInput("Torção sem polinômio pseudo virtual", family=ps.label, twist=token)
    if v < 0:
        raise InvalidInput("Grau negativo", family=ps.label, v=v)
    if form is None:
        return families.eval_polynomial(twisted_params(ps, rule), v, twist_x(ps, rule, x))
    try:
        func = rule.xi_forms[form]
    except KeyError:
        raise InvalidInput(f"Forma '{form}' inexistente", family=ps.label, twist=token)
    try:
        return Fraction(func(ps, v, x))
    except ZeroDivisionError:
        raise EvaluationPole(f"Polo em ξ̌[{form}]", family=ps.label, v=v, x=x)
    except PoleInSeries as exc:
        raise exc.with_family(ps.label)


def check_xi_forms(ps: ParamSet, token: str, v: int, xs: Iterable[int]) -> Dict[str, bool]:
    """Cada forma publicada contra a definição P̌_v(𝔱(x); 𝔱(λ))."""
    rule = get_rule(ps.family, token)
    xs = list(xs)
    verdicts = {}
    for name in rule.xi_forms:
        verdicts[name] = all(
            eval_xi(ps, token, v, x, form=name) == eval_xi(ps, token, v, x) for x in xs
        )
    return verdicts


def check_xi_degree(ps: ParamSet, token: str, v: int, xs: Optional[Sequence[int]] = None) -> bool:
    """ξ̌_v tem grau v em η(x;λ): diferença dividida sobre v+2 nós se anula."""
    points = list(xs) if xs is not None else list(range(v + 2))
    if len(points) != v + 2:
        raise InvalidInput("São necessários v+2 pontos", v=v)
    nodes = [families.eta(ps, x) for x in points]
    values = [eval_xi(ps, token, v, x) for x in points]
    return divided_difference(nodes, values) == 0


def check_xi_difference_equation(ps: ParamSet, token: str, v: int, x: int) -> bool:
    """B′(x)(ξ̌(x)−ξ̌(x+1)) + D′(x)(ξ̌(x)−ξ̌(x−1)) = E_v(𝔱(λ)) ξ̌(x)."""
    tp = make_twist(ps, token)
    center = eval_xi(ps, token, v, x)
    lhs = tp.Bprime(x) * (center - eval_xi(ps, token, v, x + 1))
    lhs += tp.Dprime(x) * (center - eval_xi(ps, token, v, x - 1))
    return lhs == families.eval_energy(tp.twisted, v) * center


def pseudo_energy(ps: ParamSet, token: str, v: int) -> Fraction:
    """Ẽ_v(λ) = α E_v(𝔱(λ); 𝔱(q)) + α′."""
    tp = make_twist(ps, token)
    return tp.alpha * families.eval_energy(tp.twisted, v) + tp.alpha_prime


def expected_pseudo_energy(ps: ParamSet, token: str, v: int) -> Fraction:
    """E_{−v−1}(λ), ou E_{v+N+1}(λ) para iii/iv."""
    rule = get_rule(ps.family, token)
    if rule.energy_relation == ADDING:
        return families.eval_energy(ps, v + ps.N + 1)
    return families.eval_energy(ps, -v - 1, allow_negative=True)


def check_pseudo_energy(ps: ParamSet, token: str, v: int) -> bool:
    return pseudo_energy(ps, token, v) == expected_pseudo_energy(ps, token, v)


# ============================================
# PROPORCIONALIDADE ENTRE TORÇÕES
# ============================================

@dataclass(frozen=True)
class XiProportionality:
    twist_a: str
    twist_b: str
    v: int
    report: ProportionalityReport
    expected: Optional[Fraction]
    potentials_match: bool

    @property
    def constant_matches(self) -> bool:
        if self.expected is None:
            return True
        return self.report.proportional and self.report.ratio == self.expected

    @property
    def passed(self) -> bool:
        return self.report.proportional and self.constant_matches and self.potentials_match


def _find_ratio(table: TwistTable, token_a: str, token_b: str) -> Tuple[Optional[XiRatio], bool]:
    for entry in table.ratios:
        if (entry.first, entry.second) == (token_b, token_a):
            return entry, False
        if (entry.first, entry.second) == (token_a, token_b):
            return entry, True
    return None, False


def expected_xi_ratio(ps: ParamSet, token_a: str, token_b: str, v: int) -> Optional[Fraction]:
    """Constante publicada de ξ̌^(A)/ξ̌^(B), quando existe."""
    entry, inverted = _find_ratio(get_table(ps.family), token_a, token_b)
    if entry is None:
        return None
    constant = Fraction(entry.constant(ps, v))
    return 1 / constant if inverted else constant


def check_potential_relation(ps: ParamSet, token_a: str, token_b: str, xs: Iterable[int]) -> bool:
    """α_A B′_A = α_B B′_B e α_A D′_A = α_B D′_B."""
    tp_a, tp_b = make_twist(ps, token_a), make_twist(ps, token_b)
    for x in xs:
        try:
            same_b = tp_a.alpha * tp_a.Bprime(x) == tp_b.alpha * tp_b.Bprime(x)
            same_d = tp_a.alpha * tp_a.Dprime(x) == tp_b.alpha * tp_b.Dprime(x)
        except EvaluationPole:
            continue
        if not (same_b and same_d):
            return False
    return True


def check_xi_proportionality(
    ps: ParamSet,
    token_a: str,
    token_b: str,
    v: int,
    x_grid: Optional[Iterable[int]] = None,
) -> XiProportionality:
    """
    Ajusta ξ̌^(A)_v = r·ξ̌^(B)_v na grade e compara r com a constante
    publicada; confere também a relação entre os potenciais torcidos.
    """
    get_rule(ps.family, token_a)
    get_rule(ps.family, token_b)
    xs = list(x_grid) if x_grid is not None else list(range(0, (ps.N if ps.record.finite else 8) + 1))

    lhs, rhs, skipped = [], [], []
    for x in xs:
        try:
            left = eval_xi(ps, token_a, v, x)
            right = eval_xi(ps, token_b, v, x)
        except (EvaluationPole, PoleInSeries):
            skipped.append(x)
            continue
        lhs.append(left)
        rhs.append(right)

    report = fit_proportionality(lhs, rhs, skipped)
    return XiProportionality(
        twist_a=token_a,
        twist_b=token_b,
        v=v,
        report=report,
        expected=expected_xi_ratio(ps, token_a, token_b, v),
        potentials_match=check_potential_relation(ps, token_a, token_b, xs),
    )


def ratio_pairs(family) -> List[Tuple[str, str]]:
    """Pares (primeira, segunda) com constante publicada."""
    return [(entry.first, entry.second) for entry in get_table(family).ratios]


def xi_families() -> List[FamilyId]:
    return list(TWIST_TABLES)
