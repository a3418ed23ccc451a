# rdqm/services/darboux.py
"""
Transformação de Darboux de um passo com vetor de estado pseudo virtual.

Relações com calibre racional (H̃, quadrados φ₀², defeitos divididos por
φ̃₀, potenciais B̂, D̂) são verificadas exatamente. Relações com raízes
quadradas (espectro de H_{d₁}, resíduos de autovetores) usam ponto
flutuante com tolerância 2^(−P/2).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from loguru import logger
from mpmath.ctx_mp import MPContext

from ..core.config import get_settings
from ..core.exact import (
    TriDiagMatrix,
    eigenvalues_symmetric_tridiag,
    make_context,
    max_abs,
    to_bigfloat,
    tolerance,
    tridiag_determinant,
)
from ..core.exceptions import (
    DeformationError,
    InvalidInput,
    InvalidParameters,
    TwistTableError,
)
from . import casoratian, families, twists
from .families import ParamSet
from .family_catalog import FamilyId


def _context(precision_bits: Optional[int]) -> MPContext:
    return make_context(precision_bits or get_settings().precision_bits)


def _tolerance(ctx: MPContext):
    return tolerance(ctx, get_settings().effective_tolerance_exponent(ctx.prec))


def _require_finite(ps: ParamSet) -> None:
    if not ps.record.finite:
        raise InvalidInput("Darboux só para famílias finitas", family=ps.label)


def _sqrt(ctx: MPContext, value: Fraction):
    return ctx.sqrt(to_bigfloat(value, ctx))


# ============================================
# FAIXA DE PARÂMETROS
# ============================================

@dataclass(frozen=True)
class ConstraintVerdict:
    name: str
    satisfied: bool
    detail: str = ""


def _qracah_inequalities(ps: ParamSet) -> List[ConstraintVerdict]:
    a, b, c, d = ps.values
    q = ps.q
    return [
        ConstraintVerdict("c = q^(-N)", c == q ** (-ps.N)),
        ConstraintVerdict("0 < ac < d < 1", 0 < a * c < d < 1, f"ac={a * c}, d={d}"),
        ConstraintVerdict("qd < b < 1", q * d < b < 1, f"qd={q * d}, b={b}"),
        ConstraintVerdict("ac < dq", a * c < d * q),
        ConstraintVerdict("b < q", b < q),
        ConstraintVerdict("d < q^2", d < q * q),
    ]


def validate_parameter_range(
    ps: ParamSet,
    twist: Optional[str] = None,
    vs: Tuple[int, ...] = (0, 1, 2),
) -> List[ConstraintVerdict]:
    """
    Veredictos das restrições do Hamiltoniano deformado.

    qR recebe as desigualdades explícitas; todas as famílias finitas recebem
    positividade de B, D, αB′, αD′, as fronteiras B′(−1) = D′(N+1) = 0 e
    ξ̌_v > 0 em [−1, N+1] para cada v pedido.
    """
    _require_finite(ps)
    token = twist or twists.default_twist(ps.family)
    tp = twists.make_twist(ps, token)
    N = ps.N

    verdicts = _qracah_inequalities(ps) if ps.family is FamilyId.QR else []
    verdicts.append(ConstraintVerdict("B, D > 0", families.check_positivity(ps)))
    verdicts.append(ConstraintVerdict(
        "αB′ > 0, αD′ > 0 em [0,N]",
        all(tp.alpha * tp.Bprime(x) > 0 and tp.alpha * tp.Dprime(x) > 0 for x in range(N + 1)),
    ))
    verdicts.append(ConstraintVerdict(
        "B′(-1) = 0, D′(N+1) = 0",
        tp.Bprime(-1) == 0 and tp.Dprime(N + 1) == 0,
    ))
    for v in vs:
        values = [twists.eval_xi(ps, token, v, x) for x in range(-1, N + 2)]
        verdicts.append(ConstraintVerdict(
            f"ξ̌_{v} > 0 em [-1,N+1]",
            all(value > 0 for value in values),
        ))
    return verdicts


def range_satisfied(verdicts: List[ConstraintVerdict]) -> bool:
    return all(v.satisfied for v in verdicts)


# ============================================
# HAMILTONIANO E ESTADO FUNDAMENTAL
# ============================================

@dataclass(frozen=True)
class HamiltonianBundle:
    params: ParamSet
    weights: Tuple[Fraction, ...]
    """φ₀(x)² exato em [0,N]"""

    H: TriDiagMatrix
    Htilde: TriDiagMatrix
    ctx: MPContext = field(compare=False)

    @property
    def size(self) -> int:
        return self.H.size


def build_hamiltonian(ps: ParamSet, precision_bits: Optional[int] = None) -> HamiltonianBundle:
    """
    H simétrico (ponto flutuante) e H̃ = φ₀⁻¹∘H∘φ₀ (racional).

    Raises:
        InvalidParameters: produto B(x)D(x+1) ≤ 0 em [0,N−1]
    """
    _require_finite(ps)
    ctx = _context(precision_bits)
    N = ps.N
    b = [families.B(ps, x) for x in range(N + 1)]
    d = [families.D(ps, x) for x in range(N + 1)]
    products = [b[x] * d[x + 1] for x in range(N)]
    if any(p <= 0 for p in products):
        raise InvalidParameters("Produto B(x)D(x+1) não positivo", family=ps.label)

    diag = tuple(b[x] + d[x] for x in range(N + 1))
    off = tuple(-_sqrt(ctx, p) for p in products)
    H = TriDiagMatrix(tuple(to_bigfloat(v, ctx) for v in diag), off, off)
    Htilde = TriDiagMatrix(
        diag,
        tuple(-b[x] for x in range(N)),
        tuple(-d[x + 1] for x in range(N)),
    )
    return HamiltonianBundle(ps, tuple(families.ground_state_weights(ps)), H, Htilde, ctx)


def check_htilde_eigen(bundle: HamiltonianBundle, n: int) -> bool:
    """H̃ · (P̌_n(x))_x = E_n · (P̌_n(x))_x exatamente."""
    ps = bundle.params
    vector = [families.eval_polynomial(ps, n, x) for x in range(ps.N + 1)]
    energy = families.eval_energy(ps, n)
    return bundle.Htilde.apply(vector) == [energy * value for value in vector]


def check_gauge_consistency(bundle: HamiltonianBundle) -> bool:
    """Autovalores de H coincidem com E_0..E_N dentro da tolerância."""
    ctx = bundle.ctx
    eigenvalues = eigenvalues_symmetric_tridiag(bundle.H.diag, bundle.H.upper, ctx)
    expected = sorted(families.eval_energy(bundle.params, n) for n in range(bundle.size))
    tol = _tolerance(ctx)
    targets = [to_bigfloat(target, ctx) for target in expected]
    return all(
        abs(value - target) <= tol * max(1, abs(target))
        for value, target in zip(eigenvalues, targets)
    )


@dataclass(frozen=True)
class GroundStateReport:
    weights: Tuple[Fraction, ...]
    amplitudes: Tuple[object, ...]
    balance_exact: bool
    """B(x)φ₀(x)² = D(x+1)φ₀(x+1)² em [0,N−1]"""

    residual: object
    tolerance: object

    @property
    def passed(self) -> bool:
        return self.weights[0] == 1 and self.balance_exact and self.residual <= self.tolerance


def ground_state(bundle: HamiltonianBundle) -> GroundStateReport:
    """φ₀ com φ₀(0) = 1 e o resíduo de Hφ₀ = 0."""
    ps, ctx = bundle.params, bundle.ctx
    weights = bundle.weights
    if any(w <= 0 for w in weights):
        raise InvalidParameters("φ₀² não positivo", family=ps.label)
    balance = all(
        families.B(ps, x) * weights[x] == families.D(ps, x + 1) * weights[x + 1]
        for x in range(ps.N)
    )
    amplitudes = [_sqrt(ctx, w) for w in weights]
    residual = max_abs(bundle.H.apply(amplitudes)) / max_abs(amplitudes)
    return GroundStateReport(tuple(weights), tuple(amplitudes), balance, residual, _tolerance(ctx))


# ============================================
# VETOR DE ESTADO PSEUDO VIRTUAL
# ============================================

def phitilde0_sq(tp: twists.TwistedPotentials, x: int) -> Fraction:
    """φ̃₀(x)² = ∏_{y<x} B′(y)/D′(y+1)."""
    value = Fraction(1)
    for y in range(x):
        value *= tp.Bprime(y) / tp.Dprime(y + 1)
    return value


def check_phitilde0_closed_form(ps: ParamSet, twist: str = "i") -> bool:
    """qR: φ̃₀(x)² = ((1−dq^{2x})/(1−d))² / (q^{2x} φ₀(x)²)."""
    if ps.family is not FamilyId.QR:
        raise InvalidInput("Forma fechada de φ̃₀ só para qR", family=ps.label)
    tp = twists.make_twist(ps, twist)
    d, q = ps.values[3], ps.q
    for x in range(ps.N + 1):
        closed = ((1 - d * q ** (2 * x)) / (1 - d)) ** 2 / (q ** (2 * x) * families.phi0_sq(ps, x))
        if closed != phitilde0_sq(tp, x):
            return False
    return True


@dataclass(frozen=True)
class DefectReport:
    twist: str
    v: int
    defects: Tuple[Fraction, ...]
    """(Hφ̃_v − Ẽ_v φ̃_v)(x)/φ̃₀(x) em [0,N]"""

    expected: Tuple[Fraction, ...]
    gauge_positive: bool
    almost_zero_mode: bool
    """H′φ̃₀ suportado em {0,N} com coeficientes D′(0), B′(N)"""

    residual: object
    zero_mode_residual: object
    tolerance: object

    @property
    def interior_zero(self) -> bool:
        return all(value == 0 for value in self.defects[1:-1])

    @property
    def boundary_exact(self) -> bool:
        return self.defects == self.expected

    @property
    def passed(self) -> bool:
        return (
            self.interior_zero
            and self.boundary_exact
            and self.gauge_positive
            and self.almost_zero_mode
            and self.residual <= self.tolerance
            and self.zero_mode_residual <= self.tolerance
        )


def pseudo_virtual_vector_defect(
    bundle: HamiltonianBundle,
    v: int,
    twist: Optional[str] = None,
    strict: bool = True,
) -> DefectReport:
    """
    Defeito de φ̃_v = φ̃₀ ξ̌_v: zero no interior e, nas fronteiras,
    αD′(0)φ̃₀(0)ξ̌_v(−1) em x = 0 e αB′(N)φ̃₀(N)ξ̌_v(N+1) em x = N.

    Raises:
        TwistTableError: defeito no interior (com strict)
    """
    ps, ctx = bundle.params, bundle.ctx
    token = twist or twists.default_twist(ps.family)
    tp = twists.make_twist(ps, token)
    N = ps.N
    alpha = tp.alpha
    energy = twists.pseudo_energy(ps, token, v)
    xi = {x: twists.eval_xi(ps, token, v, x) for x in range(-1, N + 2)}
    bp = {x: tp.Bprime(x) for x in range(N + 1)}
    dp = {x: tp.Dprime(x) for x in range(N + 1)}

    defects, expected = [], []
    for x in range(N + 1):
        row = (families.B(ps, x) + families.D(ps, x) - energy) * xi[x]
        if x < N:
            row -= alpha * bp[x] * xi[x + 1]
        if x > 0:
            row -= alpha * dp[x] * xi[x - 1]
        defects.append(row)
        target = Fraction(0)
        if x == 0:
            target += alpha * dp[0] * xi[-1]
        if x == N:
            target += alpha * bp[N] * xi[N + 1]
        expected.append(target)

    if strict and any(value != 0 for value in defects[1:-1]):
        raise TwistTableError(
            "Defeito no interior do vetor pseudo virtual",
            family=ps.label,
            twist=token,
            v=v,
        )

    gauge_positive = all(alpha * bp[x] > 0 for x in range(N)) and all(
        alpha * dp[x] > 0 for x in range(1, N + 1)
    )

    zero_mode_rows = [
        bp[x] + dp[x] - (bp[x] if x < N else 0) - (dp[x] if x > 0 else 0) for x in range(N + 1)
    ]
    zero_mode_expected = [
        (dp[0] if x == 0 else 0) + (bp[N] if x == N else 0) for x in range(N + 1)
    ]

    # ponto flutuante: H sobre φ̃_v, H′ sobre (sgn α)^x φ̃₀
    tilde0 = [_sqrt(ctx, phitilde0_sq(tp, x)) for x in range(N + 1)]
    vector = [tilde0[x] * to_bigfloat(xi[x], ctx) for x in range(N + 1)]
    applied = bundle.H.apply(vector)
    boundary = [to_bigfloat(expected[x], ctx) * tilde0[x] for x in range(N + 1)]
    energy_f = to_bigfloat(energy, ctx)
    residual = max_abs(
        [applied[x] - energy_f * vector[x] - boundary[x] for x in range(N + 1)]
    ) / max_abs(vector)

    sign = 1 if alpha > 0 else -1
    products = [bp[x] * dp[x + 1] for x in range(N)]
    off = tuple(-_sqrt(ctx, p) for p in products)
    Hprime = TriDiagMatrix(tuple(to_bigfloat(bp[x] + dp[x], ctx) for x in range(N + 1)), off, off)
    decorated = [tilde0[x] * sign ** x for x in range(N + 1)]
    applied_prime = Hprime.apply(decorated)
    zero_mode_target = [to_bigfloat(zero_mode_expected[x], ctx) * decorated[x] for x in range(N + 1)]
    zero_mode_residual = max_abs(
        [applied_prime[x] - zero_mode_target[x] for x in range(N + 1)]
    ) / max_abs(decorated)

    logger.debug(f"Defeito φ̃_{v} ({ps.label}/{token}): fronteiras {expected[0]}, {expected[-1]}")
    return DefectReport(
        twist=token,
        v=v,
        defects=tuple(defects),
        expected=tuple(expected),
        gauge_positive=gauge_positive,
        almost_zero_mode=zero_mode_rows == zero_mode_expected,
        residual=residual,
        zero_mode_residual=zero_mode_residual,
        tolerance=_tolerance(ctx),
    )


# ============================================
# HAMILTONIANO DEFORMADO
# ============================================

@dataclass(frozen=True)
class DeformedBundle:
    params: ParamSet
    twist: str
    d1: int
    alpha: Fraction
    Etilde: Fraction
    xi: Dict[int, Fraction]
    """ξ̌_{d₁}(x) em [−1, N+1]"""

    bhat: Dict[int, Fraction]
    """B̂(x) em [−1, N]"""

    dhat: Dict[int, Fraction]
    """D̂(x) em [0, N+1]"""

    H_d1: TriDiagMatrix
    base: HamiltonianBundle = field(compare=False)

    @property
    def size(self) -> int:
        return self.H_d1.size

    def Bhat(self, x: int) -> Fraction:
        return self.bhat[x]

    def Dhat(self, x: int) -> Fraction:
        return self.dhat[x]

    def B_d1(self, x: int) -> Fraction:
        """Forma padrão: B_{d₁}(x) = D̂(x+1), x ∈ [−1,N]."""
        return self.dhat[x + 1]

    def D_d1(self, x: int) -> Fraction:
        """Forma padrão: D_{d₁}(x) = B̂(x), x ∈ [−1,N]."""
        return self.bhat[x]


def build_deformed(
    ps: ParamSet,
    d1: int,
    twist: Optional[str] = None,
    precision_bits: Optional[int] = None,
) -> DeformedBundle:
    """
    B̂(x) = αB′(x)ξ̌(x+1)/ξ̌(x), D̂(x) = αD′(x)ξ̌(x−1)/ξ̌(x) e H_{d₁} de
    ordem N+2 indexado por x ∈ [−1,N].

    Raises:
        InvalidParameters: ξ̌_{d₁} ≤ 0 em [−1,N+1] ou B̂D̂ ≤ 0 numa
        posição fora da diagonal
    """
    base = build_hamiltonian(ps, precision_bits)
    ctx = base.ctx
    token = twist or twists.default_twist(ps.family)
    tp = twists.make_twist(ps, token)
    N = ps.N

    xi = {x: twists.eval_xi(ps, token, d1, x) for x in range(-1, N + 2)}
    if any(value <= 0 for value in xi.values()):
        raise InvalidParameters("ξ̌ não positivo em [-1,N+1]", family=ps.label, d1=d1)

    bhat = {x: tp.alpha * tp.Bprime(x) * xi[x + 1] / xi[x] for x in range(-1, N + 1)}
    dhat = {x: tp.alpha * tp.Dprime(x) * xi[x - 1] / xi[x] for x in range(0, N + 2)}
    energy = twists.pseudo_energy(ps, token, d1)

    products = [bhat[x] * dhat[x] for x in range(0, N + 1)]
    if any(p <= 0 for p in products):
        raise InvalidParameters("Produto B̂D̂ não positivo", family=ps.label, d1=d1)

    diag = tuple(to_bigfloat(bhat[x] + dhat[x + 1] + energy, ctx) for x in range(-1, N + 1))
    off = tuple(-_sqrt(ctx, p) for p in products)
    H_d1 = TriDiagMatrix(diag, off, off, origin=-1)

    return DeformedBundle(
        params=ps,
        twist=token,
        d1=d1,
        alpha=tp.alpha,
        Etilde=energy,
        xi=xi,
        bhat=bhat,
        dhat=dhat,
        H_d1=H_d1,
        base=base,
    )


def check_deformed_potentials(bundle: DeformedBundle) -> Dict[str, bool]:
    """Relações exatas entre B, D, B̂, D̂ e a forma padrão B_{d₁}, D_{d₁}."""
    ps = bundle.params
    N = ps.N
    B = lambda x: families.B(ps, x)  # noqa: E731
    D = lambda x: families.D(ps, x)  # noqa: E731
    Bh, Dh, Et = bundle.Bhat, bundle.Dhat, bundle.Etilde

    diag_shifted = [Bh(x) + Dh(x + 1) for x in range(-1, N + 1)]
    off_products = [Bh(x) * Dh(x) for x in range(0, N + 1)]

    return {
        "boundary": Bh(-1) == 0 and Dh(N + 1) == 0,
        "positivity": all(Bh(x) > 0 and Dh(x) > 0 for x in range(N + 1)),
        "product": all(B(x) * D(x + 1) == Bh(x) * Dh(x + 1) for x in range(N + 1)),
        "sum": all(B(x) + D(x) == Bh(x) + Dh(x) + Et for x in range(N + 1)),
        "standard_boundary": bundle.B_d1(N) == 0 and bundle.D_d1(-1) == 0,
        "standard_positivity": all(bundle.B_d1(x) > 0 for x in range(-1, N))
        and all(bundle.D_d1(x) > 0 for x in range(N + 1)),
        "standard_compatibility": all(
            bundle.B_d1(x) * bundle.D_d1(x + 1) == Bh(x + 1) * Dh(x + 1) for x in range(-1, N)
        ) and all(
            bundle.B_d1(x) + bundle.D_d1(x) == Bh(x) + Dh(x + 1) for x in range(-1, N + 1)
        ),
        "determinant": tridiag_determinant(diag_shifted, off_products) == 0,
    }


@dataclass(frozen=True)
class SpectrumReport:
    d1: int
    eigenvalues: Tuple[object, ...]
    expected: Tuple[Fraction, ...]
    eigenvalue_deviation: object
    new_level_multiplicity: int
    eigenvector_residual: object
    new_state_residual: object
    casoratian_deviation: object
    orthogonality: object
    factorization_deviation: object
    tolerance: object

    @property
    def passed(self) -> bool:
        tol = self.tolerance
        return (
            self.new_level_multiplicity == 1
            and self.eigenvalue_deviation <= tol
            and self.eigenvector_residual <= tol
            and self.new_state_residual <= tol
            and self.casoratian_deviation <= tol
            and self.orthogonality <= tol
            and self.factorization_deviation <= tol
        )

    def to_details(self) -> dict:
        return {
            "d1": self.d1,
            "eigenvalue_deviation": str(self.eigenvalue_deviation),
            "new_level_multiplicity": self.new_level_multiplicity,
            "eigenvector_residual": str(self.eigenvector_residual),
            "new_state_residual": str(self.new_state_residual),
            "casoratian_deviation": str(self.casoratian_deviation),
            "orthogonality": str(self.orthogonality),
            "factorization_deviation": str(self.factorization_deviation),
        }


def _residual(matrix: TriDiagMatrix, vector: list, value):
    scale = max_abs(vector)
    applied = matrix.apply(vector)
    return max_abs([a - value * v for a, v in zip(applied, vector)]) / scale


def _normalized(ctx, vector: list) -> list:
    norm = ctx.sqrt(sum(v * v for v in vector))
    return [v / norm for v in vector]


def deformed_spectrum_check(
    bundle: DeformedBundle,
    tol=None,
    strict: bool = True,
) -> SpectrumReport:
    """
    Espectro de H_{d₁} = {E_0..E_N} ∪ {Ẽ_{d₁}}, resíduos dos autovetores
    explícitos φ_{d₁,n} e Φ̆_{d₁;d₁}, reescrita de Casorati, ortogonalidade
    e forma fatorada.

    Raises:
        DeformationError: alguma grandeza acima da tolerância (com strict)
    """
    ps = bundle.params
    ctx = bundle.base.ctx
    tol = tol if tol is not None else _tolerance(ctx)
    N = ps.N
    f = lambda value: to_bigfloat(value, ctx)  # noqa: E731

    expected = sorted([families.eval_energy(ps, n) for n in range(N + 1)] + [bundle.Etilde])
    eigenvalues = eigenvalues_symmetric_tridiag(bundle.H_d1.diag, bundle.H_d1.upper, ctx)
    deviation = max_abs([
        (value - f(target)) / max(1, abs(f(target))) for value, target in zip(eigenvalues, expected)
    ])
    multiplicity = sum(
        1 for value in eigenvalues
        if abs(value - f(bundle.Etilde)) <= tol * max(1, abs(f(bundle.Etilde)))
    )

    sqrt_bhat = {x: _sqrt(ctx, bundle.Bhat(x)) for x in range(-1, N + 1)}
    sqrt_dhat = {x: _sqrt(ctx, bundle.Dhat(x)) for x in range(0, N + 2)}
    phi0 = [_sqrt(ctx, w) for w in bundle.base.weights]

    def phi_n(n: int, x: int):
        if x < 0 or x > N:
            return ctx.mpf(0)
        return phi0[x] * f(families.eval_polynomial(ps, n, x))

    vectors, residuals = [], []
    for n in range(N + 1):
        vector = [
            sqrt_bhat[x] * phi_n(n, x) - sqrt_dhat[x + 1] * phi_n(n, x + 1)
            for x in range(-1, N + 1)
        ]
        residuals.append(_residual(bundle.H_d1, vector, f(families.eval_energy(ps, n))))
        vectors.append(vector)

    # Φ̆_{d₁;d₁}(x) = φ₀(x+1; λ−δ) / √(ξ̌(x)ξ̌(x+1))
    lowered_ps = ps.shift_by(-1)
    lowered = [families.phi0_sq_product(lowered_ps, y) for y in range(N + 2)]
    if any(w <= 0 for w in lowered):
        raise InvalidParameters("φ₀(λ−δ)² não positivo", family=ps.label)
    new_state = [
        _sqrt(ctx, lowered[x + 1]) / _sqrt(ctx, bundle.xi[x] * bundle.xi[x + 1])
        for x in range(-1, N + 1)
    ]
    new_residual = _residual(bundle.H_d1, new_state, f(bundle.Etilde))
    vectors.append(new_state)

    casoratian_deviation = _casoratian_rewriting_deviation(bundle, vectors[: N + 1], phi0)

    unit = [_normalized(ctx, v) for v in vectors]
    orthogonality = max_abs([
        sum(a * b for a, b in zip(unit[i], unit[j]))
        for i in range(len(unit)) for j in range(i + 1, len(unit))
    ])

    factorization = _factorization_deviation(bundle, sqrt_bhat, sqrt_dhat)

    report = SpectrumReport(
        d1=bundle.d1,
        eigenvalues=tuple(eigenvalues),
        expected=tuple(expected),
        eigenvalue_deviation=deviation,
        new_level_multiplicity=multiplicity,
        eigenvector_residual=max_abs(residuals),
        new_state_residual=new_residual,
        casoratian_deviation=casoratian_deviation,
        orthogonality=orthogonality,
        factorization_deviation=factorization,
        tolerance=tol,
    )
    if strict and not report.passed:
        raise DeformationError(
            "Espectro deformado fora da tolerância",
            family=ps.label,
            d1=bundle.d1,
            **report.to_details(),
        )
    return report


def _casoratian_rewriting_deviation(bundle: DeformedBundle, vectors: list, phi0: list):
    """
    φ_{d₁,n}(x) = −√(αB′(x)) φ̃₀(x) / √(ξ̌(x)ξ̌(x+1)) · W_C[ξ̌, νP̌_n](x),
    ν = φ₀/φ̃₀ e ν(N+1) = 0, em x ∈ [0,N].
    """
    ps = bundle.params
    ctx = bundle.base.ctx
    tp = twists.make_twist(ps, bundle.twist)
    N = ps.N
    f = lambda value: to_bigfloat(value, ctx)  # noqa: E731
    tilde0 = [_sqrt(ctx, phitilde0_sq(tp, x)) for x in range(N + 1)]
    nu = [phi0[x] / tilde0[x] for x in range(N + 1)] + [ctx.mpf(0)]

    deviations = []
    for n, vector in enumerate(vectors):
        g = [nu[x] * f(families.eval_polynomial(ps, n, x)) for x in range(N + 1)] + [ctx.mpf(0)]
        scale = max_abs(vector)
        for x in range(N + 1):
            wronskian = f(bundle.xi[x]) * g[x + 1] - f(bundle.xi[x + 1]) * g[x]
            prefactor = _sqrt(ctx, bundle.alpha * tp.Bprime(x)) * tilde0[x]
            prefactor /= _sqrt(ctx, bundle.xi[x] * bundle.xi[x + 1])
            rewritten = -prefactor * wronskian
            deviations.append(abs(rewritten - vector[x + 1]) / scale)
    return max_abs(deviations)


def _factorization_deviation(bundle: DeformedBundle, sqrt_bhat: dict, sqrt_dhat: dict):
    """(√B̂ − e^∂√D̂)(√B̂ − √D̂e^{−∂}) + Ẽ contra H_{d₁}, entrada a entrada."""
    ctx = bundle.base.ctx
    N = bundle.params.N
    rows = list(range(-1, N + 1))
    columns = list(range(0, N + 1))

    def a_hat(x: int, y: int):
        if y == x:
            return sqrt_bhat[x]
        if y == x + 1:
            return -sqrt_dhat[x + 1]
        return ctx.mpf(0)

    dense = bundle.H_d1.to_dense(ctx.mpf(0))
    energy = to_bigfloat(bundle.Etilde, ctx)
    scale = max(1, max_abs([value for row in dense for value in row]))
    worst = ctx.mpf(0)
    for i, x in enumerate(rows):
        for j, y in enumerate(rows):
            entry = sum(a_hat(x, z) * a_hat(y, z) for z in columns)
            if i == j:
                entry += energy
            worst = max(worst, abs(entry - dense[i][j]) / scale)
    return worst


# ============================================
# CASO ESPECIAL: REMOÇÃO DE AUTOESTADOS
# ============================================

def eigenstate_deletion_special_case(
    ps: ParamSet,
    ell: int,
    twist: Optional[str] = None,
) -> casoratian.IdentityInstance:
    """ξ̌_ℓ(x−1;λ) ∝ φ_ℓ(x;λ−(ℓ+1)δ)⁻¹ W_C[P̌₁,…,P̌_ℓ](x;λ−(ℓ+1)δ)."""
    if ell < 1:
        raise InvalidInput("ℓ deve ser ≥ 1", ell=ell)
    return casoratian.run_identity(ps, [ell], ell, twist)


def check_deletion_spectrum(ps: ParamSet, ell: int, twist: Optional[str] = None) -> bool:
    """E_n(λ) − Ẽ_ℓ(λ) = κ^(−ℓ−1) E_{n+ℓ+1}(λ−(ℓ+1)δ) para n ∈ [0,N]."""
    _require_finite(ps)
    token = twist or twists.default_twist(ps.family)
    energy = twists.pseudo_energy(ps, token, ell)
    lowered = ps.shift_by(-(ell + 1))
    factor = ps.kappa ** (-ell - 1)
    return all(
        families.eval_energy(ps, n) - energy
        == factor * families.eval_energy(lowered, n + ell + 1)
        for n in range(ps.N + 1)
    )
