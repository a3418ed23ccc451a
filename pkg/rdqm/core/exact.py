# rdqm/core/exact.py
"""
Núcleo aritmético: racionais exatos, ponto flutuante de precisão
configurável (mpmath), matrizes tridiagonais e ajuste de proporcionalidade.

Racionais exatos são o escalar padrão. Os números de ponto flutuante
aparecem apenas nas verificações espectrais do módulo darboux.
"""

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Generic, List, Optional, Sequence, Tuple, TypeVar, Union

from mpmath.ctx_mp import MPContext

from .exceptions import DivisionByZero, InvalidInput

ExactRational = Fraction
Scalar = TypeVar("Scalar")

_RATIONAL_LITERAL = re.compile(r"^[+-]?\d+(/\d+)?$")


# ============================================
# RACIONAIS EXATOS
# ============================================

def rat(num: int, den: int = 1) -> Fraction:
    """Racional normalizado num/den; o sinal fica no numerador."""
    if den == 0:
        raise DivisionByZero(f"Denominador zero em {num}/{den}", numerator=num)
    return Fraction(num, den)


def parse_rational(text: str) -> Fraction:
    """
    Converte o literal "p/q" (sinal opcional, sem espaços) em racional.

    Raises:
        InvalidInput: literal malformado
        DivisionByZero: denominador zero
    """
    literal = text.strip() if text is not None else ""
    if not _RATIONAL_LITERAL.match(literal):
        raise InvalidInput(f"Literal racional inválido: '{text}'", literal=text)
    if "/" in literal:
        num, den = literal.split("/")
        return rat(int(num), int(den))
    return rat(int(literal))


def format_rational(value: Fraction) -> str:
    """Forma canônica "p/q" (ou "p" quando inteiro) usada nos relatórios."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ============================================
# PROPORCIONALIDADE
# ============================================

class ProportionalityStatus(str, Enum):
    PROPORTIONAL = "Proportional"
    BOTH_ZERO = "BothZero"
    MISMATCH = "Mismatch"


@dataclass(frozen=True)
class ProportionalityReport:
    status: ProportionalityStatus
    ratio: Optional[Fraction] = None
    samples_used: int = 0
    degenerate_points: Tuple[int, ...] = ()
    mismatch_index: Optional[int] = None

    @property
    def proportional(self) -> bool:
        return self.status is ProportionalityStatus.PROPORTIONAL


def fit_proportionality(
    lhs: Sequence[Fraction],
    rhs: Sequence[Fraction],
    degenerate_points: Sequence[int] = (),
) -> ProportionalityReport:
    """
    Decide se lhs = r·rhs para um único r ≠ 0.

    Zeros precisam coincidir posição a posição; um zero só de um lado
    já é Mismatch.
    """
    if len(lhs) != len(rhs):
        raise InvalidInput(
            f"Listas de tamanhos diferentes: {len(lhs)} e {len(rhs)}",
            lhs_size=len(lhs),
            rhs_size=len(rhs),
        )
    if len(lhs) < 2:
        raise InvalidInput("São necessárias pelo menos 2 amostras", size=len(lhs))

    skipped = tuple(degenerate_points)
    ratio: Optional[Fraction] = None

    for index, (left, right) in enumerate(zip(lhs, rhs)):
        if (left == 0) != (right == 0):
            return ProportionalityReport(
                ProportionalityStatus.MISMATCH, None, len(lhs), skipped, index
            )
        if left == 0:
            continue
        candidate = Fraction(left) / Fraction(right)
        if ratio is None:
            ratio = candidate
        elif candidate != ratio:
            return ProportionalityReport(
                ProportionalityStatus.MISMATCH, None, len(lhs), skipped, index
            )

    if ratio is None:
        return ProportionalityReport(ProportionalityStatus.BOTH_ZERO, None, len(lhs), skipped)

    return ProportionalityReport(ProportionalityStatus.PROPORTIONAL, ratio, len(lhs), skipped)


# ============================================
# ÁLGEBRA LINEAR EXATA
# ============================================

def det_exact(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinante por eliminação de Gauss em racionais; matriz 0×0 → 1."""
    size = len(matrix)
    rows = [[Fraction(v) for v in row] for row in matrix]
    if any(len(row) != size for row in rows):
        raise InvalidInput("Matriz não quadrada", size=size)

    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        head = rows[col][col]
        det *= head
        for r in range(col + 1, size):
            factor = rows[r][col] / head
            if factor == 0:
                continue
            rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return det


def divided_difference(nodes: Sequence[Fraction], values: Sequence[Fraction]) -> Fraction:
    """
    Diferença dividida f[η₀,…,η_n].

    É o coeficiente do termo de maior grau do polinômio interpolador; zero
    quando os valores vêm de um polinômio de grau < n.
    """
    if len(nodes) != len(values) or not nodes:
        raise InvalidInput("Nós e valores incompatíveis", nodes=len(nodes))
    if len(set(nodes)) != len(nodes):
        raise InvalidInput("Nós de interpolação repetidos")
    table = [Fraction(v) for v in values]
    points = [Fraction(t) for t in nodes]
    for level in range(1, len(points)):
        table = [
            (table[i + 1] - table[i]) / (points[i + level] - points[i])
            for i in range(len(table) - 1)
        ]
    return table[0]


@dataclass(frozen=True)
class TriDiagMatrix(Generic[Scalar]):
    """
    Matriz tridiagonal: diag[i] na posição (i,i), upper[i] em (i,i+1),
    lower[i] em (i+1,i).
    """

    diag: Tuple[Scalar, ...]
    upper: Tuple[Scalar, ...]
    lower: Tuple[Scalar, ...]
    origin: int = 0
    """Coordenada x da primeira linha (−1 para o Hamiltoniano deformado)"""

    def __post_init__(self):
        if not self.diag:
            raise InvalidInput("Matriz vazia")
        if len(self.upper) != len(self.diag) - 1 or len(self.lower) != len(self.diag) - 1:
            raise InvalidInput(
                "Diagonais secundárias devem ter tamanho n−1",
                size=len(self.diag),
            )

    @property
    def size(self) -> int:
        return len(self.diag)

    def apply(self, vector: Sequence[Scalar]) -> List[Scalar]:
        """Produto matriz·vetor."""
        n = self.size
        if len(vector) != n:
            raise InvalidInput("Vetor de tamanho incompatível", size=len(vector))
        result = []
        for i in range(n):
            acc = self.diag[i] * vector[i]
            if i + 1 < n:
                acc = acc + self.upper[i] * vector[i + 1]
            if i > 0:
                acc = acc + self.lower[i - 1] * vector[i - 1]
            result.append(acc)
        return result

    def to_dense(self, zero) -> List[List[Scalar]]:
        n = self.size
        dense = [[zero for _ in range(n)] for _ in range(n)]
        for i in range(n):
            dense[i][i] = self.diag[i]
            if i + 1 < n:
                dense[i][i + 1] = self.upper[i]
                dense[i + 1][i] = self.lower[i]
        return dense

    def trace(self):
        total = self.diag[0]
        for value in self.diag[1:]:
            total = total + value
        return total


def tridiag_determinant(diag: Sequence, offdiag_products: Sequence, shift=0):
    """
    det(T − shift·Id) pela recorrência do continuante.

    offdiag_products[i] é upper[i]·lower[i]; serve tanto para racionais
    quanto para ponto flutuante.
    """
    if len(offdiag_products) != len(diag) - 1:
        raise InvalidInput("Produtos fora da diagonal devem ter tamanho n−1")
    previous, current = 1, diag[0] - shift
    for k in range(1, len(diag)):
        previous, current = current, (diag[k] - shift) * current - offdiag_products[k - 1] * previous
    return current


# ============================================
# PONTO FLUTUANTE DE PRECISÃO CONFIGURÁVEL
# ============================================

def make_context(precision_bits: int) -> MPContext:
    """Contexto mpmath isolado (seguro entre threads) com precisão P."""
    ctx = MPContext()
    ctx.prec = precision_bits
    return ctx


def to_bigfloat(value: Union[Fraction, int], ctx: MPContext):
    """Converte um racional em mpf com arredondamento na precisão do contexto."""
    value = Fraction(value)
    return ctx.mpf(value.numerator) / ctx.mpf(value.denominator)


def tolerance(ctx: MPContext, exponent: int):
    """2^(−exponent) no contexto."""
    return ctx.ldexp(ctx.mpf(1), -exponent)


def eigenvalues_symmetric_tridiag(
    diag: Sequence,
    offdiag: Sequence,
    ctx: Optional[MPContext] = None,
) -> list:
    """
    Autovalores de uma matriz tridiagonal simétrica, em ordem crescente.

    Bisseção sobre a contagem de Sturm (fatoração LDLᵀ de T − σ) dentro do
    intervalo de Gershgorin. Cada autovalor λ é localizado com largura final
    abaixo de 2^(−P)·|λ|; perto de zero o piso é 2·pivmin.
    """
    if len(diag) == 0:
        raise InvalidInput("Matriz vazia")
    if len(offdiag) != len(diag) - 1:
        raise InvalidInput(
            "offdiag deve ter tamanho n−1",
            diag_size=len(diag),
            offdiag_size=len(offdiag),
        )
    ctx = ctx or make_context(256)
    d = [to_bigfloat(v, ctx) if isinstance(v, (Fraction, int)) else ctx.mpf(v) for v in diag]
    e = [to_bigfloat(v, ctx) if isinstance(v, (Fraction, int)) else ctx.mpf(v) for v in offdiag]
    e2 = [v * v for v in e]
    n = len(d)

    radius = [
        (abs(e[i - 1]) if i > 0 else 0) + (abs(e[i]) if i < n - 1 else 0)
        for i in range(n)
    ]
    low = min(d[i] - radius[i] for i in range(n))
    high = max(d[i] + radius[i] for i in range(n))
    scale = max(abs(low), abs(high), ctx.mpf(1))
    pivmin = ctx.ldexp(scale, -2 * ctx.prec)
    if n > 1:
        pivmin = max(pivmin, max(e2) * ctx.ldexp(ctx.mpf(1), -2 * ctx.prec))

    def count_below(sigma) -> int:
        """Número de autovalores < sigma (negativos de D em T − σ = LDLᵀ)."""
        negatives = 0
        pivot = d[0] - sigma
        for i in range(n):
            if i > 0:
                pivot = d[i] - sigma - e2[i - 1] / pivot
            if abs(pivot) < pivmin:
                pivot = -pivmin
            if pivot < 0:
                negatives += 1
        return negatives

    floor = 2 * pivmin
    max_iterations = 3 * ctx.prec + 64
    eigenvalues = []
    for k in range(n):
        lo, hi = low - pivmin, high + pivmin
        for _ in range(max_iterations):
            if hi - lo <= max(ctx.ldexp(max(abs(lo), abs(hi)), -ctx.prec), floor):
                break
            mid = (lo + hi) / 2
            if mid == lo or mid == hi:
                break
            if count_below(mid) > k:
                hi = mid
            else:
                lo = mid
        eigenvalues.append((lo + hi) / 2)
    return eigenvalues


def max_abs(values: Sequence):
    """Maior valor absoluto (0 para lista vazia)."""
    best = 0
    for value in values:
        if abs(value) > best:
            best = abs(value)
    return best
