# rdqm/core/exceptions.py
"""
Hierarquia de erros do verificador.

Cada erro carrega o contexto estruturado (família, parâmetro, ordem, x)
para que os registros do relatório possam ser reproduzidos.
"""

from typing import Any, Optional


class RdqmError(Exception):
    """Raiz de todos os erros do pacote."""

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context = {k: v for k, v in context.items() if v is not None}

    def to_details(self) -> dict:
        """Contexto serializável (valores convertidos para string)."""
        details = {"error": type(self).__name__, "message": self.message}
        details.update({k: str(v) for k, v in self.context.items()})
        return details


class DivisionByZero(RdqmError):
    """Denominador zero em um racional."""


class InvalidInput(RdqmError):
    """Entrada fora do domínio da operação."""


class PoleInSeries(RdqmError):
    """Fator de Pochhammer do denominador se anula em uma ordem usada."""

    def __init__(self, parameter: Any, order: int, family: Optional[str] = None):
        super().__init__(
            f"Polo na série: parâmetro de denominador {parameter} se anula na ordem {order}",
            parameter=parameter,
            order=order,
            family=family,
        )
        self.parameter = parameter
        self.order = order

    def with_family(self, family: str) -> "PoleInSeries":
        return PoleInSeries(self.parameter, self.order, family=family)


class EvaluationPole(RdqmError):
    """Função potencial, φ_M ou constante avaliada em um polo."""


class NotATwist(RdqmError):
    """Nenhum par (α, α′) consistente: entrada errada na tabela de twists."""


class IdentityFalsified(RdqmError):
    """Os dois lados da identidade não são proporcionais."""


class DegenerateInstance(RdqmError):
    """Os dois lados se anulam em toda a grade."""


class InvalidParameters(RdqmError):
    """Parâmetros fora da região física (produto B·D negativo, etc.)."""


class TwistTableError(RdqmError):
    """Defeito do vetor pseudo virtual fora das fronteiras."""


class DeformationError(RdqmError):
    """Resíduo espectral do Hamiltoniano deformado acima da tolerância."""
