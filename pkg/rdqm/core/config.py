# rdqm/core/config.py
"""
Configuração do verificador via Pydantic Settings (.env ou ambiente).

A precisão e a tolerância podem ser sobrescritas por execução
(--precision, --tol-exp); ver pipeline.commands.apply_overrides.
"""
from functools import lru_cache
from typing import Literal, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

MIN_PRECISION_BITS = 64
MAX_PRECISION_BITS = 1 << 16


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
        validate_assignment=True,
    )

    # ============================================
    # IDENTIFICAÇÃO
    # ============================================
    app_name: str = "Verificador rdQM"
    app_version: str = "1.0.0"

    # ============================================
    # DIRETÓRIOS
    # ============================================
    output_dir: str = "output"
    logs_dir: str = "logs"

    # ============================================
    # ARITMÉTICA
    # ============================================
    precision_bits: int = Field(256, ge=MIN_PRECISION_BITS, le=MAX_PRECISION_BITS)
    """Bits de mantissa nas verificações espectrais (mpmath)"""

    tolerance_exponent: Optional[int] = Field(None, gt=0)
    """Tolerância 2^(-k); ausente: k = precisão / 2"""

    limit_threshold_exponent: int = Field(6, gt=0)
    """Relações de limite: desvio final abaixo de 10^(-k)"""

    # ============================================
    # EXECUÇÃO
    # ============================================
    max_workers: int = Field(4, ge=1)
    semi_infinite_v_max: int = Field(8, ge=1)
    """Maior v de ξ̌_v testado em famílias semi-infinitas"""

    # ============================================
    # LOGGING
    # ============================================
    log_level: Literal["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"] = "INFO"
    log_rotation: str = "100 MB"
    log_retention: str = "30 days"
    log_to_files: bool = True

    def effective_tolerance_exponent(self, precision_bits: Optional[int] = None) -> int:
        if self.tolerance_exponent is not None:
            return self.tolerance_exponent
        return (precision_bits or self.precision_bits) // 2

    @staticmethod
    def validate_precision(bits: int) -> tuple[bool, str]:
        """
        Checa uma precisão pedida na linha de comando.

        Returns:
            Tuple (is_valid, error_message)
        """
        if bits < MIN_PRECISION_BITS:
            return False, f"Precisão {bits} bits é muito baixa. Mínimo: {MIN_PRECISION_BITS}"
        if bits > MAX_PRECISION_BITS:
            return False, f"Precisão {bits} bits é muito alta. Máximo: {MAX_PRECISION_BITS}"
        return True, ""


@lru_cache()
def get_settings() -> Settings:
    """Instância única, compartilhada por toda a aplicação."""
    return Settings()
