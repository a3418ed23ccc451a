# rdqm/api/schemas.py
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator

from ..core.exact import format_rational, parse_rational
from ..services.families import resolve_family

REPORT_SCHEMA = 1


class RunConfig(BaseModel):
    """Configuração de uma execução da CLI."""
    command: Literal["verify", "families", "darboux", "suite"]
    family: Optional[str] = None
    params: Dict[str, str] = Field(default_factory=dict)
    twist: Optional[str] = None
    dset: List[int] = Field(default_factory=list)
    caln: Optional[int] = None
    n: Optional[int] = None
    precision: Optional[int] = None
    tol_exp: Optional[int] = Field(None, gt=0)
    out: Optional[str] = None
    only: Dict[str, str] = Field(default_factory=dict)

    @field_validator("family")
    @classmethod
    def _known_family(cls, value: Optional[str]) -> Optional[str]:
        if value is None:
            return value
        return resolve_family(value).value

    @field_validator("params")
    @classmethod
    def _rational_literals(cls, value: Dict[str, str]) -> Dict[str, str]:
        # "1/0" levanta DivisionByZero aqui, antes de qualquer cálculo
        return {name: format_rational(parse_rational(text)) for name, text in value.items()}

    @field_validator("dset")
    @classmethod
    def _non_negative(cls, value: List[int]) -> List[int]:
        if any(d < 0 for d in value):
            raise ValueError("Índices de 𝒟 devem ser ≥ 0")
        return value

    def rational_params(self) -> Dict[str, Fraction]:
        return {name: parse_rational(text) for name, text in self.params.items()}


class RecordStatus(str, Enum):
    PROPORTIONAL = "Proportional"
    PASS = "Pass"
    MISMATCH = "Mismatch"
    FAIL = "Fail"
    DEGENERATE = "Degenerate"
    ERROR = "Error"

    @property
    def passed(self) -> bool:
        return self in (RecordStatus.PROPORTIONAL, RecordStatus.PASS)

    @property
    def failed(self) -> bool:
        return self in (RecordStatus.MISMATCH, RecordStatus.FAIL, RecordStatus.ERROR)


class CheckRecord(BaseModel):
    """Resultado de uma verificação, com entradas suficientes para reexecução."""
    id: str
    kind: str
    family: str
    twist: Optional[str] = None
    params: Dict[str, str] = Field(default_factory=dict)
    index_sets: Optional[Dict[str, Any]] = None
    status: RecordStatus
    ratio: Optional[str] = None
    skipped_points: List[int] = Field(default_factory=list)
    duration_ms: float = 0.0
    details: Dict[str, Any] = Field(default_factory=dict)

    @staticmethod
    def ratio_text(value: Optional[Fraction]) -> Optional[str]:
        return None if value is None else format_rational(value)


class Summary(BaseModel):
    passed: int = 0
    failed: int = 0
    degenerate: int = 0


class ReportDocument(BaseModel):
    """Relatório JSON versionado."""
    schema_version: int = Field(default=REPORT_SCHEMA, serialization_alias="schema")
    tool: str
    version: str
    config: Dict[str, Any]
    records: List[CheckRecord]
    summary: Summary

    @classmethod
    def assemble(cls, tool: str, version: str, config: RunConfig, records: List[CheckRecord]) -> "ReportDocument":
        ordered = sorted(records, key=lambda record: record.id)
        summary = Summary(
            passed=sum(1 for r in ordered if r.status.passed),
            failed=sum(1 for r in ordered if r.status.failed),
            degenerate=sum(1 for r in ordered if r.status is RecordStatus.DEGENERATE),
        )
        return cls(
            tool=tool,
            version=version,
            config=config.model_dump(mode="json"),
            records=ordered,
            summary=summary,
        )

    @property
    def exit_code(self) -> int:
        return 0 if self.summary.failed == 0 else 1

    def failing_records(self) -> List[CheckRecord]:
        return [record for record in self.records if record.status.failed]

    def to_json_dict(self) -> dict:
        return self.model_dump(mode="json", by_alias=True)
