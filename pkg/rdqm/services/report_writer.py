# rdqm/services/report_writer.py
import hashlib
import json
import sys
from pathlib import Path
from typing import Optional

from ..api.schemas import ReportDocument
from ..core.config import get_settings


def ensure_directories():
    """Garante que os diretórios de saída e de logs existem."""
    settings = get_settings()
    Path(settings.output_dir).mkdir(parents=True, exist_ok=True)
    Path(settings.logs_dir).mkdir(parents=True, exist_ok=True)


def save_report(doc: ReportDocument, out: Optional[str] = None) -> Optional[str]:
    """
    Salva o relatório JSON.

    Args:
        doc: Relatório montado
        out: Caminho do arquivo; None ou "-" escreve em stdout. Caminhos
             relativos sem diretório vão para output_dir.

    Returns:
        str: Caminho completo do arquivo salvo (None para stdout)
    """
    payload = doc.to_json_dict()

    if out is None or out == "-":
        json.dump(payload, sys.stdout, ensure_ascii=False, indent=2)
        sys.stdout.write("\n")
        return None

    filepath = Path(out)
    if filepath.parent == Path("."):
        ensure_directories()
        filepath = Path(get_settings().output_dir) / filepath
    else:
        filepath.parent.mkdir(parents=True, exist_ok=True)

    with open(filepath, "w", encoding="utf-8") as f:
        json.dump(payload, f, ensure_ascii=False, indent=2)

    return str(filepath)


def report_digest(doc: ReportDocument) -> str:
    """SHA-256 dos registros sem duration_ms (estabilidade byte a byte)."""
    records = [
        record.model_dump(mode="json", exclude={"duration_ms"})
        for record in doc.records
    ]
    canonical = json.dumps(records, ensure_ascii=False, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
