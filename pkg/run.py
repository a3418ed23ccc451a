#!/usr/bin/env python3
"""
Script de execução do Verificador rdQM.

Uso:
    python run.py verify --family qr --params q=1/2,a=1/5000,b=1/3,d=1/10 --n 5 --dset 1,2 --caln 3
    python run.py families --family k
    python run.py darboux --dset 1
    python run.py suite --only family=qb --out suite.json
"""

import sys
import argparse
from typing import Dict, List, Optional

from pydantic import ValidationError

from rdqm.api.schemas import RunConfig
from rdqm.core.config import get_settings
from rdqm.core.exceptions import DivisionByZero, InvalidInput, InvalidParameters, NotATwist, RdqmError
from rdqm.pipeline.commands import COMMANDS
from rdqm.services.report_writer import report_digest, save_report
from rdqm.utils.logger import setup_logger

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# Erros de configuração: nenhum cálculo chegou a rodar
USAGE_ERRORS = (DivisionByZero, InvalidInput, InvalidParameters, NotATwist)


def parse_pairs(text: Optional[str]) -> Dict[str, str]:
    """"q=1/2,a=1/5000" → {"q": "1/2", "a": "1/5000"}."""
    if not text:
        return {}
    pairs = {}
    for item in text.split(","):
        name, sep, value = item.partition("=")
        if not sep or not name.strip() or not value.strip():
            raise InvalidInput(f"Par malformado: '{item}'")
        pairs[name.strip()] = value.strip()
    return pairs


def parse_indices(text: Optional[str]) -> List[int]:
    if not text:
        return []
    try:
        return [int(item) for item in text.split(",")]
    except ValueError:
        raise InvalidInput(f"Lista de índices malformada: '{text}'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Verificador rdQM: identidades de Casorati e Darboux")
    parser.add_argument("command", choices=sorted(COMMANDS), help="Comando a executar")
    parser.add_argument("--family", help="Família (r, qr, ha, dha, k, ...)")
    parser.add_argument("--params", help="Parâmetros nome=p/q separados por vírgula")
    parser.add_argument("--n", type=int, help="Tamanho da rede N")
    parser.add_argument("--twist", help="Torção (i, ii, i~, ...)")
    parser.add_argument("--dset", help="𝒟 (ou d₁ no darboux) separado por vírgula")
    parser.add_argument("--caln", type=int, help="𝒩")
    parser.add_argument("--precision", type=int, help="Precisão em bits")
    parser.add_argument("--tol-exp", type=int, dest="tol_exp", help="Tolerância 2^(-k)")
    parser.add_argument("--out", help="Arquivo do relatório (- para stdout)")
    parser.add_argument("--only", help="Filtro do suite: family=qb,kind=limit")
    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        family=args.family,
        params=parse_pairs(args.params),
        twist=args.twist,
        dset=parse_indices(args.dset),
        caln=args.caln,
        n=args.n,
        precision=args.precision,
        tol_exp=args.tol_exp,
        out=args.out,
        only=parse_pairs(args.only),
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    settings = get_settings()
    setup_logger(settings)

    try:
        config = build_config(args)
    except (ValidationError, RdqmError) as exc:
        print(f"❌ Configuração inválida: {exc}", file=sys.stderr)
        return EXIT_USAGE

    print("\n" + "=" * 60, file=sys.stderr)
    print(f"🚀 {settings.app_name.upper()} v{settings.app_version}", file=sys.stderr)
    print("=" * 60, file=sys.stderr)
    print(f"📍 Comando: {config.command}", file=sys.stderr)
    if config.family:
        print(f"🧮 Família: {config.family}", file=sys.stderr)
    print(f"🎯 Precisão: {config.precision or settings.precision_bits} bits", file=sys.stderr)
    print("=" * 60 + "\n", file=sys.stderr)

    try:
        doc = COMMANDS[config.command](config)
    except USAGE_ERRORS as exc:
        print(f"❌ ERRO: {exc.message}", file=sys.stderr)
        return EXIT_USAGE
    except RdqmError as exc:
        print(f"❌ Falha: {exc.message}", file=sys.stderr)
        return EXIT_FAILED

    path = save_report(doc, config.out)
    summary = doc.summary
    print(
        f"\n🎉 Concluído: ✅ {summary.passed} | ❌ {summary.failed} | ⚠️ {summary.degenerate}",
        file=sys.stderr,
    )
    if path:
        print(f"📄 Relatório: {path}", file=sys.stderr)
    print(f"🔒 Digest: {report_digest(doc)}", file=sys.stderr)
    for record in doc.failing_records():
        print(f"   ❌ {record.id} ({record.status.value})", file=sys.stderr)

    return doc.exit_code


if __name__ == "__main__":
    sys.exit(main())
