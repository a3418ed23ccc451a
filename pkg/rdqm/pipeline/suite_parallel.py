# rdqm/pipeline/suite_parallel.py
"""
Execução paralela dos registros do suite.

Cada registro é uma função pura e CPU-bound: roda em thread via
asyncio.to_thread, limitada por um semáforo.
"""
import asyncio
from typing import List, Sequence

from ..api.schemas import CheckRecord
from ..utils.logger import logger
from .records import RecordTask, execute_task, failure_record


async def processar_registros_paralelo(
    tasks: Sequence[RecordTask],
    max_workers: int = 4
) -> List[CheckRecord]:
    """
    Processa os registros em paralelo.

    Args:
        tasks: Registros a executar
        max_workers: Máximo de registros simultâneos

    Returns:
        Registros ordenados por id
    """
    total = len(tasks)
    logger.info(
        f"🚀 Iniciando processamento PARALELO de {total} registro(s) "
        f"(máx {max_workers} simultâneos)..."
    )

    semaphore = asyncio.Semaphore(max_workers)

    async def task_with_semaphore(task: RecordTask) -> CheckRecord:
        async with semaphore:
            return await asyncio.to_thread(execute_task, task)

    logger.info(f"⏳ Aguardando conclusão de {total} registro(s)...")
    resultados = await asyncio.gather(
        *[task_with_semaphore(task) for task in tasks],
        return_exceptions=True  # Não para se um falhar
    )

    records = []
    for task, resultado in zip(tasks, resultados):
        if isinstance(resultado, Exception):
            logger.error(f"❌ Registro {task.id} falhou com exceção: {resultado}")
            records.append(failure_record(task, resultado))
        else:
            records.append(resultado)

    records.sort(key=lambda record: record.id)
    passed = sum(1 for r in records if r.status.passed)
    failed = sum(1 for r in records if r.status.failed)
    logger.success(
        f"🎉 Processamento paralelo concluído!\n"
        f"   ✅ Sucesso: {passed}/{total}\n"
        f"   ❌ Falhas: {failed}/{total}"
    )
    return records


def run_records(tasks: Sequence[RecordTask], max_workers: int = 4) -> List[CheckRecord]:
    """Ponto de entrada síncrono para os comandos."""
    return asyncio.run(processar_registros_paralelo(tasks, max_workers))
