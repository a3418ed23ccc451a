# rdqm/utils/logger.py
"""
Logging com Loguru.

Toda mensagem carrega o id do registro em execução (extra["record"]),
definido por record_context; fora de um registro o campo vale "-".
"""
import functools
import inspect
import sys
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Optional

from loguru import logger

NO_RECORD = "-"

CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss.SSS}</green> | <level>{level: <8}</level> | "
    "<magenta>{extra[record]}</magenta> | <level>{message}</level>"
)
TEXT_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {extra[record]} | {name}:{function} - {message}"

logger.configure(extra={"record": NO_RECORD})


def _inside_record(message) -> bool:
    return message["extra"].get("record", NO_RECORD) != NO_RECORD


def setup_logger(settings):
    """
    Console colorido sempre; com log_to_files também grava:
    - rdqm_<data>.log: texto completo (DEBUG)
    - rdqm_records_<data>.json: só eventos de registros, serializados
    """
    logger.remove()
    logger.configure(extra={"record": NO_RECORD})
    logger.add(sys.stderr, format=CONSOLE_FORMAT, level=settings.log_level, colorize=True)

    if not settings.log_to_files:
        return logger

    log_path = Path(settings.logs_dir)
    log_path.mkdir(parents=True, exist_ok=True)
    rotation = {
        "rotation": settings.log_rotation,
        "retention": settings.log_retention,
        "compression": "zip",
        "enqueue": True,
    }

    logger.add(log_path / "rdqm_{time:YYYY-MM-DD}.log", format=TEXT_FORMAT, level="DEBUG", **rotation)
    logger.add(
        log_path / "rdqm_records_{time:YYYY-MM-DD}.json",
        level="INFO",
        filter=_inside_record,
        serialize=True,
        **rotation,
    )

    logger.debug(f"📁 Logs em {log_path.resolve()}")
    return logger


@contextmanager
def record_context(record_id: str):
    """Associa as mensagens emitidas dentro do bloco ao registro dado."""
    with logger.contextualize(record=record_id):
        yield


def _report(name: str, start: float, error: Optional[Exception] = None) -> None:
    elapsed = time.perf_counter() - start
    if error is None:
        logger.success(f"🏁 {name} concluído em {elapsed:.2f}s")
    else:
        logger.error(f"💥 {name} interrompido após {elapsed:.2f}s: {error}")


def log_execution_time(func):
    """Loga início, duração e falha de um comando (síncrono ou assíncrono)."""
    name = func.__name__.removeprefix("cmd_")

    if inspect.iscoroutinefunction(func):
        @functools.wraps(func)
        async def async_wrapper(*args, **kwargs):
            start = time.perf_counter()
            logger.info(f"▶️ {name}")
            try:
                result = await func(*args, **kwargs)
            except Exception as exc:
                _report(name, start, exc)
                raise
            _report(name, start)
            return result

        return async_wrapper

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        logger.info(f"▶️ {name}")
        try:
            result = func(*args, **kwargs)
        except Exception as exc:
            _report(name, start, exc)
            raise
        _report(name, start)
        return result

    return wrapper
