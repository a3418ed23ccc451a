import pytest

from rdqm.core.config import get_settings
from rdqm.services.families import safe_params


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """Settings limpos, sem logs em arquivo, saída no diretório temporário."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("LOG_TO_FILES", "false")
    monkeypatch.setenv("OUTPUT_DIR", str(tmp_path / "output"))
    monkeypatch.setenv("LOGS_DIR", str(tmp_path / "logs"))
    get_settings.cache_clear()
    yield get_settings()
    get_settings.cache_clear()


@pytest.fixture
def qr_point():
    """q=1/2, N=5, a=1/5000, b=1/3, d=1/10 (c=32)."""
    return safe_params("qr")


@pytest.fixture
def r_point():
    return safe_params("r")


@pytest.fixture
def k_point():
    return safe_params("k")
