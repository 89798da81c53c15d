import pytest

from walshsum_cli.config import CONFIG_ENV, WORKERS_ENV


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv(CONFIG_ENV, raising=False)
    monkeypatch.delenv(WORKERS_ENV, raising=False)
