import pytest


@pytest.fixture(autouse=True)
def clean_config_env(monkeypatch):
    # the CLI honors GRAMTOPIC_CONFIG; tests must not inherit one
    monkeypatch.delenv("GRAMTOPIC_CONFIG", raising=False)
