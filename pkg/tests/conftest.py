import pytest


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """Point the settings file at a temporary location so no test touches src/config."""
    path = tmp_path / "user_config.yaml"
    monkeypatch.setenv("ECBIN_CONFIG", str(path))
    monkeypatch.delenv("ECBIN_LOG", raising=False)
    return path
