import pytest

from utils import config
from utils.settings import load_config, set_settings


@pytest.fixture(scope="session")
def witt_cache(tmp_path_factory):
    return tmp_path_factory.mktemp("witt_cache")


@pytest.fixture(autouse=True)
def default_settings(witt_cache, monkeypatch):
    """Every test starts from config.ini with the Witt cache in a temporary directory."""
    monkeypatch.setenv("PERFECTOID_WITT_CACHE", str(witt_cache))
    settings = set_settings(load_config(config))
    yield settings
    set_settings(load_config(config))
