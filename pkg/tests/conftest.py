"""
Shared fixtures.
"""
from pathlib import Path

import pytest

from recmon.config import reset_config
from recmon.syntax.alphabet import Alphabet

DATA = Path(__file__).parent.parent / "data"

_KEYS = (
    "RECMON_ALPHABET", "RECMON_TAU_CAP", "RECMON_CONSISTENCY_BOUND", "RECMON_TIGHT_EXTENSION_BOUND",
    "RECMON_TIGHT_HORIZON", "RECMON_WORKERS", "RECMON_SEED", "RECMON_LOG_LEVEL", "RECMON_RANDOM_INSTANCES",
)


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    """Every test starts from config.properties without environment overrides."""
    for key in _KEYS:
        monkeypatch.delenv(key, raising=False)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def ab():
    return Alphabet.of(["a", "b"])


@pytest.fixture
def abc():
    return Alphabet.of(["a", "b", "c"])


@pytest.fixture
def data_dir():
    return DATA
