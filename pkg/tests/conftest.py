from pathlib import Path

import numpy as np
import pytest

from configs import get_settings
from data_fetching import BUNDLED_ZEROS, get_data, load_zero_dataset

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


@pytest.fixture(scope="session")
def zeros30():
    return load_zero_dataset(FIXTURES / "zeros_first30.txt")


@pytest.fixture(scope="session")
def zeros_full():
    return load_zero_dataset(BUNDLED_ZEROS)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def env(monkeypatch):
    """Sets ZETAQUANT_* variables for one test and rebuilds the cached settings."""

    def set_env(**values):
        for key, value in values.items():
            monkeypatch.setenv(key, str(value))
        get_settings.cache_clear()
        get_data.cache_clear()

    yield set_env
    get_settings.cache_clear()
    get_data.cache_clear()
