import numpy as np
import pytest

from src.config import Settings, reset_settings
from src.spin.system import NoiseModel, SpinSystem
from src.walk.evolution import basis_state
from src.walk.graph import cycle_generator


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch):
    for name in Settings.model_fields:
        monkeypatch.delenv(name, raising=False)
        monkeypatch.delenv(name.upper(), raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def settings(tmp_path):
    return Settings(output_dir=tmp_path / "out")


@pytest.fixture
def system():
    return SpinSystem()


@pytest.fixture
def quiet():
    return NoiseModel(enabled=False)


@pytest.fixture
def noisy():
    return NoiseModel(enabled=True)


@pytest.fixture
def h4():
    return cycle_generator(4, 1.0)


@pytest.fixture
def psi0():
    return basis_state(0, 4)


@pytest.fixture
def rng():
    return np.random.default_rng(7)
