import pytest

from rayclass.utils.cache import ComputationCache
from rayclass.utils.settings import get_settings


@pytest.fixture
def budget_env(monkeypatch):
    """Set RAYCLASS_* variables for one test; settings and cached objects are rebuilt around it."""

    def apply(**values):
        for name, value in values.items():
            monkeypatch.setenv(f"RAYCLASS_{name.upper()}", str(value))
        get_settings.cache_clear()
        ComputationCache().clear()

    yield apply
    get_settings.cache_clear()
    ComputationCache().clear()
