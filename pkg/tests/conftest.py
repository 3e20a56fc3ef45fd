import pytest
from hypothesis import HealthCheck, settings

from gravchords import cache

settings.register_profile("default", max_examples=60, deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _no_disk_cache(monkeypatch):
    # tests that want a cache set one explicitly
    monkeypatch.delenv(cache.ENV_VAR, raising=False)
    cache.set_cache_dir(None)
    yield
    cache.set_cache_dir(None)
