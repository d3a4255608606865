import pytest
from hypothesis import HealthCheck, settings
from fsing.fp_config import Settings
from fsing.fp_parse import parse
from fsing.fp_poly import PolyRing


settings.register_profile("fsing", derandomize=True, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("fsing")


@pytest.fixture(autouse=True)
def restore_settings():
    saved = dict(Settings.settings)
    yield
    Settings.settings.clear()
    Settings.settings.update(saved)


def make(p, names, src):
    ring = PolyRing(p, names.split(","))
    return ring, parse(src, ring)


@pytest.fixture
def cusp5():
    return make(5, "x,y", "x^2+y^3")


@pytest.fixture
def poly():
    """Factory: poly(p, "x,y", "x^2+y^3") -> (ring, f)."""
    return make
