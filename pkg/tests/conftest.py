import pytest
from hypothesis import HealthCheck, settings

from cremona_lab.catalog import load_catalog
from cremona_lab.cremona import RationalMap
from cremona_lab.exact_poly import default_vars, parse_polynomial
from cremona_lab.groebner import Ideal
from cremona_lab.settings import Settings

settings.register_profile("lab", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("lab")


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture
def lab_settings():
    return Settings()


@pytest.fixture
def poly():
    """poly("x^2 - y*z", n=3) over x, y, z, ..."""

    def make(text, n=5, vars=None):
        return parse_polynomial(text, vars or default_vars(n))

    return make


@pytest.fixture
def ideal():
    def make(gens, n=5, vars=None):
        vars = tuple(vars or default_vars(n))
        return Ideal([parse_polynomial(g, vars) for g in gens], vars)

    return make


@pytest.fixture
def rmap():
    def make(texts, vars=None):
        return RationalMap.parse(texts, vars)

    return make
