"""Shared fixtures and hypothesis strategies for the test suite."""

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from eqlink import PolyRing, Polynomial, builtin_space

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def p1():
    return builtin_space("pn", n=1)


@pytest.fixture(scope="session")
def p2():
    return builtin_space("pn", n=2)


@pytest.fixture(scope="session")
def p3():
    return builtin_space("pn", n=3)


@pytest.fixture(scope="session")
def q3():
    return builtin_space("odd-quadric", n=1)


@pytest.fixture(scope="session")
def q4():
    return builtin_space("even-quadric", n=2)


@pytest.fixture(scope="session")
def gr24():
    return builtin_space("gr", k=2, n=4)


# -- hypothesis strategies ---------------------------------------------------

coefficients = st.fractions(
    min_value=-8, max_value=8, max_denominator=6
)


def polynomials(ring: PolyRing, max_exponent: int = 3, max_terms: int = 5):
    """Random elements of ``ring`` with small support."""
    exponent = st.integers(min_value=0, max_value=max_exponent)
    mono = st.tuples(*[exponent] * len(ring.names))
    term = st.tuples(mono, coefficients)
    def build(pairs):
        terms = {}
        for exps, coeff in pairs:
            terms[exps] = terms.get(exps, Fraction(0)) + coeff
        return ring.from_terms({e: c for e, c in terms.items() if c})
    return st.lists(term, max_size=max_terms).map(build)
