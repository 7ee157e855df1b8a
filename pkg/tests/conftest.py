import random

import pytest
from hypothesis import HealthCheck, settings

from binedge.poly import Polynomial, Ring

settings.register_profile("binedge", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("binedge")


def random_poly(rng: random.Random, ring: Ring, terms=3, degree=2, coeff=3):
    """Small random polynomial; may be zero."""
    out = {}
    for _ in range(rng.randint(1, terms)):
        exps = [0] * ring.nvars
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(ring.nvars)] += 1
        out[tuple(exps)] = rng.choice([c for c in range(-coeff, coeff + 1) if c])
    return Polynomial(ring, out)


def random_monomial(rng: random.Random, ring: Ring, degree=2):
    exps = [0] * ring.nvars
    for _ in range(rng.randint(1, degree)):
        exps[rng.randrange(ring.nvars)] += 1
    return Polynomial(ring, {tuple(exps): 1})


@pytest.fixture
def R2():
    return Ring(2)


@pytest.fixture
def R3():
    return Ring(3)
