import random

import pytest

from cilines.fields import Field, RATIONALS, prime_field
from cilines.geometry import ambient_variables
from cilines.multipoly import MultiPoly, PolyRing
from cilines.params import ParamRing


@pytest.fixture
def rng():
    return random.Random(20260810)


def field_of_char(char: int) -> Field:
    return RATIONALS if char == 0 else prime_field(char)


def ambient_ring(field: Field, n: int, params: tuple[str, ...] = ()) -> PolyRing:
    return PolyRing(ParamRing(field, params), ambient_variables(n))


def random_scalar(rng, ring: ParamRing, max_deg: int = 3, n_terms: int = 4):
    """Random ParamScalar with small integer coefficients."""
    terms = {}
    for _ in range(n_terms):
        exps = [0] * ring.k
        for _ in range(rng.randrange(max_deg + 1)):
            if ring.k:
                exps[rng.randrange(ring.k)] += 1
        terms[tuple(exps)] = ring.field.make(rng.randint(-5, 5))
    return ring.from_terms(terms)


def random_homogeneous(
    rng: random.Random, ring: PolyRing, degree: int, n_terms: int = 6
) -> MultiPoly:
    """A nonzero homogeneous form with random monomials and nonzero
    coefficients (collisions overwrite, never cancel)."""
    field = ring.coeffs.field
    terms = {}
    n = ring.n
    for _ in range(n_terms):
        exps = [0] * n
        for _ in range(degree):
            exps[rng.randrange(n)] += 1
        terms[tuple(exps)] = ring.coeffs.const(field.random_nonzero(rng))
    return ring.from_terms(terms)
