import random
from fractions import Fraction

import pytest

from mcprod import models
from mcprod.cdga import Element, FreeCDGA
from mcprod.tensor import TensorElement


@pytest.fixture
def heisenberg():
    return models.heisenberg()


@pytest.fixture
def triple_witness():
    return models.triple_witness()


@pytest.fixture
def rng():
    return random.Random(20240811)


def rand_element(A: FreeCDGA, k: int, rng, density=0.5) -> Element:
    if k < 1 or k > A.truncation:
        return A.zero()
    terms = {
        w: Fraction(rng.randint(-3, 3))
        for w in A.monomial_basis(k)
        if rng.random() < density
    }
    return Element(A, terms)


def rand_tensor(A, L, deg, rng, density=0.5) -> TensorElement:
    terms = {}
    for i in range(L.dim):
        e = rand_element(A, deg - L.degrees[i], rng, density)
        if not e.is_zero():
            terms[i] = e
    return TensorElement(A, L, deg, terms)
