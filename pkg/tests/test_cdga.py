from fractions import Fraction as F

import pytest

from mcprod import models
from mcprod.cdga import DegreeRangeError, FreeCDGA, NotACocycle, transport_element
from tests.conftest import rand_element


def test_unit_and_odd_square(heisenberg):
    a, b, c = heisenberg.gens()
    assert heisenberg.one() * a == a
    assert (a * a).is_zero()


def test_koszul_swap(heisenberg):
    a, b, _ = heisenberg.gens()
    assert b * a == -(a * b)


def test_graded_commutativity_random(heisenberg, rng):
    A = heisenberg
    for _ in range(20):
        dx, dy = rng.randint(1, 3), rng.randint(1, 3)
        x, y = rand_element(A, dx, rng), rand_element(A, dy, rng)
        sign = -1 if (dx * dy) % 2 else 1
        assert x * y == (y * x).scale(sign)


def test_differential_examples(heisenberg):
    a, b, c = heisenberg.gens()
    assert heisenberg.differential(heisenberg.one()).is_zero()
    assert heisenberg.differential(c) == a * b
    assert heisenberg.differential(a * c).is_zero()


def test_leibniz_random(heisenberg, rng):
    A = heisenberg
    for _ in range(20):
        dx, dy = rng.randint(1, 3), rng.randint(1, 3)
        x, y = rand_element(A, dx, rng), rand_element(A, dy, rng)
        lhs = A.differential(x * y)
        sign = -1 if dx % 2 else 1
        rhs = A.differential(x) * y + (x * A.differential(y)).scale(sign)
        assert lhs == rhs


def test_d_squared_on_full_bases():
    for A in (models.heisenberg(), models.even_square(), models.triple_witness()):
        for k in range(0, A.truncation - 1):
            for w in A.monomial_basis(k):
                el = A.from_vector({A._basis_pos_for(k)[w]: F(1)}, k)
                assert A.differential(A.differential(el)).is_zero()


def test_associativity_sampled(triple_witness, rng):
    A = triple_witness
    for _ in range(15):
        degs = [rng.randint(1, 2) for _ in range(3)]
        if sum(degs) > A.truncation:
            continue
        x, y, z = (rand_element(A, d, rng) for d in degs)
        assert (x * y) * z == x * (y * z)


def test_monomial_basis_examples(heisenberg):
    A = heisenberg
    assert [A.word_name(w) for w in A.monomial_basis(0)] == ["1"]
    assert sorted(A.word_name(w) for w in A.monomial_basis(2)) == ["a*b", "a*c", "b*c"]
    U = FreeCDGA([("u", 2)], truncation=8)
    assert [U.word_name(w) for w in U.monomial_basis(6)] == ["u*u*u"]


def test_monomial_basis_range_error(heisenberg):
    with pytest.raises(DegreeRangeError):
        heisenberg.monomial_basis(heisenberg.truncation + 1)


def test_cohomology_dimensions(heisenberg):
    assert heisenberg.betti(1) == 2
    assert heisenberg.betti(2) == 2
    reps = sorted(
        heisenberg.show(c.representative) for c in heisenberg.cohomology(2)
    )
    assert reps == ["a*c", "b*c"]
    K = models.koszul_pair()
    assert K.betti(2) == 0


def test_cohomology_range_error(heisenberg):
    with pytest.raises(DegreeRangeError):
        heisenberg.cohomology(heisenberg.truncation)


def test_reduce_to_class(heisenberg):
    a, b, c = heisenberg.gens()
    assert heisenberg.reduce_to_class(heisenberg.zero()).is_zero()
    assert heisenberg.reduce_to_class(a * b).is_zero()
    assert not heisenberg.reduce_to_class(a * c).is_zero()
    with pytest.raises(NotACocycle):
        heisenberg.reduce_to_class(c)


def test_is_decomposable(heisenberg):
    a, b, c = heisenberg.gens()
    assert heisenberg.is_decomposable(heisenberg.reduce_to_class(heisenberg.zero()))
    assert not heisenberg.is_decomposable(heisenberg.reduce_to_class(a * c))
    Z = FreeCDGA([("u", 2)], truncation=8)
    u = Z.gen("u")
    assert Z.is_decomposable(Z.reduce_to_class(u * u))


def test_validate_examples():
    assert models.heisenberg().validate().ok
    bad = FreeCDGA([("a", 1), ("c", 1)], truncation=6)
    bad.set_differential({"c": bad.gen("a")})  # degree mismatch
    assert not bad.validate().ok
    # d^2 != 0 or degree failure
    bad2 = FreeCDGA([("u", 2), ("y", 2)], truncation=6)
    bad2.set_differential({"y": bad2.gen("u"), "u": bad2.gen("y")})
    assert not bad2.validate().ok


def test_cohomology_dims_independent_of_generator_order():
    A = models.triple_witness()
    perm_gens = [("t", 1), ("b", 1), ("s", 2), ("a", 1), ("u", 2)]
    B = FreeCDGA(perm_gens, truncation=A.truncation)
    u, a = B.gen("u"), B.gen("a")
    B.set_differential({"s": u * a, "t": a * B.gen("b")})
    assert B.validate().ok
    for k in range(0, A.truncation - 1):
        assert A.betti(k) == B.betti(k), k


def test_truncation_drops_products():
    A = FreeCDGA([("u", 2)], truncation=4)
    u = A.gen("u")
    assert (u * u * u).is_zero()
    assert not (u * u).is_zero()


def test_transport_element(heisenberg):
    a, b, c = heisenberg.gens()
    big = FreeCDGA(
        [(g.name, g.degree) for g in heisenberg.generators] + [("x", 1)],
        truncation=heisenberg.truncation,
    )
    moved = transport_element(a * c + b.scale(F(2, 3)), big)
    assert big.show(moved) == heisenberg.show(a * c + b.scale(F(2, 3)))
