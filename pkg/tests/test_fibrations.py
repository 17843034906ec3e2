import pytest

from mcprod import models
from mcprod.cdga import FreeCDGA, transport_element
from mcprod.dgla import massey_data
from mcprod.fibrations import (
    AlgebraicFibration,
    DescendError,
    adjoin_odd,
    annihilates,
    build_truncated_TA,
    descend,
    gysin_kernel,
    pushforward,
    split_defining_system,
    split_element,
)
from mcprod.products import DefiningSystem, massey_product, mc_product
from mcprod.tensor import TensorElement, transport_cdga
from tests.conftest import rand_element


def test_validate_base_alone(heisenberg):
    fib = AlgebraicFibration(base=heisenberg, total=heisenberg, stages={}, steps=[])
    assert fib.validate().ok


def test_adjoin_odd_examples(heisenberg):
    a, b, c = heisenberg.gens()
    fib = adjoin_odd(heisenberg, a * c, "x")
    assert fib.validate(spherical=True).ok
    assert fib.total.generators[fib.total._index["x"]].degree == 1
    # bad Euler classes
    with pytest.raises(ValueError):
        adjoin_odd(heisenberg, c, "y")  # not closed
    with pytest.raises(ValueError):
        adjoin_odd(heisenberg, a, "y")  # odd degree
    with pytest.raises(ValueError):
        adjoin_odd(heisenberg, heisenberg.zero(), "y")  # needs explicit degree


def test_bad_staging_detected(heisenberg):
    a, b, c = heisenberg.gens()
    fib = adjoin_odd(heisenberg, a * c, "x")
    # x2 whose differential uses x2 itself is invalid staging
    from mcprod.fibrations import extend_algebra
    total = extend_algebra(fib.total, [("x2", 1)], {})
    x2 = total.gen("x2")
    total.set_differential({"x2": total.gen("a") * x2})
    bad = AlgebraicFibration(
        base=heisenberg, total=total, stages={"x": 0, "x2": 1}, steps=[]
    )
    assert not bad.validate().ok


def test_pushforward(heisenberg):
    a, b, c = heisenberg.gens()
    fib = adjoin_odd(heisenberg, a * c, "x")
    assert pushforward(fib, heisenberg.reduce_to_class(heisenberg.zero())).is_zero()
    assert pushforward(fib, heisenberg.reduce_to_class(a * c)).is_zero()
    assert not pushforward(fib, heisenberg.reduce_to_class(b * c)).is_zero()
    K = models.koszul_pair()
    # in Lambda(u,x) itself, [u] = [dx] = 0 already
    assert K.reduce_to_class(K.gen("u")).is_zero()


def test_gysin_examples(heisenberg):
    a, b, c = heisenberg.gens()
    fib = adjoin_odd(heisenberg, a * c, "x")
    assert gysin_kernel(fib, 2).dim == 1
    fib0 = adjoin_odd(heisenberg, heisenberg.zero(), "x", degree=3)
    for k in range(0, 6):
        assert gysin_kernel(fib0, k).dim == 0
    U = FreeCDGA([("u", 2)], truncation=9)
    fibu = adjoin_odd(U, U.gen("u"), "x")
    assert gysin_kernel(fibu, 2).dim == 1
    assert gysin_kernel(fibu, 4).dim == 1


def test_truncated_ta_on_even_square():
    B = models.even_square()
    ta = build_truncated_TA(B, 8)
    assert ta.completed
    assert ta.adjoined == 1
    for k in (2, 4, 6, 8):
        assert ta.total.betti(k) == 0
    assert ta.total.betti(3) == 1  # the class of y - xu survives
    assert ta.fibration.validate(spherical=True).ok


def test_truncated_ta_no_even_cohomology(heisenberg):
    K = models.koszul_pair()
    ta = build_truncated_TA(K, 6)
    assert ta.completed and ta.adjoined == 0
    assert ta.total is K


def test_truncated_ta_cap_reported(heisenberg):
    ta = build_truncated_TA(heisenberg, 8, cap=10)
    assert not ta.completed
    assert "cap" in ta.message


def test_annihilates_even_class(heisenberg):
    a, b, c = heisenberg.gens()
    res = annihilates(heisenberg, heisenberg.reduce_to_class(a * c), 6)
    assert res.annihilated and res.conclusive
    assert len(res.witness.new_names) == 1
    name = res.witness.new_names[0]
    euler = res.witness.total.d_images[res.witness.total._index[name]]
    assert res.witness.total.show(euler) == "a*c"


def test_annihilates_every_even_class_sweep():
    # every positive even class of the bundled models dies with a witness
    for A in (models.heisenberg(), models.triple_witness(), models.even_square()):
        for k in range(2, 7, 2):
            for cls in A.cohomology(k):
                res = annihilates(A, cls, N=A.truncation - 1)
                assert res.annihilated, (A.generators, k)
                assert res.witness.validate(spherical=True).ok


def test_annihilates_unit_is_false(heisenberg):
    res = annihilates(heisenberg, heisenberg.reduce_to_class(heisenberg.one()), 6)
    assert not res.annihilated and res.conclusive


def test_annihilates_witness_soundness():
    W = models.triple_witness()
    res = annihilates(W, W.reduce_to_class(W.gen("u")), 6)
    assert res.annihilated
    wit = res.witness
    assert wit.validate(spherical=True).ok
    pushed = wit.total.reduce_to_class(transport_element(W.gen("u"), wit.total))
    assert pushed.is_zero()


def test_split_element_roundtrip(heisenberg, rng):
    a, b, c = heisenberg.gens()
    fib = adjoin_odd(heisenberg, a * c, "x")
    T = fib.total
    x = T.gen("x")
    for _ in range(10):
        k = rng.randint(1, 4)
        f = rand_element(T, k, rng, density=0.6)
        g, h = split_element(T, heisenberg, "x", f)
        recombined = x * transport_element(g, T) + transport_element(h, T)
        assert recombined == f
        assert "x" not in [heisenberg.generators[i].name for w in g.terms for i in w]


def test_split_defining_system(heisenberg):
    a, b, c = heisenberg.gens()
    lam = massey_data(3, [1, 1, 1])
    L = lam.quotient
    fib = adjoin_odd(heisenberg, heisenberg.zero(), "x", degree=1)
    T = fib.total
    elem = TensorElement(
        T, L, 1,
        {L.index["e1"]: T.gen("a"), L.index["e2"]: T.gen("a"),
         L.index["e3"]: T.gen("b"), L.index["b2_3"]: -T.gen("c")},
    )
    sigma = DefiningSystem(lam, elem)
    omega, theta = split_defining_system(fib, sigma)
    assert omega.is_zero()
    assert theta.terms == {
        L.index["e1"]: a, L.index["e2"]: a, L.index["e3"]: b, L.index["b2_3"]: -c
    }
    # sigma = x (x) l: omega = 1 (x) l, theta = 0
    lam12 = massey_data(2, [1, 2])
    L12 = lam12.quotient
    sig2 = DefiningSystem(
        lam12, TensorElement(T, L12, 1, {1: T.gen("x") * T.gen("a")})
    )
    om2, th2 = split_defining_system(fib, sig2)
    assert th2.is_zero()
    assert om2.terms == {1: a}


def descend_instance_zero_euler():
    A = models.triple_witness()
    u, a, b, s, t = A.gens()
    res = massey_product(
        A, [A.reduce_to_class(u), A.reduce_to_class(a), A.reduce_to_class(b)],
        compute_indeterminacy=False,
    )
    lam = res.system.data
    c = res.value.cls.representative
    fib = adjoin_odd(A, A.zero(), "x", degree=3)
    sigma = DefiningSystem(lam, transport_cdga(res.system.element, fib.total))
    return fib, lam, sigma, c


def descend_instance_exact_euler():
    A = models.triple_witness()
    u, a, b, s, t = A.gens()
    res = massey_product(
        A, [A.reduce_to_class(a * b), A.reduce_to_class(a), A.reduce_to_class(b)],
        compute_indeterminacy=False,
    )
    lam = res.system.data
    c = res.value.cls.representative
    fib = adjoin_odd(A, a * b, "x")
    T = fib.total
    L = lam.quotient
    bump = TensorElement(T, L, 1, {L.index["b2_3"]: T.gen("x") - T.gen("t")})
    sigma = DefiningSystem(lam, transport_cdga(res.system.element, T) + bump)
    return fib, lam, sigma, c


def test_descend_zero_euler_instance():
    fib, lam, sigma, c = descend_instance_zero_euler()
    res = descend(fib, lam, sigma, c)
    assert res.ell0 == {}
    assert res.zeta.validate().ok
    assert mc_product(res.system).cls == fib.base.reduce_to_class(res.normalized_c)
    assert "F(mu_bar) = c z" in res.checks
    # mu_bar degree bookkeeping: the descended system has total degree one
    assert res.system.element.degree == 1


def test_descend_exact_euler_instance():
    fib, lam, sigma, c = descend_instance_exact_euler()
    res = descend(fib, lam, sigma, c)
    assert res.ell0  # nonzero constant Lie part
    assert res.zeta.validate().ok
    final = mc_product(res.system).cls
    assert final == fib.base.reduce_to_class(res.normalized_c)
    assert not final.is_zero()


def test_descend_rejects_even_degree_class():
    fib, lam, sigma, c = descend_instance_zero_euler()
    A = fib.base
    even = A.gen("u")
    with pytest.raises(DescendError):
        descend(fib, lam, sigma, even)


def test_descend_rejects_wrong_product():
    fib, lam, sigma, c = descend_instance_zero_euler()
    A = fib.base
    # a cocycle whose class is NOT the product of sigma
    other = A.gen("a") * A.gen("b") * A.gen("t")
    assert A.differential(other).is_zero()
    with pytest.raises(DescendError):
        descend(fib, lam, sigma, other)
