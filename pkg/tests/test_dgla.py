import random
from fractions import Fraction as F

import pytest

from mcprod.dgla import (
    FDGLA,
    LieCochain,
    MCProductData,
    NotNilpotent,
    build_N_tilde,
    ce_differential,
    extension_cocycle,
    massey_data,
    perturb_differential,
    truncate_at_zero,
)


def test_abelian_valid_and_series():
    g = FDGLA([("x", 0), ("y", -1)], {})
    assert g.validate().ok
    f = g.lower_central_series()
    assert f.length == 2
    assert f.stages[-1].dim == 0
    assert f.validate().ok


def test_not_nilpotent():
    h = FDGLA([("x", 0), ("y", 0)], {(0, 1): {1: F(1)}})
    assert h.validate().ok
    with pytest.raises(NotNilpotent):
        h.lower_central_series()


def test_degree_additivity_violation_detected():
    bad = FDGLA([("x", 0), ("y", -1)], {(0, 1): {0: F(1)}})
    assert not bad.validate().ok


def test_massey_data_shapes():
    lam = massey_data(2, [1, 1])
    assert lam.total.dim == 3
    assert lam.q == 0
    assert lam.total.bracket_basis(0, 1) == {2: F(1)}
    lam3 = massey_data(3, [1, 1, 1])
    assert lam3.total.dim == 6
    assert lam3.q == 0
    lam211 = massey_data(3, [2, 1, 1])
    assert lam211.q == -1
    assert 2 - lam211.q == 3  # odd product degree


def test_massey_data_validates():
    for args in ((2, [1, 1]), (3, [1, 1, 1]), (3, [2, 1, 1]), (4, [1, 1, 1, 1])):
        lam = massey_data(*args)
        assert lam.total.validate().ok
        assert lam.quotient.validate().ok
        assert lam.validate().ok


def test_massey_data_rejects_bad_input():
    with pytest.raises(ValueError):
        massey_data(1, [1])
    with pytest.raises(ValueError):
        massey_data(2, [0, 1])


def test_lower_central_series_lengths():
    for n, degs in ((2, [1, 1]), (3, [1, 1, 1]), (4, [1, 1, 1, 1])):
        lam = massey_data(n, degs)
        assert lam.quotient.lower_central_series().length == n
        assert lam.total.lower_central_series().length == n + 1


def test_validate_mc_data_rejections():
    # differential hitting the center
    tot = FDGLA([("z", -1), ("w", -2)], {}, {1: {0: F(1)}})
    data = MCProductData.from_center(tot, "z")
    assert not data.validate().ok
    # positive-degree center
    tot2 = FDGLA([("z", 1), ("w", 0)], {}, auxiliary=True)
    data2 = MCProductData.from_center(tot2, "z")
    assert not data2.validate().ok


def test_extension_cocycle_values():
    lam = massey_data(2, [1, 1])
    ext = extension_cocycle(lam)
    assert ext.components[2][(0, 1)] == 1
    assert 1 not in ext.components
    # split extension -> zero cochain
    tot = FDGLA([("z", 0), ("w", 0)], {})
    data = MCProductData.from_center(tot, "z")
    assert extension_cocycle(data).is_zero()
    # massey(3): supported on adjacent windows composing to the full one
    lam3 = massey_data(3, [1, 1, 1])
    ext3 = extension_cocycle(lam3)
    L = lam3.quotient
    support = set(ext3.components[2])
    names = {tuple(L.names[i] for i in tup) for tup in support}
    assert names == {("e1", "b2_3"), ("e3", "b1_2")}


def test_extension_cocycles_closed():
    for args in ((2, [1, 1]), (3, [1, 1, 1]), (3, [2, 1, 1]), (4, [1, 2, 1, 2])):
        lam = massey_data(*args)
        assert ce_differential(extension_cocycle(lam)).is_zero()


def test_ce_differential_squares_to_zero():
    rng = random.Random(3)
    algs = [
        massey_data(3, [1, 1, 1]).quotient,
        massey_data(3, [2, 1, 1]).quotient,
        FDGLA([("u", -1), ("v", 0)], {}, {0: {1: F(1)}}),
    ]
    for g in algs:
        for _ in range(6):
            comps = {}
            for k in (1, 2, 3):
                tab = {}
                for _ in range(4):
                    tup = tuple(rng.randrange(g.dim) for _ in range(k))
                    tab[tup] = F(rng.randint(-3, 3))
                comps[k] = tab
            eta = LieCochain(g, 0, comps)
            assert ce_differential(ce_differential(eta)).is_zero()


def test_ce_trivial_cases():
    g = massey_data(2, [1, 1]).quotient
    assert ce_differential(LieCochain(g, 0, {0: {(): F(1)}})).is_zero()
    assert ce_differential(LieCochain(g, 1, {1: {(0,): F(1)}})).is_zero()


def test_cochain_alternation():
    g = massey_data(3, [2, 1, 1]).quotient  # has odd and even degrees
    eta = LieCochain(g, 0, {2: {(1, 0): F(1)}})
    s01 = eta.value((0, 1))
    s10 = eta.value((1, 0))
    d0, d1 = g.degrees[0], g.degrees[1]
    sign = -1 if (d0 * d1) % 2 == 0 else 1
    assert s10 == sign * s01
    # repeats of even-degree arguments vanish; odd-degree repeats are legal
    even = [i for i in range(g.dim) if g.degrees[i] % 2 == 0]
    odd = [i for i in range(g.dim) if g.degrees[i] % 2 == 1]
    assert LieCochain(g, 0, {2: {(even[0], even[0]): F(1)}}).is_zero()
    if odd:
        assert not LieCochain(g, 0, {2: {(odd[0], odd[0]): F(1)}}).is_zero()


def test_build_N_tilde_structure():
    lam = massey_data(3, [2, 1, 1])
    nt = build_N_tilde(lam, 1)
    alg = nt.algebra
    assert alg.dim == 2 * lam.total.dim + 1
    assert alg.validate().ok
    assert alg.degrees[nt.eta_index] == -1
    # [eta, s eps] = (-1)^{|s|} s
    for i in range(lam.total.dim):
        sign = F(1) if lam.total.degrees[i] % 2 == 0 else F(-1)
        assert alg.bracket_basis(nt.eta_index, nt.eps_index(i)) == {i: sign}
    with pytest.raises(ValueError):
        build_N_tilde(lam, 2)


def test_abelian_N_tilde_brackets():
    tot = FDGLA([("z", -1), ("w", 0)], {})
    data = MCProductData.from_center(tot, "z")
    nt = build_N_tilde(data, 1)
    nonzero = {(i, j) for (i, j), v in nt.algebra.brackets.items() if v}
    assert all(nt.eta_index in pair for pair in nonzero)


def test_perturb_differential():
    lam = massey_data(3, [2, 1, 1])
    nt = build_N_tilde(lam, 1)
    # l0 = 0 keeps the differential
    nt0 = perturb_differential(nt, {})
    assert nt0.algebra.differential == nt.algebra.differential
    # nonzero closed l0 of degree 0
    zero_deg = [i for i in range(lam.total.dim) if lam.total.degrees[i] == 0]
    ell0 = {zero_deg[0]: F(1)}
    nt2 = perturb_differential(nt, ell0)
    assert nt2.algebra.validate().ok
    deta = nt2.algebra.d(nt2.algebra.basis_vec(nt2.eta_index))
    assert deta == {zero_deg[0]: F(1)} or deta == {zero_deg[0]: F(-1)}
    with pytest.raises(ValueError):
        perturb_differential(nt, {zero_deg[0]: F(1), nt.base_dim - 1: F(1)})


def test_truncate_at_zero():
    lam = massey_data(3, [2, 1, 1])
    nt = build_N_tilde(lam, 1)
    zero_deg = [i for i in range(lam.total.dim) if lam.total.degrees[i] == 0]
    nt2 = perturb_differential(nt, {zero_deg[-1]: F(2)})
    sub = truncate_at_zero(nt2)
    assert sub.algebra.validate().ok
    assert all(d <= 0 for d in sub.algebra.degrees)
    assert sub.algebra.is_nilpotent()
    # degree-0 part sits inside ker(d')
    for j in range(sub.algebra.dim):
        if sub.algebra.degrees[j] == 0:
            parent_vec = sub.to_parent({j: F(1)})
            assert not nt2.algebra.d(parent_vec)
    # the center survives with its invariants
    zeta = MCProductData.from_center(sub.algebra, "eta")
    assert zeta.validate().ok


def test_truncate_identity_when_already_nonpositive():
    # abelian Ltilde concentrated in degrees <= -n: nothing is cut
    tot = FDGLA([("z", -3), ("w", -4)], {})
    data = MCProductData.from_center(tot, "z")
    nt = build_N_tilde(data, 1)
    assert all(d <= 0 for d in nt.algebra.degrees)
    sub = truncate_at_zero(nt)
    assert sub.algebra.dim == nt.algebra.dim


def test_truncate_excludes_nonclosed_degree_zero():
    # d(u) = v makes u.eps a degree-0 element with nonzero differential
    tot = FDGLA([("z", -1), ("u", -1), ("v", 0)], {}, {1: {2: F(1)}})
    data = MCProductData.from_center(tot, "z")
    assert data.validate().ok
    nt = build_N_tilde(data, 1)
    zero_dim = sum(1 for d in nt.algebra.degrees if d == 0)
    sub = truncate_at_zero(nt)
    kept_zero = sum(1 for d in sub.algebra.degrees if d == 0)
    assert kept_zero == zero_dim - 1  # u.eps is excluded
    # and one positive-degree element (v.eps) was dropped entirely
    assert sub.algebra.dim == nt.algebra.dim - 2


def test_lcs_filtration_is_a_filtration():
    lam = massey_data(3, [1, 1, 1])
    filt = lam.total.lower_central_series()
    assert filt.validate().ok
    idx = filt.index_stages()
    assert idx is not None and idx[-1] == set()


def test_section_variant_degree_guard():
    lam = massey_data(3, [2, 1, 1])
    wrong = [j for j in range(lam.quotient.dim) if lam.quotient.degrees[j] != lam.q]
    with pytest.raises(ValueError):
        lam.section_variant({wrong[0]: F(1)})
