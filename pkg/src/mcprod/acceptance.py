"""Acceptance checks: one runnable function per criterion, exact arithmetic.

Every check is standalone (builds its own models and data) and returns a
CriterionResult; run_all executes the lot.  These are the same checks the
CLI `selftest` command and tests/test_acceptance.py execute.

Criterion 7 is split: the even-killing tower finishes on Lambda(u,y) but
provably cannot finish on the Heisenberg model (its degree-1 generators
dualize to a nilpotent Lie algebra, whose degree-2 cohomology never
vanishes at any finite stage), so that half is reported as an expected
failure with the cap-exceeded diagnosis rather than silently weakened.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from mcprod import models
from mcprod.cdga import Element, FreeCDGA
from mcprod.dgla import (
    FDGLA,
    LieCochain,
    MCProductData,
    build_N_tilde,
    ce_differential,
    extension_cocycle,
    massey_data,
    perturb_differential,
    truncate_at_zero,
)
from mcprod.products import (
    DefiningSystem,
    characteristic_map,
    characteristic_value,
    classical_massey_oracle,
    gauge_homotopy_check,
    massey_product,
    mc_product,
)
from mcprod.tensor import (
    TensorElement,
    curvature,
    exp_ad,
    gauge_action,
    is_mc,
    t_bracket,
    t_differential,
    transport_cdga,
)
from mcprod.fibrations import (
    adjoin_odd,
    annihilates,
    build_truncated_TA,
    descend,
    gysin_kernel,
)

F = Fraction


@dataclass
class CriterionResult:
    name: str
    passed: bool
    detail: str = ""
    expected_failure: bool = False

    @property
    def verdict(self) -> str:
        if self.passed:
            return "PASS"
        return "FAIL (expected)" if self.expected_failure else "FAIL"


def _rand_element(A: FreeCDGA, k: int, rng, density=0.5) -> Element:
    if k < 1 or k > A.truncation:
        return A.zero()
    terms = {
        w: F(rng.randint(-3, 3))
        for w in A.monomial_basis(k)
        if rng.random() < density
    }
    return Element(A, terms)


def _rand_tensor(A: FreeCDGA, L: FDGLA, deg: int, rng, density=0.5) -> TensorElement:
    terms = {}
    for i in range(L.dim):
        e = _rand_element(A, deg - L.degrees[i], rng, density)
        if not e.is_zero():
            terms[i] = e
    return TensorElement(A, L, deg, terms)


def _homogeneous_cochain(g: FDGLA, degree: int, rng, arities=(1, 2, 3), tries=40) -> LieCochain:
    comps = {}
    for k in arities:
        tab = {}
        for _ in range(tries):
            tup = tuple(sorted(rng.randrange(g.dim) for _ in range(k)))
            if k - sum(g.degrees[i] for i in tup) == degree:
                tab[tup] = F(rng.randint(-2, 2))
        if tab:
            comps[k] = tab
    return LieCochain(g, degree, comps)


def _heisenberg_triple_system() -> tuple[FreeCDGA, DefiningSystem]:
    A = models.heisenberg()
    a, b, c = A.gens()
    lam = massey_data(3, [1, 1, 1])
    L = lam.quotient
    elem = TensorElement(
        A, L, 1,
        {L.index["e1"]: a, L.index["e2"]: a, L.index["e3"]: b, L.index["b2_3"]: -c},
    )
    return A, DefiningSystem(lam, elem)


def _triple_witness_system() -> tuple[FreeCDGA, DefiningSystem]:
    A = models.triple_witness()
    u, a, b, _, _ = A.gens()
    res = massey_product(
        A,
        [A.reduce_to_class(u), A.reduce_to_class(a), A.reduce_to_class(b)],
        compute_indeterminacy=False,
    )
    assert not res.obstructed
    return A, res.system


def _cup_system(A: FreeCDGA, x: Element, y: Element) -> DefiningSystem:
    lam = massey_data(2, [x.degree(), y.degree()])
    L = lam.quotient
    return DefiningSystem(lam, TensorElement(A, L, 1, {0: x, 1: y}))


def _bundled_data_systems() -> list[tuple[FreeCDGA, DefiningSystem]]:
    """All bundled (algebra, defining system) pairs with their data."""
    out = []
    out.append(_heisenberg_triple_system())
    out.append(_triple_witness_system())
    A = models.heisenberg()
    a, b, _ = A.gens()
    out.append((A, _cup_system(A, a, b)))
    W = models.triple_witness()
    u, aw, bw, _, tw = W.gens()
    out.append((W, _cup_system(W, bw, u)))
    B = models.formal_surface()
    ab_, bb_, wb_ = B.gens()
    out.append((B, _cup_system(B, ab_, wb_)))
    return out


# -- criteria ----------------------------------------------------------------


def criterion_1() -> CriterionResult:
    """Structural validators pass exactly on all bundled CDGAs and DGLAs."""
    failures = []
    cdgas = {
        "heisenberg": models.heisenberg(),
        "koszul": models.koszul_pair(),
        "even_square": models.even_square(),
        "triple_witness": models.triple_witness(),
        "formal_surface": models.formal_surface(),
        "formal_even": models.formal_even(),
    }
    for name, A in cdgas.items():
        rep = A.validate()
        if not rep.ok:
            failures.append(f"{name}: {rep.failures}")
    data_list = {
        "massey(2,[1,1])": massey_data(2, [1, 1]),
        "massey(3,[1,1,1])": massey_data(3, [1, 1, 1]),
        "massey(3,[2,1,1])": massey_data(3, [2, 1, 1]),
        "massey(4,[1,1,1,1])": massey_data(4, [1, 1, 1, 1]),
        "massey(4,[2,1,2,1])": massey_data(4, [2, 1, 2, 1]),
    }
    for name, lam in data_list.items():
        for tag, g in (("total", lam.total), ("quotient", lam.quotient)):
            rep = g.validate()
            if not rep.ok:
                failures.append(f"{name}.{tag}: {rep.failures}")
        rep = lam.validate()
        if not rep.ok:
            failures.append(f"{name}: {rep.failures}")
    # auxiliary algebras produced by the descend machinery
    lam = massey_data(3, [2, 1, 1])
    for n in (1, 3):
        nt = build_N_tilde(lam, n)
        rep = nt.algebra.validate()
        if not rep.ok:
            failures.append(f"N~(n={n}): {rep.failures}")
        ell0_deg = 1 - n
        cands = [i for i in range(lam.total.dim) if lam.total.degrees[i] == ell0_deg]
        ell0 = {cands[0]: F(1)} if cands else {}
        nt2 = perturb_differential(nt, ell0)
        rep = nt2.algebra.validate()
        if not rep.ok:
            failures.append(f"N~'(n={n}): {rep.failures}")
        sub = truncate_at_zero(nt2)
        rep = sub.algebra.validate()
        if not rep.ok:
            failures.append(f"M~(n={n}): {rep.failures}")
        zeta = MCProductData.from_center(sub.algebra, "eta")
        rep = zeta.validate()
        if not rep.ok:
            failures.append(f"zeta(n={n}): {rep.failures}")
    ok = not failures
    return CriterionResult(
        "1: structural validators (d^2, Leibniz, Jacobi, antisymmetry)",
        ok,
        "; ".join(failures) if failures else "all bundled algebras valid",
    )


def criterion_2() -> CriterionResult:
    """Bianchi and gauge covariance on >= 100 seeded pairs over >= 3 hosts."""
    rng = random.Random(2024)
    hosts = [
        (models.heisenberg(), massey_data(3, [2, 1, 1]).quotient),
        (models.triple_witness(), massey_data(2, [1, 2]).quotient),
        (models.formal_surface(), massey_data(3, [2, 2, 1]).quotient),
    ]
    pairs = 0
    for A, L in hosts:
        for _ in range(34):
            t = _rand_tensor(A, L, 1, rng)
            X = _rand_tensor(A, L, 0, rng, density=0.4)
            Ft = curvature(t)
            if not (t_differential(Ft) + t_bracket(t, Ft)).is_zero():
                return CriterionResult("2: Bianchi + gauge covariance", False, "Bianchi failed")
            if curvature(gauge_action(X, t)) != exp_ad(X, curvature(t)):
                return CriterionResult("2: Bianchi + gauge covariance", False, "covariance failed")
            pairs += 1
    return CriterionResult(
        "2: Bianchi + gauge covariance",
        pairs >= 100,
        f"{pairs} seeded (alpha, X) pairs over {len(hosts)} hosts, all exact",
    )


def criterion_3() -> CriterionResult:
    """Product independent of the section and of gauge transformations."""
    rng = random.Random(33)
    systems = [_heisenberg_triple_system(), _triple_witness_system()]
    W = models.triple_witness()
    _, aw, bw, _, _ = W.gens()
    u = W.gen("u")
    systems.append((W, _cup_system(W, bw, u)))
    sections_checked = 0
    gauges_checked = 0
    for A, sigma in systems:
        lam = sigma.data
        base = mc_product(sigma).cls
        qslots = [j for j in range(lam.quotient.dim) if lam.quotient.degrees[j] == lam.q]
        for _ in range(5):
            tweak = {j: F(rng.randint(-3, 3)) for j in qslots}
            lam2 = lam.section_variant(tweak)
            sigma2 = DefiningSystem(lam2, TensorElement(A, lam2.quotient, 1, sigma.element.terms))
            if mc_product(sigma2).cls != base:
                return CriterionResult("3: section and gauge independence", False,
                                       "section dependence detected")
            sections_checked += 1
        L = lam.quotient
        count = 0
        attempts = 0
        while count < 20 and attempts < 200:
            attempts += 1
            X = _rand_tensor(A, L, 0, rng, density=0.5)
            if X.is_zero() and count > 0:
                continue
            g = gauge_action(X, sigma.element)
            if mc_product(DefiningSystem(lam, g)).cls != base:
                return CriterionResult("3: section and gauge independence", False,
                                       "gauge dependence detected")
            count += 1
        gauges_checked += count
    # the Heisenberg triple host has no nonzero gauge parameters; the other
    # two systems carry the >= 20 seeded transformations each
    return CriterionResult(
        "3: section and gauge independence",
        sections_checked >= 15 and gauges_checked >= 40,
        f"{sections_checked} section variants, {gauges_checked} gauge transformations",
    )


def criterion_4() -> CriterionResult:
    """Heisenberg triple product matches the classical recursion; cup n=2."""
    A = models.heisenberg()
    a, b, c = A.gens()
    ca, cb = A.reduce_to_class(a), A.reduce_to_class(b)
    res = massey_product(A, [ca, ca, cb])
    if res.obstructed:
        return CriterionResult("4: Massey correspondence", False, "triple obstructed")
    v = res.value.cls
    cac = A.reduce_to_class(a * c)
    minus = {k: -x for k, x in cac.coordinates.items()}
    if v.is_zero() or (v.coordinates != cac.coordinates and v.coordinates != minus):
        return CriterionResult("4: Massey correspondence", False, "value is not +/-[ac]")
    if res.indeterminacy is None or res.indeterminacy.dim != 0:
        return CriterionResult("4: Massey correspondence", False, "indeterminacy not zero")
    oracle = classical_massey_oracle(A, [a, a, b], [1, 1, 1])
    if oracle is None or A.reduce_to_class(oracle) != v:
        return CriterionResult("4: Massey correspondence", False,
                               "classical recursion oracle disagrees")
    # n = 2 reproduces the cup product, sign (-1)^{(1+|x|)|y|}
    W = models.triple_witness()
    B = models.formal_surface()
    pairs = []
    u, aw, bw, _, tw = W.gens()
    ab_, bb_, wb_ = B.gens()
    pairs += [(A, a, b), (A, a, a * c), (A, b, b * c), (A, a, b * c), (A, b, a * c)]
    pairs += [(W, aw, u), (W, bw, u), (W, aw, bw)]
    pairs += [(B, ab_, bb_), (B, ab_, wb_), (B, wb_, wb_), (B, bb_, wb_)]
    count = 0
    for (Alg, x, y) in pairs:
        if not Alg.differential(x).is_zero() or not Alg.differential(y).is_zero():
            continue
        r2 = massey_product(Alg, [Alg.reduce_to_class(x), Alg.reduce_to_class(y)],
                            compute_indeterminacy=False)
        sign = -1 if ((1 + x.degree()) * y.degree()) % 2 else 1
        expect = Alg.reduce_to_class((x * y).scale(sign))
        got = r2.value.cls
        same = (got.is_zero() and expect.is_zero()) or got == expect
        if not same:
            return CriterionResult("4: Massey correspondence", False,
                                   f"cup mismatch on degrees {x.degree()},{y.degree()}")
        count += 1
    return CriterionResult(
        "4: Massey correspondence",
        count >= 10,
        f"triple = classical oracle = +/-[ac], zero indeterminacy; {count} cup pairs",
    )


def criterion_5() -> CriterionResult:
    """Products over zero-differential algebras are decomposable."""
    rng = random.Random(55)
    checked = 0
    for B, data_choices in (
        (models.formal_surface(), [(2, [1, 1]), (2, [1, 2]), (2, [2, 2])]),
        (models.formal_even(), [(2, [2, 2]), (2, [2, 4]), (2, [4, 4])]),
    ):
        done = 0
        attempts = 0
        while done < 50 and attempts < 600:
            attempts += 1
            n, degs = data_choices[rng.randrange(len(data_choices))]
            lam = massey_data(n, degs)
            L = lam.quotient
            t = _rand_tensor(B, L, 1, rng, density=0.7)
            if not is_mc(t):
                continue
            sigma = DefiningSystem(lam, t)
            prod = mc_product(sigma)
            if not B.is_decomposable(prod.cls):
                return CriterionResult(
                    "5: formality forces decomposable products", False,
                    f"indecomposable product over {B.generators}",
                )
            done += 1
        if done < 50:
            return CriterionResult(
                "5: formality forces decomposable products", False,
                f"only {done} systems sampled",
            )
        checked += done
    # one engineered nonabelian family: collinear slots over massey(3,[1,1,1])
    B = models.formal_surface()
    lam = massey_data(3, [1, 1, 1])
    L = lam.quotient
    a, b, w = B.gens()
    for _ in range(10):
        v = a.scale(rng.randint(-2, 2)) + b.scale(rng.randint(-2, 2))
        t = TensorElement(B, L, 1, {
            L.index["e1"]: v.scale(rng.randint(1, 3)),
            L.index["e2"]: v,
            L.index["e3"]: v.scale(rng.randint(1, 3)),
            L.index["b1_2"]: _rand_element(B, 1, rng),
            L.index["b2_3"]: _rand_element(B, 1, rng),
        })
        if not is_mc(t):
            return CriterionResult("5: formality forces decomposable products", False,
                                   "engineered system not MC")
        if not B.is_decomposable(mc_product(DefiningSystem(lam, t)).cls):
            return CriterionResult("5: formality forces decomposable products", False,
                                   "indecomposable triple product over formal algebra")
        checked += 1
    return CriterionResult(
        "5: formality forces decomposable products", True,
        f"{checked} seeded defining systems over 2 zero-differential algebras",
    )


def criterion_6() -> CriterionResult:
    """Gysin: ker(iota_*) = e.H degree-wise, both inclusions, exact."""
    A = models.heisenberg()
    a, b, c = A.gens()
    U = FreeCDGA([("u", 2)], truncation=9)
    E = models.even_square()
    pairs = [
        (A, A.zero(), 3, "heisenberg, e = 0"),
        (A, a * c, None, "heisenberg, e = ac"),
        (U, U.gen("u"), None, "free even line, e = u"),
        (E, E.gen("u") * E.gen("u"), None, "even square, e = u^2"),
    ]
    checked = []
    for Alg, e, xdeg, label in pairs:
        fib = adjoin_odd(Alg, e, "x_gys", degree=xdeg)
        for k in range(0, Alg.truncation - 1):
            try:
                gysin_kernel(fib, k)
            except AssertionError as exc:
                return CriterionResult("6: Gysin kernel equals e.H", False,
                                       f"{label}, degree {k}: {exc}")
        checked.append(label)
    return CriterionResult(
        "6: Gysin kernel equals e.H", True,
        f"both inclusions exact, degree-wise, on: {'; '.join(checked)}",
    )


def criterion_7a() -> CriterionResult:
    """Truncated even-killing tower completes on Lambda(u,y; dy = u^2)."""
    B = models.even_square()
    ta = build_truncated_TA(B, 8)
    if not ta.completed:
        return CriterionResult("7a: even-killing tower on Lambda(u,y)", False, ta.message)
    for k in (2, 4, 6):
        if ta.total.betti(k) != 0:
            return CriterionResult("7a: even-killing tower on Lambda(u,y)", False,
                                   f"H^{k} != 0")
    odd = all(
        ta.total.generators[ta.total._index[n]].degree % 2 == 1
        for n in ta.fibration.new_names
    )
    if not odd:
        return CriterionResult("7a: even-killing tower on Lambda(u,y)", False,
                               "an adjoined generator has even degree")
    return CriterionResult(
        "7a: even-killing tower on Lambda(u,y)", True,
        f"H^2 = H^4 = H^6 = 0 after {ta.adjoined} odd adjunction(s)",
    )


def criterion_7b() -> CriterionResult:
    """Even-killing tower on the Heisenberg model (expected failure).

    Any tower of degree-1 adjunctions over this model is the cochain
    algebra of a finite-dimensional nilpotent Lie algebra, and such
    algebras never have vanishing H^2; the loop therefore hits its
    adjunction cap.  Reported honestly rather than weakened.
    """
    A = models.heisenberg()
    ta = build_truncated_TA(A, 8)
    if not ta.completed:
        return CriterionResult(
            "7b: even-killing tower on the Heisenberg model", False,
            f"{ta.message}; H^2 of the partial tower has dimension "
            f"{ta.total.betti(2)} and provably cannot reach zero at any "
            "finite stage (nilpotent Lie algebras have H^2 != 0)",
            expected_failure=True,
        )
    for k in (2, 4, 6):
        if ta.total.betti(k) != 0:
            return CriterionResult(
                "7b: even-killing tower on the Heisenberg model", False,
                f"H^{k} != 0 after completion", expected_failure=True,
            )
    return CriterionResult("7b: even-killing tower on the Heisenberg model", True, "")


def criterion_8() -> CriterionResult:
    """Even classes and bundled products are annihilated, with witnesses."""
    targets = []
    A = models.heisenberg()
    a, b, c = A.gens()
    targets.append((A, A.reduce_to_class(a * c), "heisenberg [ac]"))
    targets.append((A, A.reduce_to_class(b * c), "heisenberg [bc]"))
    W = models.triple_witness()
    targets.append((W, W.reduce_to_class(W.gen("u")), "triple witness [u]"))
    B = models.formal_surface()
    targets.append((B, B.reduce_to_class(B.gen("w")), "formal [w]"))
    E = models.even_square()
    # [u] in Lambda(u,y): nonzero even class
    targets.append((E, E.reduce_to_class(E.gen("u")), "even square [u]"))
    # the product from criterion 4 (degree 2, even)
    res = massey_product(A, [A.reduce_to_class(a), A.reduce_to_class(a), A.reduce_to_class(b)],
                         compute_indeterminacy=False)
    targets.append((A, res.value.cls, "heisenberg triple product"))
    # products from criterion 5's algebras
    rng = random.Random(88)
    for Bx in (models.formal_surface(), models.formal_even()):
        gens = Bx.gens()
        found = 0
        for _ in range(30):
            x = _rand_element(Bx, gens[0].degree(), rng, 0.8)
            y = _rand_element(Bx, gens[0].degree(), rng, 0.8)
            if x.is_zero() or y.is_zero():
                continue
            r = massey_product(Bx, [Bx.reduce_to_class(x), Bx.reduce_to_class(y)],
                               compute_indeterminacy=False)
            if r.value.cls.is_zero():
                continue
            if r.value.cls.degree % 2 == 1:
                continue
            targets.append((Bx, r.value.cls, f"formal product deg {r.value.cls.degree}"))
            found += 1
            if found >= 2:
                break
    failures = []
    witnessed = 0
    for Alg, cls, label in targets:
        if cls.is_zero():
            continue
        res = annihilates(Alg, cls, N=Alg.truncation - 1)
        if not res.annihilated:
            failures.append(f"{label}: not annihilated ({res.message})")
            continue
        wit = res.witness
        rep = wit.validate(spherical=True)
        if not rep.ok:
            failures.append(f"{label}: witness invalid")
            continue
        from mcprod.cdga import transport_element
        again = wit.total.reduce_to_class(transport_element(cls.representative, wit.total))
        if not again.is_zero():
            failures.append(f"{label}: witness does not kill the class")
            continue
        witnessed += 1
    return CriterionResult(
        "8: annihilation with finite witnesses", not failures,
        "; ".join(failures) if failures else f"{witnessed} classes annihilated with validated witnesses",
    )


def _descend_instance_zero_euler():
    """e = 0 pushforward instance with odd product degree via massey(3,[2,1,1])."""
    A, sigma = _triple_witness_system()
    lam = sigma.data
    c = mc_product(sigma).cls.representative
    fib = adjoin_odd(A, A.zero(), "x", degree=3)
    sigma_T = DefiningSystem(lam, transport_cdga(sigma.element, fib.total))
    return fib, lam, sigma_T, c


def _descend_instance_exact_euler():
    """e = ab = dt, n = 1, with a genuine x-dependence and l0 != 0."""
    A = models.triple_witness()
    u, a, b, s, t = A.gens()
    cab = A.reduce_to_class(a * b)
    res = massey_product(
        A, [cab, A.reduce_to_class(a), A.reduce_to_class(b)],
        compute_indeterminacy=False,
    )
    lam = res.system.data
    c = res.value.cls.representative
    fib = adjoin_odd(A, a * b, "x")
    T = fib.total
    L = lam.quotient
    elem = transport_cdga(res.system.element, T)
    bump = TensorElement(T, L, 1, {L.index["b2_3"]: T.gen("x") - T.gen("t")})
    sigma_T = DefiningSystem(lam, elem + bump)
    return fib, lam, sigma_T, c


def criterion_9() -> CriterionResult:
    """Descend round-trips: zeta validates and reproduces the class of c."""
    required = [
        "d(l0) = 0",
        "F(mu_bar) = c z",
        "mu_bar in (A+ (x) M)^1",
        "Im(d_M) cap Z = 0 and zeta passes validation",
    ]
    details = []
    for label, build in (
        ("e = 0 pushforward", _descend_instance_zero_euler),
        ("e = ab exact, l0 != 0", _descend_instance_exact_euler),
    ):
        fib, lam, sigma, c = build()
        try:
            res = descend(fib, lam, sigma, c)
        except Exception as exc:
            return CriterionResult("9: descend round-trip", False, f"{label}: {exc}")
        for ch in required:
            if ch not in res.checks:
                return CriterionResult("9: descend round-trip", False,
                                       f"{label}: missing check {ch!r}")
        if not res.zeta.validate().ok:
            return CriterionResult("9: descend round-trip", False, f"{label}: zeta invalid")
        final = mc_product(res.system).cls
        target = fib.base.reduce_to_class(res.normalized_c)
        if final != target:
            return CriterionResult("9: descend round-trip", False,
                                   f"{label}: product mismatch")
        details.append(f"{label} (dim M~ = {res.zeta.total.dim}, l0 {'=' if not res.ell0 else '!='} 0)")
    return CriterionResult("9: descend round-trip", True, "; ".join(details))


def criterion_10() -> CriterionResult:
    """Chain-map and homotopy identities; gamma(extension class) = m(mu)."""
    rng = random.Random(1010)
    A, sigma = _triple_witness_system()
    lam = sigma.data
    L = lam.quotient
    mu = sigma.element
    count = 0
    for _ in range(40):
        deg = rng.choice([1, 2, 3, 4])
        eta = _homogeneous_cochain(L, deg, rng)
        if eta.is_zero():
            continue
        lhs = A.differential(characteristic_value(eta, mu))
        rhs = characteristic_value(ce_differential(eta), mu)
        if lhs != rhs:
            return CriterionResult("10: characteristic map identities", False,
                                   "chain-map identity failed")
        X = _rand_tensor(A, L, 0, rng, density=0.4)
        rep = gauge_homotopy_check(eta, X, mu)
        if not rep.ok:
            return CriterionResult("10: characteristic map identities", False,
                                   "gauge homotopy identity failed")
        count += 1
        if count >= 20:
            break
    if count < 20:
        return CriterionResult("10: characteristic map identities", False,
                               f"only {count} instances sampled")
    matched = 0
    for Alg, sig in _bundled_data_systems():
        ext = extension_cocycle(sig.data)
        g = characteristic_map(ext, sig.element)
        if g != mc_product(sig).cls:
            return CriterionResult("10: characteristic map identities", False,
                                   "gamma(extension class) != m(mu)")
        matched += 1
    return CriterionResult(
        "10: characteristic map identities", True,
        f"{count} seeded chain-map/homotopy instances; gamma(ext) = m(mu) on {matched} data",
    )


ALL_CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7a,
    criterion_7b,
    criterion_8,
    criterion_9,
    criterion_10,
]


def run_all() -> list[CriterionResult]:
    out = []
    for fn in ALL_CRITERIA:
        try:
            out.append(fn())
        except Exception as exc:  # a crashed criterion is a failed criterion
            out.append(CriterionResult(fn.__name__, False, f"crashed: {exc!r}"))
    return out
