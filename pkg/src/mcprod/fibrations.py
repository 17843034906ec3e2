"""Odd algebraic spherical fibrations and the annihilation ideal.

An algebraic fibration here is an inclusion of a base algebra into a free
extension by staged generators; the odd spherical case adjoins odd-degree
generators whose differentials (Euler classes) live below their stage.
This module computes Gysin kernels two independent ways, builds the
degree-truncated even-cohomology-killing tower, decides annihilation by
pushing classes into that tower (with early exit and honest reporting when
the tower hits its adjunction cap), and implements the descend
construction that converts a defining system over A[x] into one over A
for a new central-extension datum built from the auxiliary algebras.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from mcprod import linalg
from mcprod.cdga import (
    CohomologyClass,
    Element,
    FreeCDGA,
    ValidationReport,
    transport_element,
)
from mcprod.dgla import (
    MCProductData,
    SubDGLA,
    build_N_tilde,
    perturb_differential,
    truncate_at_zero,
)
from mcprod.linalg import SubspaceBasis, Vec
from mcprod.products import DefiningSystem, lift_system, mc_product
from mcprod.tensor import (
    TensorElement,
    curvature,
    map_dgla,
    t_bracket,
    t_differential,
    transport_cdga,
)

ZERO = Fraction(0)
ONE = Fraction(1)

DEFAULT_ADJUNCTION_CAP = 50


def adjunction_cap(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("MCPROD_MAX_ITER")
    if env:
        return int(env)
    return DEFAULT_ADJUNCTION_CAP


@dataclass
class OddSphericalStep:
    """One odd variable x with dx = e; e is the Euler class."""

    name: str
    degree: int
    euler: Element  # element of the base algebra

    def __post_init__(self):
        if self.degree % 2 == 0 or self.degree < 1:
            raise ValueError("spherical step degree must be odd and positive")


@dataclass
class AlgebraicFibration:
    """base -> total = base (x) Lambda(new generators), staged."""

    base: FreeCDGA
    total: FreeCDGA
    stages: dict[str, int]  # new generator name -> stage index
    steps: list[OddSphericalStep] = field(default_factory=list)

    @property
    def new_names(self) -> list[str]:
        return [g.name for g in self.total.generators if g.name not in self.base._index]

    def validate(self, spherical: bool = False) -> ValidationReport:
        failures = []
        rep = self.total.validate()
        failures.extend(f"total: {m}" for m in rep.failures)
        base_names = set(self.base._index)
        for g in self.base.generators:
            if g.name not in self.total._index:
                failures.append(f"base generator {g.name} missing from total")
            elif self.total.generators[self.total._index[g.name]].degree != g.degree:
                failures.append(f"generator {g.name} changed degree")
        for name in self.new_names:
            if name not in self.stages:
                failures.append(f"new generator {name} has no stage")
        # staging: d(V(s)) lands in base (x) Lambda V(s-1)
        for name in self.new_names:
            s = self.stages.get(name, 0)
            img = self.total.d_images[self.total._index[name]]
            for w in img.terms:
                for gi in w:
                    gname = self.total.generators[gi].name
                    if gname in base_names:
                        continue
                    if self.stages.get(gname, 0) >= s:
                        failures.append(
                            f"d({name}) uses generator {gname} of stage >= {s}"
                        )
        if spherical:
            for name in self.new_names:
                deg = self.total.generators[self.total._index[name]].degree
                if deg % 2 == 0:
                    failures.append(f"even-degree fiber generator {name}")
        # base differential must agree through the inclusion
        for g in self.base.generators:
            img = transport_element(
                self.base.d_images[self.base._index[g.name]], self.total
            )
            if img != self.total.d_images[self.total._index[g.name]]:
                failures.append(f"differential of {g.name} changed in total")
        return ValidationReport(subject="fibration", failures=failures)


def validate_fibration(f: AlgebraicFibration, spherical: bool = False) -> ValidationReport:
    return f.validate(spherical=spherical)


def extend_algebra(
    base: FreeCDGA, new_gens: Sequence[tuple[str, int]], eulers: dict[str, Element]
) -> FreeCDGA:
    """Free extension of base by new generators with prescribed differentials."""
    gens = [(g.name, g.degree) for g in base.generators] + list(new_gens)
    total = FreeCDGA(gens, truncation=base.truncation)
    images = {}
    for g in base.generators:
        img = base.d_images[base._index[g.name]]
        if not img.is_zero():
            images[g.name] = transport_element(img, total)
    for name, _ in new_gens:
        e = eulers.get(name)
        if e is not None and not e.is_zero():
            images[name] = transport_element(e, total)
    total.set_differential(images)
    return total


def adjoin_odd(
    A: FreeCDGA, e: Element, name: str, degree: Optional[int] = None
) -> AlgebraicFibration:
    """A -> A[x] with dx = e; |x| = |e| - 1 is odd.

    e must be a closed homogeneous element of even degree >= 2, or zero
    (then the odd degree of x must be passed explicitly).
    """
    if e.algebra is not A:
        raise ValueError("Euler class must live in the base algebra")
    if not A.differential(e).is_zero():
        raise ValueError("Euler class is not closed")
    if e.is_zero():
        if degree is None:
            raise ValueError("zero Euler class needs an explicit degree for x")
        n = degree
    else:
        d = e.degree()
        if d % 2 == 1 or d < 2:
            raise ValueError(f"Euler class degree {d} must be even and >= 2")
        n = d - 1
        if degree is not None and degree != n:
            raise ValueError("degree argument conflicts with the Euler class")
    if name in A._index:
        raise ValueError(f"generator name {name} already used")
    total = extend_algebra(A, [(name, n)], {name: e})
    step = OddSphericalStep(name=name, degree=n, euler=e)
    return AlgebraicFibration(base=A, total=total, stages={name: 0}, steps=[step])


def pushforward(f: AlgebraicFibration, cls: CohomologyClass) -> CohomologyClass:
    """Class of the same representative in the total algebra."""
    if cls.algebra is not f.base:
        raise ValueError("class does not live in the base algebra")
    if cls.degree > f.total.trustworthy_range():
        raise ValueError("degree outside the trustworthy range of the total algebra")
    return f.total.reduce_to_class(transport_element(cls.representative, f.total))


def gysin_kernel(f: AlgebraicFibration, k: int) -> SubspaceBasis:
    """ker(iota_*: H^k(A) -> H^k(A[x])), asserted equal to e.H^{k-|e|}(A).

    Both sides are computed independently (pushforward kernel vs Euler
    multiplication) and compared as exact subspaces before returning.
    """
    if len(f.steps) != 1 or len(f.new_names) != 1:
        raise ValueError("gysin_kernel needs a single-step spherical fibration")
    A = f.base
    step = f.steps[0]
    classes = A.cohomology(k)
    m = len(classes)
    push_coords = [pushforward(f, cls).coordinates for cls in classes]
    mat = linalg.SparseMatrix.from_columns(
        push_coords, len(f.total.cohomology(k))
    )
    kernel = linalg.kernel_basis(mat)

    e = step.euler
    products: list[Vec] = []
    if not e.is_zero():
        edeg = e.degree()
        for cls in A.cohomology(k - edeg):
            z = e * cls.representative
            if z.is_zero():
                continue
            coords = A.reduce_to_class(z).coordinates
            if coords:
                products.append(coords)
    euler_span = linalg.span_basis(products, m)
    if not kernel.same_subspace(euler_span):
        raise AssertionError(
            f"Gysin kernel mismatch in degree {k}: "
            f"dim ker = {kernel.dim}, dim e.H = {euler_span.dim}"
        )
    return kernel


# -- the even-killing tower ---------------------------------------------------


@dataclass
class TAResult:
    """Outcome of the truncated even-cohomology-killing construction."""

    fibration: AlgebraicFibration
    completed: bool
    adjoined: int
    message: str = ""

    @property
    def total(self) -> FreeCDGA:
        return self.fibration.total


def _fresh_gen_name(taken: set, i: int) -> str:
    name = f"x{i}"
    while name in taken:
        i += 1
        name = f"x{i}"
    return name


def build_truncated_TA(
    A: FreeCDGA, N: int, cap: Optional[int] = None, watch: Optional[Element] = None
) -> TAResult:
    """Iterated odd spherical fibration killing H^{2i} for 0 < 2i <= N.

    Works on the lowest nonvanishing even degree first, adjoining one odd
    generator per basis class and recomputing until that degree dies.
    The adjunction cap (default 50, env MCPROD_MAX_ITER) bounds the total
    number of adjoined generators; hitting it is reported, never silently
    accepted.  When `watch` is given, the loop stops early as soon as the
    watched base cocycle becomes exact in the tower.
    """
    if N > A.truncation - 1:
        raise ValueError("N must leave one degree of truncation headroom")
    cap = adjunction_cap(cap)
    current = A
    stages: dict[str, int] = {}
    steps: list[OddSphericalStep] = []
    adjoined = 0
    stage = 0
    counter = 1

    def result(completed: bool, message: str = "") -> TAResult:
        fib = AlgebraicFibration(base=A, total=current, stages=stages, steps=steps)
        return TAResult(
            fibration=fib, completed=completed, adjoined=adjoined, message=message
        )

    def watched_dead() -> bool:
        if watch is None:
            return False
        moved = transport_element(watch, current)
        return current.reduce_to_class(moved).is_zero()

    if watched_dead():
        return result(False, "stopped early: watched class already dies")
    for k in range(2, N + 1, 2):
        while True:
            classes = current.cohomology(k)
            if not classes:
                break
            if adjoined + len(classes) > cap:
                return result(
                    False,
                    f"adjunction cap {cap} exceeded while killing H^{k} "
                    f"(dim {len(classes)} at {adjoined} adjoined)",
                )
            new_gens = []
            eulers = {}
            taken = {g.name for g in current.generators}
            for cls in classes:
                name = _fresh_gen_name(taken, counter)
                counter += 1
                taken.add(name)
                new_gens.append((name, k - 1))
                eulers[name] = cls.representative
            ext = extend_algebra(current, new_gens, {})
            images = {
                name: transport_element(eulers[name], ext) for name, _ in new_gens
            }
            ext.set_differential(images)
            for name, _ in new_gens:
                stages[name] = stage
                steps.append(
                    OddSphericalStep(
                        name=name, degree=k - 1, euler=eulers[name]
                    )
                )
            current = ext
            adjoined += len(new_gens)
            stage += 1
            if watched_dead():
                return result(False, "stopped early: watched class dies in the tower")
    return result(True)


@dataclass
class AnnihilationResult:
    """Membership answer for the annihilation ideal, with its witness.

    conclusive is False when the tower hit its cap before the class died;
    a True answer always comes with a validated finite witness fibration.
    """

    annihilated: bool
    witness: Optional[AlgebraicFibration]
    conclusive: bool
    message: str = ""


def _dependency_closure(total: FreeCDGA, base: FreeCDGA, names: set) -> set:
    out = set(names)
    frontier = list(names)
    while frontier:
        name = frontier.pop()
        img = total.d_images[total._index[name]]
        for w in img.terms:
            for gi in w:
                gname = total.generators[gi].name
                if gname not in base._index and gname not in out:
                    out.add(gname)
                    frontier.append(gname)
    return out


def _witness_from_primitive(
    fib: AlgebraicFibration, w: Element
) -> AlgebraicFibration:
    """Finite sub-fibration containing a primitive, closed under d."""
    total = fib.total
    base = fib.base
    used = set()
    for word in w.terms:
        for gi in word:
            gname = total.generators[gi].name
            if gname not in base._index:
                used.add(gname)
    used = _dependency_closure(total, base, used)
    ordered = [
        (g.name, g.degree)
        for g in total.generators
        if g.name in used
    ]
    sub_total = FreeCDGA(
        [(g.name, g.degree) for g in base.generators] + ordered,
        truncation=base.truncation,
    )
    images = {}
    for g in base.generators:
        img = base.d_images[base._index[g.name]]
        if not img.is_zero():
            images[g.name] = transport_element(img, sub_total)
    for name, _ in ordered:
        img = total.d_images[total._index[name]]
        if not img.is_zero():
            images[name] = transport_element(img, sub_total)
    sub_total.set_differential(images)
    stages = {name: fib.stages[name] for name, _ in ordered}
    steps = [s for s in fib.steps if s.name in used]
    return AlgebraicFibration(base=base, total=sub_total, stages=stages, steps=steps)


def annihilates(
    A: FreeCDGA, cls: CohomologyClass, N: int, cap: Optional[int] = None
) -> AnnihilationResult:
    """Does some odd spherical fibration kill the class?

    Decided by pushing the class into the even-killing tower, stopping as
    soon as it dies; on success the finite witness sub-fibration is
    extracted from a primitive and re-validated.
    """
    if cls.algebra is not A:
        raise ValueError("class does not live in the given algebra")
    if cls.is_zero():
        empty = AlgebraicFibration(base=A, total=A, stages={}, steps=[])
        return AnnihilationResult(True, empty, True, "zero class")
    if cls.degree + 1 > N:
        raise ValueError("need N >= degree + 1")
    if cls.degree == 0:
        return AnnihilationResult(
            False, None, True, "degree-0 classes never die: the inclusion is unital"
        )
    rep = cls.representative
    ta = build_truncated_TA(A, N, cap=cap, watch=rep)
    total = ta.total
    moved = transport_element(rep, total)
    pushed = total.reduce_to_class(moved)
    if not pushed.is_zero():
        conclusive = ta.completed
        msg = ta.message or "class survives the completed tower up to N"
        return AnnihilationResult(False, None, conclusive, msg)
    # extract a small witness: prefer a single step whose Euler class is rep
    fib = ta.fibration
    w = None
    for step in fib.steps:
        if step.euler == rep:
            w = total.gen(step.name)
            break
    if w is None:
        k = cls.degree
        sol = linalg.solve(total.d_matrix(k - 1), total.to_vector(moved, k))
        if sol is None:
            raise AssertionError("class reported exact but no primitive found")
        w = total.from_vector(sol, k - 1)
    witness = _witness_from_primitive(fib, w)
    rep_check = witness.validate(spherical=True)
    if not rep_check.ok:
        raise AssertionError(f"witness failed validation: {rep_check.failures}")
    pushed_w = witness.total.reduce_to_class(
        transport_element(rep, witness.total)
    )
    if not pushed_w.is_zero():
        raise AssertionError("witness does not annihilate the class")
    return AnnihilationResult(True, witness, True, "")


# -- splitting and descending defining systems -------------------------------


def split_element(total: FreeCDGA, base: FreeCDGA, x_name: str, f: Element) -> tuple[Element, Element]:
    """Unique decomposition f = x g + h with g, h free of the odd x."""
    xi = total._index[x_name]
    xdeg = total.degrees[xi]
    g_terms = {}
    h_terms = {}
    for w, c in f.terms.items():
        if xi in w:
            p = w.index(xi)
            # move x to the front: it crosses w[0..p-1]
            crossed = sum(total.degrees[t] for t in w[:p])
            sign = ONE if (crossed * xdeg) % 2 == 0 else -ONE
            rest = w[:p] + w[p + 1 :]
            g_terms[rest] = g_terms.get(rest, ZERO) + sign * c
        else:
            h_terms[w] = h_terms.get(w, ZERO) + c
    g = transport_element(Element(total, g_terms), base)
    h = transport_element(Element(total, h_terms), base)
    return g, h


def split_defining_system(
    fib: AlgebraicFibration, sigma: DefiningSystem
) -> tuple[TensorElement, TensorElement]:
    """sigma = x omega + theta with omega in A (x) L, theta in A+ (x) L."""
    if len(fib.new_names) != 1:
        raise ValueError("splitting needs a single-variable fibration")
    if sigma.element.cdga is not fib.total:
        raise ValueError("defining system must live over the total algebra")
    x_name = fib.new_names[0]
    A = fib.base
    L = sigma.element.dgla
    n = fib.total.degrees[fib.total._index[x_name]]
    om: dict[int, Element] = {}
    th: dict[int, Element] = {}
    for i, f in sigma.element.terms.items():
        g, h = split_element(fib.total, A, x_name, f)
        if not g.is_zero():
            om[i] = g
        if not h.is_zero():
            th[i] = h
    omega = TensorElement(A, L, 1 - n, om)
    theta = TensorElement(A, L, 1, th)
    return omega, theta


@dataclass
class DescendResult:
    """Outcome of trading the odd variable for a central extension."""

    zeta: MCProductData
    system: DefiningSystem
    normalized_c: Element
    ell0: Vec
    checks: list[str]


class DescendError(Exception):
    """A descend precondition or in-pipeline assertion failed."""


def _tensor_into_sub(t: TensorElement, sub: SubDGLA, degree: int) -> TensorElement:
    """Rewrite a tensor element over the parent algebra in sub coordinates."""
    by_word: dict[tuple, Vec] = {}
    for i, e in t.terms.items():
        for w, c in e.terms.items():
            by_word.setdefault(w, {})[i] = by_word.get(w, {}).get(i, ZERO) + c
    terms: dict[int, Element] = {}
    A = t.cdga
    for w, vec in by_word.items():
        coords = sub.from_parent(vec)
        if coords is None:
            raise DescendError("element does not lie in the truncated subalgebra")
        for j, c in coords.items():
            cur = terms.get(j, A.zero())
            terms[j] = cur + Element(A, {w: c})
    return TensorElement(A, sub.algebra, degree, terms)


def descend(
    fib: AlgebraicFibration,
    lam: MCProductData,
    sigma: DefiningSystem,
    c: Element,
) -> DescendResult:
    """From a defining system over A[x] producing i_*(c), build data over A.

    Follows the constructive proof: normalize the curvature of the lift to
    exactly c.z, extract the constant Lie part l0 of the x-coefficient,
    build the auxiliary algebra with the perturbed differential, truncate
    at degree zero, and assemble the descended defining system whose MC
    higher product is the class of the normalized c.
    """
    checks: list[str] = []
    A = fib.base
    T = fib.total
    if len(fib.new_names) != 1 or len(fib.steps) != 1:
        raise DescendError("descend needs a single-variable odd spherical fibration")
    x_name = fib.new_names[0]
    n = fib.steps[0].degree
    e = fib.steps[0].euler
    if c.algebra is not A:
        raise DescendError("c must live in the base algebra")
    if not c.is_zero():
        if c.degree() % 2 == 0:
            raise DescendError("c must have odd degree")
    if not A.differential(c).is_zero():
        raise DescendError("c is not a cocycle")
    if lam.q % 2 == 0:
        raise DescendError("the center degree q must be odd for odd-degree products")
    if sigma.data is not lam:
        raise DescendError("defining system does not use the given datum")
    if sigma.element.cdga is not T:
        raise DescendError("defining system must live over the total algebra")

    # precondition: the product of sigma is the pushforward class of c
    prod = mc_product(sigma)
    c_T = T.reduce_to_class(transport_element(c, T))
    if prod.cls != c_T:
        raise DescendError(
            "mc_product of the system does not equal the pushforward class of c"
        )
    checks.append("m(sigma) = i_*[c]")

    # (1) split and (2) lift
    omega, theta = split_defining_system(fib, sigma)
    alpha = map_dgla(omega, lam.section, lam.total)
    beta = map_dgla(theta, lam.section, lam.total)

    # (3) normalize F(x alpha + beta) = c z + d(x u + v)
    lift = lift_system(sigma)
    F = curvature(lift)
    z = lam.center_index
    stray = [i for i in F.terms if i != z]
    if stray:
        raise DescendError("curvature of the lift escapes the center")
    G = F.coefficient(z)
    diff = G - transport_element(c, T)
    c_norm = c
    if not diff.is_zero():
        k = diff.degree()
        sol = linalg.solve(T.d_matrix(k - 1), T.to_vector(diff, k))
        if sol is None:
            raise DescendError(
                "normalization unsolvable: the system does not produce i_*(c)"
            )
        w = T.from_vector(sol, k - 1)
        u_A, v_A = split_element(T, A, x_name, w)
        if not u_A.is_zero():
            u_tensor = TensorElement(A, lam.total, alpha.degree, {z: u_A})
            alpha = alpha - u_tensor
        c_norm = c + A.differential(v_A)
    checks.append("F(x alpha + beta) = c z after normalization")

    # (4) the two curvature components, computed over the base algebra
    eq1 = t_bracket(alpha, beta) - t_differential(alpha)
    if not eq1.is_zero():
        raise DescendError("equation [alpha, beta] - d alpha = 0 fails")
    czA = TensorElement(A, lam.total, 2, {z: c_norm} if not c_norm.is_zero() else {})
    eq2 = (
        alpha.scalar_mul(e)
        + t_differential(beta)
        + t_bracket(beta, beta).scale(Fraction(1, 2))
        - czA
    )
    if not eq2.is_zero():
        raise DescendError("equation e alpha + d beta + [beta,beta]/2 = c z fails")
    # cross-check against the total-algebra curvature
    alpha_T = transport_cdga(alpha, T).scalar_mul(T.gen(x_name))
    beta_T = transport_cdga(beta, T)
    F_check = curvature(alpha_T + beta_T)
    cz_T = TensorElement(
        T, lam.total, 2,
        {z: transport_element(c_norm, T)} if not c_norm.is_zero() else {},
    )
    if not (F_check - cz_T).is_zero():
        raise DescendError("normalized curvature check failed in the total algebra")
    checks.append("-d alpha + [alpha, beta] = 0 and e alpha + d beta + [beta,beta]/2 = c z")

    # (5) constant Lie part of alpha
    ell0: Vec = {}
    abar_terms: dict[int, Element] = {}
    for i, el in alpha.terms.items():
        const = el.constant_coefficient()
        if const:
            ell0[i] = const
        rest = Element(A, {w: cc for w, cc in el.terms.items() if w})
        if not rest.is_zero():
            abar_terms[i] = rest
    abar = TensorElement(A, lam.total, alpha.degree, abar_terms)
    if lam.total.d(ell0):
        raise DescendError("identity d(l0) = 0 fails")
    checks.append("d(l0) = 0")

    # (6) auxiliary algebras
    nt = build_N_tilde(lam, n)
    nt2 = perturb_differential(nt, ell0)
    rep = nt2.algebra.validate()
    if not rep.ok:
        raise DescendError(f"perturbed auxiliary algebra invalid: {rep.failures}")
    checks.append("perturbed differential squares to zero")
    M = truncate_at_zero(nt2)
    rep = M.algebra.validate()
    if not rep.ok:
        raise DescendError(f"truncated subalgebra invalid: {rep.failures}")

    # (7) mu_bar = abar.eps + beta + e (x) eta over the perturbed algebra
    m_dim = nt.base_dim
    eps_matrix = linalg.SparseMatrix(
        nt2.algebra.dim, lam.total.dim, {(m_dim + i, i): ONE for i in range(m_dim)}
    )
    incl_matrix = linalg.SparseMatrix(
        nt2.algebra.dim, lam.total.dim, {(i, i): ONE for i in range(m_dim)}
    )
    mu_parts = []
    if not abar.is_zero():
        mu_parts.append(map_dgla(abar, eps_matrix, nt2.algebra, degree=abar.degree + n))
    mu_parts.append(map_dgla(beta, incl_matrix, nt2.algebra, degree=1))
    if not e.is_zero():
        mu_parts.append(
            TensorElement(A, nt2.algebra, 1, {nt2.eta_index: e})
        )
    mu_bar = mu_parts[0]
    for part in mu_parts[1:]:
        mu_bar = mu_bar + part
    if mu_bar.degree != 1:
        raise DescendError("mu_bar is not of total degree 1")
    F_mu = curvature(mu_bar)
    cz_N = TensorElement(
        A, nt2.algebra, 2, {z: c_norm} if not c_norm.is_zero() else {}
    )
    if not (F_mu - cz_N).is_zero():
        raise DescendError("identity F(mu_bar) = c z fails")
    checks.append("F(mu_bar) = c z")

    mu_M = _tensor_into_sub(mu_bar, M, 1)
    if not mu_M.in_positive_part():
        raise DescendError("mu_bar is not in A+ (x) M")
    checks.append("mu_bar in (A+ (x) M)^1")

    # (8) the new datum and system
    z_name = lam.total.names[z]
    zeta = MCProductData.from_center(M.algebra, z_name)
    rep = zeta.validate()
    if not rep.ok:
        raise DescendError(f"descended datum invalid: {rep.failures}")
    checks.append("Im(d_M) cap Z = 0 and zeta passes validation")
    system = DefiningSystem(zeta, map_dgla(mu_M, zeta.projection, zeta.quotient))
    final = mc_product(system)
    target = A.reduce_to_class(c_norm)
    if final.cls != target:
        raise DescendError("descended product does not equal the class of c")
    checks.append("m(descended system) = [c]")
    return DescendResult(
        zeta=zeta, system=system, normalized_c=c_norm, ell0=ell0, checks=checks
    )
