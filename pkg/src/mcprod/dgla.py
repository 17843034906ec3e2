"""Finite-dimensional differential graded Lie algebras by structure constants.

Covers validation (antisymmetry, Jacobi, Leibniz, d^2), nilpotency via the
lower central series, central extensions packaged as MC-product data, the
window-bracket model behind classical Massey products, Lie-algebra cochains
with their Chevalley-Eilenberg differential, and the auxiliary algebras
(adjoining a square-zero odd variable, perturbing the differential,
truncating at degree zero) used to descend defining systems along an odd
spherical fibration.

Sign conventions.  Brackets satisfy [x,y] = -(-1)^{|x||y|}[y,x] and the
Jacobi identity in the form [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]].
Cochains are stored in the plain alternating convention (swapping adjacent
arguments costs -(-1)^{|x||y|}); the Chevalley-Eilenberg differential is
computed through the standard identification with the free graded
commutative algebra on the shifted dual (generator x_l of degree 1 - |l|),
which fixes the sign left open in the usual "delta up to sign" phrasing
so that (delta + d_L)^2 = 0 and the characteristic-map chain identity both
hold exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from mcprod import linalg
from mcprod.cdga import ValidationReport, sort_word
from mcprod.linalg import Vec, SparseMatrix, SubspaceBasis

ZERO = Fraction(0)
ONE = Fraction(1)


class NotNilpotent(Exception):
    """Lower central series failed to reach zero."""


def _clean(v: Vec) -> Vec:
    return {i: c for i, c in v.items() if c}


class FDGLA:
    """Graded Lie algebra on a named basis with sparse structure constants.

    brackets maps ordered pairs (i, j) to the vector of [e_i, e_j]; pairs
    missing one orientation are filled in by graded antisymmetry at
    construction time.  differential maps basis index j to the vector of
    d(e_j).  Auxiliary algebras may carry positive degrees.
    """

    def __init__(
        self,
        basis: Sequence[tuple[str, int]],
        brackets: dict[tuple[int, int], Vec],
        differential: Optional[dict[int, Vec]] = None,
        auxiliary: bool = False,
        nilpotency_bound: Optional[int] = None,
    ):
        names = [n for n, _ in basis]
        if len(set(names)) != len(names):
            raise ValueError("duplicate basis names")
        self.basis = list(basis)
        self.names = names
        self.degrees = [d for _, d in basis]
        self.index = {n: i for i, n in enumerate(names)}
        self.auxiliary = auxiliary
        self.nilpotency_bound = nilpotency_bound
        self._nilpotent: Optional[bool] = None
        table: dict[tuple[int, int], Vec] = {}
        for (i, j), v in brackets.items():
            v = _clean({k: Fraction(c) for k, c in v.items()})
            if v:
                table[(i, j)] = v
        for (i, j), v in list(table.items()):
            if (j, i) not in table:
                sign = -ONE if (self.degrees[i] * self.degrees[j]) % 2 == 0 else ONE
                table[(j, i)] = _clean({k: sign * c for k, c in v.items()})
        self.brackets = table
        diff: dict[int, Vec] = {}
        if differential:
            for j, v in differential.items():
                v = _clean({k: Fraction(c) for k, c in v.items()})
                if v:
                    diff[j] = v
        self.differential = diff

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degree(self, i: int) -> int:
        return self.degrees[i]

    def basis_vec(self, i: int) -> Vec:
        return {i: ONE}

    def bracket_basis(self, i: int, j: int) -> Vec:
        return dict(self.brackets.get((i, j), {}))

    def bracket(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                w = self.brackets.get((i, j))
                if not w:
                    continue
                ab = a * b
                for k, c in w.items():
                    s = out.get(k, ZERO) + ab * c
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return out

    def d(self, v: Vec) -> Vec:
        out: Vec = {}
        for j, a in v.items():
            img = self.differential.get(j)
            if not img:
                continue
            for k, c in img.items():
                s = out.get(k, ZERO) + a * c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def element_degree(self, v: Vec) -> Optional[int]:
        degs = {self.degrees[i] for i in v}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop()

    def show(self, v: Vec) -> str:
        if not v:
            return "0"
        bits = []
        for i in sorted(v):
            c = v[i]
            if c == 1:
                bits.append(self.names[i])
            elif c == -1:
                bits.append(f"-{self.names[i]}")
            else:
                bits.append(f"{c}*{self.names[i]}")
        out = bits[0]
        for b in bits[1:]:
            out += f" - {b[1:]}" if b.startswith("-") else f" + {b}"
        return out

    # -- validation ----------------------------------------------------

    def validate(self) -> ValidationReport:
        failures = []
        n = self.dim
        if not self.auxiliary:
            for i, d in enumerate(self.degrees):
                if d > 0:
                    failures.append(f"basis element {self.names[i]} has positive degree {d}")
        for (i, j), v in self.brackets.items():
            want = self.degrees[i] + self.degrees[j]
            for k in v:
                if self.degrees[k] != want:
                    failures.append(
                        f"[{self.names[i]},{self.names[j]}] not homogeneous of degree {want}"
                    )
                    break
        for i in range(n):
            for j in range(i, n):
                lhs = self.bracket_basis(i, j)
                sign = -ONE if (self.degrees[i] * self.degrees[j]) % 2 == 0 else ONE
                rhs = {k: sign * c for k, c in self.bracket_basis(j, i).items()}
                if _clean(lhs) != _clean(rhs):
                    failures.append(
                        f"antisymmetry fails on ({self.names[i]},{self.names[j]})"
                    )
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    # [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]
                    lhs = self.bracket(self.basis_vec(i), self.bracket_basis(j, k))
                    t1 = self.bracket(self.bracket_basis(i, j), self.basis_vec(k))
                    sgn = ONE if (self.degrees[i] * self.degrees[j]) % 2 == 0 else -ONE
                    t2 = self.bracket(self.basis_vec(j), self.bracket_basis(i, k))
                    rhs = linalg.vec_axpy(t1, sgn, t2)
                    if _clean(lhs) != _clean(rhs):
                        failures.append(
                            "Jacobi fails on "
                            f"({self.names[i]},{self.names[j]},{self.names[k]})"
                        )
        for j, img in self.differential.items():
            want = self.degrees[j] + 1
            for k in img:
                if self.degrees[k] != want:
                    failures.append(f"d({self.names[j]}) is not of degree +1")
                    break
        for j in range(n):
            dd = self.d(self.d(self.basis_vec(j)))
            if dd:
                failures.append(f"d(d({self.names[j]})) != 0")
        for i in range(n):
            for j in range(n):
                # d[x,y] = [dx,y] + (-1)^{|x|}[x,dy]
                lhs = self.d(self.bracket_basis(i, j))
                t1 = self.bracket(self.d(self.basis_vec(i)), self.basis_vec(j))
                sgn = ONE if self.degrees[i] % 2 == 0 else -ONE
                t2 = self.bracket(self.basis_vec(i), self.d(self.basis_vec(j)))
                rhs = linalg.vec_axpy(t1, sgn, t2)
                if _clean(lhs) != _clean(rhs):
                    failures.append(
                        f"Leibniz fails on ({self.names[i]},{self.names[j]})"
                    )
        return ValidationReport(subject="dgla", failures=failures)

    # -- nilpotency ------------------------------------------------------

    def lower_central_series(self) -> "Filtration":
        """L^1 = L, L^{i+1} = [L, L^i]; raises NotNilpotent on stabilisation."""
        full = SubspaceBasis(self.dim, [self.basis_vec(i) for i in range(self.dim)])
        stages = [full]
        current = full
        for _ in range(self.dim + 1):
            if current.dim == 0:
                break
            images = []
            for i in range(self.dim):
                for v in current.vectors:
                    images.append(self.bracket(self.basis_vec(i), v))
            nxt = linalg.span_basis(images, self.dim)
            if nxt.dim == current.dim and current.dim > 0:
                raise NotNilpotent(
                    f"lower central series stabilises at dimension {current.dim}"
                )
            stages.append(nxt)
            current = nxt
        if stages[-1].dim != 0:
            raise NotNilpotent("series did not reach zero within dim+1 steps")
        self._nilpotent = True
        self.nilpotency_bound = len(stages)
        return Filtration(algebra=self, stages=stages)

    def is_nilpotent(self) -> bool:
        if self._nilpotent is None:
            try:
                self.lower_central_series()
                self._nilpotent = True
            except NotNilpotent:
                self._nilpotent = False
        return self._nilpotent


def validate_dgla(g: FDGLA) -> ValidationReport:
    return g.validate()


def lower_central_series(g: FDGLA) -> "Filtration":
    return g.lower_central_series()


@dataclass
class Filtration:
    """Descending chain of subspaces; final stage is zero.

    Stages are stored as subspace bases because a lower central series
    need not be spanned by basis elements; index_stages() recovers index
    sets when every stage happens to be basis-aligned.
    """

    algebra: FDGLA
    stages: list[SubspaceBasis]

    @property
    def length(self) -> int:
        return len(self.stages)

    def index_stages(self) -> Optional[list[set[int]]]:
        out = []
        for st in self.stages:
            idx = set()
            for v in st.vectors:
                if len(v) != 1:
                    return None
                idx |= set(v)
            out.append(idx)
        return out

    def validate(self) -> ValidationReport:
        failures = []
        if self.stages and self.stages[0].dim != self.algebra.dim:
            failures.append("first stage is not the whole algebra")
        if not self.stages or self.stages[-1].dim != 0:
            failures.append("no stage is zero")
        for a, b in zip(self.stages, self.stages[1:]):
            for v in b.vectors:
                if not a.contains(v):
                    failures.append("stages are not descending")
                    break
        n = len(self.stages)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i + j > n:
                    continue
                target = self.stages[i + j - 1]
                for u in self.stages[i - 1].vectors:
                    for v in self.stages[j - 1].vectors:
                        w = self.algebra.bracket(u, v)
                        if w and not target.contains(w):
                            failures.append(f"[F^{i},F^{j}] escapes F^{i+j}")
        return ValidationReport(subject="filtration", failures=failures)


# -- central extensions ----------------------------------------------------


def quotient_by_center(total: FDGLA, z: int) -> tuple[FDGLA, SparseMatrix, SparseMatrix]:
    """Quotient of total by the span of central basis element z.

    Returns (quotient, projection, section); the section is the linear
    right-inverse sending the complement basis back into total.
    """
    keep = [i for i in range(total.dim) if i != z]
    pos = {old: new for new, old in enumerate(keep)}
    basis = [total.basis[i] for i in keep]

    def project(v: Vec) -> Vec:
        return {pos[i]: c for i, c in v.items() if i != z}

    brackets = {}
    for (i, j), v in total.brackets.items():
        if i == z or j == z:
            continue
        w = project(v)
        if w:
            brackets[(pos[i], pos[j])] = w
    differential = {}
    for j, v in total.differential.items():
        if j == z:
            continue
        w = project(v)
        if w:
            differential[pos[j]] = w
    quot = FDGLA(basis, brackets, differential, auxiliary=total.auxiliary)
    proj = SparseMatrix(
        len(keep), total.dim, {(pos[i], i): ONE for i in keep}
    )
    sect = SparseMatrix(
        total.dim, len(keep), {(i, pos[i]): ONE for i in keep}
    )
    return quot, proj, sect


@dataclass
class MCProductData:
    """Central extension Z -> total -> quotient with one-dimensional center.

    The center is spanned by basis element center_index of total, of
    degree q <= 0; section is a degree-zero right inverse of projection.
    """

    total: FDGLA
    center_index: int
    q: int
    quotient: FDGLA
    projection: SparseMatrix
    section: SparseMatrix

    @classmethod
    def from_center(cls, total: FDGLA, center: str | int) -> "MCProductData":
        z = total.index[center] if isinstance(center, str) else center
        quot, proj, sect = quotient_by_center(total, z)
        return cls(
            total=total,
            center_index=z,
            q=total.degrees[z],
            quotient=quot,
            projection=proj,
            section=sect,
        )

    def project_vec(self, v: Vec) -> Vec:
        return self.projection.apply(v)

    def lift_vec(self, v: Vec) -> Vec:
        return self.section.apply(v)

    def section_variant(self, tweak: dict[int, Fraction]) -> "MCProductData":
        """New data with section s'(e_j) = s(e_j) + tweak[j]*z.

        Only quotient basis elements of degree q may be tweaked, so the
        section stays degree preserving.
        """
        entries = dict(self.section.entries)
        for j, c in tweak.items():
            if self.quotient.degrees[j] != self.q:
                raise ValueError("section tweak must preserve degree")
            c = Fraction(c)
            if c:
                entries[(self.center_index, j)] = (
                    entries.get((self.center_index, j), ZERO) + c
                )
        sect = SparseMatrix(self.total.dim, self.quotient.dim, entries)
        return MCProductData(
            total=self.total,
            center_index=self.center_index,
            q=self.q,
            quotient=self.quotient,
            projection=self.projection,
            section=sect,
        )

    def validate(self) -> ValidationReport:
        failures = []
        t = self.total
        z = self.center_index
        if t.degrees[z] != self.q:
            failures.append("q does not match the degree of the center")
        if self.q > 0:
            failures.append(f"center degree {self.q} is positive")
        for i in range(t.dim):
            if t.bracket_basis(z, i) or t.bracket_basis(i, z):
                failures.append(f"center is not central: [z,{t.names[i]}] != 0")
        if t.d(t.basis_vec(z)):
            failures.append("center is not closed under the differential")
        # Im(d) must meet the center trivially
        images = [t.d(t.basis_vec(j)) for j in range(t.dim)]
        img_basis = linalg.span_basis(images, t.dim)
        ech = linalg.Echelon()
        for v in img_basis.vectors:
            ech.add(v)
        if ech.contains({z: ONE}):
            failures.append("image of the differential meets the center")
        for g, name in ((t, "total"), (self.quotient, "quotient")):
            rep = g.validate()
            if not rep.ok:
                failures.extend(f"{name}: {f}" for f in rep.failures)
            if g.auxiliary:
                failures.append(f"{name} algebra is flagged auxiliary")
            else:
                for i, d in enumerate(g.degrees):
                    if d > 0:
                        failures.append(f"{name} has positive degree element")
                        break
            try:
                g.lower_central_series()
            except NotNilpotent:
                failures.append(f"{name} algebra is not nilpotent")
        # projection/section wiring
        for j in range(self.quotient.dim):
            col = self.section.apply({j: ONE})
            if self.projection.apply(col) != {j: ONE}:
                failures.append("projection . section != identity")
                break
            lifted_deg = t.element_degree(col)
            if lifted_deg is not None and lifted_deg != self.quotient.degrees[j]:
                failures.append("section does not preserve degree")
                break
        for i in range(t.dim):
            pi = self.projection.apply({i: ONE})
            if i == z:
                if pi:
                    failures.append("projection does not kill the center")
            elif not pi:
                failures.append("projection kernel is larger than the center")
        # projection is a map of DGLAs
        for i in range(t.dim):
            for j in range(t.dim):
                lhs = self.projection.apply(t.bracket_basis(i, j))
                rhs = self.quotient.bracket(
                    self.projection.apply({i: ONE}), self.projection.apply({j: ONE})
                )
                if _clean(lhs) != _clean(rhs):
                    failures.append("projection is not a Lie morphism")
                    break
        for i in range(t.dim):
            lhs = self.projection.apply(t.d(t.basis_vec(i)))
            rhs = self.quotient.d(self.projection.apply({i: ONE}))
            if _clean(lhs) != _clean(rhs):
                failures.append("projection does not intertwine differentials")
                break
        return ValidationReport(subject="mc-product data", failures=failures)


def validate_mc_data(data: MCProductData) -> ValidationReport:
    return data.validate()


# -- Massey window model ----------------------------------------------------


def massey_data(n: int, degrees: Sequence[int]) -> MCProductData:
    """MC-product data whose defining systems encode <a_1, ..., a_n>.

    The total algebra is modelled on strictly upper triangular matrix
    units: basis b_(i,j) for windows 1 <= i <= j <= n with b_(i,i) the
    i-th generator of degree 1 - degrees[i-1], brackets given by the
    graded commutator, and the full window b_(1,n) as the center.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if len(degrees) != n:
        raise ValueError("need one degree per slot")
    if any(d < 1 for d in degrees):
        raise ValueError("class degrees must be positive")
    gen_deg = [1 - d for d in degrees]
    q = sum(gen_deg)
    if q > 0:
        raise ValueError(f"center degree q = {q} > 0 violates the data axioms")
    windows = [(i, i) for i in range(1, n + 1)]
    windows += [
        (i, j)
        for span in range(1, n)
        for i in range(1, n - span + 1)
        for j in (i + span,)
    ]

    def wname(i: int, j: int) -> str:
        if i == j:
            return f"e{i}"
        if (i, j) == (1, n):
            return "eta"
        return f"b{i}_{j}"

    def wdeg(i: int, j: int) -> int:
        return sum(gen_deg[k - 1] for k in range(i, j + 1))

    idx = {w: p for p, w in enumerate(windows)}
    basis = [(wname(i, j), wdeg(i, j)) for (i, j) in windows]
    brackets: dict[tuple[int, int], Vec] = {}
    for (i, j) in windows:
        for (k, l) in windows:
            v: Vec = {}
            if k == j + 1:
                v[idx[(i, l)]] = ONE
            if i == l + 1:
                sign = ONE if (wdeg(i, j) * wdeg(k, l)) % 2 == 0 else -ONE
                v[idx[(k, j)]] = v.get(idx[(k, j)], ZERO) - sign
            v = _clean(v)
            if v:
                brackets[(idx[(i, j)], idx[(k, l)])] = v
    total = FDGLA(basis, brackets)
    return MCProductData.from_center(total, "eta")


# -- Lie cochains and the Chevalley-Eilenberg differential -------------------


def decalage_exponent(l_degs: Sequence[int]) -> int:
    """Sign exponent of the wedge <-> shifted-symmetric identification."""
    k = len(l_degs)
    return (k * (k - 1) // 2 + sum((k - 1 - i) * d for i, d in enumerate(l_degs))) % 2


def evaluation_exponent(a_degs: Sequence[int], l_degs: Sequence[int]) -> int:
    """Exponent of the Koszul prefactor when a cochain eats a_i (x) l_i terms."""
    eta_deg = sum(d + 1 for d in l_degs)
    tot = eta_deg * sum(a_degs)
    for i in range(len(a_degs)):
        for j in range(i):
            tot += a_degs[i] * (l_degs[j] + 1)
    return tot % 2


class LieCochain:
    """Multilinear alternating forms on an FDGLA, mixed arities allowed.

    components[k] maps ascending basis tuples to coefficients; values on
    arbitrary argument orders follow from the alternating rule (adjacent
    swap costs -(-1)^{|x||y|}, repeats of even-degree arguments vanish).
    degree records k - sum |l_i| on the support, constant across arities
    for the cochains this library produces.
    """

    def __init__(self, algebra: FDGLA, degree: int, components: dict[int, dict[tuple, Fraction]]):
        self.algebra = algebra
        self.degree = degree
        comps: dict[int, dict[tuple, Fraction]] = {}
        for k, table in components.items():
            clean = {}
            for tup, c in table.items():
                c = Fraction(c)
                if not c:
                    continue
                if len(tup) != k:
                    raise ValueError("tuple arity mismatch")
                res = self._canonical(tup)
                if res is None:
                    continue
                sign, can = res
                clean[can] = clean.get(can, ZERO) + sign * c
            clean = {t: c for t, c in clean.items() if c}
            if clean:
                comps[k] = clean
        self.components = comps

    def _canonical(self, tup: tuple) -> Optional[tuple[int, tuple]]:
        degs = self.algebra.degrees
        lst = list(tup)
        sign = 1
        for i in range(1, len(lst)):
            j = i
            while j > 0 and lst[j] < lst[j - 1]:
                # adjacent swap: -(-1)^{|x||y|}
                if (degs[lst[j]] * degs[lst[j - 1]]) % 2 == 0:
                    sign = -sign
                lst[j], lst[j - 1] = lst[j - 1], lst[j]
                j -= 1
        for t in range(len(lst) - 1):
            if lst[t] == lst[t + 1] and degs[lst[t]] % 2 == 0:
                return None
        return sign, tuple(lst)

    def value(self, args: Sequence[int]) -> Fraction:
        comp = self.components.get(len(args))
        if not comp:
            return ZERO
        res = self._canonical(tuple(args))
        if res is None:
            return ZERO
        sign, can = res
        return sign * comp.get(can, ZERO)

    def arities(self) -> list[int]:
        return sorted(self.components)

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LieCochain)
            and self.algebra is other.algebra
            and self.components == other.components
        )

    def scale(self, c) -> "LieCochain":
        c = Fraction(c)
        return LieCochain(
            self.algebra,
            self.degree,
            {k: {t: c * x for t, x in tab.items()} for k, tab in self.components.items()},
        )

    def __add__(self, other: "LieCochain") -> "LieCochain":
        if self.algebra is not other.algebra:
            raise ValueError("cochains on different algebras")
        comps: dict[int, dict[tuple, Fraction]] = {}
        for src in (self.components, other.components):
            for k, tab in src.items():
                dst = comps.setdefault(k, {})
                for t, c in tab.items():
                    dst[t] = dst.get(t, ZERO) + c
        return LieCochain(self.algebra, self.degree, comps)

    def __sub__(self, other: "LieCochain") -> "LieCochain":
        return self + other.scale(-1)


def _x_degrees(g: FDGLA) -> list[int]:
    # coordinate generator for basis element l has degree 1 - |l|
    return [1 - d for d in g.degrees]


def _cochain_to_poly(eta: LieCochain) -> dict[tuple, Fraction]:
    """Dictionary from alternating tuples to coefficients on monomials x_T."""
    g = eta.algebra
    xdeg = _x_degrees(g)
    out: dict[tuple, Fraction] = {}
    for k, tab in eta.components.items():
        for tup, c in tab.items():
            l_degs = [g.degrees[i] for i in tup]
            a_degs = [xdeg[i] for i in tup]
            sgn = (-1) ** (
                (evaluation_exponent(a_degs, l_degs) + decalage_exponent(l_degs)) % 2
            )
            mult = ONE
            for _, group in itertools.groupby(tup):
                r = len(list(group))
                f = 1
                for t in range(2, r + 1):
                    f *= t
                mult /= f
            out[tup] = out.get(tup, ZERO) + sgn * mult * c
    return {t: c for t, c in out.items() if c}


def _poly_to_cochain(g: FDGLA, poly: dict[tuple, Fraction], degree: int) -> LieCochain:
    xdeg = _x_degrees(g)
    comps: dict[int, dict[tuple, Fraction]] = {}
    for tup, c in poly.items():
        l_degs = [g.degrees[i] for i in tup]
        a_degs = [xdeg[i] for i in tup]
        sgn = (-1) ** (
            (evaluation_exponent(a_degs, l_degs) + decalage_exponent(l_degs)) % 2
        )
        mult = ONE
        for _, group in itertools.groupby(tup):
            r = len(list(group))
            f = 1
            for t in range(2, r + 1):
                f *= t
            mult *= f
        comps.setdefault(len(tup), {})[tup] = sgn * mult * c
    return LieCochain(g, degree, comps)


def _poly_differential(g: FDGLA, poly: dict[tuple, Fraction]) -> dict[tuple, Fraction]:
    """Derivation differential on the coordinate algebra Sym(x_l).

    On generators: D x_a = -sum_b (-1)^{|x_b|} d_{ab} x_b
                   - 1/2 sum_{b,c} (-1)^{|l_b||x_c|} [l_b,l_c]^a x_b x_c,
    the unique choice making "evaluate at a Maurer-Cartan element" a map
    of differential algebras.
    """
    xdeg = _x_degrees(g)
    keys = list(range(g.dim))  # canonical tuple order = index order

    gen_image: list[dict[tuple, Fraction]] = []
    for a in range(g.dim):
        img: dict[tuple, Fraction] = {}
        for b, col in g.differential.items():
            c = col.get(a)
            if c:
                sgn = -ONE if xdeg[b] % 2 == 0 else ONE
                img[(b,)] = img.get((b,), ZERO) + sgn * c
        for (b, cc), v in g.brackets.items():
            coeff = v.get(a)
            if not coeff:
                continue
            sgn = ONE if (g.degrees[b] * xdeg[cc]) % 2 == 0 else -ONE
            res = sort_word((b, cc), xdeg, keys)
            if res is None:
                continue
            ssign, word = res
            img[word] = img.get(word, ZERO) - Fraction(1, 2) * sgn * ssign * coeff
        gen_image.append({t: c for t, c in img.items() if c})

    out: dict[tuple, Fraction] = {}
    for word, coeff in poly.items():
        prefix_exp = 0
        for i, a in enumerate(word):
            img = gen_image[a]
            if img:
                lead = ONE if prefix_exp % 2 == 0 else -ONE
                for iw, ic in img.items():
                    # ordered product x_{<i} * image-word * x_{>i}; sort_word
                    # applied to the concatenation carries all Koszul signs
                    concat = word[:i] + iw + word[i + 1 :]
                    res = sort_word(concat, xdeg, keys)
                    if res is None:
                        continue
                    ssign, nword = res
                    out[nword] = out.get(nword, ZERO) + lead * ic * coeff * ssign
            prefix_exp += xdeg[a]
    return {t: c for t, c in out.items() if c}


def ce_differential(eta: LieCochain, g: Optional[FDGLA] = None) -> LieCochain:
    """(delta_Lie + d_L) eta; squares to zero.

    Computed through the coordinate-algebra dictionary, so the Lie part
    and the d_L part come out with mutually consistent signs.
    """
    if g is None:
        g = eta.algebra
    if g is not eta.algebra:
        raise ValueError("cochain lives on a different algebra")
    poly = _cochain_to_poly(eta)
    dpoly = _poly_differential(g, poly)
    return _poly_to_cochain(g, dpoly, eta.degree + 1)


def extension_cocycle(data: MCProductData) -> LieCochain:
    """Cochain pair measuring the failure of the section to split the data.

    Arity 2: z-component of [s(l1), s(l2)] - s([l1, l2]); arity 1:
    z-component of d(s(l)) - s(d(l)).  Closed under ce_differential; its
    characteristic image is the MC higher product of the datum.
    """
    g = data.quotient
    t = data.total
    comps: dict[int, dict[tuple, Fraction]] = {1: {}, 2: {}}
    for i in range(g.dim):
        v = linalg.vec_sub(
            t.d(data.lift_vec({i: ONE})), data.lift_vec(g.d({i: ONE}))
        )
        c = v.get(data.center_index, ZERO)
        if c:
            comps[1][(i,)] = c
    for i in range(g.dim):
        for j in range(i, g.dim):
            v = linalg.vec_sub(
                t.bracket(data.lift_vec({i: ONE}), data.lift_vec({j: ONE})),
                data.lift_vec(g.bracket({i: ONE}, {j: ONE})),
            )
            c = v.get(data.center_index, ZERO)
            if c:
                comps[2][(i, j)] = c
    return LieCochain(g, 2 - data.q, comps)


# -- auxiliary algebras for the descend construction -------------------------


def _fresh_name(taken, stem: str) -> str:
    name = stem
    while name in taken:
        name += "_"
    return name


@dataclass
class NTilde:
    """Semidirect product Q.eta x (Ltilde[eps]) with its index layout.

    Basis order: the original Ltilde basis (indices 0..m-1), then the
    eps-suffixed copy (m..2m-1, degree shifted by n), then eta of degree
    -n at index 2m.
    """

    algebra: FDGLA
    base_dim: int
    n: int

    @property
    def eta_index(self) -> int:
        return 2 * self.base_dim

    def eps_index(self, i: int) -> int:
        return self.base_dim + i

    def embed_base(self, v: Vec) -> Vec:
        return dict(v)

    def embed_eps(self, v: Vec) -> Vec:
        return {self.base_dim + i: c for i, c in v.items()}


def build_N_tilde(data: MCProductData, n: int) -> NTilde:
    """The auxiliary algebra on Ltilde + Ltilde.eps + Q.eta for odd n.

    Relations: [s, t] as in Ltilde, [s, t.eps] = [s,t].eps,
    [s.eps, t.eps] = 0, [eta, s.eps] = (-1)^{|s|} s, [eta, t] = 0,
    [eta, eta] = 0; differential acts through d of Ltilde and kills eta.
    Flagged auxiliary: degrees |s| + n may be positive.
    """
    if n <= 0 or n % 2 == 0:
        raise ValueError("the adjoined variable degree must be odd and positive")
    rep = data.validate()
    if not rep.ok:
        raise ValueError(f"invalid MC-product data: {rep.failures}")
    lt = data.total
    m = lt.dim
    eta_name = _fresh_name(set(lt.names), "etaN")
    basis = list(lt.basis)
    basis += [(f"{name}_eps", deg + n) for name, deg in lt.basis]
    basis += [(eta_name, -n)]
    brackets: dict[tuple[int, int], Vec] = {}
    for (i, j), v in lt.brackets.items():
        brackets[(i, j)] = dict(v)
        brackets[(i, m + j)] = {m + k: c for k, c in v.items()}
    eta = 2 * m
    for i in range(m):
        sign = ONE if lt.degrees[i] % 2 == 0 else -ONE
        brackets[(eta, m + i)] = {i: sign}
    differential: dict[int, Vec] = {}
    for j, v in lt.differential.items():
        differential[j] = dict(v)
        differential[m + j] = {m + k: c for k, c in v.items()}
    alg = FDGLA(basis, brackets, differential, auxiliary=True)
    return NTilde(algebra=alg, base_dim=m, n=n)


def perturb_differential(nt: NTilde, ell0: Vec) -> NTilde:
    """New differential d + [ell0.eps, -] on the same graded Lie algebra.

    ell0 is given in Ltilde coordinates and must be closed of degree
    1 - n; squaring to zero uses [ell0.eps, ell0.eps] = 0.
    """
    alg = nt.algebra
    if ell0:
        deg = alg.element_degree(nt.embed_base(ell0))
        if deg != 1 - nt.n:
            raise ValueError(f"perturbation has degree {deg}, expected {1 - nt.n}")
    w = nt.embed_eps(ell0)
    if alg.d(nt.embed_base(ell0)):
        raise ValueError("perturbation vector is not closed")
    if alg.bracket(w, w):
        raise ValueError("[ell0.eps, ell0.eps] != 0")
    differential: dict[int, Vec] = {}
    for j in range(alg.dim):
        img = linalg.vec_add(alg.d(alg.basis_vec(j)), alg.bracket(w, alg.basis_vec(j)))
        if img:
            differential[j] = img
    new_alg = FDGLA(alg.basis, alg.brackets, differential, auxiliary=True)
    return NTilde(algebra=new_alg, base_dim=nt.base_dim, n=nt.n)


@dataclass
class SubDGLA:
    """A sub-DGLA presented on its own basis, with the embedding recorded."""

    algebra: FDGLA
    parent: FDGLA
    vectors: list[Vec]  # images of the sub basis in parent coordinates

    def to_parent(self, v: Vec) -> Vec:
        out: Vec = {}
        for i, c in v.items():
            out = linalg.vec_axpy(out, c, self.vectors[i])
        return out

    def from_parent(self, v: Vec) -> Optional[Vec]:
        mat = SparseMatrix.from_columns(self.vectors, self.parent.dim)
        return linalg.solve(mat, v)


def sub_dgla(parent: FDGLA, vectors: list[Vec], names: list[str], auxiliary: bool = False) -> SubDGLA:
    """Build the sub-DGLA spanned by independent vectors closed under [,] and d."""
    mat = SparseMatrix.from_columns(vectors, parent.dim)
    basis = []
    for name, v in zip(names, vectors):
        deg = parent.element_degree(v)
        if deg is None:
            raise ValueError("zero vector in sub basis")
        basis.append((name, deg))
    brackets: dict[tuple[int, int], Vec] = {}
    for i in range(len(vectors)):
        for j in range(len(vectors)):
            w = parent.bracket(vectors[i], vectors[j])
            if not w:
                continue
            coords = linalg.solve(mat, w)
            if coords is None:
                raise ValueError("sub basis is not closed under the bracket")
            brackets[(i, j)] = coords
    differential: dict[int, Vec] = {}
    for j in range(len(vectors)):
        w = parent.d(vectors[j])
        if not w:
            continue
        coords = linalg.solve(mat, w)
        if coords is None:
            raise ValueError("sub basis is not closed under the differential")
        differential[j] = coords
    alg = FDGLA(basis, brackets, differential, auxiliary=auxiliary)
    return SubDGLA(algebra=alg, parent=parent, vectors=[dict(v) for v in vectors])


def truncate_at_zero(nt: NTilde) -> SubDGLA:
    """Sub-DGLA: everything in negative degrees, ker(d) in degree zero.

    Degrees above zero are dropped; the result is nonpositively graded
    and inherits nilpotency from the base.
    """
    alg = nt.algebra
    vectors: list[Vec] = []
    names: list[str] = []
    for i in range(alg.dim):
        if alg.degrees[i] < 0:
            vectors.append({i: ONE})
            names.append(alg.names[i])
    zero_idx = [i for i in range(alg.dim) if alg.degrees[i] == 0]
    if zero_idx:
        cols = [alg.d(alg.basis_vec(i)) for i in zero_idx]
        mat = SparseMatrix.from_columns(cols, alg.dim)
        ker = linalg.kernel_basis(mat)
        taken = set(names) | set(alg.names)
        for t, kv in enumerate(ker.vectors):
            full = {}
            for p, c in kv.items():
                full[zero_idx[p]] = c
            if len(full) == 1 and next(iter(full.values())) == 1:
                names.append(alg.names[next(iter(full))])
            else:
                names.append(_fresh_name(taken, f"k0_{t}"))
            taken.add(names[-1])
            vectors.append(full)
    return sub_dgla(alg, vectors, names, auxiliary=False)
