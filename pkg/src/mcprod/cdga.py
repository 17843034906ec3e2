"""Free graded-commutative differential algebras over Q, truncated by degree.

Monomials are tuples of generator indices in a fixed normal order (sorted
by (degree, name)); odd generators never repeat.  All products silently
drop monomials above the algebra's truncation degree, and cohomology is
trustworthy only for k <= truncation - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from mcprod import linalg
from mcprod.linalg import Vec, SparseMatrix, SubspaceBasis

Word = tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class NotACocycle(Exception):
    """Raised when a class is requested for an element with dz != 0."""


class DegreeRangeError(Exception):
    """Degree outside the range the truncated model can certify."""


def merge_words(w1: Word, w2: Word, degrees: Sequence[int], keys) -> Optional[tuple[int, Word]]:
    """Merge two normal-form words; returns (sign, word) or None when zero.

    The Koszul sign counts odd-past-odd transpositions performed while
    interleaving; an odd generator appearing twice kills the product.
    """
    sign = 1
    out = []
    i, j = 0, 0
    # number of odd factors remaining in w1 from position i onward
    odd_tail = [0] * (len(w1) + 1)
    for t in range(len(w1) - 1, -1, -1):
        odd_tail[t] = odd_tail[t + 1] + (degrees[w1[t]] & 1)
    while i < len(w1) and j < len(w2):
        g1, g2 = w1[i], w2[j]
        if keys[g2] < keys[g1]:
            # g2 jumps over the remaining tail of w1
            if degrees[g2] & 1 and odd_tail[i] & 1:
                sign = -sign
            out.append(g2)
            j += 1
        else:
            out.append(g1)
            i += 1
    out.extend(w1[i:])
    out.extend(w2[j:])
    word = tuple(out)
    for t in range(len(word) - 1):
        if word[t] == word[t + 1] and degrees[word[t]] & 1:
            return None
    return sign, word


def sort_word(word: Iterable[int], degrees: Sequence[int], keys) -> Optional[tuple[int, Word]]:
    """Normal form of an arbitrary word: (Koszul sign, sorted word) or None."""
    w = list(word)
    sign = 1
    # insertion sort, counting odd-odd transpositions
    for i in range(1, len(w)):
        j = i
        while j > 0 and keys[w[j]] < keys[w[j - 1]]:
            if degrees[w[j]] & 1 and degrees[w[j - 1]] & 1:
                sign = -sign
            w[j], w[j - 1] = w[j - 1], w[j]
            j -= 1
    for t in range(len(w) - 1):
        if w[t] == w[t + 1] and degrees[w[t]] & 1:
            return None
    return sign, tuple(w)


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int


def transport_element(x: "Element", target: "FreeCDGA") -> "Element":
    """Reinterpret x inside another algebra sharing its generator names."""
    if x.algebra is target:
        return x
    terms: dict[Word, Fraction] = {}
    for w, c in x.terms.items():
        try:
            word = tuple(target._index[x.algebra.generators[i].name] for i in w)
        except KeyError as exc:
            raise ValueError(f"target algebra lacks generator {exc}") from exc
        res = sort_word(word, target.degrees, target.keys)
        if res is None:
            continue
        sign, nw = res
        if target.word_degree(nw) > target.truncation:
            continue
        terms[nw] = terms.get(nw, ZERO) + sign * c
    return Element(target, terms)


class Element:
    """Sparse rational combination of normal-form monomials."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "FreeCDGA", terms: dict[Word, Fraction]):
        self.algebra = algebra
        self.terms = {w: c for w, c in terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> Optional[int]:
        """Common degree of all monomials; None for 0; raises when mixed."""
        degs = {self.algebra.word_degree(w) for w in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"element is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def homogeneous_component(self, k: int) -> "Element":
        return Element(
            self.algebra,
            {w: c for w, c in self.terms.items() if self.algebra.word_degree(w) == k},
        )

    def constant_coefficient(self) -> Fraction:
        return self.terms.get((), ZERO)

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, ZERO) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        return Element(self.algebra, terms)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element(self.algebra, {w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "Element":
        c = Fraction(c)
        if not c:
            return Element(self.algebra, {})
        return Element(self.algebra, {w: c * x for w, x in self.terms.items()})

    def __rmul__(self, c) -> "Element":
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other) -> "Element":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        return self.algebra.multiply(self, other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Element)
            and self.algebra is other.algebra
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((id(self.algebra), tuple(sorted(self.terms.items()))))

    def _check(self, other: "Element"):
        if self.algebra is not other.algebra:
            raise ValueError("elements live in different algebras")

    def __repr__(self):
        return f"Element({self.algebra.show(self)})"


@dataclass
class CohomologyClass:
    """A cohomology class with an explicit cocycle representative.

    coordinates are taken in the fixed complement basis used by
    FreeCDGA.cohomology for that degree, so classes compare by exact
    coordinate equality.
    """

    algebra: "FreeCDGA"
    degree: int
    representative: Element
    coordinates: Vec

    def is_zero(self) -> bool:
        return not self.coordinates

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CohomologyClass)
            and self.algebra is other.algebra
            and self.degree == other.degree
            and self.coordinates == other.coordinates
        )


@dataclass
class ValidationReport:
    subject: str
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok


class FreeCDGA:
    """Free graded-commutative DGA on named generators, truncated at N.

    Build in two phases: construct with the generator list, then install
    the differential once via set_differential; the algebra is treated as
    immutable afterwards.
    """

    def __init__(self, generators: Sequence[tuple[str, int]], truncation: int):
        if truncation < 1:
            raise ValueError("truncation must be >= 1")
        names = [n for n, _ in generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        for n, d in generators:
            if d < 1:
                raise ValueError(f"generator {n} has degree {d}; must be >= 1")
        self.generators = [Generator(n, d) for n, d in generators]
        self.truncation = truncation
        self.degrees = [g.degree for g in self.generators]
        # normal order: by (degree, name); keys[i] is generator i's sort key
        self.keys = [(g.degree, g.name) for g in self.generators]
        self._order = sorted(range(len(self.generators)), key=lambda i: self.keys[i])
        self._index = {g.name: i for i, g in enumerate(self.generators)}
        self.d_images: list[Element] = [self.zero() for _ in self.generators]
        self._basis_cache: dict[int, list[Word]] = {}
        self._basis_pos: dict[int, dict[Word, int]] = {}
        self._dmat_cache: dict[int, SparseMatrix] = {}
        self._coh_cache: dict[int, tuple] = {}

    # -- construction ------------------------------------------------

    def set_differential(self, images: dict[str, Element]) -> "FreeCDGA":
        for name, img in images.items():
            if name not in self._index:
                raise ValueError(f"unknown generator {name!r}")
            if img.algebra is not self:
                raise ValueError("differential image from a different algebra")
            self.d_images[self._index[name]] = img
        self._dmat_cache.clear()
        self._coh_cache.clear()
        return self

    def zero(self) -> Element:
        return Element(self, {})

    def one(self) -> Element:
        return Element(self, {(): ONE})

    def gen(self, name: str) -> Element:
        return Element(self, {(self._index[name],): ONE})

    def gens(self) -> list[Element]:
        return [self.gen(g.name) for g in self.generators]

    def monomial(self, names: Iterable[str], coeff=ONE) -> Element:
        word = [self._index[n] for n in names]
        res = sort_word(word, self.degrees, self.keys)
        if res is None:
            return self.zero()
        sign, w = res
        if self.word_degree(w) > self.truncation:
            return self.zero()
        return Element(self, {w: Fraction(coeff) * sign})

    # -- basics ------------------------------------------------------

    def word_degree(self, w: Word) -> int:
        return sum(self.degrees[i] for i in w)

    def word_name(self, w: Word) -> str:
        if not w:
            return "1"
        return "*".join(self.generators[i].name for i in w)

    def show(self, x: Element) -> str:
        if x.is_zero():
            return "0"
        bits = []
        for w in sorted(x.terms, key=lambda w: (self.word_degree(w), [self.keys[i] for i in w])):
            c = x.terms[w]
            name = self.word_name(w)
            if not w:
                bits.append(str(c))
            elif c == 1:
                bits.append(name)
            elif c == -1:
                bits.append(f"-{name}")
            else:
                bits.append(f"{c}*{name}")
        out = bits[0]
        for b in bits[1:]:
            out += f" - {b[1:]}" if b.startswith("-") else f" + {b}"
        return out

    def multiply(self, x: Element, y: Element) -> Element:
        if x.algebra is not self or y.algebra is not self:
            raise ValueError("mixed algebras in product")
        terms: dict[Word, Fraction] = {}
        N = self.truncation
        for w1, c1 in x.terms.items():
            d1 = self.word_degree(w1)
            for w2, c2 in y.terms.items():
                if d1 + self.word_degree(w2) > N:
                    continue
                res = merge_words(w1, w2, self.degrees, self.keys)
                if res is None:
                    continue
                sign, w = res
                s = terms.get(w, ZERO) + sign * c1 * c2
                if s:
                    terms[w] = s
                else:
                    terms.pop(w, None)
        return Element(self, terms)

    def differential(self, x: Element) -> Element:
        if x.algebra is not self:
            raise ValueError("element from a different algebra")
        out = self.zero()
        for w, c in x.terms.items():
            out = out + self._d_word(w).scale(c)
        return out

    def _d_word(self, w: Word) -> Element:
        out = self.zero()
        sign = 1
        for i, g in enumerate(w):
            img = self.d_images[g]
            if not img.is_zero():
                prefix = Element(self, {w[:i]: ONE})
                suffix = Element(self, {w[i + 1:]: ONE})
                out = out + (prefix * img * suffix).scale(sign)
            if self.degrees[g] & 1:
                sign = -sign
        return out

    # -- bases and matrices -------------------------------------------

    def monomial_basis(self, k: int) -> list[Word]:
        """All normal-form monomials of degree k, in a deterministic order."""
        if k > self.truncation:
            raise DegreeRangeError(f"degree {k} above truncation {self.truncation}")
        if k < 0:
            return []
        if k not in self._basis_cache:
            out: list[Word] = []

            def rec(remaining: int, pos: int, acc: list[int]):
                if remaining == 0:
                    out.append(tuple(acc))
                    return
                for p in range(pos, len(self._order)):
                    g = self._order[p]
                    d = self.degrees[g]
                    if d > remaining:
                        break  # order is sorted by degree
                    acc.append(g)
                    rec(remaining - d, p + 1 if d & 1 else p, acc)
                    acc.pop()

            rec(k, 0, [])
            self._basis_cache[k] = out
            self._basis_pos[k] = {w: i for i, w in enumerate(out)}
        return self._basis_cache[k]

    def to_vector(self, x: Element, k: int) -> Vec:
        pos = self._basis_pos_for(k)
        v: Vec = {}
        for w, c in x.terms.items():
            if self.word_degree(w) != k:
                raise ValueError("element has terms outside the requested degree")
            v[pos[w]] = c
        return v

    def from_vector(self, v: Vec, k: int) -> Element:
        basis = self.monomial_basis(k)
        return Element(self, {basis[i]: c for i, c in v.items()})

    def _basis_pos_for(self, k: int) -> dict[Word, int]:
        self.monomial_basis(k)
        return self._basis_pos[k]

    def d_matrix(self, k: int) -> SparseMatrix:
        """Matrix of d: degree k -> degree k+1 in the monomial bases."""
        if k not in self._dmat_cache:
            src = self.monomial_basis(k)
            tgt_pos = self._basis_pos_for(k + 1) if k + 1 <= self.truncation else {}
            entries = {}
            for j, w in enumerate(src):
                img = self._d_word(w)
                for ww, c in img.terms.items():
                    entries[(tgt_pos[ww], j)] = c
            self._dmat_cache[k] = SparseMatrix(len(tgt_pos), len(src), entries)
        return self._dmat_cache[k]

    # -- cohomology ----------------------------------------------------

    def _cohomology_data(self, k: int):
        """(cocycles, coboundaries, representative indices) at degree k."""
        if k >= self.truncation:
            raise DegreeRangeError(
                f"H^{k} is not trustworthy at truncation {self.truncation}"
            )
        if k not in self._coh_cache:
            n = len(self.monomial_basis(k))
            if k == 0:
                cocycles = SubspaceBasis(n, [{0: ONE}])
                boundaries = SubspaceBasis(n, [])
            else:
                cocycles = linalg.kernel_basis(self.d_matrix(k))
                prev = self.monomial_basis(k - 1)
                dmat = self.d_matrix(k - 1)
                images = [dmat.apply({j: ONE}) for j in range(len(prev))]
                boundaries = linalg.span_basis(images, n)
            comp = linalg.complement_pivots(boundaries.vectors, cocycles.vectors)
            self._coh_cache[k] = (cocycles, boundaries, comp)
        return self._coh_cache[k]

    def cohomology(self, k: int) -> list[CohomologyClass]:
        """Basis of H^k with explicit cocycle representatives."""
        if k < 0:
            return []
        cocycles, boundaries, comp = self._cohomology_data(k)
        classes = []
        for idx, i in enumerate(comp):
            rep = self.from_vector(cocycles.vectors[i], k)
            classes.append(CohomologyClass(self, k, rep, {idx: ONE}))
        return classes

    def betti(self, k: int) -> int:
        if k < 0:
            return 0
        cocycles, boundaries, comp = self._cohomology_data(k)
        return len(comp)

    def trustworthy_range(self) -> int:
        """Largest degree whose cohomology the truncation certifies."""
        return self.truncation - 1

    def reduce_to_class(self, z: Element) -> CohomologyClass:
        """Class of a cocycle; zero coordinates iff z is exact.

        Raises NotACocycle when dz != 0.
        """
        if z.algebra is not self:
            raise ValueError("element from a different algebra")
        if z.is_zero():
            return CohomologyClass(self, 0, z, {})
        k = z.degree()
        if not self.differential(z).is_zero():
            raise NotACocycle(f"d(z) != 0 for degree-{k} element")
        cocycles, boundaries, comp = self._cohomology_data(k)
        space = cocycles
        sub = boundaries
        coords = linalg.quotient_coordinates(space, sub, self.to_vector(z, k))
        return CohomologyClass(self, k, z, coords)

    def class_from_coordinates(self, k: int, coords: Vec) -> CohomologyClass:
        cocycles, _, comp = self._cohomology_data(k)
        rep = self.zero()
        for idx, c in coords.items():
            rep = rep + self.from_vector(cocycles.vectors[comp[idx]], k).scale(c)
        return CohomologyClass(self, k, rep, dict(coords))

    def is_decomposable(self, cls: CohomologyClass) -> bool:
        """True iff cls lies in the span of products of positive-degree classes."""
        if cls.algebra is not self:
            raise ValueError("class from a different algebra")
        if cls.is_zero():
            return True
        k = cls.degree
        products: list[Vec] = []
        for i in range(1, k):
            j = k - i
            if j < 1 or i >= self.truncation or j >= self.truncation:
                continue
            for ci in self.cohomology(i):
                for cj in self.cohomology(j):
                    z = ci.representative * cj.representative
                    if z.is_zero():
                        continue
                    products.append(self.reduce_to_class(z).coordinates)
        ech = linalg.Echelon()
        for v in products:
            ech.add(v)
        return ech.contains(cls.coordinates)

    # -- validation ----------------------------------------------------

    def validate(self) -> ValidationReport:
        """Degree homogeneity of d images and d(d(g)) = 0, per generator."""
        failures = []
        for g, img in zip(self.generators, self.d_images):
            if img.is_zero():
                continue
            try:
                d = img.degree()
            except ValueError:
                failures.append(f"d({g.name}) is not homogeneous")
                continue
            if d != g.degree + 1:
                failures.append(
                    f"d({g.name}) has degree {d}, expected {g.degree + 1}"
                )
        for g in self.generators:
            dd = self.differential(self.d_images[self._index[g.name]])
            if not dd.is_zero():
                failures.append(f"d(d({g.name})) != 0: {self.show(dd)}")
        return ValidationReport(subject="cdga", failures=failures)
