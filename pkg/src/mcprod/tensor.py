"""The tensor DGLA A (x) L for a truncated free CDGA A and an FDGLA L.

Elements are stored as maps from Lie basis indices to homogeneous algebra
elements.  Bracket and differential follow
    [b1 (x) w1, b2 (x) w2] = (-1)^{|w1| |b2|} (b1 b2) (x) [w1, w2]
    d(b (x) w) = (dA b) (x) w + (-1)^{|b|} b (x) (dL w),
curvature is F(t) = dt + (1/2)[t,t], and the gauge action of a degree-zero
X is t - sum_i (ad X)^i / (i+1)! (dX + [t, X]).  Identities (Bianchi,
gauge covariance) hold exactly as long as every intermediate degree stays
within the algebra truncation; the callers size truncations accordingly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from mcprod.cdga import Element, FreeCDGA
from mcprod.dgla import FDGLA
from mcprod.linalg import SparseMatrix

ZERO = Fraction(0)
ONE = Fraction(1)


class TensorElement:
    """Homogeneous element of A (x) L, sparse over the Lie basis."""

    __slots__ = ("cdga", "dgla", "degree", "terms")

    def __init__(self, cdga: FreeCDGA, dgla: FDGLA, degree: int, terms: dict[int, Element]):
        self.cdga = cdga
        self.dgla = dgla
        self.degree = degree
        clean: dict[int, Element] = {}
        for i, e in terms.items():
            if e.algebra is not cdga:
                raise ValueError("coefficient from a different algebra")
            if e.is_zero():
                continue
            d = e.degree()
            if d != degree - dgla.degrees[i]:
                raise ValueError(
                    f"coefficient of {dgla.names[i]} has degree {d}, "
                    f"expected {degree - dgla.degrees[i]}"
                )
            clean[i] = e
        self.terms = clean

    @classmethod
    def zero(cls, cdga: FreeCDGA, dgla: FDGLA, degree: int) -> "TensorElement":
        return cls(cdga, dgla, degree, {})

    def is_zero(self) -> bool:
        return not self.terms

    def in_positive_part(self) -> bool:
        """True when every algebra coefficient has positive degree."""
        return all(e.degree() >= 1 for e in self.terms.values())

    def coefficient(self, i: int) -> Element:
        return self.terms.get(i, self.cdga.zero())

    def _check(self, other: "TensorElement"):
        if self.cdga is not other.cdga or self.dgla is not other.dgla:
            raise ValueError("tensor elements live over different hosts")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("adding tensor elements of different degrees")
        terms = dict(self.terms)
        for i, e in other.terms.items():
            terms[i] = terms.get(i, self.cdga.zero()) + e
        return TensorElement(self.cdga, self.dgla, self.degree, terms)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + other.scale(-1)

    def __neg__(self) -> "TensorElement":
        return self.scale(-1)

    def scale(self, c) -> "TensorElement":
        c = Fraction(c)
        return TensorElement(
            self.cdga, self.dgla, self.degree, {i: e.scale(c) for i, e in self.terms.items()}
        )

    def scalar_mul(self, b: Element) -> "TensorElement":
        """Left multiplication by b on the algebra factor: b (a (x) w) = (b a) (x) w."""
        if b.algebra is not self.cdga:
            raise ValueError("scalar from a different algebra")
        if b.is_zero():
            return TensorElement.zero(self.cdga, self.dgla, self.degree)
        bd = b.degree()
        terms = {i: b * e for i, e in self.terms.items()}
        return TensorElement(self.cdga, self.dgla, self.degree + bd, terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TensorElement)
            and self.cdga is other.cdga
            and self.dgla is other.dgla
            and self.terms == other.terms
        )

    def __repr__(self):
        if self.is_zero():
            return "TensorElement(0)"
        bits = [
            f"({self.cdga.show(e)})(x){self.dgla.names[i]}"
            for i, e in sorted(self.terms.items())
        ]
        return "TensorElement(" + " + ".join(bits) + ")"


def t_bracket(t1: TensorElement, t2: TensorElement) -> TensorElement:
    t1._check(t2)
    cdga, dgla = t1.cdga, t1.dgla
    out: dict[int, Element] = {}
    for i, e1 in t1.terms.items():
        wdeg = dgla.degrees[i]
        for j, e2 in t2.terms.items():
            br = dgla.brackets.get((i, j))
            if not br:
                continue
            sign = ONE if (wdeg * e2.degree()) % 2 == 0 else -ONE
            prod = (e1 * e2).scale(sign)
            if prod.is_zero():
                continue
            for k, c in br.items():
                out[k] = out.get(k, cdga.zero()) + prod.scale(c)
    return TensorElement(cdga, dgla, t1.degree + t2.degree, out)


def t_differential(t: TensorElement) -> TensorElement:
    cdga, dgla = t.cdga, t.dgla
    out: dict[int, Element] = {}
    for i, e in t.terms.items():
        da = cdga.differential(e)
        if not da.is_zero():
            out[i] = out.get(i, cdga.zero()) + da
        dl = dgla.differential.get(i)
        if dl:
            sign = ONE if e.degree() % 2 == 0 else -ONE
            for k, c in dl.items():
                out[k] = out.get(k, cdga.zero()) + e.scale(sign * c)
    return TensorElement(cdga, dgla, t.degree + 1, out)


def curvature(t: TensorElement) -> TensorElement:
    """F(t) = dt + (1/2)[t, t]; only defined in total degree one."""
    if t.degree != 1:
        raise ValueError(f"curvature needs degree 1, got {t.degree}")
    return t_differential(t) + t_bracket(t, t).scale(Fraction(1, 2))

def is_mc(t: TensorElement) -> bool:
    """Maurer-Cartan check: curvature vanishes exactly."""
    return curvature(t).is_zero()


def ad_series_apply(X: TensorElement, t: TensorElement, factorials_offset: int = 0):
    """Yields (i, (ad X)^i t) until the iterate vanishes."""
    term = t
    i = 0
    # With X in A+ (x) L each ad X raises algebra degree, so the series
    # dies within the truncation; the dim-based cap is a safety net.
    cap = t.cdga.truncation + X.dgla.dim + 2
    while not term.is_zero():
        yield i, term
        term = t_bracket(X, term)
        i += 1
        if i > cap:
            raise RuntimeError("ad-series failed to terminate")


def exp_ad(X: TensorElement, t: TensorElement) -> TensorElement:
    """e^{ad X} t as a finite sum (nilpotency/truncation bound)."""
    out = TensorElement.zero(t.cdga, t.dgla, t.degree)
    fact = 1
    for i, term in ad_series_apply(X, t):
        if i > 0:
            fact *= i
        out = out + term.scale(Fraction(1, fact))
    return out


def gauge_action(X: TensorElement, t: TensorElement) -> TensorElement:
    """(exp X) . t = t - sum_i (ad X)^i/(i+1)! (dX + [t, X])."""
    X._check(t)
    if X.degree != 0:
        raise ValueError(f"gauge parameter must have degree 0, got {X.degree}")
    if not X.in_positive_part():
        raise ValueError("gauge parameter must lie in A+ (x) L")
    if t.degree != 1:
        raise ValueError("gauge action is defined on degree-1 elements")
    if not X.dgla.is_nilpotent():
        raise ValueError("gauge action needs a nilpotent Lie algebra")
    seed = t_differential(X) + t_bracket(t, X)
    out = t
    fact = 1  # (i+1)! running value
    for i, term in ad_series_apply(X, seed):
        fact = fact * (i + 1) if i > 0 else 1
        out = out - term.scale(Fraction(1, fact))
    return out


def map_dgla(
    t: TensorElement, matrix: SparseMatrix, target: FDGLA, degree: Optional[int] = None
) -> TensorElement:
    """Push the Lie leg through a linear map (column j = image of basis j)."""
    if degree is None:
        degree = t.degree
    out: dict[int, Element] = {}
    for i, e in t.terms.items():
        col = matrix.apply({i: ONE})
        for k, c in col.items():
            out[k] = out.get(k, t.cdga.zero()) + e.scale(c)
    return TensorElement(t.cdga, target, degree, out)


def transport_cdga(t: TensorElement, target_cdga: FreeCDGA) -> TensorElement:
    """Reinterpret algebra coefficients in an extension of the base algebra."""
    from mcprod.cdga import transport_element

    terms = {i: transport_element(e, target_cdga) for i, e in t.terms.items()}
    return TensorElement(target_cdga, t.dgla, t.degree, terms)
