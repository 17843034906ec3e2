"""Bundled example algebras used by the acceptance suite and the docs."""

from __future__ import annotations

from mcprod.cdga import FreeCDGA


def heisenberg(truncation: int = 9) -> FreeCDGA:
    """Lambda(a, b, c) with dc = ab; the standard triple-product example."""
    A = FreeCDGA([("a", 1), ("b", 1), ("c", 1)], truncation=truncation)
    a, b, _ = A.gens()
    return A.set_differential({"c": a * b})


def koszul_pair(truncation: int = 9) -> FreeCDGA:
    """Lambda(u, x) with dx = u; contractible in positive degrees."""
    A = FreeCDGA([("u", 2), ("x", 1)], truncation=truncation)
    return A.set_differential({"x": A.gen("u")})


def even_square(truncation: int = 9) -> FreeCDGA:
    """Lambda(u, y) with dy = u^2; one odd adjunction kills all evens."""
    A = FreeCDGA([("u", 2), ("y", 3)], truncation=truncation)
    u = A.gen("u")
    return A.set_differential({"y": u * u})


def triple_witness(truncation: int = 9) -> FreeCDGA:
    """Lambda(u, a, b, s, t) with ds = ua, dt = ab.

    Carries the nonzero odd triple product <[u], [a], [b]> in degree 3 and
    an exact even element ab = dt, which together drive the descend tests.
    """
    A = FreeCDGA(
        [("u", 2), ("a", 1), ("b", 1), ("s", 2), ("t", 1)], truncation=truncation
    )
    u, a, b, _, _ = A.gens()
    return A.set_differential({"s": u * a, "t": a * b})


def formal_surface(truncation: int = 8) -> FreeCDGA:
    """Zero differential on Lambda(a, b, w), |a| = |b| = 1, |w| = 2."""
    return FreeCDGA([("a", 1), ("b", 1), ("w", 2)], truncation=truncation)


def formal_even(truncation: int = 10) -> FreeCDGA:
    """Zero differential on Lambda(u, v, s), |u| = |v| = 2, |s| = 4."""
    return FreeCDGA([("u", 2), ("v", 2), ("s", 4)], truncation=truncation)


HEISENBERG_MODEL_TEXT = """\
# Heisenberg model: dc = ab
truncation: 9
generators:
  a 1
  b 1
  c 1
differential:
  c: a*b
"""
