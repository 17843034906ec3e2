import random
from fractions import Fraction as F

import pytest

from mcprod.linalg import (
    SparseMatrix,
    SubspaceBasis,
    kernel_basis,
    quotient_coordinates,
    rank,
    solve,
    span_basis,
)


def mat(rows):
    entries = {}
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if x:
                entries[(i, j)] = F(x)
    return SparseMatrix(len(rows), len(rows[0]) if rows else 0, entries)


def test_kernel_of_zero_map():
    assert kernel_basis(SparseMatrix(2, 2, {})).dim == 2


def test_kernel_of_identity():
    assert kernel_basis(mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])).dim == 0


def test_kernel_rank_one():
    kb = kernel_basis(mat([[1, 2], [2, 4]]))
    assert kb.dim == 1
    v = kb.vectors[0]
    # up to scale (-2, 1)
    assert v[0] / v[1] == F(-2)


def test_solve_identity():
    m = mat([[1, 0], [0, 1]])
    assert solve(m, {0: F(3), 1: F(7)}) == {0: F(3), 1: F(7)}


def test_solve_inconsistent():
    assert solve(SparseMatrix(2, 2, {}), {0: F(1)}) is None


def test_solve_back_substitution():
    m = mat([[1, 1], [0, 1]])
    assert solve(m, {0: F(3), 1: F(1)}) == {0: F(2), 1: F(1)}


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve(SparseMatrix(2, 2, {}), {5: F(1)})


def test_rank_nullity_random():
    rng = random.Random(7)
    for _ in range(25):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        m = SparseMatrix(
            r, c,
            {
                (i, j): F(rng.randint(-3, 3))
                for i in range(r)
                for j in range(c)
                if rng.random() < 0.5 and rng.randint(-3, 3)
            },
        )
        assert rank(m) + kernel_basis(m).dim == c


def test_solve_is_exact_random():
    rng = random.Random(11)
    for _ in range(25):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = SparseMatrix(
            r, c,
            {
                (i, j): F(rng.randint(-3, 3), rng.randint(1, 3))
                for i in range(r)
                for j in range(c)
                if rng.random() < 0.6
            },
        )
        x = {j: F(rng.randint(-2, 2)) for j in range(c)}
        b = m.apply(x)
        sol = solve(m, b)
        assert sol is not None
        assert m.apply(sol) == b


def test_quotient_zero_iff_membership():
    space = SubspaceBasis(3, [{0: F(1)}, {1: F(1)}, {2: F(1)}])
    sub = SubspaceBasis(3, [{0: F(1), 1: F(1)}])
    assert quotient_coordinates(space, sub, {0: F(2), 1: F(2)}) == {}
    qc = quotient_coordinates(space, sub, {0: F(1)})
    assert qc and len(qc) >= 1


def test_quotient_sub_zero():
    space = SubspaceBasis(2, [{0: F(1)}, {1: F(1)}])
    sub = SubspaceBasis(2, [])
    assert quotient_coordinates(space, sub, {0: F(5), 1: F(-1)}) == {0: F(5), 1: F(-1)}


def test_quotient_rejects_outside_vector():
    space = SubspaceBasis(2, [{0: F(1)}])
    sub = SubspaceBasis(2, [])
    with pytest.raises(ValueError):
        quotient_coordinates(space, sub, {1: F(1)})


def test_span_basis_deterministic():
    vs = [{0: F(1)}, {0: F(2)}, {1: F(1)}]
    sb = span_basis(vs, 2)
    assert sb.vectors == [{0: F(1)}, {1: F(1)}]


def test_independence_checked():
    with pytest.raises(ValueError):
        SubspaceBasis(2, [{0: F(1)}, {0: F(2)}])
