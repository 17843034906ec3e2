"""Exact sparse linear algebra over the rationals.

Vectors are dicts mapping index -> Fraction (zero entries never stored).
Row reduction uses deterministic pivoting: leftmost nonzero column first,
then smallest row index, so kernels, solutions and complement bases are
reproducible across runs.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

Vec = dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec_add(u: Vec, v: Vec) -> Vec:
    out = dict(u)
    for i, c in v.items():
        s = out.get(i, ZERO) + c
        if s:
            out[i] = s
        else:
            out.pop(i, None)
    return out


def vec_sub(u: Vec, v: Vec) -> Vec:
    return vec_axpy(u, Fraction(-1), v)


def vec_scale(v: Vec, c: Fraction) -> Vec:
    if not c:
        return {}
    return {i: c * x for i, x in v.items()}


def vec_axpy(u: Vec, c: Fraction, v: Vec) -> Vec:
    """u + c*v on a copy of u."""
    if not c:
        return dict(u)
    out = dict(u)
    for i, x in v.items():
        s = out.get(i, ZERO) + c * x
        if s:
            out[i] = s
        else:
            out.pop(i, None)
    return out


def vec_is_zero(v: Vec) -> bool:
    return not v


def vec_from_list(entries: Iterable) -> Vec:
    return {i: Fraction(x) for i, x in enumerate(entries) if Fraction(x)}


def vec_to_list(v: Vec, n: int) -> list[Fraction]:
    return [v.get(i, ZERO) for i in range(n)]


@dataclass
class SparseMatrix:
    """rows x cols matrix; entries maps (row, col) -> nonzero Fraction."""

    rows: int
    cols: int
    entries: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), x in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r},{c}) out of range")
            x = Fraction(x)
            if x:
                clean[(r, c)] = x
        self.entries = clean

    @classmethod
    def from_columns(cls, columns: list[Vec], rows: int) -> "SparseMatrix":
        entries = {}
        for j, col in enumerate(columns):
            for i, x in col.items():
                entries[(i, j)] = x
        return cls(rows, len(columns), entries)

    @classmethod
    def from_rows(cls, rowvecs: list[Vec], cols: int) -> "SparseMatrix":
        entries = {}
        for i, row in enumerate(rowvecs):
            for j, x in row.items():
                entries[(i, j)] = x
        return cls(len(rowvecs), cols, entries)

    def row_list(self) -> list[Vec]:
        rows: list[Vec] = [dict() for _ in range(self.rows)]
        for (r, c), x in self.entries.items():
            rows[r][c] = x
        return rows

    def column(self, j: int) -> Vec:
        return {r: x for (r, c), x in self.entries.items() if c == j}

    def apply(self, v: Vec) -> Vec:
        """Matrix-vector product, v indexed by columns."""
        out: Vec = {}
        for (r, c), x in self.entries.items():
            coeff = v.get(c)
            if coeff is None:
                continue
            s = out.get(r, ZERO) + x * coeff
            if s:
                out[r] = s
            else:
                out.pop(r, None)
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.cols, self.rows, {(c, r): x for (r, c), x in self.entries.items()}
        )


def _rref(rowvecs: list[Vec]) -> tuple[list[Vec], list[int], list[int]]:
    """Reduced row echelon form.

    Returns (rref rows, pivot columns in order, original index of each pivot
    row).  Rows are bucketed by their leftmost column, so elimination only
    ever touches rows that actually contain the pivot column.
    """
    buckets: dict[int, list[tuple[int, Vec]]] = {}
    for i, r in enumerate(rowvecs):
        if r:
            buckets.setdefault(min(r), []).append((i, dict(r)))
    out: list[Vec] = []
    pivots: list[int] = []
    origins: list[int] = []
    while buckets:
        col = min(buckets)
        group = buckets.pop(col)
        k = min(range(len(group)), key=lambda t: group[t][0])
        origin, pivot_row = group.pop(k)
        pivot_row = vec_scale(pivot_row, ONE / pivot_row[col])
        for i, r in group:
            r = vec_axpy(r, -r[col], pivot_row)
            if r:
                buckets.setdefault(min(r), []).append((i, r))
        out.append(pivot_row)
        pivots.append(col)
        origins.append(origin)
    for idx in range(len(out) - 1, 0, -1):
        prow = out[idx]
        pcol = pivots[idx]
        for j in range(idx):
            c = out[j].get(pcol)
            if c:
                out[j] = vec_axpy(out[j], -c, prow)
    return out, pivots, origins


class Echelon:
    """Incremental forward-echelon accumulator for independence tests."""

    def __init__(self):
        self.rows: dict[int, Vec] = {}

    def residue(self, v: Vec) -> Vec:
        v = dict(v)
        while v:
            c = min(v)
            row = self.rows.get(c)
            if row is None:
                return v
            v = vec_axpy(v, -v[c], row)
        return v

    def contains(self, v: Vec) -> bool:
        return not self.residue(v)

    def add(self, v: Vec) -> bool:
        """Insert v if it enlarges the span; True when it did."""
        red = self.residue(v)
        if not red:
            return False
        c = min(red)
        self.rows[c] = vec_scale(red, ONE / red[c])
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)


def rank(m: SparseMatrix) -> int:
    ech = Echelon()
    for row in m.row_list():
        ech.add(row)
    return ech.dim


@dataclass
class SubspaceBasis:
    """A list of independent sparse vectors inside Q^ambient_dim."""

    ambient_dim: int
    vectors: list[Vec]

    def __post_init__(self):
        ech = Echelon()
        for v in self.vectors:
            for i in v:
                if not 0 <= i < self.ambient_dim:
                    raise ValueError("vector coordinate out of range")
            if not ech.add(v):
                raise ValueError("vectors are not linearly independent")

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def contains(self, v: Vec) -> bool:
        ech = Echelon()
        for w in self.vectors:
            ech.add(w)
        return ech.contains(v)

    def coordinates(self, v: Vec) -> Optional[Vec]:
        mat = SparseMatrix.from_columns(self.vectors, self.ambient_dim)
        return solve(mat, v)

    def same_subspace(self, other: "SubspaceBasis") -> bool:
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        return all(self.contains(v) for v in other.vectors)


def span_basis(vectors: list[Vec], ambient_dim: int) -> SubspaceBasis:
    """Deterministic basis of the span: earliest enlarging vectors win."""
    kept: list[Vec] = []
    ech = Echelon()
    for v in vectors:
        if ech.add(v):
            kept.append(dict(v))
    return SubspaceBasis(ambient_dim, kept)


def kernel_basis(m: SparseMatrix) -> SubspaceBasis:
    """Basis of {v : m v = 0}; dimension = cols - rank."""
    rref_rows, pivots, _ = _rref(m.row_list())
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis: list[Vec] = []
    for f in free_cols:
        v: Vec = {f: ONE}
        for row, p in zip(rref_rows, pivots):
            c = row.get(f)
            if c:
                v[p] = -c
        basis.append(v)
    return SubspaceBasis(m.cols, basis)


def solve(m: SparseMatrix, b: Vec) -> Optional[Vec]:
    """One solution of m x = b, or None if inconsistent.

    Free variables are set to zero under the fixed pivot order, so the
    returned representative is deterministic.
    """
    for i in b:
        if not 0 <= i < m.rows:
            raise ValueError("right-hand side dimension mismatch")
    aug_col = m.cols
    rows = m.row_list()
    for i, x in b.items():
        if x:
            rows[i] = dict(rows[i])
            rows[i][aug_col] = x
    rref_rows, pivots, _ = _rref(rows)
    if aug_col in pivots:
        return None
    x: Vec = {}
    for row, p in zip(rref_rows, pivots):
        c = row.get(aug_col)
        if c:
            # augmented RREF: x_pivot = rhs entry (free vars at zero)
            x[p] = c
    return x


def complement_pivots(sub_vectors: list[Vec], space_vectors: list[Vec]) -> list[int]:
    """Indices i such that space_vectors[i] extends sub to a basis of sub+space.

    Deterministic: earliest space vectors that enlarge the span win.
    """
    ech = Echelon()
    for v in sub_vectors:
        ech.add(v)
    return [i for i, v in enumerate(space_vectors) if ech.add(v)]


def quotient_coordinates(space: SubspaceBasis, sub: SubspaceBasis, v: Vec) -> Vec:
    """Coordinates of v in a fixed complement of sub inside space.

    Zero iff v lies in sub.  Raises ValueError when v (or sub) is not
    contained in space.
    """
    if space.ambient_dim != sub.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    for w in sub.vectors:
        if not space.contains(w):
            raise ValueError("sub is not contained in space")
    comp = complement_pivots(sub.vectors, space.vectors)
    columns = list(sub.vectors) + [space.vectors[i] for i in comp]
    mat = SparseMatrix.from_columns(columns, space.ambient_dim)
    x = solve(mat, v)
    if x is None:
        raise ValueError("vector is not contained in space")
    k = len(sub.vectors)
    out: Vec = {}
    for j, c in x.items():
        if j >= k:
            out[j - k] = c
    return out
