"""Exact matrices over a parameter ring, with fraction-free elimination.

rank_exact runs Bareiss elimination with full pivoting. Intermediate
entries stay polynomial (each is a minor of the input), every division is
exact, and the final pivot is, up to a tracked permutation sign, the
determinant of the selected rank x rank submatrix. That determinant is
returned as the certificate: a concrete minor, nonzero as a polynomial,
whose nonvanishing witnesses the rank over the fraction field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ConstraintViolated, RingMismatch
from .fields import Scalar
from .params import ParamRing, ParamScalar, require_constant


@dataclass(frozen=True)
class ExactMatrix:
    ring: ParamRing
    rows: int
    cols: int
    entries: tuple[ParamScalar, ...]  # row-major

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise ConstraintViolated(
                f"entry count {len(self.entries)} != {self.rows}x{self.cols}"
            )
        for e in self.entries:
            if e.ring != self.ring:
                raise RingMismatch("entry ring differs from matrix ring")

    @classmethod
    def from_rows(cls, ring: ParamRing, rows: Sequence[Sequence[ParamScalar]]) -> "ExactMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ConstraintViolated("ragged rows")
        return cls(ring, r, c, tuple(x for row in rows for x in row))

    @classmethod
    def identity(cls, ring: ParamRing, n: int) -> "ExactMatrix":
        one, zero = ring.one(), ring.zero()
        return cls(ring, n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    def entry(self, i: int, j: int) -> ParamScalar:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[ParamScalar, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_lists(self) -> list[list[ParamScalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "ExactMatrix":
        ents = tuple(self.entry(i, j) for i in row_idx for j in col_idx)
        return ExactMatrix(self.ring, len(row_idx), len(col_idx), ents)

    def transpose(self) -> "ExactMatrix":
        ents = tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows))
        return ExactMatrix(self.ring, self.cols, self.rows, ents)

    def stack(self, other: "ExactMatrix") -> "ExactMatrix":
        if other.cols != self.cols or other.ring != self.ring:
            raise RingMismatch("stack shape/ring mismatch")
        return ExactMatrix(self.ring, self.rows + other.rows, self.cols, self.entries + other.entries)

    def str_rows(self) -> list[list[str]]:
        return [[str(self.entry(i, j)) for j in range(self.cols)] for i in range(self.rows)]


@dataclass(frozen=True)
class RankResult:
    rank: int
    certificate: ParamScalar
    pivot_rows: tuple[int, ...]
    pivot_cols: tuple[int, ...]


def _perm_sign(seq: Sequence[int]) -> int:
    sign = 1
    items = list(seq)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign


def _bareiss(m: ExactMatrix) -> tuple[int, list[list[ParamScalar]], list[int], list[int]]:
    """Full-pivot Bareiss; returns (rank, worked grid, row ids, col ids)."""
    work = m.to_lists()
    row_ids = list(range(m.rows))
    col_ids = list(range(m.cols))
    prev = m.ring.one()
    k = 0
    limit = min(m.rows, m.cols)
    while k < limit:
        pivot = None
        for i in range(k, m.rows):
            for j in range(k, m.cols):
                if not work[i][j].is_zero:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        pi, pj = pivot
        if pi != k:
            work[k], work[pi] = work[pi], work[k]
            row_ids[k], row_ids[pi] = row_ids[pi], row_ids[k]
        if pj != k:
            for row in work:
                row[k], row[pj] = row[pj], row[k]
            col_ids[k], col_ids[pj] = col_ids[pj], col_ids[k]
        piv = work[k][k]
        for i in range(k + 1, m.rows):
            head = work[i][k]
            for j in range(k + 1, m.cols):
                work[i][j] = (piv * work[i][j] - head * work[k][j]).exact_div(prev)
            work[i][k] = m.ring.zero()
        prev = piv
        k += 1
    return k, work, row_ids, col_ids


def rank_exact(m: ExactMatrix) -> RankResult:
    """Rank over the fraction field of the parameter ring, with a witness.

    The certificate is the determinant of the rank x rank submatrix on the
    returned pivot rows and columns (taken in increasing order); for an
    empty matrix or rank 0 it is the constant 1.
    """
    if m.rows == 0 or m.cols == 0:
        return RankResult(0, m.ring.one(), (), ())
    rank, work, row_ids, col_ids = _bareiss(m)
    if rank == 0:
        return RankResult(0, m.ring.one(), (), ())
    sel_rows = row_ids[:rank]
    sel_cols = col_ids[:rank]
    sign = _perm_sign(sel_rows) * _perm_sign(sel_cols)
    cert = work[rank - 1][rank - 1]
    if sign < 0:
        cert = -cert
    return RankResult(rank, cert, tuple(sorted(sel_rows)), tuple(sorted(sel_cols)))


def det(m: ExactMatrix) -> ParamScalar:
    if m.rows != m.cols:
        raise ConstraintViolated("determinant of a non-square matrix")
    if m.rows == 0:
        return m.ring.one()
    rank, work, row_ids, col_ids = _bareiss(m)
    if rank < m.rows:
        return m.ring.zero()
    sign = _perm_sign(row_ids) * _perm_sign(col_ids)
    d = work[rank - 1][rank - 1]
    return -d if sign < 0 else d


def kernel_basis(m: ExactMatrix) -> list[tuple[Scalar, ...]]:
    """Basis of the right kernel of a parameter-free matrix.

    Gauss-Jordan over the base field; one basis vector per free column,
    emitted in increasing column order. Raises ParameterPresent when an
    entry carries a parameter.
    """
    field = m.ring.field
    grid = [require_constant(m.row(i)) for i in range(m.rows)]
    pivots: list[int] = []  # pivot column of each reduced row
    r = 0
    for c in range(m.cols):
        hit = None
        for i in range(r, m.rows):
            if not field.is_zero(grid[i][c]):
                hit = i
                break
        if hit is None:
            continue
        grid[r], grid[hit] = grid[hit], grid[r]
        inv = field.inv(grid[r][c])
        grid[r] = [field.mul(x, inv) for x in grid[r]]
        for i in range(m.rows):
            if i != r and not field.is_zero(grid[i][c]):
                f = grid[i][c]
                grid[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(grid[i], grid[r])]
        pivots.append(c)
        r += 1
    pivot_set = set(pivots)
    basis = []
    for c in range(m.cols):
        if c in pivot_set:
            continue
        vec = [field.zero] * m.cols
        vec[c] = field.one
        for i, pc in enumerate(pivots):
            vec[pc] = field.neg(grid[i][c])
        basis.append(tuple(vec))
    return basis


def rank_constant(m: ExactMatrix) -> int:
    """Rank of a parameter-free matrix (independent elimination path)."""
    return m.cols - len(kernel_basis(m))
