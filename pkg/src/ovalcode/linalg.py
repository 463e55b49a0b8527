"""Dense linear algebra over GF(2^m): row reduction, rank, solve, kernel.

Pivots are the first nonzero entry in column order, so the reduced row
echelon form, and therefore every kernel basis, is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import FieldDomainError, InconsistentSystemError, NoUniqueSolutionError
from .gf2m import FieldContext


@dataclass(frozen=True)
class FieldMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]
    ctx: FieldContext

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise FieldDomainError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        for v in self.entries:
            self.ctx.check(v)

    @classmethod
    def from_rows(cls, ctx: FieldContext, rows: Sequence[Sequence[int]]) -> "FieldMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise FieldDomainError("ragged rows")
        return cls(len(rows), ncols, tuple(int(v) for r in rows for v in r), ctx)

    @classmethod
    def from_columns(cls, ctx: FieldContext, cols: Sequence[Sequence[int]]) -> "FieldMatrix":
        return cls.from_rows(ctx, list(zip(*cols))) if cols else cls(0, 0, (), ctx)

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        return self.entries[r * self.cols + c]

    def to_rows(self) -> list[list[int]]:
        return [list(self.entries[r * self.cols:(r + 1) * self.cols]) for r in range(self.rows)]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[r * self.cols + j] for r in range(self.rows))

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def submatrix(self, cols: Sequence[int]) -> "FieldMatrix":
        return FieldMatrix.from_columns(self.ctx, [self.column(j) for j in cols])

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix.from_rows(self.ctx, self.columns())

    def matvec(self, x: Sequence[int]) -> list[int]:
        """A @ x for a column vector x."""
        if len(x) != self.cols:
            raise FieldDomainError(f"vector of length {len(x)} for {self.cols} columns")
        mul = self.ctx.mul
        out = []
        for row in self.to_rows():
            acc = 0
            for a, b in zip(row, x):
                acc ^= mul(a, b)
            out.append(acc)
        return out

    def vecmat(self, x: Sequence[int]) -> list[int]:
        """x @ A for a row vector x."""
        return self.transpose().matvec(x)


def _nonempty(A: FieldMatrix):
    if A.rows == 0 or A.cols == 0:
        raise FieldDomainError("empty matrix")


def rref(A: FieldMatrix) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    ctx = A.ctx
    M = A.to_rows()
    pivots = []
    r = 0
    for c in range(A.cols):
        if r == A.rows:
            break
        p = next((i for i in range(r, A.rows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        s = ctx.inv(M[r][c])
        M[r] = [ctx.mul(s, v) for v in M[r]]
        for i in range(A.rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a ^ ctx.mul(f, b) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A: FieldMatrix) -> int:
    _nonempty(A)
    return len(rref(A)[1])


def kernel_basis(A: FieldMatrix) -> list[list[int]]:
    """Basis of {x : A x = 0}, one vector per free column, free entry set to 1."""
    _nonempty(A)
    M, pivots = rref(A)
    free = [c for c in range(A.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * A.cols
        v[f] = 1
        # characteristic 2: -M[i][f] == M[i][f]
        for i, p in enumerate(pivots):
            v[p] = M[i][f]
        basis.append(v)
    return basis


def solve_unique(A: FieldMatrix, b: Sequence[int]) -> list[int]:
    """The unique x with A x = b.

    Raises NoUniqueSolutionError when A lacks full column rank and
    InconsistentSystemError when b is outside the column space.
    """
    _nonempty(A)
    if len(b) != A.rows:
        raise FieldDomainError(f"right-hand side of length {len(b)} for {A.rows} rows")
    aug = FieldMatrix(A.rows, A.cols + 1,
                      tuple(v for row, bi in zip(A.to_rows(), b) for v in (*row, bi)), A.ctx)
    M, pivots = rref(aug)
    if A.cols in pivots:
        raise InconsistentSystemError("system has no solution")
    if len(pivots) < A.cols:
        raise NoUniqueSolutionError(f"rank {len(pivots)} < {A.cols} unknowns")
    return [M[i][A.cols] for i in range(A.cols)]
