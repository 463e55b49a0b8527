import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ovalcode.errors import FieldDomainError, InconsistentSystemError, NoUniqueSolutionError
from ovalcode.gf2m import field_new
from ovalcode.linalg import FieldMatrix, kernel_basis, rank, solve_unique
from ovalcode.ovalpoly import make_family

M117 = [[0, 0, 0], [0, 1, 1], [1, 0, 1]]
M118 = [[1, 0, 1], [0, 1, 1], [1, 1, 0]]


def mat(ctx, rows):
    return FieldMatrix.from_rows(ctx, rows)


def brute_rank(A):
    """Oracle: dimension of the row space by enumerating all combinations."""
    q = A.ctx.q
    rows = A.to_rows()
    span = set()
    for coeffs in itertools.product(range(q), repeat=len(rows)):
        v = [0] * A.cols
        for c, r in zip(coeffs, rows):
            v = [x ^ A.ctx.mul(c, y) for x, y in zip(v, r)]
        span.add(tuple(v))
    return round(np.log(len(span)) / np.log(q))


def test_rank_examples(ctx3):
    assert rank(mat(ctx3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3
    assert rank(mat(ctx3, M117)) == 2
    assert rank(mat(ctx3, M118)) == 2
    assert rank(mat(ctx3, [[0] * 3] * 3)) == 0


def test_empty_matrix_rejected(ctx3):
    with pytest.raises(FieldDomainError):
        rank(FieldMatrix(0, 0, (), ctx3))


def test_entry_validation(ctx3):
    with pytest.raises(FieldDomainError):
        mat(ctx3, [[8]])
    with pytest.raises(FieldDomainError):
        FieldMatrix(2, 2, (1, 2, 3), ctx3)


def test_solve_identity(ctx3):
    I = mat(ctx3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert solve_unique(I, [3, 1, 4]) == [3, 1, 4]


def test_solve_rank_deficient(ctx3):
    A = mat(ctx3, [[1, 0, 2], [3, 0, 1], [5, 0, 7]])
    with pytest.raises(NoUniqueSolutionError):
        solve_unique(A, [0, 0, 0])


def test_solve_inconsistent(ctx3):
    A = mat(ctx3, [[1, 0], [0, 1], [1, 1]])
    with pytest.raises(InconsistentSystemError):
        solve_unique(A, [1, 1, 1])
    assert solve_unique(A, [1, 1, 0]) == [1, 1]


def test_solve_oval_vandermonde_homogeneous(ctx3):
    # three distinct points on an oval give a nonsingular system
    f = make_family("translation", ctx3, 2)
    for x, y, z in itertools.combinations(range(8), 3):
        A = mat(ctx3, [[1, x, f(x)], [1, y, f(y)], [1, z, f(z)]])
        assert solve_unique(A, [0, 0, 0]) == [0, 0, 0]


def test_kernel_examples(ctx3):
    assert kernel_basis(mat(ctx3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == []
    (v,) = kernel_basis(mat(ctx3, M117))
    assert all(v)
    assert mat(ctx3, M117).matvec(v) == [0, 0, 0]
    assert len(kernel_basis(mat(ctx3, [[0, 0]]))) == 2


def test_rank_matches_span_oracle(ctx3):
    rng = np.random.default_rng(0)
    for _ in range(20):
        rows = rng.integers(0, 8, size=(3, 4))
        rows[2] = rows[0] ^ rows[1] if rng.random() < 0.5 else rows[2]
        A = mat(ctx3, rows.tolist())
        assert rank(A) == brute_rank(A)


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 15), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


@given(matrices)
@settings(max_examples=150, deadline=None)
def test_rank_transpose_and_kernel(rows):
    ctx = field_new(4)
    A = mat(ctx, rows)
    assert rank(A) == rank(A.transpose())
    ker = kernel_basis(A)
    assert len(ker) == A.cols - rank(A)
    for v in ker:
        assert A.matvec(v) == [0] * A.rows


@given(matrices, st.data())
@settings(max_examples=150, deadline=None)
def test_solve_roundtrip(rows, data):
    ctx = field_new(4)
    A = mat(ctx, rows)
    x = data.draw(st.lists(st.integers(0, 15), min_size=A.cols, max_size=A.cols))
    b = A.matvec(x)
    if rank(A) == A.cols:
        assert solve_unique(A, b) == x
    else:
        with pytest.raises(NoUniqueSolutionError):
            solve_unique(A, b)
