import random
from fractions import Fraction

from ncpoisson.linalg import (SparseRationalMatrix, kernel_dimension_of_columns,
                              rank_of_columns, solve_membership)


def dense_rank_fraction(rows, ncols):
    """Plain Gaussian elimination over Fraction, the independent oracle."""
    mat = [[Fraction(r.get(j, 0)) for j in range(ncols)] for r in rows]
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def test_rank_matches_dense_oracle():
    rng = random.Random(7)
    for _ in range(40):
        nr, nc = rng.randrange(1, 8), rng.randrange(1, 8)
        rows = []
        for _ in range(nr):
            row = {}
            for j in range(nc):
                if rng.random() < 0.5:
                    v = rng.randrange(-4, 5)
                    if v:
                        row[j] = v if rng.random() < 0.7 else Fraction(v, rng.randrange(1, 5))
            rows.append(row)
        m = SparseRationalMatrix(nr, nc, [dict(r) for r in rows])
        assert m.rank() == dense_rank_fraction(rows, nc)


def test_rank_plus_nullity():
    rng = random.Random(11)
    for _ in range(25):
        nr, nc = rng.randrange(1, 7), rng.randrange(1, 7)
        rows = [{j: rng.randrange(-3, 4) for j in range(nc) if rng.random() < 0.6}
                for _ in range(nr)]
        rows = [{j: v for j, v in r.items() if v} for r in rows]
        m = SparseRationalMatrix(nr, nc, rows)
        assert m.rank() + m.nullity() == nc


def test_kernel_vectors_annihilate():
    rng = random.Random(13)
    for _ in range(25):
        nr, nc = rng.randrange(1, 7), rng.randrange(2, 7)
        rows = [{j: rng.randrange(-3, 4) for j in range(nc) if rng.random() < 0.6}
                for _ in range(nr)]
        rows = [{j: v for j, v in r.items() if v} for r in rows]
        m = SparseRationalMatrix(nr, nc, [dict(r) for r in rows])
        basis = m.kernel_basis()
        assert len(basis) == m.nullity()
        for vec in basis:
            for row in rows:
                s = sum(c * vec.get(j, 0) for j, c in row.items())
                assert s == 0


def test_membership():
    cols = [{0: 1, 1: 2}, {1: 1}]
    assert solve_membership(cols, {0: 3, 1: 4})
    assert not solve_membership(cols, {2: 1})
    assert rank_of_columns(cols) == 2
    assert kernel_dimension_of_columns(cols + [{0: 2, 1: 4}]) == 1
