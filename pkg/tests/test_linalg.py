"""Sparse exact linear algebra against a dense Fraction oracle."""

import random
from fractions import Fraction

from dxext.linalg import (
    IndexedBasis,
    SparseEchelon,
    SparseMatrix,
    quotient_dims,
    solve,
    span_dim,
)


def dense_rank(rows, ncols):
    """Plain Gaussian elimination over Fraction, written independently."""
    mat = [[Fraction(r.get(c, 0)) for c in range(ncols)] for r in rows]
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def random_rows(rng, nrows, ncols, density=0.4):
    rows = []
    for _ in range(nrows):
        row = {}
        for c in range(ncols):
            if rng.random() < density:
                row[c] = Fraction(rng.randrange(-4, 5), rng.randrange(1, 4))
        rows.append({c: v for c, v in row.items() if v})
    return rows


def test_span_dim_matches_dense_oracle():
    rng = random.Random(40501)
    for _ in range(60):
        ncols = rng.randrange(3, 9)
        rows = random_rows(rng, rng.randrange(1, 12), ncols)
        assert span_dim(rows, ncols) == dense_rank(rows, ncols)


def test_echelon_add_reports_rank_growth():
    ech = SparseEchelon()
    assert ech.add({0: Fraction(1)}) is True
    assert ech.add({0: Fraction(5)}) is False
    assert ech.add({0: Fraction(1), 1: Fraction(1)}) is True
    assert ech.add({1: Fraction(-2)}) is False
    assert ech.rank == 2


def test_contains_and_residual():
    rng = random.Random(40502)
    for _ in range(30):
        ncols = rng.randrange(3, 8)
        ech = SparseEchelon()
        rows = random_rows(rng, rng.randrange(1, 6), ncols)
        for row in rows:
            ech.add(dict(row))
        # Any combination of the inserted rows must be contained.
        combo = {}
        for row in rows:
            scale = rng.randrange(-3, 4)
            for c, v in row.items():
                combo[c] = combo.get(c, Fraction(0)) + scale * v
        combo = {c: v for c, v in combo.items() if v}
        assert ech.contains(combo)
        assert not ech.residual(combo)
        # Residuals are primitive, idempotent, and zero exactly on members.
        probe = random_rows(rng, 1, ncols)[0]
        res = ech.residual(probe)
        assert ech.contains(probe) == (not res)
        if res:
            assert ech.residual(res) == res
            g = 0
            for v in res.values():
                g = __import__("math").gcd(g, v)
            assert g == 1


def test_trailing_pivot_prefix_identity():
    # With trailing pivots, the number of pivots below k equals the
    # dimension of the span intersected with the span of the first k
    # coordinates.  The oracle computes that intersection dimension as
    # rank - rank(rows restricted to coordinates >= k).
    rng = random.Random(40503)
    for _ in range(40):
        ncols = rng.randrange(3, 9)
        rows = random_rows(rng, rng.randrange(1, 10), ncols)
        ech = SparseEchelon(trailing=True)
        for row in rows:
            ech.add(dict(row))
        total = dense_rank(rows, ncols)
        assert ech.rank == total
        for k in range(ncols + 1):
            tails = [
                {c - k: v for c, v in row.items() if c >= k}
                for row in rows
            ]
            want = total - dense_rank(tails, ncols - k)
            assert ech.pivots_below(k) == want


def test_reduce_fractions_properties():
    rng = random.Random(40504)
    ncols = 6
    ech = SparseEchelon()
    for row in random_rows(rng, 4, ncols):
        ech.add(row)
    for _ in range(20):
        vec = random_rows(rng, 1, ncols)[0]
        red = ech.reduce_fractions(vec)
        diff = dict(vec)
        for c, v in red.items():
            diff[c] = diff.get(c, Fraction(0)) - v
        assert ech.contains({c: v for c, v in diff.items() if v})
        assert ech.reduce_fractions(red) == red
        assert (red == {}) == ech.contains(vec)


def test_solve_consistent_system():
    rng = random.Random(40505)
    for _ in range(40):
        ncols = rng.randrange(2, 7)
        rows = random_rows(rng, rng.randrange(1, 8), ncols, density=0.5)
        x = {c: Fraction(rng.randrange(-3, 4)) for c in range(ncols) if rng.random() < 0.6}
        b = {}
        for i, row in enumerate(rows):
            val = sum((v * x.get(c, Fraction(0)) for c, v in row.items()), Fraction(0))
            if val:
                b[i] = val
        sol = solve(SparseMatrix(rows=rows, ncols=ncols), b)
        assert sol is not None
        for i, row in enumerate(rows):
            got = sum((v * sol.get(c, Fraction(0)) for c, v in row.items()), Fraction(0))
            assert got == b.get(i, Fraction(0))


def test_solve_inconsistent_system():
    rows = [{0: Fraction(1)}, {0: Fraction(2)}]
    assert solve(SparseMatrix(rows=rows, ncols=1), {0: Fraction(1), 1: Fraction(3)}) is None
    # Zero row with nonzero right-hand side.
    rows = [{0: Fraction(1)}, {}]
    assert solve(SparseMatrix(rows=rows, ncols=1), {1: Fraction(1)}) is None


def test_quotient_dims_and_indexed_basis():
    basis = IndexedBasis(["a", "b", "c"])
    assert len(basis) == 3
    assert basis.index("b") == 1
    assert "c" in basis and "z" not in basis
    assert list(basis) == ["a", "b", "c"]
    vectors = [{0: Fraction(1)}, {0: Fraction(2)}, {1: Fraction(1), 2: Fraction(1)}]
    assert quotient_dims(basis, vectors) == 1
    assert quotient_dims(3, []) == 3
