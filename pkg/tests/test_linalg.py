import numpy as np
import pytest

from listdec.field import GF
from listdec import linalg


def test_rref_prime_vs_generic():
    rng = np.random.default_rng(11)
    ctx = GF(13)
    for _ in range(50):
        rows = [[int(v) for v in rng.integers(13, size=6)] for _ in range(4)]
        r1, p1 = linalg.rref(rows, ctx)
        r2, p2 = linalg._generic_rref(rows, ctx)
        assert p1 == p2
        assert [list(r) for r in r1] == [list(r) for r in r2]


def test_rank():
    ctx = GF(5)
    assert linalg.rank([[1, 2], [2, 4]], ctx) == 1
    assert linalg.rank([[1, 0], [0, 1]], ctx) == 2
    assert linalg.rank([[0, 0]], ctx) == 0


def test_nullspace_vector_is_in_kernel():
    rng = np.random.default_rng(23)
    for q in (5, 9, 13):
        ctx = GF(q)
        found = 0
        for _ in range(60):
            m = int(rng.integers(1, 5))
            n = int(rng.integers(m + 1, m + 4))  # wide, so a kernel vector exists
            rows = [[int(v) for v in rng.integers(q, size=n)] for _ in range(m)]
            vec = linalg.nullspace_vector(rows, n, ctx)
            assert vec is not None
            assert any(v != 0 for v in vec)
            for row in rows:
                acc = 0
                for a, b in zip(row, vec):
                    acc = ctx.add(acc, ctx.mul(a, b))
                assert acc == 0
            found += 1
        assert found == 60


def test_nullspace_vector_full_rank_returns_none():
    ctx = GF(7)
    assert linalg.nullspace_vector([[1, 0], [0, 1]], 2, ctx) is None


def test_nullspace_empty_system():
    ctx = GF(7)
    vec = linalg.nullspace_vector([], 3, ctx)
    assert vec == [1, 0, 0]


def test_solve_consistent_and_inconsistent():
    ctx = GF(11)
    sol, unique = linalg.solve([[1, 0], [0, 1]], [3, 4], ctx)
    assert sol == [3, 4] and unique
    sol, unique = linalg.solve([[1, 1]], [5], ctx)
    assert sol is not None and not unique
    assert ctx.add(sol[0], sol[1]) == 5
    sol, _ = linalg.solve([[1, 1], [2, 2]], [1, 3], ctx)
    assert sol is None


def test_solve_over_extension_field():
    ctx = GF(9)
    rng = np.random.default_rng(4)
    for _ in range(30):
        a = [[int(v) for v in rng.integers(9, size=3)] for _ in range(3)]
        x = [int(v) for v in rng.integers(9, size=3)]
        b = []
        for row in a:
            acc = 0
            for c, xi in zip(row, x):
                acc = ctx.add(acc, ctx.mul(c, xi))
            b.append(acc)
        sol, unique = linalg.solve(a, b, ctx)
        assert sol is not None
        for row, want in zip(a, b):
            acc = 0
            for c, xi in zip(row, sol):
                acc = ctx.add(acc, ctx.mul(c, xi))
            assert acc == want
