import itertools

import numpy as np
import pytest

from listdec.errors import BudgetExceeded, ParamOutOfRange
from listdec.field import GF, Poly
from listdec.frs import FrsParams, frs_encode
from listdec.frs_decode import (
    InterpolationPoly,
    agreement_threshold,
    degree_param,
    interpolate,
    list_decode,
    prune,
    solve_affine,
)
from listdec.oracle import oracle_list_decode
from listdec.results import AffineSolutionSet
from listdec.words import SymbolMatrix


P5 = FrsParams(GF(5), 2, 2, 2, 2)
P13 = FrsParams(GF(13), 4, 3, 2, 2)


def random_word(params, rng):
    return SymbolMatrix(
        [[int(v) for v in rng.integers(params.q, size=params.N)]
         for _ in range(params.m)]
    )


def test_degree_and_threshold_formulas():
    assert degree_param(P13, 2) == 2       # floor((3*3 - 2 + 1)/3)
    assert agreement_threshold(P13, 2, 2) == 2   # ceil((2+2)/3)
    assert degree_param(P5, 2) == 0
    assert agreement_threshold(P5, 2, 0) == 2
    with pytest.raises(ParamOutOfRange):
        degree_param(P13, 0)
    with pytest.raises(ParamOutOfRange):
        degree_param(P13, 5)


def test_interpolation_vanishes_on_constraints():
    rng = np.random.default_rng(17)
    for params, s in ((P13, 2), (P13, 3), (P5, 2)):
        for _ in range(10):
            y = random_word(params, rng)
            Q = interpolate(params, y, s)
            assert not Q.is_zero()
            assert Q.a_polys[0].degree <= Q.d + params.k - 1
            assert all(a.degree <= Q.d for a in Q.a_polys[1:])
            x = 1
            for i in range(params.N):
                col = y.column(i)
                xx = x
                for j in range(params.m - s + 1):
                    assert Q.eval(xx, col[j:j + s]) == 0
                    xx = params.ctx.mul(xx, params.gamma)
                x = params.ctx.mul(x, params.ctx.pow(params.gamma, params.m))


def test_interpolation_on_codeword_admits_message():
    # for a clean codeword the message is a Y-root of the interpolation poly
    rng = np.random.default_rng(29)
    for _ in range(20):
        f = Poly(GF(13), [int(v) for v in rng.integers(13, size=2)])
        w = frs_encode(P13, f)
        Q = interpolate(P13, w, 2)
        comp = Q.compose(f, P13.gamma)
        assert comp.is_zero()


def test_solve_affine_worked_example():
    # Q = Y1 - Y2 forces f(gamma X) = f(X): solutions are the constants
    ctx = GF(5)
    Q = InterpolationPoly((Poly.zero(ctx), Poly.one(ctx), Poly(ctx, (4,))), 0, 2)
    sol = solve_affine(Q, P5)
    assert not sol.empty
    assert sol.dim == 1
    got = sorted(tuple(f.coeffs) for f in sol.enumerate(100))
    assert got == [(), (1,), (2,), (3,), (4,)]


def test_solve_affine_inconsistent_constant():
    # Q = 1 + X*Y1 strips to B == 0 with a nonzero constant term: empty set
    ctx = GF(5)
    Q = InterpolationPoly((Poly.one(ctx), Poly(ctx, (0, 1)), Poly.zero(ctx)), 1, 2)
    sol = solve_affine(Q, P5)
    assert sol.empty
    assert sol.size() == 0
    assert list(sol.enumerate(10)) == []


def test_solve_affine_exhaustive_containment():
    # every message whose composition with Q vanishes lies in the affine set,
    # over every possible received word of the small code
    ctx = GF(5)
    t = agreement_threshold(P5, 2, 0)
    for flat in itertools.product(range(5), repeat=4):
        y = SymbolMatrix([[flat[0], flat[1]], [flat[2], flat[3]]])
        Q = interpolate(P5, y, 2)
        sol = solve_affine(Q, P5)
        members = set() if sol.empty else {f for f in sol.enumerate(10 ** 4)}
        for tup in itertools.product(range(5), repeat=2):
            f = Poly(ctx, tup)
            if Q.compose(f, P5.gamma).is_zero():
                assert f in members
            agree = frs_encode(P5, f).agreement(y)
            if agree >= t:
                assert f in members, (flat, tup)


def test_affine_set_identity_submatrix():
    rng = np.random.default_rng(31)
    seen_free = 0
    for _ in range(200):
        y = random_word(P13, rng)
        sol = solve_affine(interpolate(P13, y, 2), P13)
        if sol.empty or sol.dim == 0:
            continue
        seen_free += 1
        for j, r in enumerate(sol.free_indices):
            row = sol.M[r]
            assert row[j] == 1
            assert all(v == 0 for i, v in enumerate(row) if i != j)
            assert sol.z[r] == 0
    assert seen_free > 0


def test_affine_set_dimension_bound():
    rng = np.random.default_rng(37)
    for s in (2, 3):
        for _ in range(200):
            y = random_word(P13, rng)
            sol = solve_affine(interpolate(P13, y, s), P13)
            assert sol.empty or sol.dim <= s - 1


def test_affine_set_point_and_size():
    ctx = GF(13)
    sol = AffineSolutionSet(
        ctx=ctx, k=2, dim=1, M=[[1], [0]], z=[0, 7], free_indices=[0], empty=False
    )
    f = sol.point([3])
    assert f == Poly(ctx, (3, 7))
    assert sol.size() == 13
    with pytest.raises(BudgetExceeded):
        list(sol.enumerate(5))


def test_prune_filters_by_agreement():
    rng = np.random.default_rng(41)
    f = Poly(GF(13), (3, 5))
    w = frs_encode(P13, f)
    bad = w.replace_column(0, (0, 0, 0, 0))
    Q = interpolate(P13, bad, 2)
    sol = solve_affine(Q, P13)
    pairs = prune(P13, sol, bad, 2)
    assert (f, 2) in pairs
    assert all(a >= 2 for _, a in pairs)
    none = prune(P13, sol, bad, 4)
    assert all(a >= 4 for _, a in none)


def test_list_decode_clean_word():
    f = Poly(GF(13), (7, 11))
    w = frs_encode(P13, f)
    res = list_decode(P13, w, 2)
    assert f in res
    assert dict(res.candidates)[f] == 3
    assert res.diagnostics["decoder"] == "linear"


def test_list_decode_single_error_seeded():
    rng = np.random.default_rng(43)
    for trial in range(100):
        f = Poly(GF(13), [int(v) for v in rng.integers(13, size=2)])
        w = frs_encode(P13, f)
        col = int(rng.integers(3))
        orig = w.column(col)
        while True:
            cand = tuple(int(v) for v in rng.integers(13, size=4))
            if cand != orig:
                break
        res = list_decode(P13, w.replace_column(col, cand), 2)
        assert f in res, trial
        assert res.messages == [g for g, _ in res.candidates]


def test_list_decode_matches_oracle_on_random_words():
    # also on words that are far from every codeword
    rng = np.random.default_rng(47)
    t = agreement_threshold(P13, 2, degree_param(P13, 2))
    for _ in range(50):
        y = random_word(P13, rng)
        lin = set(list_decode(P13, y, 2).messages)
        orc = {g for g, _ in oracle_list_decode(P13, y, t)}
        assert lin == orc


def test_list_decode_budget():
    rng = np.random.default_rng(53)
    y = random_word(P13, rng)
    # dim >= 1 sets have 13 points; a budget of 2 cannot enumerate them
    for _ in range(20):
        sol = solve_affine(interpolate(P13, y, 2), P13)
        if not sol.empty and sol.dim >= 1:
            with pytest.raises(BudgetExceeded):
                list_decode(P13, y, 2, budget=2)
            break
        y = random_word(P13, rng)
