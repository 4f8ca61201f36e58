import itertools

import numpy as np
import pytest

from listdec.errors import BudgetExceeded, ParamOutOfRange
from listdec.field import GF, MultiPoly, Poly
from listdec.frs import FrsParams, frs_encode
from listdec.frs_decode import list_decode
from listdec.hensel import (
    base_roots,
    enumerate_lambda,
    hensel_list_decode,
    shift_transform,
    strip_x_power,
)
from listdec.words import SymbolMatrix


CTX = GF(13)
P13 = FrsParams(CTX, 4, 3, 2, 2)


def poly_as_y_terms(f, arity, var):
    # embed univariate f(X) as a multivariate polynomial in variable 0
    return MultiPoly(CTX, arity, {tuple(j if t == 0 else 0 for t in range(arity)): c
                                  for j, c in enumerate(f.coeffs)})


def test_shift_transform_is_substitution():
    rng = np.random.default_rng(61)
    gamma = 2
    for _ in range(25):
        terms = {}
        for _ in range(5):
            e = tuple(int(v) for v in rng.integers(0, 3, size=3))
            terms[e] = int(rng.integers(13))
        Q = MultiPoly(CTX, 3, terms)
        if Q.is_zero():
            continue
        b = int(rng.integers(13))
        T = shift_transform(Q, b, gamma)
        assert not T.is_zero()
        for _ in range(10):
            x, y1, y2 = (int(v) for v in rng.integers(13, size=3))
            subst = Q.eval((
                x,
                CTX.add(b, CTX.mul(CTX.mul(1, x), y1)),
                CTX.add(b, CTX.mul(CTX.mul(gamma, x), y2)),
            ))
            assert T.eval((x, y1, y2)) == subst


def test_strip_x_power():
    X = MultiPoly.variable(CTX, 2, 0)
    Y = MultiPoly.variable(CTX, 2, 1)
    Q = X * X * (MultiPoly.constant(CTX, 2, 1) + X * Y)
    stripped, r = strip_x_power(Q)
    assert r == 2
    assert stripped.terms == {(0, 0): 1, (1, 1): 1}
    same, r0 = strip_x_power(stripped)
    assert r0 == 0 and same == stripped


def test_base_roots():
    # Q(0, Y, Y) after collapsing: roots of the univariate part
    X = MultiPoly.variable(CTX, 3, 0)
    Y1 = MultiPoly.variable(CTX, 3, 1)
    Y2 = MultiPoly.variable(CTX, 3, 2)
    Q = (Y1 - MultiPoly.constant(CTX, 3, 4)) * (Y2 - MultiPoly.constant(CTX, 3, 4)) + X
    assert base_roots(Q) == [4]
    # constraint using only X vanishes at X=0: every element is a base root
    Q2 = Y1 - Y2 + X
    assert base_roots(Q2) == list(range(13))
    with pytest.raises(ParamOutOfRange):
        base_roots(MultiPoly.zero(CTX, 2))
    with pytest.raises(ParamOutOfRange):
        base_roots(X * Y1)  # content X not stripped


def test_enumerate_lambda_linear_factor():
    f = Poly(CTX, (1, 2, 3))
    Y = MultiPoly.variable(CTX, 2, 1)
    Q = Y - poly_as_y_terms(f, 2, 0)
    roots = enumerate_lambda(Q, 3, 2)
    assert roots == [f]


def test_enumerate_lambda_planted_products():
    rng = np.random.default_rng(67)
    for trial in range(60):
        k = 3
        f = Poly(CTX, [int(v) for v in rng.integers(13, size=k)])
        Y = MultiPoly.variable(CTX, 2, 1)
        factor = Y - poly_as_y_terms(f, 2, 0)
        terms = {}
        for _ in range(4):
            e = (int(rng.integers(0, 3)), int(rng.integers(0, 3)))
            if sum(e) <= 2:
                terms[e] = int(rng.integers(13))
        G = MultiPoly(CTX, 2, terms)
        if G.is_zero():
            G = MultiPoly.constant(CTX, 2, 1)
        roots = enumerate_lambda(factor * G, k, 2)
        assert f in roots, trial


def test_enumerate_lambda_two_planted_roots():
    f = Poly(CTX, (5, 1))
    g = Poly(CTX, (2, 7))
    Y = MultiPoly.variable(CTX, 2, 1)
    Q = (Y - poly_as_y_terms(f, 2, 0)) * (Y - poly_as_y_terms(g, 2, 0))
    roots = enumerate_lambda(Q, 2, 2)
    assert f in roots and g in roots


def test_enumerate_lambda_budget():
    # Q == Y1 - Y2 keeps every branch alive for k levels
    Y1 = MultiPoly.variable(CTX, 3, 1)
    Y2 = MultiPoly.variable(CTX, 3, 2)
    with pytest.raises(BudgetExceeded):
        enumerate_lambda(Y1 - Y2, 4, 2, budget=20)


def test_enumerate_lambda_node_stats():
    f = Poly(CTX, (1, 2, 3))
    Y = MultiPoly.variable(CTX, 2, 1)
    stats = {}
    enumerate_lambda(Y - poly_as_y_terms(f, 2, 0), 3, 2, stats=stats)
    assert stats["nodes"] >= 3


def test_hensel_decode_matches_linear_on_random_words():
    rng = np.random.default_rng(71)
    for _ in range(40):
        y = SymbolMatrix([[int(v) for v in rng.integers(13, size=3)]
                          for _ in range(4)])
        lin = set(list_decode(P13, y, 2).messages)
        hen = set(hensel_list_decode(P13, y, 2).messages)
        assert lin == hen


def test_hensel_decode_diagnostics():
    f = Poly(CTX, (3, 5))
    w = frs_encode(P13, f)
    res = hensel_list_decode(P13, w, 2)
    assert f in res
    assert res.diagnostics["decoder"] == "hensel"
    assert res.diagnostics["nodes"] >= 1
