import pytest

from listdec.errors import BudgetExceeded, ParamOutOfRange
from listdec.field import GF, MultiPoly, Poly
from listdec.frs import FrsParams, frs_encode
from listdec.derivative import default_der_params, der_encode
from listdec.multiplicity import MultParams, message_to_multipoly, mult_encode
from listdec.oracle import oracle_list_decode, oracle_y_roots


def test_frs_dispatch():
    params = FrsParams(GF(5), 2, 2, 2, 2)
    f = Poly(GF(5), (1, 3))
    w = frs_encode(params, f)
    out = oracle_list_decode(params, w, 2)
    assert (f, 2) in out
    # sorted by coefficient tuple
    assert [tuple(g.coeffs) for g, _ in out] == sorted(tuple(g.coeffs) for g, _ in out)


def test_der_dispatch():
    params = default_der_params(GF(7), 3, 2, 2)
    f = Poly(GF(7), (2, 5))
    w = der_encode(params, f)
    out = oracle_list_decode(params, w, 3)
    assert out == [(f, 3)]


def test_mult_dispatch():
    params = MultParams(GF(3), 1, 2, 1)
    P = message_to_multipoly(params, [1, 2])
    w = mult_encode(params, P)
    out = oracle_list_decode(params, w, 3)
    assert out == [(P, 3)]


def test_received_word_type_checked():
    params = FrsParams(GF(5), 2, 2, 2, 2)
    with pytest.raises(ParamOutOfRange):
        oracle_list_decode(params, [[1, 2], [3, 4]], 1)


def test_budget():
    params = FrsParams(GF(13), 4, 3, 4, 2)
    w = frs_encode(params, Poly(GF(13), (1,)))
    with pytest.raises(BudgetExceeded):
        oracle_list_decode(params, w, 1, budget=1000)


def test_y_roots_shift_mode():
    ctx = GF(5)
    # f(gamma X) = f(X) forces constants
    Q = MultiPoly(ctx, 3, {(0, 1, 0): 1, (0, 0, 1): 4})
    roots = oracle_y_roots(Q, 2, gamma=2, mode="shift")
    assert [tuple(f.coeffs) for f in roots] == [(), (1,), (2,), (3,), (4,)]
    with pytest.raises(ParamOutOfRange):
        oracle_y_roots(Q, 2, mode="shift")   # gamma missing


def test_y_roots_derivative_mode():
    ctx = GF(13)
    # Q = Y2 - 1: f' = 1 means f = X + c
    Q = MultiPoly(ctx, 3, {(0, 0, 1): 1, (0, 0, 0): 12})
    roots = oracle_y_roots(Q, 2, mode="derivative")
    assert len(roots) == 13
    assert all(f.coeff(1) == 1 and f.degree == 1 for f in roots)


def test_y_roots_planted():
    ctx = GF(13)
    f = Poly(ctx, (3, 1, 4))
    Q = MultiPoly(ctx, 2, {(0, 1): 1}) - MultiPoly(
        ctx, 2, {(j, 0): c for j, c in enumerate(f.coeffs)}
    )
    assert oracle_y_roots(Q, 3, gamma=2, mode="shift") == [f]
    with pytest.raises(ParamOutOfRange):
        oracle_y_roots(Q, 3, gamma=2, mode="newton")
    with pytest.raises(BudgetExceeded):
        oracle_y_roots(Q, 3, gamma=2, budget=10)
