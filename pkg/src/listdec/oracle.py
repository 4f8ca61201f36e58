"""Exhaustive reference decoders.

These enumerate every message, encode it, and keep the ones that agree with
the received word on at least t positions.  They are the ground truth the
fast decoders are compared against in tests, and are only usable when q^k
is small.
"""

import itertools

from .errors import BudgetExceeded, ParamOutOfRange
from .field import MultiPoly, Poly
from .frs import FrsParams, frs_encode
from .derivative import DerParams, der_encode
from .multiplicity import MultParams, MultWord, message_to_multipoly, mult_encode
from .words import SymbolMatrix


def _check_budget(count: int, budget: int):
    if count > budget:
        raise BudgetExceeded(f"{count} messages exceed the budget {budget}")


def oracle_list_decode(params, received, t: int, budget: int = 10 ** 6) -> list:
    """All messages whose encoding has agreement >= t with the received word.

    Returns (message, agreement) pairs sorted by coefficient tuple; message
    is a Poly for the folded and derivative families and a MultiPoly for the
    multiplicity family.
    """
    q = params.ctx.q
    if isinstance(params, FrsParams):
        if not isinstance(received, SymbolMatrix):
            raise ParamOutOfRange("received word must be a symbol matrix")
        _check_budget(q ** params.k, budget)
        out = []
        for tup in itertools.product(range(q), repeat=params.k):
            f = Poly(params.ctx, tup)
            agree = frs_encode(params, f).agreement(received)
            if agree >= t:
                out.append((f, agree))
        out.sort(key=lambda pair: tuple(pair[0].coeffs))
        return out
    if isinstance(params, DerParams):
        if not isinstance(received, SymbolMatrix):
            raise ParamOutOfRange("received word must be a symbol matrix")
        _check_budget(q ** params.k, budget)
        out = []
        for tup in itertools.product(range(q), repeat=params.k):
            f = Poly(params.ctx, tup)
            agree = der_encode(params, f).agreement(received)
            if agree >= t:
                out.append((f, agree))
        out.sort(key=lambda pair: tuple(pair[0].coeffs))
        return out
    if isinstance(params, MultParams):
        if not isinstance(received, MultWord):
            raise ParamOutOfRange("received word must be a multiplicity word")
        _check_budget(q ** params.message_length(), budget)
        out = []
        for tup in itertools.product(range(q), repeat=params.message_length()):
            P = message_to_multipoly(params, tup)
            agree = mult_encode(params, P).agreement(received)
            if agree >= t:
                out.append((P, agree))
        out.sort(key=lambda pair: tuple(pair[0].terms.get(e, 0) for e in params.monomials))
        return out
    raise ParamOutOfRange(f"unknown code family: {type(params).__name__}")


def oracle_y_roots(Q: MultiPoly, k: int, gamma: int | None = None,
                   mode: str = "shift", budget: int = 10 ** 6) -> list:
    """All f with deg < k such that Q vanishes under the family substitution.

    mode "shift" plugs (X, f(X), f(gamma X), ..., f(gamma^(s-1) X)) into Q;
    mode "derivative" plugs (X, f, f', ..., f^(s-1)).  Found by exhausting
    all q^k coefficient tuples.
    """
    ctx = Q.ctx
    s = Q.arity - 1
    if s < 1:
        raise ParamOutOfRange("Q must have at least one Y variable")
    if mode not in ("shift", "derivative"):
        raise ParamOutOfRange(f"unknown substitution mode: {mode}")
    if mode == "shift" and gamma is None:
        raise ParamOutOfRange("shift mode needs gamma")
    _check_budget(ctx.q ** k, budget)
    X = Poly.x(ctx)
    roots = []
    for tup in itertools.product(range(ctx.q), repeat=k):
        f = Poly(ctx, tup)
        if mode == "shift":
            subs = [f.scale_arg(ctx.pow(gamma, i)) for i in range(s)]
        else:
            subs = [f.derivative(i) for i in range(s)]
        if Q.compose_univariate([X] + subs).is_zero():
            roots.append(f)
    roots.sort(key=lambda f: tuple(f.coeffs))
    return roots
