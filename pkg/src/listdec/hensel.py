"""Enumerating message candidates by lifting roots coefficient by
coefficient.

A candidate f = f_0 + f_1 X + ... + f_{k-1} X^{k-1} is grown from its
constant term up: the possible constant terms are roots of Q(0, Y, ..., Y),
and fixing a choice beta rewrites Q through the substitution
Y_i -> beta + gamma^(i-1) X Y_i, whose solutions encode the remaining
coefficients.  Stripping the maximal X power keeps the rewritten polynomial
nonzero, so the recursion is well founded and terminates after k levels.
"""

from __future__ import annotations

from .errors import BudgetExceeded, ParamOutOfRange
from .field import MultiPoly, Poly, binom_mod
from .frs import FrsParams, frs_encode
from .frs_decode import agreement_threshold, degree_param, interpolate
from .results import DecodeResult
from .words import SymbolMatrix


def shift_transform(Q: MultiPoly, b: int, gamma: int) -> MultiPoly:
    """Substitute Y_i -> b + gamma^(i-1) * X * Y_i (X is variable 0)."""
    ctx = Q.ctx
    arity = Q.arity
    b = ctx.canon(b)
    out: dict[tuple, int] = {}
    # expansion of (b + g X Y_i)^e, cached per (variable, exponent)
    factor_pows: dict[tuple[int, int], MultiPoly] = {}

    def factor_power(i: int, e: int) -> MultiPoly:
        key = (i, e)
        got = factor_pows.get(key)
        if got is None:
            g = ctx.pow(gamma, i - 1)
            terms = {}
            for u in range(e + 1):
                c = ctx.mul(
                    binom_mod(e, u, ctx.p),
                    ctx.mul(ctx.pow(b, e - u), ctx.pow(g, u)),
                )
                if c:
                    exps = [0] * arity
                    exps[0] = u
                    exps[i] = u
                    terms[tuple(exps)] = c
            got = MultiPoly(ctx, arity, terms)
            factor_pows[key] = got
        return got

    acc = MultiPoly.zero(ctx, arity)
    for exps, c in Q.terms.items():
        term = MultiPoly.monomial(ctx, arity, (exps[0],) + (0,) * (arity - 1), c)
        for i in range(1, arity):
            if exps[i]:
                term = term * factor_power(i, exps[i])
        acc = acc + term
    return acc


def strip_x_power(Q: MultiPoly) -> tuple[MultiPoly, int]:
    """Divide out the maximal power of X (variable 0); returns (Q / X^r, r)."""
    if Q.is_zero():
        return Q, 0
    r = min(e[0] for e in Q.terms)
    if r == 0:
        return Q, 0
    terms = {(e[0] - r,) + e[1:]: c for e, c in Q.terms.items()}
    return MultiPoly(Q.ctx, Q.arity, terms), r


def base_roots(Q: MultiPoly) -> list[int]:
    """Candidate constant terms: roots of Q(0, Y, Y, ..., Y).

    If that univariate polynomial is identically zero every field element
    qualifies.  Requires X not dividing Q, so the result is never inflated
    by a stripped factor.
    """
    if Q.is_zero():
        raise ParamOutOfRange("zero polynomial has no base roots")
    if min(e[0] for e in Q.terms) > 0:
        raise ParamOutOfRange("strip X powers before taking base roots")
    ctx = Q.ctx
    coeffs: dict[int, int] = {}
    for exps, c in Q.terms.items():
        if exps[0] == 0:
            dgr = sum(exps[1:])
            coeffs[dgr] = ctx.add(coeffs.get(dgr, 0), c)
    uni = Poly(ctx, [coeffs.get(i, 0) for i in range(max(coeffs) + 1)])
    if uni.is_zero():
        return list(ctx.elements())
    return [a for a in ctx.elements() if uni.eval(a) == 0]


def enumerate_lambda(
    Q: MultiPoly, k: int, gamma: int, budget: int = 10**5, stats: dict | None = None
) -> list[Poly]:
    """All degree-< k prefix roots of Q obtained by lifting constant terms.

    Every polynomial f with Q(X, f(X), f(gamma X), ...) = 0 appears in the
    output; the converse need not hold, so callers filter.  Raises
    BudgetExceeded when the recursion tree grows past budget nodes.  When
    given, stats receives the visited node count.
    """
    if Q.is_zero():
        raise ParamOutOfRange("cannot enumerate roots of the zero polynomial")
    ctx = Q.ctx
    nodes = 0

    def rec(P: MultiPoly, depth: int) -> list[tuple[int, ...]]:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"lift enumeration exceeded {budget} nodes")
        if depth <= 0:
            return [()]
        P, _ = strip_x_power(P)
        assert not P.is_zero()
        out = []
        for beta in base_roots(P):
            shifted, _ = strip_x_power(shift_transform(P, beta, gamma))
            for tail in rec(shifted, depth - 1):
                out.append((beta,) + tail)
        return out

    tuples = sorted(set(rec(Q, k)))
    if stats is not None:
        stats["nodes"] = nodes
    return [Poly(ctx, t) for t in tuples]


def hensel_list_decode(
    params: FrsParams,
    y: SymbolMatrix,
    s: int,
    t: int | None = None,
    budget: int = 10**5,
) -> DecodeResult:
    """Interpolate as in the linear decoder, then enumerate candidates by
    root lifting instead of back substitution.  Output contract matches
    list_decode: all messages with >= t agreeing columns, sorted."""
    d = degree_param(params, s)
    if t is None:
        t = agreement_threshold(params, s, d)
    ipoly = interpolate(params, y, s, d)
    Q = ipoly.to_multipoly()
    ctx = params.ctx

    stats: dict = {}
    raw = enumerate_lambda(Q, params.k, params.gamma, budget, stats)

    xvar = Poly.x(ctx)
    cands = []
    for f in raw:
        subs = [xvar]
        g = 1
        for _ in range(s):
            subs.append(f.scale_arg(g))
            g = ctx.mul(g, params.gamma)
        if not Q.compose_univariate(subs).is_zero():
            continue
        agr = frs_encode(params, f).agreement(y)
        if agr >= t:
            cands.append((f, agr))
    cands.sort(key=lambda fa: fa[0].coeffs)
    return DecodeResult(
        cands,
        {
            "decoder": "hensel",
            "d": d,
            "s": s,
            "threshold": t,
            "nodes": stats.get("nodes", 0),
            "raw_candidates": len(raw),
            "inconsistent": False,
        },
    )
