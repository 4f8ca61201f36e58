"""Codes from multivariate polynomials evaluated with all partial derivatives
of weight below s at every point of F_q^m.

A codeword symbol at a point is the tuple of Hasse derivative values in the
graded exponent order of ``field.weight_exponents``.  Decoding here is local:
a symbol is recovered from transcripts of the code restricted to lines through
the point, each line giving a received word of the univariate order-s code.
"""

import itertools
import math
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import (
    ArityMismatch,
    BudgetExceeded,
    DegreeTooLarge,
    LengthMismatch,
    ParamOutOfRange,
    ZeroDirection,
)
from .field import FieldCtx, MultiPoly, Poly, PrimeField, binom_mod, weight_exponents
from . import kernels, linalg


class MultParams:
    """Parameters q, m, s, d with the derived evaluation structure cached."""

    def __init__(self, ctx: FieldCtx, m: int, s: int, d: int):
        if m < 1:
            raise ParamOutOfRange("need at least one variable")
        if s < 1:
            raise ParamOutOfRange("derivative order bound must be positive")
        if d < 0:
            raise ParamOutOfRange("degree bound must be nonnegative")
        if d >= s * ctx.q:
            raise ParamOutOfRange("degree bound must satisfy d < s*q")
        self.ctx = ctx
        self.m = m
        self.s = s
        self.d = d

    @property
    def q(self) -> int:
        return self.ctx.q

    @cached_property
    def exponents(self) -> tuple:
        """Derivative orders carried per symbol, weight-major."""
        out = []
        for w in range(self.s):
            out.extend(weight_exponents(self.m, w))
        return tuple(out)

    @cached_property
    def exp_index(self) -> dict:
        return {e: i for i, e in enumerate(self.exponents)}

    @property
    def w(self) -> int:
        # number of derivative orders of weight < s
        return math.comb(self.m + self.s - 1, self.m)

    @property
    def npoints(self) -> int:
        return self.q ** self.m

    @cached_property
    def points(self) -> tuple:
        return tuple(itertools.product(range(self.q), repeat=self.m))

    @cached_property
    def monomials(self) -> tuple:
        """Exponent tuples of total degree <= d, weight-major."""
        out = []
        for w in range(self.d + 1):
            out.extend(weight_exponents(self.m, w))
        return tuple(out)

    @cached_property
    def monomial_index(self) -> dict:
        return {e: i for i, e in enumerate(self.monomials)}

    def message_length(self) -> int:
        return math.comb(self.d + self.m, self.m)

    @property
    def delta(self) -> Fraction:
        return 1 - Fraction(self.d, self.s * self.q)

    def rate(self) -> Fraction:
        return Fraction(self.message_length(), self.w * self.npoints)

    @cached_property
    def _mono_matrix(self):
        # npoints x nmono evaluation table, prime fields only
        assert isinstance(self.ctx, PrimeField)
        p = self.ctx.p
        pts = np.array(self.points, dtype=np.int64)
        pows = np.empty((self.q, self.d + 1), dtype=np.int64)
        pows[:, 0] = 1
        base = np.arange(self.q, dtype=np.int64)
        for e in range(1, self.d + 1):
            pows[:, e] = (pows[:, e - 1] * base) % p
        cols = []
        for exp in self.monomials:
            col = np.ones(self.npoints, dtype=np.int64)
            for j, e in enumerate(exp):
                if e:
                    col = (col * pows[pts[:, j], e]) % p
            cols.append(col)
        return np.stack(cols, axis=1)

    def __eq__(self, other):
        if not isinstance(other, MultParams):
            return NotImplemented
        return (self.ctx, self.m, self.s, self.d) == (other.ctx, other.m, other.s, other.d)

    def __hash__(self):
        return hash((self.ctx, self.m, self.s, self.d))

    def __repr__(self):
        return f"MultParams(q={self.q}, m={self.m}, s={self.s}, d={self.d})"


class MultWord:
    """One symbol per point of F_q^m, each a length-w tuple of derivative values."""

    __slots__ = ("params", "symbols")

    def __init__(self, params: MultParams, symbols):
        symbols = tuple(tuple(sym) for sym in symbols)
        if len(symbols) != params.npoints:
            raise LengthMismatch("wrong number of symbols")
        for sym in symbols:
            if len(sym) != params.w:
                raise LengthMismatch("symbol has wrong width")
        self.params = params
        self.symbols = symbols

    def symbol_at(self, point) -> tuple:
        return self.symbols[point_rank(self.params, point)]

    def replace_symbol(self, point, sym) -> "MultWord":
        sym = tuple(sym)
        if len(sym) != self.params.w:
            raise LengthMismatch("symbol has wrong width")
        r = point_rank(self.params, point)
        syms = list(self.symbols)
        syms[r] = sym
        return MultWord(self.params, syms)

    def agreement(self, other: "MultWord") -> int:
        if self.params != other.params:
            raise LengthMismatch("words come from different codes")
        return sum(a == b for a, b in zip(self.symbols, other.symbols))

    def __eq__(self, other):
        if not isinstance(other, MultWord):
            return NotImplemented
        return self.params == other.params and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return f"MultWord(q={self.params.q}, m={self.params.m}, w={self.params.w})"


def point_rank(params: MultParams, point) -> int:
    """Index of a point in the lexicographic point order."""
    if len(point) != params.m:
        raise ArityMismatch("point has wrong length")
    r = 0
    for a in point:
        if not 0 <= a < params.q:
            raise ParamOutOfRange("coordinate outside the field")
        r = r * params.q + a
    return r


def rank_point(params: MultParams, rank: int) -> tuple:
    if not 0 <= rank < params.npoints:
        raise ParamOutOfRange("rank outside the point range")
    digits = []
    for _ in range(params.m):
        digits.append(rank % params.q)
        rank //= params.q
    return tuple(reversed(digits))


def order_s_eval(params: MultParams, P: MultiPoly, point) -> tuple:
    """The symbol contributed by P at one point: all derivative values of weight < s."""
    if P.arity != params.m:
        raise ArityMismatch("polynomial arity does not match the code")
    return tuple(P.hasse_derivative(e).eval(point) for e in params.exponents)


def _eval_table(params: MultParams, P: MultiPoly):
    """w x npoints numpy table of derivative values, prime fields only."""
    p = params.ctx.p
    nmono = len(params.monomials)
    M = params._mono_matrix
    rows = []
    for order in params.exponents:
        dvec = np.zeros(nmono, dtype=np.int64)
        for exp, c in P.terms.items():
            shifted = tuple(e - o for e, o in zip(exp, order))
            if any(e < 0 for e in shifted):
                continue
            coef = c
            for e, o in zip(exp, order):
                coef = (coef * binom_mod(e, o, p)) % p
            if coef:
                dvec[params.monomial_index[shifted]] = (dvec[params.monomial_index[shifted]] + coef) % p
        rows.append(kernels.matvec(M, dvec, p))
    return np.stack(rows, axis=0)


def mult_encode(params: MultParams, P: MultiPoly) -> MultWord:
    if P.arity != params.m:
        raise ArityMismatch("polynomial arity does not match the code")
    if P.total_degree > params.d:
        raise DegreeTooLarge("polynomial degree exceeds the code bound")
    if P.ctx != params.ctx:
        raise ArityMismatch("polynomial lives over a different field")
    if isinstance(params.ctx, PrimeField):
        table = _eval_table(params, P)
        cols = table.T
        return MultWord(params, [tuple(int(v) for v in col) for col in cols])
    return MultWord(params, [order_s_eval(params, P, pt) for pt in params.points])


def message_to_multipoly(params: MultParams, message) -> MultiPoly:
    """Coefficients in the weight-major monomial order -> polynomial."""
    message = list(message)
    if len(message) != params.message_length():
        raise LengthMismatch("message has wrong length")
    terms = {exp: c for exp, c in zip(params.monomials, message)}
    return MultiPoly(params.ctx, params.m, terms)


def mult_params_report(params: MultParams) -> dict:
    """Rate and distance summary, with the asymptotic lower bound for comparison."""
    delta = params.delta
    rate = params.rate()
    m, s, q, d = params.m, params.s, params.q, params.d
    lower = (1 - Fraction(m * m, s)) * (1 - delta) ** m
    meets_q = (
        q >= 10 * m
        and Fraction(q) >= Fraction(d + 6, s)
        and q >= 5 * (s + 1)
    )
    return {
        "q": q,
        "m": m,
        "s": s,
        "d": d,
        "w": params.w,
        "npoints": params.npoints,
        "message_length": params.message_length(),
        "delta": delta,
        "rate": rate,
        "rate_lower_bound": lower,
        "meets_cited_q_bound": meets_q,
    }


def restrict_to_line(P: MultiPoly, a, b) -> Poly:
    """P(a + b*T) as a univariate polynomial in T."""
    ctx = P.ctx
    if len(a) != P.arity or len(b) != P.arity:
        raise ArityMismatch("line has wrong dimension")
    if all(v == 0 for v in b):
        raise ZeroDirection("line direction must be nonzero")
    cache = {}

    def factor_power(j, e):
        # (a_j + b_j T)^e
        key = (j, e)
        if key not in cache:
            if e == 0:
                cache[key] = Poly.one(ctx)
            else:
                base = Poly(ctx, (a[j], b[j]))
                cache[key] = factor_power(j, e - 1) * base
        return cache[key]

    out = Poly.zero(ctx)
    for exp, c in P.terms.items():
        term = Poly.constant(ctx, c)
        for j, e in enumerate(exp):
            if e:
                term = term * factor_power(j, e)
        out = out + term
    return out


def line_transcript(params: MultParams, query, a, b) -> list:
    """Received word of the univariate order-s code along the line t -> a + t*b.

    ``query`` maps a point to its length-w symbol; exactly q queries are made.
    Entry t is the tuple of weight-0..s-1 directional jets
    sum_{wt(i)=j} r_i(a+t*b) * b^i.
    """
    ctx = params.ctx
    if len(a) != params.m or len(b) != params.m:
        raise ArityMismatch("line has wrong dimension")
    if all(v == 0 for v in b):
        raise ZeroDirection("line direction must be nonzero")
    bpow = []
    for exp in params.exponents:
        v = 1
        for j, e in enumerate(exp):
            for _ in range(e):
                v = ctx.mul(v, b[j])
        bpow.append(v)
    transcript = []
    for t in range(params.q):
        pt = tuple(ctx.add(aj, ctx.mul(t, bj)) for aj, bj in zip(a, b))
        sym = query(pt)
        if len(sym) != params.w:
            raise LengthMismatch("oracle symbol has wrong width")
        jets = []
        idx = 0
        for w in range(params.s):
            acc = 0
            for exp in weight_exponents(params.m, w):
                acc = ctx.add(acc, ctx.mul(sym[idx], bpow[idx]))
                idx += 1
            jets.append(acc)
        transcript.append(tuple(jets))
    return transcript


def _univariate_codeword(ctx: FieldCtx, Q: Poly, s: int):
    """Order-s evaluation of a univariate polynomial at 0..q-1."""
    if isinstance(ctx, PrimeField):
        xs = np.arange(ctx.q, dtype=np.int64)
        rows = []
        for j in range(s):
            h = Q.hasse(j)
            coeffs = np.array(h.coeffs if h.coeffs else (0,), dtype=np.int64)
            rows.append(kernels.poly_eval_many(coeffs, xs, ctx.p))
        table = np.stack(rows, axis=1)
        return [tuple(int(v) for v in row) for row in table]
    return [tuple(Q.hasse(j).eval(t) for j in range(s)) for t in range(ctx.q)]


def _check_error_fraction(delta: Fraction, max_err_frac) -> Fraction:
    f = Fraction(max_err_frac)
    if f < 0:
        raise ParamOutOfRange("error fraction must be nonnegative")
    if 2 * f > delta:
        raise ParamOutOfRange("error fraction exceeds half the code distance")
    return f


def univariate_mult_decode(ctx: FieldCtx, transcript, d: int, max_err_frac) -> Poly | None:
    """Unique decoding of the univariate order-s code from derivative symbols.

    transcript[t] is the claimed (Q(t), Q^(1)(t), ..., Q^(s-1)(t)) with Hasse
    derivatives; entries at more than max_err_frac * q positions may be wrong,
    which must be at most half the relative distance 1 - d/(s*q).  Returns the
    unique polynomial of degree <= d within that radius, or None.

    Uses an error locator E and residue N = Q*E of degrees s*e and d + s*e:
    the product rule turns agreement at t into s linear constraints, and
    disagreement is absorbed by E vanishing to order s at t.
    """
    q = ctx.q
    transcript = list(transcript)
    if len(transcript) != q:
        raise LengthMismatch("transcript must cover every field element")
    s = len(transcript[0])
    if s < 1 or any(len(sym) != s for sym in transcript):
        raise LengthMismatch("transcript symbols must share a positive width")
    if d >= s * q:
        raise ParamOutOfRange("degree bound must satisfy d < s*q")
    f = _check_error_fraction(1 - Fraction(d, s * q), max_err_frac)
    e_max = math.ceil(f * q) - 1
    if e_max < 0:
        e_max = 0
    deg_e = s * e_max
    deg_n = d + deg_e
    ncols = (deg_e + 1) + (deg_n + 1)

    tpow_all = []
    for t in range(q):
        tp = [1]
        for _ in range(deg_n):
            tp.append(ctx.mul(tp[-1], t))
        tpow_all.append(tp)

    rows = []
    for t in range(q):
        tp = tpow_all[t]
        sym = transcript[t]
        for j in range(s):
            row = [0] * ncols
            # -sum_a E^(a)(t) * sym[j-a], Hasse form of (Q*E)^(j) = N^(j)
            for l in range(deg_e + 1):
                acc = 0
                for a_ord in range(min(j, l) + 1):
                    c = binom_mod(l, a_ord, ctx.p)
                    if c == 0:
                        continue
                    acc = ctx.add(acc, ctx.mul(ctx.mul(c, tp[l - a_ord]), sym[j - a_ord]))
                row[l] = ctx.neg(acc)
            for l in range(j, deg_n + 1):
                c = binom_mod(l, j, ctx.p)
                if c:
                    row[deg_e + 1 + l] = ctx.mul(c, tp[l - j])
            rows.append(row)

    vec = linalg.nullspace_vector(rows, ncols, ctx)
    if vec is None:
        return None
    E = Poly(ctx, vec[: deg_e + 1])
    N = Poly(ctx, vec[deg_e + 1 :])
    # a nonzero solution with E = 0 would force N to vanish to order s everywhere
    assert not E.is_zero()
    Q, rem = divmod(N, E)
    if not rem.is_zero():
        return None
    if Q.degree > d:
        return None
    codeword = _univariate_codeword(ctx, Q, s)
    mismatches = sum(cw != sym for cw, sym in zip(codeword, transcript))
    if mismatches > e_max:
        return None
    return Q


def brute_force_mult_decode(ctx: FieldCtx, transcript, d: int, max_err_frac,
                            budget: int = 10 ** 6) -> Poly | None:
    """Reference decoder: scan every polynomial of degree <= d.

    Only viable for tiny q^(d+1); used to cross-check univariate_mult_decode.
    """
    q = ctx.q
    transcript = list(transcript)
    if len(transcript) != q:
        raise LengthMismatch("transcript must cover every field element")
    s = len(transcript[0])
    if d >= s * q:
        raise ParamOutOfRange("degree bound must satisfy d < s*q")
    f = _check_error_fraction(1 - Fraction(d, s * q), max_err_frac)
    e_max = math.ceil(f * q) - 1
    if e_max < 0:
        e_max = 0
    count = q ** (d + 1)
    if count > budget:
        raise BudgetExceeded(f"{count} candidates exceed the budget {budget}")

    if isinstance(ctx, PrimeField):
        p = ctx.p
        coeffs = np.array(list(itertools.product(range(q), repeat=d + 1)), dtype=np.int64)
        target = np.array(transcript, dtype=np.int64)  # q x s
        xs = np.arange(q, dtype=np.int64)
        ok = np.ones((count, q), dtype=bool)
        for j in range(s):
            # T[l, t] = C(l, j) * t^(l-j)
            T = np.zeros((d + 1, q), dtype=np.int64)
            for l in range(j, d + 1):
                c = binom_mod(l, j, p)
                if c == 0:
                    continue
                T[l] = (c * _pow_col(xs, l - j, p)) % p
            vals = kernels.matmul(coeffs, T, p)
            ok &= vals == target[:, j]
        mism = q - ok.sum(axis=1)
        hits = np.nonzero(mism <= e_max)[0]
        assert len(hits) <= 1
        if len(hits) == 0:
            return None
        return Poly(ctx, [int(v) for v in coeffs[hits[0]]])

    best = None
    for tup in itertools.product(range(q), repeat=d + 1):
        Q = Poly(ctx, tup)
        cw = _univariate_codeword(ctx, Q, s)
        mism = sum(a != b for a, b in zip(cw, transcript))
        if mism <= e_max:
            assert best is None
            best = Q
    return best


def _pow_col(xs, e: int, p: int):
    out = np.ones_like(xs)
    base = xs % p
    while e:
        if e & 1:
            out = (out * base) % p
        base = (base * base) % p
        e >>= 1
    return out


def _sample_directions(params: MultParams, rng, count: int):
    """count distinct nonzero points, used as line directions."""
    ranks = rng.choice(params.npoints - 1, size=count, replace=False)
    return [rank_point(params, int(r) + 1) for r in ranks]


def _solve_symbol(params: MultParams, directions, polys):
    """Recover the weight-<s derivative tuple at the line base point.

    polys[i] is the decoded univariate polynomial along direction b_i; its
    Hasse coefficient of T^w collects sum_{wt(i)=w} P^(i)(a) b^i.  Returns
    None when the direction set fails to interpolate weight-<s data.
    """
    ctx = params.ctx
    rows = []
    for b in directions:
        row = []
        for exp in params.exponents:
            v = 1
            for j, e in enumerate(exp):
                for _ in range(e):
                    v = ctx.mul(v, b[j])
            row.append(v)
        rows.append(row)
    if linalg.rank(rows, ctx) < params.w:
        return None

    values = {}
    idx = 0
    for w in range(params.s):
        exps = list(weight_exponents(params.m, w))
        cols = list(range(idx, idx + len(exps)))
        idx += len(exps)
        a_rows = [[rows[i][c] for c in cols] for i in range(len(directions))]
        b_vec = [polys[i].coeff(w) for i in range(len(directions))]
        sol, _ = linalg.solve(a_rows, b_vec, ctx)
        if sol is None:
            return None
        for exp, v in zip(exps, sol):
            values[exp] = v
    return tuple(values[exp] for exp in params.exponents)


def local_correct(params: MultParams, query, a, rng, retries: int = 10):
    """Recover the symbol at ``a`` from w line transcripts through ``a``.

    Each attempt samples w distinct nonzero directions, queries the w lines
    (w*q oracle calls), decodes each at half the minimum distance, and solves
    for the derivative tuple.  Any failed line or a non-interpolating
    direction set fails the attempt; after ``retries`` extra attempts the
    call returns None.
    """
    if len(a) != params.m:
        raise ArityMismatch("point has wrong length")
    f = params.delta / 2
    for _ in range(retries + 1):
        directions = _sample_directions(params, rng, params.w)
        polys = []
        for b in directions:
            transcript = line_transcript(params, query, a, b)
            Q = univariate_mult_decode(params.ctx, transcript, params.d, f)
            if Q is None:
                break
            polys.append(Q)
        else:
            sym = _solve_symbol(params, directions, polys)
            if sym is not None:
                return sym
    return None


def bivariate_correct(params: MultParams, query, a, rng, dir_retries: int = 10):
    """Two-line variant for m = 2, s = 2: 2q queries per attempt.

    Decodes the restrictions to two non-parallel lines through ``a``; the
    constant terms must agree (that value is P(a)) and the T-coefficients
    give a 2x2 system for the gradient.  Returns (P, P_x, P_y) or None.
    """
    if params.m != 2 or params.s != 2:
        raise ParamOutOfRange("two-line correction needs m = 2, s = 2")
    if len(a) != 2:
        raise ArityMismatch("point has wrong length")
    ctx = params.ctx

    b1 = rank_point(params, int(rng.integers(params.npoints - 1)) + 1)
    b2 = None
    for _ in range(dir_retries + 1):
        cand = rank_point(params, int(rng.integers(params.npoints - 1)) + 1)
        det = ctx.sub(ctx.mul(b1[0], cand[1]), ctx.mul(b1[1], cand[0]))
        if det != 0:
            b2 = cand
            break
    if b2 is None:
        return None

    f = params.delta / 2
    Q1 = univariate_mult_decode(ctx, line_transcript(params, query, a, b1), params.d, f)
    if Q1 is None:
        return None
    Q2 = univariate_mult_decode(ctx, line_transcript(params, query, a, b2), params.d, f)
    if Q2 is None:
        return None
    if Q1.coeff(0) != Q2.coeff(0):
        return None
    value = Q1.coeff(0)
    c1, c2 = Q1.coeff(1), Q2.coeff(1)
    det = ctx.sub(ctx.mul(b1[0], b2[1]), ctx.mul(b1[1], b2[0]))
    inv = ctx.inv(det)
    px = ctx.mul(inv, ctx.sub(ctx.mul(b2[1], c1), ctx.mul(b1[1], c2)))
    py = ctx.mul(inv, ctx.sub(ctx.mul(b1[0], c2), ctx.mul(b2[0], c1)))
    return (value, px, py)


def make_query(word: MultWord):
    """Plain point -> symbol function over a stored word."""
    def query(pt):
        return word.symbols[point_rank(word.params, pt)]
    return query


class CountingOracle:
    """Wraps a query function (or a word) and counts oracle calls."""

    def __init__(self, source):
        if isinstance(source, MultWord):
            source = make_query(source)
        self._fn = source
        self.queries = 0

    def __call__(self, pt):
        self.queries += 1
        return self._fn(pt)


def mult_word_to_text(word: MultWord) -> str:
    params = word.params
    ctx = params.ctx
    lines = [f"{params.q} {params.m} {params.s} {params.d}"]
    for pt, sym in zip(params.points, word.symbols):
        fields = [ctx.format_elem(v) for v in pt] + [ctx.format_elem(v) for v in sym]
        lines.append(" ".join(fields))
    return "\n".join(lines) + "\n"


def mult_word_from_text(text: str) -> MultWord:
    from .field import GF

    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise LengthMismatch("empty word file")
    head = lines[0].split()
    if len(head) != 4:
        raise LengthMismatch("header must be: q m s d")
    q, m, s, d = (int(v) for v in head)
    params = MultParams(GF(q), m, s, d)
    if len(lines) != 1 + params.npoints:
        raise LengthMismatch("wrong number of symbol lines")
    ctx = params.ctx
    symbols = [None] * params.npoints
    for ln in lines[1:]:
        fields = ln.split()
        if len(fields) != m + params.w:
            raise LengthMismatch("symbol line has wrong field count")
        pt = tuple(ctx.parse_elem(v) for v in fields[:m])
        sym = tuple(ctx.parse_elem(v) for v in fields[m:])
        symbols[point_rank(params, pt)] = sym
    if any(sym is None for sym in symbols):
        raise LengthMismatch("duplicate or missing points")
    return MultWord(params, symbols)
