import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from listdec.errors import (
    ArityMismatch,
    BudgetExceeded,
    DegreeTooLarge,
    LengthMismatch,
    ParamOutOfRange,
    ZeroDirection,
)
from listdec.field import GF, MultiPoly, Poly
from listdec.multiplicity import (
    CountingOracle,
    MultParams,
    MultWord,
    _solve_symbol,
    _univariate_codeword,
    bivariate_correct,
    brute_force_mult_decode,
    line_transcript,
    local_correct,
    make_query,
    message_to_multipoly,
    mult_encode,
    mult_params_report,
    mult_word_from_text,
    mult_word_to_text,
    order_s_eval,
    point_rank,
    rank_point,
    restrict_to_line,
    univariate_mult_decode,
)


CTX = GF(13)
PARAMS = MultParams(CTX, 2, 2, 8)


def random_poly(params, rng):
    msg = [int(v) for v in rng.integers(params.q, size=params.message_length())]
    return message_to_multipoly(params, msg)


def test_params_validation_and_counts():
    with pytest.raises(ParamOutOfRange):
        MultParams(CTX, 2, 2, 26)   # d >= s*q
    with pytest.raises(ParamOutOfRange):
        MultParams(CTX, 0, 2, 3)
    assert PARAMS.w == 3
    assert PARAMS.npoints == 169
    assert PARAMS.message_length() == math.comb(8 + 2, 2)
    assert PARAMS.delta == Fraction(9, 13)
    assert PARAMS.rate() == Fraction(45, 3 * 169)
    uni = MultParams(CTX, 1, 3, 10)
    assert uni.w == 3
    assert uni.exponents == ((0,), (1,), (2,))


def test_exponent_order():
    assert PARAMS.exponents == ((0, 0), (1, 0), (0, 1))
    p3 = MultParams(CTX, 2, 3, 5)
    assert p3.exponents == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))


def test_point_rank_round_trip():
    for r in range(PARAMS.npoints):
        assert point_rank(PARAMS, rank_point(PARAMS, r)) == r
    assert rank_point(PARAMS, 0) == (0, 0)
    assert rank_point(PARAMS, 1) == (0, 1)     # last coordinate fastest
    assert rank_point(PARAMS, 13) == (1, 0)
    with pytest.raises(ParamOutOfRange):
        rank_point(PARAMS, 169)
    with pytest.raises(ArityMismatch):
        point_rank(PARAMS, (1, 2, 3))


def test_encode_fast_path_matches_generic():
    rng = np.random.default_rng(101)
    P = random_poly(PARAMS, rng)
    word = mult_encode(PARAMS, P)
    for pt in PARAMS.points:
        assert word.symbol_at(pt) == order_s_eval(PARAMS, P, pt)


def test_encode_extension_field():
    params = MultParams(GF(9), 1, 2, 4)
    P = MultiPoly(GF(9), 1, {(0,): 5, (3,): 2})
    word = mult_encode(params, P)
    for pt in params.points:
        assert word.symbol_at(pt) == order_s_eval(params, P, pt)


def test_encode_validation():
    with pytest.raises(DegreeTooLarge):
        mult_encode(PARAMS, MultiPoly(CTX, 2, {(9, 0): 1}))
    with pytest.raises(ArityMismatch):
        mult_encode(PARAMS, MultiPoly(CTX, 3, {(0, 0, 0): 1}))


def test_word_agreement_and_replace():
    rng = np.random.default_rng(103)
    P = random_poly(PARAMS, rng)
    w = mult_encode(PARAMS, P)
    w2 = w.replace_symbol((3, 4), (0, 0, 0))
    if w.symbol_at((3, 4)) != (0, 0, 0):
        assert w.agreement(w2) == 168
    assert w2.symbol_at((3, 4)) == (0, 0, 0)
    with pytest.raises(LengthMismatch):
        w.replace_symbol((3, 4), (0, 0))


def test_params_report():
    params = MultParams(GF(29), 2, 2, 14)
    rep = mult_params_report(params)
    assert rep["delta"] == Fraction(22, 29)
    assert rep["w"] == 3
    assert rep["rate"] == Fraction(math.comb(16, 2), 3 * 841)
    assert rep["meets_cited_q_bound"]
    # asymptotic lower bound can be negative when s < m^2; it still must
    # sit below the true rate
    assert rep["rate_lower_bound"] <= rep["rate"]
    small = mult_params_report(MultParams(GF(5), 2, 2, 4))
    assert not small["meets_cited_q_bound"]   # q < 10m


def test_restrict_to_line_identity():
    rng = np.random.default_rng(107)
    P = random_poly(PARAMS, rng)
    for a, b in (((0, 0), (1, 0)), ((3, 4), (2, 11)), ((12, 1), (0, 5))):
        R = restrict_to_line(P, a, b)
        for t in range(13):
            pt = tuple(CTX.add(ai, CTX.mul(t, bi)) for ai, bi in zip(a, b))
            assert R.eval(t) == P.eval(pt)
    with pytest.raises(ZeroDirection):
        restrict_to_line(P, (0, 0), (0, 0))


def test_line_transcript_matches_restriction():
    # clean word: transcript entries are order-s evaluations of the restriction
    rng = np.random.default_rng(109)
    P = random_poly(PARAMS, rng)
    word = mult_encode(PARAMS, P)
    a, b = (5, 2), (7, 3)
    R = restrict_to_line(P, a, b)
    tr = line_transcript(PARAMS, make_query(word), a, b)
    assert tr == _univariate_codeword(CTX, R, 2)


def test_line_transcript_query_count():
    rng = np.random.default_rng(113)
    word = mult_encode(PARAMS, random_poly(PARAMS, rng))
    oracle = CountingOracle(word)
    line_transcript(PARAMS, oracle, (1, 1), (0, 1))
    assert oracle.queries == 13


def test_univariate_decode_at_radius():
    rng = np.random.default_rng(127)
    for trial in range(40):
        d = int(rng.integers(0, 9))
        Q = Poly(CTX, [int(v) for v in rng.integers(13, size=d + 1)])
        cw = _univariate_codeword(CTX, Q, 2)
        f = (1 - Fraction(d, 26)) / 2
        e_max = math.ceil(f * 13) - 1
        errs = int(rng.integers(0, e_max + 1))
        pos = rng.choice(13, size=errs, replace=False)
        tr = list(cw)
        for t in pos:
            t = int(t)
            tr[t] = (CTX.add(tr[t][0], 1), tr[t][1])
        assert univariate_mult_decode(CTX, tr, d, f) == Q, trial


def test_univariate_decode_rejects_excess_fraction():
    Q = Poly(CTX, (1, 2))
    cw = _univariate_codeword(CTX, Q, 2)
    with pytest.raises(ParamOutOfRange):
        univariate_mult_decode(CTX, cw, 1, Fraction(1, 2))  # > delta/2
    with pytest.raises(ParamOutOfRange):
        univariate_mult_decode(CTX, cw, 26, Fraction(1, 100))


def test_univariate_decode_matches_brute_force_on_noise():
    # arbitrary transcripts: both decoders are unique decoders, so they must
    # return identical results, None included
    rng = np.random.default_rng(131)
    agreements = 0
    for _ in range(60):
        d = int(rng.integers(0, 4))
        tr = [(int(rng.integers(13)), int(rng.integers(13))) for _ in range(13)]
        f = (1 - Fraction(d, 26)) / 2
        bw = univariate_mult_decode(CTX, tr, d, f)
        bf = brute_force_mult_decode(CTX, tr, d, f)
        assert bw == bf
        agreements += 1
    assert agreements == 60


def test_brute_force_budget():
    tr = [(0, 0)] * 13
    with pytest.raises(BudgetExceeded):
        brute_force_mult_decode(CTX, tr, 10, Fraction(1, 13), budget=100)


def test_solve_symbol_rejects_collinear_directions():
    rng = np.random.default_rng(137)
    P = random_poly(PARAMS, rng)
    word = mult_encode(PARAMS, P)
    a = (2, 9)
    dirs = [(1, 2), (2, 4), (4, 8)]   # all multiples of (1, 2)
    polys = [univariate_mult_decode(CTX, line_transcript(PARAMS, make_query(word), a, b),
                                    8, PARAMS.delta / 2) for b in dirs]
    assert all(p is not None for p in polys)
    assert _solve_symbol(PARAMS, dirs, polys) is None
    # a spanning set works
    dirs2 = [(1, 0), (0, 1), (1, 1)]
    polys2 = [univariate_mult_decode(CTX, line_transcript(PARAMS, make_query(word), a, b),
                                     8, PARAMS.delta / 2) for b in dirs2]
    assert _solve_symbol(PARAMS, dirs2, polys2) == word.symbol_at(a)


def test_local_correct_with_planted_errors():
    rng = np.random.default_rng(139)
    params = MultParams(CTX, 2, 2, 8)
    P = random_poly(params, rng)
    clean = mult_encode(params, P)
    # corrupt 3 points far from the probe
    bad = clean
    for pt in ((0, 1), (7, 7), (12, 3)):
        bad = bad.replace_symbol(pt, tuple(CTX.add(v, 1) for v in bad.symbol_at(pt)))
    hits = 0
    for probe in ((2, 2), (5, 9), (11, 0), (0, 1)):
        oracle = CountingOracle(bad)
        got = local_correct(params, oracle, probe, rng)
        assert got == clean.symbol_at(probe), probe
        hits += 1
    assert hits == 4


def test_local_correct_query_count_single_attempt():
    rng = np.random.default_rng(149)
    P = random_poly(PARAMS, rng)
    word = mult_encode(PARAMS, P)
    oracle = CountingOracle(word)
    got = local_correct(PARAMS, oracle, (4, 4), rng, retries=0)
    if got is not None:
        assert oracle.queries == PARAMS.w * 13


class _FixedRng:
    """integers() always lands on the same rank: directions stay parallel."""

    def __init__(self, value):
        self.value = value

    def integers(self, *a, **kw):
        return self.value

    def choice(self, n, size, replace):
        return np.arange(size)


def test_bivariate_correct_recovers_jet():
    rng = np.random.default_rng(151)
    P = random_poly(PARAMS, rng)
    clean = mult_encode(PARAMS, P)
    bad = clean.replace_symbol((6, 6), (0, 0, 0))
    ok = 0
    for probe in ((1, 2), (10, 5), (6, 6)):
        got = bivariate_correct(PARAMS, CountingOracle(bad), probe, rng)
        assert got == clean.symbol_at(probe)[:3]
        ok += 1
    assert ok == 3
    with pytest.raises(ParamOutOfRange):
        bivariate_correct(MultParams(CTX, 1, 2, 4), CountingOracle(bad), (1,), rng)


def test_bivariate_correct_gives_up_on_parallel_directions():
    rng = np.random.default_rng(157)
    P = random_poly(PARAMS, rng)
    word = mult_encode(PARAMS, P)
    fixed = _FixedRng(12)  # rank 13 -> point (1, 0) every draw
    assert bivariate_correct(PARAMS, make_query(word), (0, 0), fixed) is None


def test_counting_oracle_wraps_word_and_fn():
    rng = np.random.default_rng(163)
    P = random_poly(PARAMS, rng)
    word = mult_encode(PARAMS, P)
    o1 = CountingOracle(word)
    o2 = CountingOracle(lambda pt: word.symbol_at(pt))
    assert o1((3, 3)) == o2((3, 3))
    assert o1.queries == 1 and o2.queries == 1


def test_word_text_round_trip():
    rng = np.random.default_rng(167)
    params = MultParams(GF(5), 2, 2, 3)
    P = random_poly(params, rng)
    word = mult_encode(params, P)
    text = mult_word_to_text(word)
    assert text.splitlines()[0] == "5 2 2 3"
    word2 = mult_word_from_text(text)
    assert word2 == word
    assert word2.params == params
