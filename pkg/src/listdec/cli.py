"""Command line front end: encode words, corrupt them, decode, and run
seeded experiments with tab separated per-trial reports.

Exit codes: 0 success, 2 bad usage or malformed parameters, 3 file I/O
failure, 4 enumeration budget exceeded.
"""

import argparse
import json
import sys
import time
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded, CodeError
from .field import GF, Poly, poly_to_text
from .frs import (
    FrsParams,
    frs_encode,
    frs_word_from_text,
    frs_word_to_text,
)
from .frs_decode import agreement_threshold, degree_param, list_decode
from .hensel import hensel_list_decode
from .derivative import (
    DerParams,
    default_der_params,
    der_agreement_threshold,
    der_degree_param,
    der_encode,
    der_list_decode,
    der_word_from_text,
    der_word_to_text,
)
from .multiplicity import (
    CountingOracle,
    MultParams,
    MultWord,
    bivariate_correct,
    local_correct,
    message_to_multipoly,
    mult_encode,
    mult_word_from_text,
    mult_word_to_text,
    point_rank,
    rank_point,
)
from .oracle import oracle_list_decode
from .words import SymbolMatrix


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream per trial: same seed and trial, same draws."""
    return np.random.Generator(np.random.Philox(key=seed, counter=trial << 128))


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="ascii") as fh:
        return fh.read()


def _write_text(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="ascii") as fh:
        fh.write(text)


def _parse_message(ctx, text: str) -> list[int]:
    # comma separated canonical integer encodings, e.g. "1,4,0"
    vals = [int(tok) for tok in text.split(",")]
    for v in vals:
        if not 0 <= v < ctx.q:
            raise CodeError(f"coefficient {v} outside [0, {ctx.q})")
    return vals


def _column_rank(col, q: int) -> int:
    r = 0
    for v in col:
        r = r * q + v
    return r


def _rank_column(rank: int, q: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        out.append(rank % q)
        rank //= q
    return list(reversed(out))


def _corrupt_matrix(word: SymbolMatrix, q: int, errors: int, rng) -> SymbolMatrix:
    """Replace `errors` distinct columns with uniformly random different columns."""
    if errors < 0 or errors > word.ncols:
        raise CodeError(f"errors must lie in [0, {word.ncols}]")
    space = q ** word.nrows
    picked = rng.choice(word.ncols, size=errors, replace=False)
    for i in picked:
        i = int(i)
        rank = _column_rank(word.column(i), q)
        new_rank = (rank + 1 + int(rng.integers(space - 1))) % space
        word = word.replace_column(i, _rank_column(new_rank, q, word.nrows))
    return word


def _corrupt_mult(word: MultWord, errors: int, rng) -> MultWord:
    params = word.params
    if errors < 0 or errors > params.npoints:
        raise CodeError(f"errors must lie in [0, {params.npoints}]")
    space = params.q ** params.w
    picked = rng.choice(params.npoints, size=errors, replace=False)
    for r in picked:
        pt = rank_point(params, int(r))
        rank = _column_rank(word.symbol_at(pt), params.q)
        new_rank = (rank + 1 + int(rng.integers(space - 1))) % space
        word = word.replace_symbol(pt, _rank_column(new_rank, params.q, params.w))
    return word


def _frs_params_from_args(args) -> FrsParams:
    if args.k is None:
        raise CodeError("the frs family needs --k")
    ctx = GF(args.q)
    N = args.N if args.N is not None else (args.q - 1) // args.m
    gamma = args.gamma if args.gamma is not None else ctx.primitive_element()
    return FrsParams(ctx, args.m, N, args.k, gamma)


def _der_params_from_args(args) -> DerParams:
    if args.n is None or args.k is None:
        raise CodeError("the derivative family needs --n and --k")
    return default_der_params(GF(args.q), args.n, args.m, args.k)


def _mult_params_from_args(args) -> MultParams:
    if args.s is None or args.d is None:
        raise CodeError("the multiplicity family needs --s and --d")
    return MultParams(GF(args.q), args.m, args.s, args.d)


# ---------------------------------------------------------------------------
# subcommands


def cmd_encode(args) -> int:
    if args.family == "frs":
        params = _frs_params_from_args(args)
        msg = _parse_message(params.ctx, args.message)
        if len(msg) != params.k:
            raise CodeError(f"message must have exactly k = {params.k} coefficients")
        word = frs_encode(params, Poly(params.ctx, msg))
        _write_text(args.out, frs_word_to_text(params, word))
    elif args.family == "derivative":
        params = _der_params_from_args(args)
        msg = _parse_message(params.ctx, args.message)
        if len(msg) != params.k:
            raise CodeError(f"message must have exactly k = {params.k} coefficients")
        word = der_encode(params, Poly(params.ctx, msg))
        _write_text(args.out, der_word_to_text(params, word))
    else:
        params = _mult_params_from_args(args)
        msg = _parse_message(params.ctx, args.message)
        if len(msg) != params.message_length():
            raise CodeError(
                f"message must have exactly {params.message_length()} coefficients"
            )
        word = mult_encode(params, message_to_multipoly(params, msg))
        _write_text(args.out, mult_word_to_text(word))
    return 0


def cmd_corrupt(args) -> int:
    text = _read_text(args.infile)
    rng = trial_rng(args.seed, 0)
    if args.family == "frs":
        params, word = frs_word_from_text(text)
        word = _corrupt_matrix(word, params.q, args.errors, rng)
        _write_text(args.out, frs_word_to_text(params, word))
    elif args.family == "derivative":
        params, word = der_word_from_text(text)
        word = _corrupt_matrix(word, params.ctx.q, args.errors, rng)
        _write_text(args.out, der_word_to_text(params, word))
    else:
        word = mult_word_from_text(text)
        word = _corrupt_mult(word, args.errors, rng)
        _write_text(args.out, mult_word_to_text(word))
    return 0


def _candidates_text(pairs) -> str:
    lines = [f"{agree}\t{poly_to_text(f)}" for f, agree in pairs]
    return "\n".join(lines) + ("\n" if lines else "")


def cmd_decode(args) -> int:
    text = _read_text(args.infile)
    if args.family == "frs":
        params, word = frs_word_from_text(text)
        if args.decoder == "linear":
            res = list_decode(params, word, args.s, t=args.t, budget=args.budget)
            pairs = res.candidates
        elif args.decoder == "hensel":
            res = hensel_list_decode(params, word, args.s, t=args.t, budget=args.budget)
            pairs = res.candidates
        elif args.decoder == "oracle":
            t = args.t
            if t is None:
                t = agreement_threshold(params, args.s, degree_param(params, args.s))
            pairs = oracle_list_decode(params, word, t, budget=args.budget)
        else:
            raise CodeError(f"decoder {args.decoder!r} not available for frs")
        _write_text(args.out, _candidates_text(pairs))
    elif args.family == "derivative":
        params, word = der_word_from_text(text)
        if args.decoder == "linear":
            res = der_list_decode(params, word, args.s, t=args.t, budget=args.budget)
            pairs = res.candidates
        elif args.decoder == "oracle":
            t = args.t
            if t is None:
                t = der_agreement_threshold(params, args.s, der_degree_param(params, args.s))
            pairs = oracle_list_decode(params, word, t, budget=args.budget)
        else:
            raise CodeError(f"decoder {args.decoder!r} not available for derivative")
        _write_text(args.out, _candidates_text(pairs))
    else:
        raise CodeError("global decoding of the multiplicity family is oracle-only; "
                        "use localsim for local correction")
    return 0


TSV_HEADER = "trial\tsuccess\tlist_size\tqueries\tmicros"


def _summary_json(spec: dict, rows: list, extra: dict | None = None) -> str:
    trials = len(rows)
    successes = sum(r[1] for r in rows)
    out = {
        "spec": spec,
        "trials": trials,
        "successes": successes,
        "success_rate": str(Fraction(successes, trials)) if trials else "0",
        "mean_list_size": str(Fraction(sum(r[2] for r in rows), trials)) if trials else "0",
        "total_queries": sum(r[3] for r in rows),
    }
    if extra:
        out.update(extra)
    return json.dumps(out, sort_keys=True) + "\n"


def _rows_to_tsv(rows: list) -> str:
    lines = [TSV_HEADER]
    for row in rows:
        lines.append("\t".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def cmd_experiment(args) -> int:
    ctx = GF(args.q)
    timing = args.timing == "on"
    if args.family == "frs":
        params = _frs_params_from_args(args)
        ncols = params.N
    else:
        params = _der_params_from_args(args)
        ncols = params.n
    rows = []
    for trial in range(args.trials):
        rng = trial_rng(args.seed, trial)
        msg = [int(v) for v in rng.integers(args.q, size=args.k)]
        f = Poly(ctx, msg)
        if args.family == "frs":
            word = frs_encode(params, f)
        else:
            word = der_encode(params, f)
        word = _corrupt_matrix(word, args.q, args.errors, rng)
        t0 = time.perf_counter_ns() if timing else 0
        if args.decoder == "oracle":
            if args.family == "frs":
                t = agreement_threshold(params, args.s, degree_param(params, args.s))
            else:
                t = der_agreement_threshold(params, args.s, der_degree_param(params, args.s))
            cands = [g for g, _ in oracle_list_decode(params, word, t, budget=args.budget)]
        elif args.family == "frs" and args.decoder == "linear":
            cands = list_decode(params, word, args.s, budget=args.budget).messages
        elif args.family == "frs" and args.decoder == "hensel":
            cands = hensel_list_decode(params, word, args.s, budget=args.budget).messages
        elif args.family == "derivative" and args.decoder == "linear":
            cands = der_list_decode(params, word, args.s, budget=args.budget).messages
        else:
            raise CodeError(f"decoder {args.decoder!r} not available for {args.family}")
        micros = (time.perf_counter_ns() - t0) // 1000 if timing else "-"
        rows.append((trial, int(f in cands), len(cands), ncols, micros))
    spec = {
        "command": "experiment",
        "family": args.family,
        "q": args.q,
        "m": args.m,
        "k": args.k,
        "s": args.s,
        "errors": args.errors,
        "trials": args.trials,
        "seed": args.seed,
        "decoder": args.decoder,
        "budget": args.budget,
    }
    if args.family == "frs":
        spec["N"] = params.N
        spec["gamma"] = params.gamma
    else:
        spec["n"] = params.n
    _write_text(args.out, _rows_to_tsv(rows))
    sys.stdout.write(_summary_json(spec, rows))
    return 0


def cmd_localsim(args) -> int:
    params = MultParams(GF(args.q), args.m, args.s, args.d)
    timing = args.timing == "on"
    if args.mode == "bivariate" and (params.m != 2 or params.s != 2):
        raise CodeError("bivariate mode needs m = 2 and s = 2")
    rows = []
    for trial in range(args.trials):
        rng = trial_rng(args.seed, trial)
        msg = [int(v) for v in rng.integers(args.q, size=params.message_length())]
        P = message_to_multipoly(params, msg)
        clean = mult_encode(params, P)
        word = _corrupt_mult(clean, args.errors, rng)
        a = rank_point(params, int(rng.integers(params.npoints)))
        oracle = CountingOracle(word)
        t0 = time.perf_counter_ns() if timing else 0
        if args.mode == "lines":
            got = local_correct(params, oracle, a, rng, retries=args.retries)
        else:
            got = bivariate_correct(params, oracle, a, rng, dir_retries=args.retries)
        micros = (time.perf_counter_ns() - t0) // 1000 if timing else "-"
        want = clean.symbol_at(a)
        if args.mode == "bivariate":
            want = want[:3]
        ok = got == want
        rows.append((trial, int(ok), 1 if got is not None else 0, oracle.queries, micros))
    spec = {
        "command": "localsim",
        "q": args.q,
        "m": args.m,
        "s": args.s,
        "d": args.d,
        "errors": args.errors,
        "trials": args.trials,
        "seed": args.seed,
        "mode": args.mode,
        "retries": args.retries,
    }
    _write_text(args.out, _rows_to_tsv(rows))
    sys.stdout.write(_summary_json(spec, rows))
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="listdec",
        description="encode, corrupt and list-decode derivative-carrying algebraic codes",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, family=True):
        if family:
            sp.add_argument("--family", required=True,
                            choices=("frs", "derivative", "multiplicity"))
        sp.add_argument("--out", default="-", help="output path, - for stdout")

    pe = sub.add_parser("encode", help="encode a message polynomial")
    add_common(pe)
    pe.add_argument("--q", type=int, required=True)
    pe.add_argument("--m", type=int, required=True)
    pe.add_argument("--N", type=int, default=None, help="frs: columns, default (q-1)/m")
    pe.add_argument("--n", type=int, default=None, help="derivative: evaluation points")
    pe.add_argument("--k", type=int, default=None)
    pe.add_argument("--s", type=int, default=None, help="multiplicity: order bound")
    pe.add_argument("--d", type=int, default=None, help="multiplicity: degree bound")
    pe.add_argument("--gamma", type=int, default=None)
    pe.add_argument("--message", required=True, help="comma separated coefficients")
    pe.set_defaults(func=cmd_encode)

    pc = sub.add_parser("corrupt", help="replace random symbols with wrong values")
    add_common(pc)
    pc.add_argument("--in", dest="infile", required=True, help="word file, - for stdin")
    pc.add_argument("--errors", type=int, required=True)
    pc.add_argument("--seed", type=int, required=True)
    pc.set_defaults(func=cmd_corrupt)

    pd = sub.add_parser("decode", help="list-decode a received word")
    add_common(pd)
    pd.add_argument("--in", dest="infile", required=True)
    pd.add_argument("--decoder", default="linear",
                    choices=("linear", "hensel", "oracle"))
    pd.add_argument("--s", type=int, required=True, help="interpolation order")
    pd.add_argument("--t", type=int, default=None, help="agreement threshold override")
    pd.add_argument("--budget", type=int, default=10 ** 6)
    pd.set_defaults(func=cmd_decode)

    px = sub.add_parser("experiment", help="seeded encode/corrupt/decode trials")
    px.add_argument("--family", required=True, choices=("frs", "derivative"))
    px.add_argument("--out", default="-", help="TSV path, - for stdout")
    px.add_argument("--q", type=int, required=True)
    px.add_argument("--m", type=int, required=True)
    px.add_argument("--N", type=int, default=None)
    px.add_argument("--n", type=int, default=None)
    px.add_argument("--gamma", type=int, default=None)
    px.add_argument("--k", type=int, required=True)
    px.add_argument("--s", type=int, required=True)
    px.add_argument("--errors", type=int, required=True)
    px.add_argument("--trials", type=int, required=True)
    px.add_argument("--seed", type=int, required=True)
    px.add_argument("--decoder", default="linear",
                    choices=("linear", "hensel", "oracle"))
    px.add_argument("--budget", type=int, default=10 ** 6)
    px.add_argument("--timing", choices=("on", "off"), default="off")
    px.set_defaults(func=cmd_experiment)

    pl = sub.add_parser("localsim", help="local correction trials for the multiplicity family")
    pl.add_argument("--out", default="-", help="TSV path, - for stdout")
    pl.add_argument("--q", type=int, required=True)
    pl.add_argument("--m", type=int, required=True)
    pl.add_argument("--s", type=int, required=True)
    pl.add_argument("--d", type=int, required=True)
    pl.add_argument("--errors", type=int, required=True)
    pl.add_argument("--trials", type=int, required=True)
    pl.add_argument("--seed", type=int, required=True)
    pl.add_argument("--mode", choices=("lines", "bivariate"), default="lines")
    pl.add_argument("--retries", type=int, default=10)
    pl.add_argument("--timing", choices=("on", "off"), default="off")
    pl.set_defaults(func=cmd_localsim)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"listdec: budget exceeded: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"listdec: I/O error: {exc}", file=sys.stderr)
        return 3
    except (CodeError, ValueError) as exc:
        print(f"listdec: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
