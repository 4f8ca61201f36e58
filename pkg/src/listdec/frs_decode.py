"""List decoding of folded codes by linear-algebraic interpolation.

The decoder interpolates a nonzero polynomial
    Q(X, Y_1, ..., Y_s) = A_0(X) + A_1(X) Y_1 + ... + A_s(X) Y_s
vanishing on a sliding window of s consecutive symbols inside every column
of the received word.  Any message f whose codeword agrees with the received
word on at least t columns then satisfies

    A_0(X) + A_1(X) f(X) + A_2(X) f(gamma X) + ... = 0,

and comparing coefficients of X^r turns that identity into a linear
recurrence on the coefficients of f: each f_r is either forced or free,
which yields an affine space of dimension at most s - 1 containing every
candidate.  Enumerating the space and keeping the candidates with enough
column agreement finishes the decode.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded, LengthMismatch, ParamOutOfRange
from .field import MultiPoly, Poly
from .frs import FrsParams, frs_encode
from .linalg import nullspace_vector
from .results import AffineSolutionSet, DecodeResult
from .words import SymbolMatrix


@dataclass(frozen=True)
class InterpolationPoly:
    """Q = A_0 + sum A_i Y_i with deg A_0 <= d+k-1 and deg A_i <= d."""

    a_polys: tuple
    d: int
    s: int

    @property
    def ctx(self):
        return self.a_polys[0].ctx

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.a_polys)

    def eval(self, x: int, ys) -> int:
        if len(ys) != self.s:
            raise LengthMismatch(f"need {self.s} window values")
        ctx = self.ctx
        acc = self.a_polys[0].eval(x)
        for a, y in zip(self.a_polys[1:], ys):
            acc = ctx.add(acc, ctx.mul(a.eval(x), y))
        return acc

    def compose(self, f: Poly, gamma: int) -> Poly:
        """A_0 + sum_i A_i(X) * f(gamma^(i-1) X)."""
        ctx = self.ctx
        acc = self.a_polys[0]
        g = 1
        for a in self.a_polys[1:]:
            acc = acc + a * f.scale_arg(g)
            g = ctx.mul(g, gamma)
        return acc

    def to_multipoly(self) -> MultiPoly:
        """Same polynomial with variables (X, Y_1, ..., Y_s)."""
        ctx = self.ctx
        arity = self.s + 1
        terms = {}
        for l, c in enumerate(self.a_polys[0].coeffs):
            if c:
                terms[(l,) + (0,) * self.s] = c
        for i, a in enumerate(self.a_polys[1:], start=1):
            for l, c in enumerate(a.coeffs):
                if c:
                    e = [l] + [0] * self.s
                    e[i] = 1
                    terms[tuple(e)] = c
        return MultiPoly(ctx, arity, terms)


def degree_param(params: FrsParams, s: int) -> int:
    """Interpolation degree d = floor((N(m-s+1) - k + 1) / (s+1))."""
    if not 1 <= s <= params.m:
        raise ParamOutOfRange(f"window order s={s} outside [1, {params.m}]")
    d = (params.N * (params.m - s + 1) - params.k + 1) // (s + 1)
    if d < 0:
        raise ParamOutOfRange("message length too large for this window order")
    return d


def agreement_threshold(params: FrsParams, s: int, d: int) -> int:
    """Smallest t with t(m-s+1) >= d+k: a root-counting bound guaranteeing
    every message with >= t agreeing columns appears in the decoded list."""
    return -((d + params.k) // -(params.m - s + 1))


def interpolate(params: FrsParams, y: SymbolMatrix, s: int, d: int | None = None) -> InterpolationPoly:
    """Deterministic nonzero Q vanishing on every length-s window of y.

    Constraints: Q(g^(im+j), y[j,i], ..., y[j+s-1,i]) = 0 for i in [0,N) and
    j in [0, m-s], which is N(m-s+1) rows.  Unknown coefficients are ordered
    X-degree major, Y-index minor, and the returned vector is the reduced
    system's first-free-column kernel element.
    """
    if y.nrows != params.m or y.ncols != params.N:
        raise LengthMismatch("received word shape does not match parameters")
    if d is None:
        d = degree_param(params, s)
    if not 1 <= s <= params.m:
        raise ParamOutOfRange(f"window order s={s} outside [1, {params.m}]")
    ctx = params.ctx

    # column layout: (X-degree l, slot) with slot 0 for A_0 and slot i for A_i
    cols = []
    for l in range(d + params.k):
        for slot in range(s + 1):
            if slot == 0 or l <= d:
                cols.append((l, slot))
    col_index = {c: i for i, c in enumerate(cols)}

    rows = []
    pts = params.eval_points()
    for i in range(params.N):
        for j in range(params.m - s + 1):
            x = pts[i * params.m + j]
            row = [0] * len(cols)
            xp = 1
            for l in range(d + params.k):
                for slot in range(s + 1):
                    if slot == 0:
                        row[col_index[(l, 0)]] = xp
                    elif l <= d:
                        row[col_index[(l, slot)]] = ctx.mul(
                            xp, y.rows[j + slot - 1][i]
                        )
                xp = ctx.mul(xp, x)
            rows.append(row)

    assert len(cols) > len(rows), "monomial count must exceed constraint count"
    vec = nullspace_vector(rows, len(cols), ctx)
    assert vec is not None, "underdetermined system always has a kernel vector"

    a_coeffs = [[0] * (d + params.k if i == 0 else d + 1) for i in range(s + 1)]
    for (l, slot), idx in col_index.items():
        a_coeffs[slot][l] = vec[idx]
    return InterpolationPoly(tuple(Poly(ctx, cs) for cs in a_coeffs), d, s)


def _strip_common_x(a_polys, ctx):
    """Divide all A_i by the largest power of X dividing every one of them."""
    vals = []
    for a in a_polys:
        if not a.is_zero():
            vals.append(next(i for i, c in enumerate(a.coeffs) if c))
    assert vals, "interpolation output must be nonzero"
    r = min(vals)
    if r == 0:
        return list(a_polys)
    return [Poly(ctx, a.coeffs[r:]) for a in a_polys]


def solve_affine(ipoly: InterpolationPoly, params: FrsParams) -> AffineSolutionSet:
    """Back-substitute the coefficient recurrence of
    A_0 + sum_i A_i(X) f(gamma^(i-1) X) = 0 into an affine space.

    Comparing X^r coefficients gives B(gamma^r) f_r = -(known terms) with
    B(X) = sum_i a_{i,0} X^(i-1); whenever B(gamma^r) = 0 the coordinate f_r
    is left free.  A forced nonzero constant (B identically zero) means no
    message satisfies the identity and the empty set is returned.
    """
    ctx = params.ctx
    k = params.k
    a = _strip_common_x(ipoly.a_polys, ctx)
    s = ipoly.s

    B = Poly(ctx, [p.coeff(0) for p in a[1:]])
    if B.is_zero():
        # after stripping, the constant term lives in A_0: contradiction
        assert a[0].coeff(0) != 0
        return AffineSolutionSet.empty_set(ctx, k, {"reason": "constant conflict"})

    rows = []  # per coefficient: (const, {free_var: coeff})
    free_indices: list[int] = []
    gpow = 1  # gamma^r
    for r in range(k):
        br = B.eval(gpow)
        const = a[0].coeff(r)
        vec: dict[int, int] = {}
        for l in range(r):
            # weight multiplying f_l in the X^r coefficient
            w = 0
            gl = 1  # gamma^((i-1)*l) accumulator
            glstep = ctx.pow(params.gamma, l)
            for i in range(1, s + 1):
                w = ctx.add(w, ctx.mul(a[i].coeff(r - l), gl))
                gl = ctx.mul(gl, glstep)
            if w:
                cl, vl = rows[l]
                if cl:
                    const = ctx.add(const, ctx.mul(w, cl))
                for fv, fc in vl.items():
                    vec[fv] = ctx.add(vec.get(fv, 0), ctx.mul(w, fc))
        if br:
            neg_inv = ctx.neg(ctx.inv(br))
            const = ctx.mul(const, neg_inv)
            vec = {fv: ctx.mul(fc, neg_inv) for fv, fc in vec.items() if fc}
            rows.append((const, vec))
        else:
            v = len(free_indices)
            free_indices.append(r)
            rows.append((0, {v: 1}))
        gpow = ctx.mul(gpow, params.gamma)

    dim = len(free_indices)
    M = [[vec.get(j, 0) for j in range(dim)] for _, vec in rows]
    z = [const for const, _ in rows]
    return AffineSolutionSet(ctx, k, dim, M, z, free_indices)


def prune(
    params: FrsParams,
    sol: AffineSolutionSet,
    y: SymbolMatrix,
    t: int,
    budget: int = 10**6,
) -> list:
    """Filter the affine space down to messages agreeing on >= t columns."""
    out = []
    for f in sol.enumerate(budget=budget):
        agr = frs_encode(params, f).agreement(y)
        if agr >= t:
            out.append((f, agr))
    out.sort(key=lambda fa: fa[0].coeffs)
    return out


def list_decode(
    params: FrsParams,
    y: SymbolMatrix,
    s: int,
    t: int | None = None,
    budget: int = 10**6,
) -> DecodeResult:
    """Interpolate, back-substitute, enumerate, and keep agreeing messages.

    The returned list contains every message polynomial whose codeword
    agrees with y on at least t columns (default: the root-counting
    threshold for the derived degree parameter).
    """
    d = degree_param(params, s)
    if t is None:
        t = agreement_threshold(params, s, d)
    ipoly = interpolate(params, y, s, d)
    sol = solve_affine(ipoly, params)
    cands = prune(params, sol, y, t, budget)
    return DecodeResult(
        cands,
        {
            "decoder": "linear",
            "d": d,
            "s": s,
            "threshold": t,
            "affine_dim": sol.dim,
            "enumerated": sol.size(),
            "inconsistent": sol.empty,
        },
    )
