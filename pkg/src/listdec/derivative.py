"""Codes from formal derivatives: column i carries f and its first m-1
derivatives at the point alpha_i.  Requires field characteristic above the
message degree bound so the derivative columns stay informative.

Decoding mirrors the folded-code pipeline.  Interpolation enforces, besides
Q itself, the vanishing of D^j Q at every point, where D is the weighted
shift p(X) Y_i -> p'(X) Y_i + p(X) Y_{i+1} under which honest words are
closed.  Back substitution on

    Xi(X) = A_0 + A_1 f + A_2 f' + ... + A_s f^(s-1)

forces one new coefficient of f per power of X (the factorial weights are
nonzero below the characteristic), leaving at most s - 1 coordinates free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .errors import (
    DegreeTooLarge,
    IndexOverflow,
    LengthMismatch,
    ParamOutOfRange,
)
from .field import FieldCtx, Poly, PrimeField
from .frs_decode import InterpolationPoly
from .linalg import nullspace_vector
from .results import AffineSolutionSet, DecodeResult
from .words import SymbolMatrix


@dataclass(frozen=True)
class DerParams:
    """Parameters: n distinct evaluation points, m derivative rows, message
    length k with m <= k < n*m <= q and char > k."""

    ctx: FieldCtx
    n: int
    m: int
    k: int
    points: tuple

    def __post_init__(self):
        q = self.ctx.q
        if self.m < 1:
            raise ParamOutOfRange("need at least one derivative row")
        if not self.m <= self.k < self.n * self.m <= q:
            raise ParamOutOfRange(
                f"need m <= k < n*m <= q, got m={self.m} k={self.k} "
                f"n*m={self.n * self.m} q={q}"
            )
        if self.ctx.char <= self.k:
            raise ParamOutOfRange(
                f"characteristic {self.ctx.char} must exceed k={self.k}"
            )
        pts = tuple(self.ctx.canon(a) for a in self.points)
        if len(pts) != self.n or len(set(pts)) != self.n:
            raise ParamOutOfRange("evaluation points must be n distinct elements")
        object.__setattr__(self, "points", pts)

    @property
    def q(self) -> int:
        return self.ctx.q


def default_der_params(ctx: FieldCtx, n: int, m: int, k: int) -> DerParams:
    """Points default to 1, gamma, gamma^2, ... for the canonical generator."""
    if n > ctx.q - 1:
        raise ParamOutOfRange("too many default points; pass explicit ones")
    g = ctx.primitive_element()
    pts = [1]
    for _ in range(n - 1):
        pts.append(ctx.mul(pts[-1], g))
    return DerParams(ctx, n, m, k, tuple(pts))


def der_encode(params: DerParams, f: Poly) -> SymbolMatrix:
    if f.ctx != params.ctx:
        raise ParamOutOfRange("message polynomial over the wrong field")
    if f.degree >= params.k:
        raise DegreeTooLarge(f"message degree {f.degree} exceeds k-1 = {params.k - 1}")
    rows = []
    g = f
    for _ in range(params.m):
        if isinstance(params.ctx, PrimeField):
            rows.append(
                [int(v) for v in kernels.poly_eval_many(g.coeffs, params.points, params.ctx.p)]
            )
        else:
            rows.append(g.eval_many(params.points))
        g = g.derivative()
    return SymbolMatrix(rows)


def der_rate(params: DerParams) -> Fraction:
    return Fraction(params.k, params.n * params.m)


def der_min_distance(params: DerParams) -> int:
    return params.n - (params.k - 1) // params.m


# ---------------------------------------------------------------------------
# the derivative operator on interpolation polynomials


class DOperatorPoly:
    """B_0(X) + B_1(X) Y_1 + ... + B_m(X) Y_m, the shape closed under D."""

    __slots__ = ("ctx", "m", "polys")

    def __init__(self, ctx: FieldCtx, m: int, polys):
        polys = tuple(polys)
        if len(polys) != m + 1:
            raise LengthMismatch("need exactly m+1 coefficient polynomials")
        self.ctx = ctx
        self.m = m
        self.polys = polys

    def eval(self, x: int, ys) -> int:
        if len(ys) != self.m:
            raise LengthMismatch(f"need {self.m} derivative values")
        ctx = self.ctx
        acc = self.polys[0].eval(x)
        for b, y in zip(self.polys[1:], ys):
            if not b.is_zero():
                acc = ctx.add(acc, ctx.mul(b.eval(x), y))
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, DOperatorPoly)
            and self.m == other.m
            and self.polys == other.polys
        )

    def __repr__(self):
        return f"DOperatorPoly({self.m}, {list(self.polys)})"


def d_operator(w: DOperatorPoly) -> DOperatorPoly:
    """Formal derivative in X plus index shift: p Y_i -> p' Y_i + p Y_{i+1}.

    Applying it to something carrying Y_m is out of range: there is no
    Y_{m+1} row, and the operator does not wrap around.
    """
    if not w.polys[w.m].is_zero():
        raise IndexOverflow(
            "derivative operator would shift past the last derivative row"
        )
    polys = [w.polys[0].derivative(), w.polys[1].derivative()]
    for i in range(2, w.m + 1):
        polys.append(w.polys[i].derivative() + w.polys[i - 1])
    return DOperatorPoly(w.ctx, w.m, polys)


def der_degree_param(params: DerParams, s: int) -> int:
    if not 1 <= s <= params.m:
        raise ParamOutOfRange(f"window order s={s} outside [1, {params.m}]")
    d = (params.n * (params.m - s + 1) - params.k + 1) // (s + 1)
    if d < 0:
        raise ParamOutOfRange("message length too large for this window order")
    return d


def der_agreement_threshold(params: DerParams, s: int, d: int) -> int:
    """Smallest integer strictly above (d+k-1)/(m-s+1)."""
    return (d + params.k - 1) // (params.m - s + 1) + 1


def der_interpolate(params: DerParams, y: SymbolMatrix, s: int, d: int | None = None) -> InterpolationPoly:
    """Nonzero Q = A_0 + sum A_i Y_i with Q and its first m-s images under
    the derivative operator vanishing on every received column.

    That is n(m-s+1) linear constraints; unknown coefficients are ordered
    X-degree major, Y-index minor, as in the folded-code interpolation.
    """
    if y.nrows != params.m or y.ncols != params.n:
        raise LengthMismatch("received word shape does not match parameters")
    if d is None:
        d = der_degree_param(params, s)
    if not 1 <= s <= params.m:
        raise ParamOutOfRange(f"window order s={s} outside [1, {params.m}]")
    ctx = params.ctx

    cols = []
    for l in range(d + params.k):
        for slot in range(s + 1):
            if slot == 0 or l <= d:
                cols.append((l, slot))
    col_index = {c: i for i, c in enumerate(cols)}

    # D^kappa of each unknown basis monomial, built by repeated application
    basis = []
    for l, slot in cols:
        polys = [Poly.zero(ctx) for _ in range(params.m + 1)]
        polys[slot] = Poly(ctx, [0] * l + [1])
        basis.append(DOperatorPoly(ctx, params.m, polys))
    levels = [basis]
    for _ in range(params.m - s):
        levels.append([d_operator(w) for w in levels[-1]])

    rows = []
    for i in range(params.n):
        col = y.column(i)
        x = params.points[i]
        for level in levels:
            rows.append([w.eval(x, col) for w in level])

    assert len(cols) > len(rows), "monomial count must exceed constraint count"
    vec = nullspace_vector(rows, len(cols), ctx)
    assert vec is not None

    a_coeffs = [[0] * (d + params.k if i == 0 else d + 1) for i in range(s + 1)]
    for (l, slot), idx in col_index.items():
        a_coeffs[slot][l] = vec[idx]
    return InterpolationPoly(tuple(Poly(ctx, cs) for cs in a_coeffs), d, s)


def _falling_weight(ctx: FieldCtx, kappa: int, j: int) -> int:
    """(kappa+j-1)! / kappa!  =  (kappa+1)(kappa+2)...(kappa+j-1), mod p."""
    acc = 1
    for t in range(kappa + 1, kappa + j):
        acc = ctx.mul(acc, t % ctx.p)
    return acc


def der_solve_affine(
    ipoly: InterpolationPoly, params: DerParams, translate: bool = True
) -> AffineSolutionSet:
    """Back-substitute A_0 + sum_j A_j f^(j-1) = 0 coefficient by coefficient.

    The X^r coefficient reads
        a_{0,r} + sum_{j,kappa} a_{j,r-kappa} * ((kappa+j-1)!/kappa!) * f_{kappa+j-1}
    and its top unknown f_{r+s-1} carries weight a_{s,0} * (r+s-1)!/r!, which
    is nonzero whenever a_{s,0} != 0 (char > k keeps the factorials alive).
    A vanishing a_{s,0} is repaired by translating X -> X + beta for the
    smallest beta with A_s(beta) != 0 and mapping solutions back; pass
    translate=False to get ShiftRequired instead.  Trailing identically-zero
    A_i are dropped first; if no Y coefficient survives the system is
    inconsistent (A_0 alone cannot vanish) and the empty set is returned.
    """
    from .errors import ShiftRequired

    ctx = params.ctx
    k = params.k
    a = list(ipoly.a_polys)

    s_eff = ipoly.s
    while s_eff >= 1 and a[s_eff].is_zero():
        s_eff -= 1
    if s_eff == 0:
        assert not a[0].is_zero(), "interpolation output must be nonzero"
        return AffineSolutionSet.empty_set(
            ctx, k, {"reason": "no derivative terms", "shift_beta": 0}
        )
    a = a[: s_eff + 1]

    beta = 0
    if a[s_eff].coeff(0) == 0:
        if not translate:
            raise ShiftRequired(
                "constant term of the leading window coefficient vanishes"
            )
        beta = next(b for b in ctx.elements() if a[s_eff].eval(b) != 0)
        a = [p.shift_arg(beta) for p in a]

    # solve for g(X) = f(X + beta); rows are affine combos of the free coords
    g_rows: dict[int, tuple[int, dict]] = {}
    free_count = s_eff - 1
    for idx in range(free_count):
        g_rows[idx] = (0, {idx: 1})

    for r in range(k - s_eff + 1):
        top = r + s_eff - 1
        top_w = ctx.mul(a[s_eff].coeff(0), _falling_weight(ctx, r, s_eff))
        assert top_w != 0
        const = a[0].coeff(r)
        vec: dict[int, int] = {}
        for j in range(1, s_eff + 1):
            for kappa in range(r + 1):
                lo = kappa + j - 1
                if lo == top:
                    continue
                c = a[j].coeff(r - kappa)
                if not c:
                    continue
                w = ctx.mul(c, _falling_weight(ctx, kappa, j))
                if not w:
                    continue
                gc, gv = g_rows[lo]
                if gc:
                    const = ctx.add(const, ctx.mul(w, gc))
                for fv, fc in gv.items():
                    vec[fv] = ctx.add(vec.get(fv, 0), ctx.mul(w, fc))
        neg_inv = ctx.neg(ctx.inv(top_w))
        g_rows[top] = (
            ctx.mul(const, neg_inv),
            {fv: ctx.mul(fc, neg_inv) for fv, fc in vec.items() if fc},
        )

    dim = free_count
    # materialize g, then shift back: f(X) = g(X - beta)
    z_g = [g_rows[r][0] for r in range(k)]
    cols_g = [[g_rows[r][1].get(j, 0) for r in range(k)] for j in range(dim)]
    neg_beta = ctx.neg(beta)

    def shift_back(coeffs):
        f = Poly(ctx, coeffs).shift_arg(neg_beta)
        return [f.coeff(i) for i in range(k)]

    if beta:
        z = shift_back(z_g)
        cols = [shift_back(cg) for cg in cols_g]
    else:
        z = z_g
        cols = cols_g

    M = [[cols[j][r] for j in range(dim)] for r in range(k)]
    free_indices = list(range(free_count))
    return AffineSolutionSet(
        ctx, k, dim, M, z, free_indices,
        notes={"shift_beta": beta, "effective_s": s_eff},
    )


def der_list_decode(
    params: DerParams,
    y: SymbolMatrix,
    s: int,
    t: int | None = None,
    budget: int = 10**6,
) -> DecodeResult:
    """Full pipeline: interpolate, back-substitute, enumerate, filter by
    column agreement.  Contains every message with agreement >= t."""
    d = der_degree_param(params, s)
    if t is None:
        t = der_agreement_threshold(params, s, d)
    ipoly = der_interpolate(params, y, s, d)
    sol = der_solve_affine(ipoly, params)
    cands = []
    for f in sol.enumerate(budget=budget):
        agr = der_encode(params, f).agreement(y)
        if agr >= t:
            cands.append((f, agr))
    cands.sort(key=lambda fa: fa[0].coeffs)
    return DecodeResult(
        cands,
        {
            "decoder": "derivative",
            "d": d,
            "s": s,
            "threshold": t,
            "affine_dim": sol.dim,
            "enumerated": sol.size(),
            "inconsistent": sol.empty,
            "shift_beta": sol.notes.get("shift_beta", 0),
            "effective_s": sol.notes.get("effective_s", s),
        },
    )


# ---------------------------------------------------------------------------
# text format: header "q m n k", evaluation points line, m rows of n values


def der_word_to_text(params: DerParams, word: SymbolMatrix) -> str:
    ctx = params.ctx
    lines = [f"{params.q} {params.m} {params.n} {params.k}"]
    lines.append(" ".join(ctx.format_elem(a) for a in params.points))
    for row in word.rows:
        lines.append(" ".join(ctx.format_elem(c) for c in row))
    return "\n".join(lines) + "\n"


def der_word_from_text(text: str) -> tuple[DerParams, SymbolMatrix]:
    from .field import GF

    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if len(head) != 4:
        raise LengthMismatch("header must be: q m n k")
    q, m, n, k = (int(x) for x in head)
    ctx = GF(q)
    pts = tuple(ctx.parse_elem(t) for t in lines[1].split())
    params = DerParams(ctx, n, m, k, pts)
    if len(lines) != 2 + m:
        raise LengthMismatch(f"expected {m} symbol rows")
    rows = [[ctx.parse_elem(t) for t in ln.split()] for ln in lines[2:]]
    if any(len(r) != n for r in rows):
        raise LengthMismatch("row width does not match n")
    return params, SymbolMatrix(rows)
