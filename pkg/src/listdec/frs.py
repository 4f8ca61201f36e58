"""Folded evaluation codes on the cyclic group generated by gamma.

A message polynomial f of degree below k is evaluated at the n = q - 1
points 1, gamma, ..., gamma^(n-1) and the values are folded column-major
into an m x N matrix: column i holds f(gamma^(i*m)), ..., f(gamma^(i*m+m-1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .errors import DegreeTooLarge, LengthMismatch, ParamOutOfRange
from .field import FieldCtx, Poly, PrimeField
from .words import SymbolMatrix


@dataclass(frozen=True)
class FrsParams:
    """Parameters of a folded code instance.

    q - 1 must equal N * m, gamma must generate the multiplicative group,
    and 1 <= k <= n bounds the message degree by k - 1.
    """

    ctx: FieldCtx
    m: int
    N: int
    k: int
    gamma: int

    def __post_init__(self):
        q = self.ctx.q
        if self.m < 1 or self.N < 1:
            raise ParamOutOfRange("folding and block length must be positive")
        if self.N * self.m != q - 1:
            raise ParamOutOfRange(
                f"N*m = {self.N * self.m} must equal q-1 = {q - 1}"
            )
        if not 1 <= self.k <= self.n:
            raise ParamOutOfRange(f"message length k={self.k} outside [1, {self.n}]")
        g = self.ctx.canon(self.gamma) if isinstance(self.gamma, int) else self.gamma
        if g == 0 or self.ctx.element_order(g) != q - 1:
            raise ParamOutOfRange("gamma does not generate the multiplicative group")

    @property
    def n(self) -> int:
        return self.N * self.m

    @property
    def q(self) -> int:
        return self.ctx.q

    def eval_points(self) -> list[int]:
        """All n evaluation points, unfolded order: index i*m+j is gamma^(i*m+j)."""
        ctx = self.ctx
        pts = [1]
        for _ in range(self.n - 1):
            pts.append(ctx.mul(pts[-1], self.gamma))
        return pts


def default_params(ctx: FieldCtx, m: int, k: int, gamma: int | None = None) -> FrsParams:
    if (ctx.q - 1) % m != 0:
        raise ParamOutOfRange("folding parameter must divide q - 1")
    if gamma is None:
        gamma = ctx.primitive_element()
    return FrsParams(ctx, m, (ctx.q - 1) // m, k, gamma)


def frs_encode(params: FrsParams, f: Poly) -> SymbolMatrix:
    if f.ctx != params.ctx:
        raise ParamOutOfRange("message polynomial over the wrong field")
    if f.degree >= params.k:
        raise DegreeTooLarge(f"message degree {f.degree} exceeds k-1 = {params.k - 1}")
    pts = params.eval_points()
    if isinstance(params.ctx, PrimeField):
        vals = [int(v) for v in kernels.poly_eval_many(f.coeffs, pts, params.ctx.p)]
    else:
        vals = f.eval_many(pts)
    return fold(params, vals)


def fold(params: FrsParams, flat: list[int]) -> SymbolMatrix:
    """Column-major fold of an unfolded value vector of length n."""
    if len(flat) != params.n:
        raise LengthMismatch(f"expected {params.n} values, got {len(flat)}")
    rows = [
        [flat[i * params.m + j] for i in range(params.N)] for j in range(params.m)
    ]
    return SymbolMatrix(rows)


def unfold(params: FrsParams, word: SymbolMatrix) -> list[int]:
    if word.nrows != params.m or word.ncols != params.N:
        raise LengthMismatch("word shape does not match parameters")
    return [word.rows[j][i] for i in range(params.N) for j in range(params.m)]


def frs_rate(params: FrsParams) -> Fraction:
    return Fraction(params.k, params.n)


def frs_min_distance(params: FrsParams) -> int:
    """Column distance of the folded code: N - ceil(k/m) + 1."""
    return params.N - (params.k + params.m - 1) // params.m + 1


def frs_decoding_radius(params: FrsParams, s: int, delta: Fraction) -> int:
    """Largest column error count e with
    e <= N - (1+delta) * (k^s * N * (m-s+1))^(1/(s+1)) / (m-s+1),
    computed exactly: e = N - u where u is the least integer whose (s+1)-th
    power reaches (1+delta)^(s+1) * k^s * N / (m-s+1)^s.
    """
    if not 1 <= s <= params.m:
        raise ParamOutOfRange(f"interpolation order s={s} outside [1, {params.m}]")
    delta = Fraction(delta)
    if delta < 0:
        raise ParamOutOfRange("delta must be nonnegative")
    T = (
        (1 + delta) ** (s + 1)
        * Fraction(params.k**s * params.N, (params.m - s + 1) ** s)
    )
    lo, hi = 0, 1
    while Fraction(hi ** (s + 1)) < T:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if Fraction(mid ** (s + 1)) >= T:
            hi = mid
        else:
            lo = mid + 1
    return params.N - lo


def choose_capacity_params(eps: Fraction) -> tuple[int, int, Fraction]:
    """Pick (s, m, delta) reaching radius ~ (1 - rate - eps) * N:
    s = ceil(1/eps), m = s^2, delta = eps."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ParamOutOfRange("eps must lie in (0, 1)")
    s = (eps.denominator + eps.numerator - 1) // eps.numerator
    return s, s * s, eps


# ---------------------------------------------------------------------------
# text format: header "q m N k gamma", then m rows of N elements


def frs_word_to_text(params: FrsParams, word: SymbolMatrix) -> str:
    ctx = params.ctx
    lines = [f"{params.q} {params.m} {params.N} {params.k} {ctx.format_elem(params.gamma)}"]
    for row in word.rows:
        lines.append(" ".join(ctx.format_elem(c) for c in row))
    return "\n".join(lines) + "\n"


def frs_word_from_text(text: str, GF=None) -> tuple[FrsParams, SymbolMatrix]:
    from .field import GF as default_GF

    make = GF or default_GF
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if len(head) != 5:
        raise LengthMismatch("header must be: q m N k gamma")
    q, m, N, k = (int(x) for x in head[:4])
    ctx = make(q)
    gamma = ctx.parse_elem(head[4])
    params = FrsParams(ctx, m, N, k, gamma)
    if len(lines) != 1 + m:
        raise LengthMismatch(f"expected {m} symbol rows")
    rows = [[ctx.parse_elem(t) for t in ln.split()] for ln in lines[1:]]
    if any(len(r) != N for r in rows):
        raise LengthMismatch("row width does not match N")
    return params, SymbolMatrix(rows)
