"""Linear algebra over field contexts.

Prime fields route through the selected kernel backend (int64 matrices);
extension fields use a generic elimination over context arithmetic.  Both
paths use the same deterministic pivot rule (columns left to right, first
remaining row with a nonzero entry), so results are reproducible and
backend-independent.
"""

from __future__ import annotations

from . import kernels
from .field import FieldCtx, PrimeField


def _generic_rref(rows: list[list[int]], ctx: FieldCtx):
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        inv = ctx.inv(m[r][c])
        m[r] = [ctx.mul(inv, x) for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, tuple(pivots)


def rref(rows, ctx: FieldCtx):
    """Reduced row echelon form; returns (rows as lists, pivot columns)."""
    if not rows:
        return [], ()
    if isinstance(ctx, PrimeField):
        m, pivots = kernels.rref(rows, ctx.p)
        return [[int(x) for x in row] for row in m], pivots
    return _generic_rref(rows, ctx)


def rank(rows, ctx: FieldCtx) -> int:
    return len(rref(rows, ctx)[1])


def nullspace_vector(rows, ncols: int, ctx: FieldCtx):
    """One deterministic nonzero kernel vector of the row system, or None.

    The first free column (in the given column order) is set to 1 and the
    pivot coordinates are back-filled from the reduced form.
    """
    if not rows:
        if ncols == 0:
            return None
        v = [0] * ncols
        v[0] = 1
        return v
    m, pivots = rref(rows, ctx)
    pivot_set = set(pivots)
    free = next((c for c in range(ncols) if c not in pivot_set), None)
    if free is None:
        return None
    v = [0] * ncols
    v[free] = 1
    for r, c in enumerate(pivots):
        v[c] = ctx.neg(m[r][free])
    return v


def solve(a_rows, b, ctx: FieldCtx):
    """Solve A x = b. Returns (solution | None, unique flag).

    Inconsistent systems return (None, False).  When underdetermined, free
    variables are set to zero and unique is False.
    """
    if not a_rows:
        return [0] * 0, True
    ncols = len(a_rows[0])
    aug = [list(r) + [bv] for r, bv in zip(a_rows, b)]
    m, pivots = rref(aug, ctx)
    if ncols in pivots:
        return None, False
    x = [0] * ncols
    for r, c in enumerate(pivots):
        x[c] = m[r][ncols]
    return x, len(pivots) == ncols
