"""NumPy implementations of the hot kernels.

Fallback backend used when the compiled extension is unavailable.  All
matrices are int64 arrays with entries reduced mod a prime p.  Products
must stay below 2**63: callers keep p small (the guard below enforces it).
"""

from __future__ import annotations

import numpy as np

NAME = "python"


def _check_prime_size(p: int, inner: int = 1):
    if inner * (p - 1) * (p - 1) >= 2**63:
        raise OverflowError(f"modulus {p} too large for int64 accumulation")


def rref(a, p: int):
    """Reduced row echelon form mod p.

    Pivot choice is deterministic: columns scanned left to right, pivot row
    is the first remaining row with a nonzero entry.  Returns (R, pivots).
    """
    m = np.array(a, dtype=np.int64) % p
    nrows, ncols = m.shape
    _check_prime_size(p)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        m = (m - np.outer(col, m[r])) % p
        pivots.append(c)
        r += 1
    return m, tuple(pivots)


def matmul(a, b, p: int):
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    _check_prime_size(p, inner=a.shape[-1])
    return (a @ b) % p


def matvec(a, v, p: int):
    a = np.asarray(a, dtype=np.int64) % p
    v = np.asarray(v, dtype=np.int64) % p
    _check_prime_size(p, inner=a.shape[-1])
    return (a @ v) % p


def poly_eval_many(coeffs, xs, p: int):
    """Evaluate one polynomial (lowest-first coefficients) at many points."""
    xs = np.asarray(xs, dtype=np.int64) % p
    _check_prime_size(p)
    acc = np.zeros_like(xs)
    for c in reversed(list(coeffs)):
        acc = (acc * xs + int(c) % p) % p
    return acc
