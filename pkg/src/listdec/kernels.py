"""Backend selection for the mod-p kernels.

The compiled extension is preferred when it imports cleanly; otherwise the
NumPy fallback is used.  Set LISTDEC_FORCE_FALLBACK=1 to skip the extension
(useful for benchmarking and debugging).
"""

import os

import numpy as np

from . import _kernels_py

if os.environ.get("LISTDEC_FORCE_FALLBACK") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.NAME

rref = _impl.rref
poly_eval_many = _impl.poly_eval_many

# NumPy's integer matmul reduces mod p once at the end and beats the cell
# loops on anything sizeable, so matrix products stay on the fallback; the
# compiled matvec only pays off while the matrix fits in cache.
matmul = _kernels_py.matmul

if _impl is _kernels_py:
    matvec = _kernels_py.matvec
else:
    _MATVEC_CUTOVER = 768

    def matvec(a, v, p: int):
        a = np.asarray(a)
        if a.size <= _MATVEC_CUTOVER:
            return _impl.matvec(a, v, p)
        return _kernels_py.matvec(a, v, p)
