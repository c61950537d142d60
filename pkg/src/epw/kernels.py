"""Kernel backend selection.

The hot loops (polynomial determinant DP, finite-field rank, projective
and Grassmannian scans) have two interchangeable implementations: a
compiled Cython extension (`epw._core`) and a numpy fallback
(`epw._kernels_py`).  The choice is made once at import time; set
``EPW_PURE_PYTHON=1`` to force the fallback.  ``benchmarks/bench_backends.py``
compares the two.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

if os.environ.get("EPW_PURE_PYTHON"):
    _backend = _kernels_py
else:
    try:
        from . import _core as _backend  # type: ignore[no-redef]
    except ImportError:
        _backend = _kernels_py

BACKEND = _backend.NAME

# products c*src plus accumulation must stay below 2^63
_MAX_KERNEL_PRIME = 1 << 29


def get():
    return _backend


def fallback():
    return _kernels_py


def supports_field(field):
    """True when the prime-field fast path may be used for this field."""
    p = getattr(field, "p", None)
    return p is not None and p < _MAX_KERNEL_PRIME


def eval_many(exps, coeffs, points, p):
    """Evaluate a mod-p polynomial at many points at once.

    exps (T, v), coeffs (T,), points (N, v) -> values (N,)
    """
    exps = np.asarray(exps, dtype=np.int64)
    coeffs = np.asarray(coeffs, dtype=np.int64) % p
    points = np.asarray(points, dtype=np.int64) % p
    if exps.size == 0:
        return np.zeros(len(points), dtype=np.int64)
    maxexp = int(exps.max())
    # pow_table[n, v, e] = points[n, v] ** e mod p
    pows = np.ones((points.shape[0], points.shape[1], maxexp + 1), dtype=np.int64)
    for e in range(1, maxexp + 1):
        pows[:, :, e] = pows[:, :, e - 1] * points % p
    vals = np.zeros(len(points), dtype=np.int64)
    for t in range(exps.shape[0]):
        mono = np.ones(len(points), dtype=np.int64)
        for v in range(exps.shape[1]):
            e = int(exps[t, v])
            if e:
                mono = mono * pows[:, v, e] % p
        vals = (vals + coeffs[t] * mono) % p
    return vals
