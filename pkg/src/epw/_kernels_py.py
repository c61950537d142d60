"""Pure-Python (numpy) implementations of the hot kernels.

This is the fallback selected when the compiled extension is unavailable
or explicitly disabled; both backends implement the same contract and are
exercised against each other in the test suite.

All matrices are int64 numpy arrays of residues mod an odd prime p small
enough that accumulated products stay below 2^63.
"""

from __future__ import annotations

import numpy as np

from ._gradedmono import tables

NAME = "python"


def rank_mod(mat, p):
    """Rank of an integer matrix mod p."""
    m = np.array(mat, dtype=np.int64) % p
    rows, cols = m.shape
    rank = 0
    for col in range(cols):
        piv = None
        for r in range(rank, rows):
            if m[r, col]:
                piv = r
                break
        if piv is None:
            continue
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, col]), p - 2, p)
        m[rank] = m[rank] * inv % p
        nz = np.nonzero(m[rank + 1 :, col])[0]
        if nz.size:
            rows_nz = nz + rank + 1
            m[rows_nz] = (m[rows_nz] - np.outer(m[rows_nz, col], m[rank])) % p
        rank += 1
        if rank == rows:
            break
    return rank


def linear_minor_table(const, lins, p, nrows):
    """Column-subset DP minors for a matrix of affine-linear forms.

    const : (nrows, ncols) constant coefficients
    lins  : (nvars, nrows, ncols) per-variable coefficients
    Returns {column bitmask with popcount == nrows: {exps: coeff}} with
    zero minors dropped.
    """
    const = np.asarray(const, dtype=np.int64) % p
    lins = np.asarray(lins, dtype=np.int64) % p
    nvars, _, ncols = lins.shape
    maxdeg = nrows
    exps, _, size_le, mult = tables(nvars, maxdeg)
    L = size_le[maxdeg]

    start = np.zeros(L, dtype=np.int64)
    start[0] = 1
    level = {0: start}
    for r in range(nrows):
        srclen = size_le[r]
        nxt = {}
        crow = const[r]
        lrow = lins[:, r, :]
        for mask in sorted(level):
            src = level[mask][:srclen]
            for c in range(ncols):
                bit = 1 << c
                if mask & bit:
                    continue
                c0 = int(crow[c])
                cvs = lrow[:, c]
                if c0 == 0 and not cvs.any():
                    continue
                sign = (bin(mask & (bit - 1)).count("1") + r) % 2
                nmask = mask | bit
                out = nxt.get(nmask)
                if out is None:
                    out = np.zeros(L, dtype=np.int64)
                    nxt[nmask] = out
                if c0:
                    cc = p - c0 if sign else c0
                    out[:srclen] += cc * src
                for v in range(nvars):
                    cv = int(cvs[v])
                    if cv:
                        cc = p - cv if sign else cv
                        out[mult[v, :srclen]] += cc * src
                out %= p
        level = {m: a for m, a in nxt.items() if a.any()}

    result = {}
    for mask, arr in level.items():
        nz = np.nonzero(arr)[0]
        result[mask] = {exps[i]: int(arr[i]) for i in nz}
    return result


def scan_p5(abasis, pair_tensor, p, collect_min=2):
    """Corank histogram of dim(A + F_v) over all points of P^5(F_p).

    abasis      : (10, 20) basis of A mod p
    pair_tensor : (15, 20, 6) with rows[k] = coordinates of v ^ e_a ^ e_b
    Returns (counts list indexed by corank, {corank: [point tuples]}).
    """
    abasis = np.asarray(abasis, dtype=np.int64) % p
    pair_tensor = np.asarray(pair_tensor, dtype=np.int64) % p
    counts = [0] * 21
    pts = {}
    for v in _projective_points(6, p):
        varr = np.array(v, dtype=np.int64)
        frows = np.tensordot(pair_tensor, varr, axes=([2], [0])) % p
        stacked = np.vstack([abasis, frows])
        corank = 20 - rank_mod(stacked, p)
        counts[corank] += 1
        if corank >= collect_min:
            pts.setdefault(corank, []).append(tuple(v))
    for c in pts:
        pts[c].sort()
    return counts, pts


def _projective_points(n, p):
    """Normalized representatives (first nonzero coordinate = 1)."""
    from itertools import product

    for lead in range(n):
        for tail in product(range(p), repeat=n - lead - 1):
            yield (0,) * lead + (1,) + tail


def scan_gr36(gmat, p, triples, chunk=1 << 15):
    """Enumerate Gr(3,6)(F_p) by RREF cells, testing decomposables against
    the annihilator functionals `gmat` (10 x 20).

    triples: (20, 3) column triples defining the Plucker coordinates.
    Returns (total number of points, list of hit Plucker 20-tuples).
    """
    from itertools import combinations

    gmat = np.asarray(gmat, dtype=np.int64) % p
    triples = np.asarray(triples, dtype=np.int64)
    total = 0
    hits = []
    for pivots in combinations(range(6), 3):
        free = _free_positions(pivots)
        t = len(free)
        npts = p**t
        total += npts
        for lo in range(0, npts, chunk):
            hi = min(npts, lo + chunk)
            block = _cell_block(pivots, free, p, lo, hi)
            pl = _plucker_batch(block, triples, p)
            residues = pl @ gmat.T % p
            for idx in np.nonzero(~residues.any(axis=1))[0]:
                hits.append(tuple(int(x) for x in pl[idx]))
    hits.sort()
    return total, hits


def _free_positions(pivots):
    free = []
    for r, pc in enumerate(pivots):
        for c in range(pc + 1, 6):
            if c not in pivots:
                free.append((r, c))
    return free


def _cell_block(pivots, free, p, lo, hi):
    n = hi - lo
    block = np.zeros((n, 3, 6), dtype=np.int64)
    for r, pc in enumerate(pivots):
        block[:, r, pc] = 1
    idx = np.arange(lo, hi, dtype=np.int64)
    for k, (r, c) in enumerate(reversed(free)):
        block[:, r, c] = idx % p
        idx //= p
    return block


def _plucker_batch(block, triples, p):
    cols = block[:, :, triples]  # (n, 3, 20, 3)
    a = cols[:, 0, :, :]
    b = cols[:, 1, :, :]
    c = cols[:, 2, :, :]
    det = (
        a[:, :, 0] * (b[:, :, 1] * c[:, :, 2] - b[:, :, 2] * c[:, :, 1])
        - a[:, :, 1] * (b[:, :, 0] * c[:, :, 2] - b[:, :, 2] * c[:, :, 0])
        + a[:, :, 2] * (b[:, :, 0] * c[:, :, 1] - b[:, :, 1] * c[:, :, 0])
    )
    return det % p
