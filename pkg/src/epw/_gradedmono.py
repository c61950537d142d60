"""Dense graded-monomial indexing shared by both kernel backends.

Monomials in `nvars` variables of total degree <= `maxdeg` are laid out in
blocks of increasing degree, lex ascending inside each block.  The layout
gives a stable integer rank for every monomial, and multiplying by a
single variable becomes an index lookup.
"""

from functools import lru_cache
from itertools import combinations_with_replacement

import numpy as np


@lru_cache(maxsize=None)
def tables(nvars, maxdeg):
    """Return (exponents, index, size_le, mult_index).

    exponents : tuple of exponent tuples in graded order
    index     : dict exponent tuple -> rank
    size_le   : size_le[d] = number of monomials of degree <= d
    mult_index: int64 array (nvars, size_le[maxdeg-1]); entry [v, i] is the
                rank of monomial i times variable v
    """
    exps = []
    size_le = [0] * (maxdeg + 1)
    for d in range(maxdeg + 1):
        block = []
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for v in combo:
                e[v] += 1
            block.append(tuple(e))
        block.sort()
        exps.extend(block)
        size_le[d] = len(exps)
    index = {e: i for i, e in enumerate(exps)}
    nsrc = size_le[maxdeg - 1] if maxdeg >= 1 else 0
    mult = np.zeros((nvars, nsrc), dtype=np.int64)
    for i in range(nsrc):
        e = exps[i]
        for v in range(nvars):
            ne = list(e)
            ne[v] += 1
            mult[v, i] = index[tuple(ne)]
    return tuple(exps), index, tuple(size_le), mult
