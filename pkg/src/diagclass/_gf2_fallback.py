"""Pure-numpy fallback for the packed GF(2) elimination kernel.

Same contract as the compiled version in _gf2_native: in-place forward
elimination of a bit-packed matrix, returning the rank.  Per-pivot work
is vectorised over the rows that carry the pivot bit.
"""

from __future__ import annotations

import numpy as np


def packed_rank(m: np.ndarray, ncols: int) -> int:
    nrows = m.shape[0]
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        w, b = divmod(col, 64)
        colbits = (m[r:, w] >> np.uint64(b)) & np.uint64(1)
        nz = np.nonzero(colbits)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            tmp = m[r, w:].copy()
            m[r, w:] = m[piv, w:]
            m[piv, w:] = tmp
        rows = r + nz[1:]
        if rows.size:
            m[rows[:, None], np.arange(w, m.shape[1])[None, :]] ^= m[r, w:][None, :]
        r += 1
    return r
