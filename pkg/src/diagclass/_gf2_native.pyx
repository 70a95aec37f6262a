# cython: boundscheck=False, wraparound=False, cdivision=True
"""Packed GF(2) row elimination, the hot kernel of the rank engine.

Rows are stored 64 columns per machine word, least significant bit first.
Forward elimination only: enough for rank, half the work of full
reduction.  XORs are restricted to the word range at or right of the
pivot column, which is sound because all earlier columns of the active
rows are already zero below their pivots.
"""

from libc.stdint cimport uint64_t


def packed_rank(uint64_t[:, ::1] m, Py_ssize_t ncols):
    """In-place forward elimination; returns the rank.

    m is modified (left in row echelon form up to row order).
    """
    cdef Py_ssize_t nrows = m.shape[0]
    cdef Py_ssize_t nwords = m.shape[1]
    cdef Py_ssize_t r = 0
    cdef Py_ssize_t col, w, i, j, piv
    cdef uint64_t mask, tmp

    for col in range(ncols):
        if r == nrows:
            break
        w = col >> 6
        mask = (<uint64_t>1) << (col & 63)
        piv = -1
        for i in range(r, nrows):
            if m[i, w] & mask:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(w, nwords):
                tmp = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = tmp
        for i in range(r + 1, nrows):
            if m[i, w] & mask:
                for j in range(w, nwords):
                    m[i, j] ^= m[r, j]
        r += 1
    return r
