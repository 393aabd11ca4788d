# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contract as ``_kernels_py``."""

BACKEND = "compiled"


cpdef tuple mono_mul(tuple a, tuple b):
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t lb = len(b)
    cdef Py_ssize_t i = 0, j = 0
    cdef long va, vb
    if la == 0:
        return b
    if lb == 0:
        return a
    cdef list out = []
    while i < la and j < lb:
        va = a[i]
        vb = b[j]
        if va < vb:
            out.append(a[i])
            out.append(a[i + 1])
            i += 2
        elif vb < va:
            out.append(b[j])
            out.append(b[j + 1])
            j += 2
        else:
            out.append(a[i])
            out.append(<long>a[i + 1] + <long>b[j + 1])
            i += 2
            j += 2
    while i < la:
        out.append(a[i])
        i += 1
    while j < lb:
        out.append(b[j])
        j += 1
    return tuple(out)


cpdef dict poly_mul(dict a, dict b):
    cdef dict out = {}
    cdef tuple ka, kb, k
    cdef object ca, cb, c
    if len(a) > len(b):
        a, b = b, a
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = mono_mul(ka, kb)
            c = out.get(k)
            if c is None:
                out[k] = ca * cb
            else:
                out[k] = c + ca * cb
    return {k: c for k, c in out.items() if c}


cpdef dict apply_derivation(dict terms, dict images):
    cdef dict out = {}
    cdef tuple key, rest, ik, k
    cdef object c, ce, ic, prev, img
    cdef Py_ssize_t n, pos
    cdef long e
    for key, c in terms.items():
        n = len(key)
        pos = 0
        while pos < n:
            img = images.get(key[pos])
            if img is not None:
                e = key[pos + 1]
                if e == 1:
                    rest = key[:pos] + key[pos + 2:]
                else:
                    rest = key[:pos + 1] + (e - 1,) + key[pos + 2:]
                ce = c * e
                for ik, ic in (<dict>img).items():
                    k = mono_mul(rest, ik)
                    prev = out.get(k)
                    if prev is None:
                        out[k] = ce * ic
                    else:
                        out[k] = prev + ce * ic
            pos += 2
    return {k: c for k, c in out.items() if c}


cpdef Py_ssize_t rank_int(rows):
    cdef list m = [list(src) for src in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t ncols, rank = 0, col, r, cc, piv
    cdef list prow, row
    cdef object prev = 1, p, f
    if nrows == 0:
        return 0
    ncols = len(m[0])
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for r in range(rank, nrows):
            if (<list>m[r])[col]:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            m[piv], m[rank] = m[rank], m[piv]
        prow = m[rank]
        p = prow[col]
        for r in range(rank + 1, nrows):
            row = m[r]
            f = row[col]
            if f:
                for cc in range(col + 1, ncols):
                    row[cc] = (row[cc] * p - f * prow[cc]) // prev
            else:
                for cc in range(col + 1, ncols):
                    row[cc] = (row[cc] * p) // prev
            row[col] = 0
        prev = p
        rank += 1
    return rank


cpdef tuple rref(rows):
    cdef list m = [list(src) for src in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t ncols, r = 0, col, i, c, piv
    cdef list pivots = []
    cdef list prow, row
    cdef object inv, f, pv
    if nrows == 0:
        return m, pivots
    ncols = len(m[0])
    for col in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if (<list>m[i])[col]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            m[piv], m[r] = m[r], m[piv]
        prow = m[r]
        inv = 1 / prow[col]
        for c in range(col, ncols):
            prow[c] = prow[c] * inv
        for i in range(nrows):
            if i == r:
                continue
            row = m[i]
            f = row[col]
            if f:
                for c in range(col, ncols):
                    pv = prow[c]
                    if pv:
                        row[c] = row[c] - f * pv
        pivots.append(col)
        r += 1
    return m, pivots
