"""Pure-Python kernels.

Monomials are flattened tuples ``(id0, e0, id1, e1, ...)`` with variable ids
strictly increasing and exponents positive.  Polynomials are dicts mapping
such tuples to nonzero coefficients.  Coefficients are treated as opaque
numbers, so ``int``, ``Fraction`` and ``mpq`` all work.

``_ckernels.pyx`` implements the same functions; the two must stay in sync.
"""

from __future__ import annotations

BACKEND = "python"


def mono_mul(a, b):
    la = len(a)
    lb = len(b)
    if not la:
        return b
    if not lb:
        return a
    out = []
    i = j = 0
    while i < la and j < lb:
        va = a[i]
        vb = b[j]
        if va < vb:
            out.append(va)
            out.append(a[i + 1])
            i += 2
        elif vb < va:
            out.append(vb)
            out.append(b[j + 1])
            j += 2
        else:
            out.append(va)
            out.append(a[i + 1] + b[j + 1])
            i += 2
            j += 2
    if i < la:
        out.extend(a[i:])
    if j < lb:
        out.extend(b[j:])
    return tuple(out)


def poly_mul(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = mono_mul(ka, kb)
            c = get(k)
            out[k] = ca * cb if c is None else c + ca * cb
    return {k: c for k, c in out.items() if c}


def apply_derivation(terms, images):
    """Apply the derivation sending variable id ``v`` to ``images[v]``.

    Variables absent from ``images`` are sent to zero.
    """
    out = {}
    get = out.get
    for key, c in terms.items():
        n = len(key)
        for pos in range(0, n, 2):
            img = images.get(key[pos])
            if img is None:
                continue
            e = key[pos + 1]
            if e == 1:
                rest = key[:pos] + key[pos + 2:]
            else:
                rest = key[:pos + 1] + (e - 1,) + key[pos + 2:]
            ce = c * e
            for ik, ic in img.items():
                k = mono_mul(rest, ik)
                prev = get(k)
                out[k] = ce * ic if prev is None else prev + ce * ic
    return {k: c for k, c in out.items() if c}


def rank_int(rows):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    nrows = len(m)
    if not nrows:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for r in range(rank, nrows):
            if m[r][col]:
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
                for c in range(col + 1, ncols):
                    row[c] = (row[c] * p - f * prow[c]) // prev
            else:
                for c in range(col + 1, ncols):
                    row[c] = (row[c] * p) // prev
            row[col] = 0
        prev = p
        rank += 1
    return rank


def rref(rows):
    """Reduced row echelon form over a field.

    Returns ``(matrix, pivot_columns)``; the input is not modified.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    if not nrows:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i][col]:
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
                    if prow[c]:
                        row[c] = row[c] - f * prow[c]
        pivots.append(col)
        r += 1
    return m, pivots
