# cython: language_level=3
"""Compiled twins of the reference scan kernels.

Signatures and index conventions match _ref exactly; the flat tables
arrive as int arrays (anything exposing the buffer protocol works).
"""

DEF MAXDIM = 128


def decode_point(int q, int m, int k, long idx):
    coords = [0] * m
    cdef int pos
    coords[k] = 1
    for pos in range(m - 1, k, -1):
        coords[pos] = idx % q
        idx //= q
    return coords


def linear_zero_scan(int q, int m, int k, int[:] rows, int nrows,
                     int[:] mul, int[:] add, long start, long stop):
    cdef int coords[MAXDIM]
    cdef long at, idx = start
    cdef int pos, r, i, c, acc, nxt
    cdef bint ok
    if m > MAXDIM:
        raise ValueError("dimension too large for the compiled scan")
    for pos in range(m):
        coords[pos] = 0
    coords[k] = 1
    for pos in range(m - 1, k, -1):
        coords[pos] = idx % q
        idx //= q
    for at in range(start, stop):
        ok = True
        for r in range(nrows):
            acc = 0
            for i in range(k, m):
                c = coords[i]
                if c:
                    acc = add[acc * q + mul[rows[r * m + i] * q + c]]
            if acc:
                ok = False
                break
        if ok:
            return at
        pos = m - 1
        while pos > k:
            nxt = coords[pos] + 1
            if nxt < q:
                coords[pos] = nxt
                break
            coords[pos] = 0
            pos -= 1
    return -1


def const_zero_scan(int q, int m, int k, int[:] exps, int[:] coeffs,
                    int nterms, int[:] mul, int[:] add, int[:] powt,
                    int dmax, long start, long stop):
    cdef int coords[MAXDIM]
    cdef long at, idx = start
    cdef int pos, t, i, e, acc, term, nxt, d1 = dmax + 1
    if m > MAXDIM:
        raise ValueError("dimension too large for the compiled scan")
    for pos in range(m):
        coords[pos] = 0
    coords[k] = 1
    for pos in range(m - 1, k, -1):
        coords[pos] = idx % q
        idx //= q
    for at in range(start, stop):
        acc = 0
        for t in range(nterms):
            term = coeffs[t]
            for i in range(k, m):
                e = exps[t * m + i]
                if e:
                    term = mul[term * q + powt[coords[i] * d1 + e]]
                    if not term:
                        break
            acc = add[acc * q + term]
        if not acc:
            return at
        pos = m - 1
        while pos > k:
            nxt = coords[pos] + 1
            if nxt < q:
                coords[pos] = nxt
                break
            coords[pos] = 0
            pos -= 1
    return -1


def inner_sweep(int[:] codes, long start, long stop, int[:] univ, int[:] pv,
                int[:] mul, int[:] add, int qe, int ns, int dmax):
    cdef long t
    cdef int s, d, acc, u, base, d1 = dmax + 1
    cdef bint zero
    for t in range(start, stop):
        base = codes[t] * ns * d1
        zero = True
        for s in range(ns):
            acc = 0
            for d in range(d1):
                u = univ[s * d1 + d]
                if u:
                    acc = add[acc * qe + mul[u * qe + pv[base + s * d1 + d]]]
            if acc:
                zero = False
                break
        if zero:
            return t
    return -1
