"""Pure-python reference kernels for the point and candidate scans.

The compiled twin in _fast.pyx implements the same functions with the same
signatures over flat integer tables; either backend may serve the searches,
and the selection happens in the package __init__.

All tables are flat tuples/lists of small nonnegative ints:
  mul, add        field code tables, entry at a*q + b
  powt            entry at c*(dmax+1) + d is c**d in the field
Points of the projective scans are indexed per leading-coordinate block k:
coordinates 0..k-1 are zero, coordinate k is one and the remaining m-1-k
coordinates run through all codes with the last coordinate moving fastest.
"""


def decode_point(q, m, k, idx):
    coords = [0] * m
    coords[k] = 1
    for pos in range(m - 1, k, -1):
        coords[pos] = idx % q
        idx //= q
    return coords


def linear_zero_scan(q, m, k, rows, nrows, mul, add, start, stop):
    """First index in [start, stop) of block k where all linear rows vanish,
    or -1.  rows: flat nrows*m codes."""
    coords = decode_point(q, m, k, start)
    for idx in range(start, stop):
        ok = True
        for r in range(nrows):
            off = r * m
            acc = 0
            for i in range(k, m):
                c = coords[i]
                if c:
                    acc = add[acc * q + mul[rows[off + i] * q + c]]
            if acc:
                ok = False
                break
        if ok:
            return idx
        pos = m - 1
        while pos > k:
            nxt = coords[pos] + 1
            if nxt < q:
                coords[pos] = nxt
                break
            coords[pos] = 0
            pos -= 1
    return -1


def const_zero_scan(q, m, k, exps, coeffs, nterms, mul, add, powt, dmax,
                    start, stop):
    """First index in [start, stop) of block k where the coefficient form
    vanishes, or -1.  exps: flat nterms*m exponents, coeffs: nterms codes."""
    coords = decode_point(q, m, k, start)
    d1 = dmax + 1
    for idx in range(start, stop):
        acc = 0
        for t in range(nterms):
            term = coeffs[t]
            off = t * m
            for i in range(k, m):
                e = exps[off + i]
                if e:
                    term = mul[term * q + powt[coords[i] * d1 + e]]
                    if not term:
                        break
            acc = add[acc * q + term]
        if not acc:
            return idx
        pos = m - 1
        while pos > k:
            nxt = coords[pos] + 1
            if nxt < q:
                coords[pos] = nxt
                break
            coords[pos] = 0
            pos -= 1
    return -1


def inner_sweep(codes, start, stop, univ, pv, mul, add, qe, ns, dmax):
    """First position t in [start, stop) where the partially evaluated form
    vanishes at every sample, or -1.

    codes: candidate codes for the moving coordinate.
    univ:  flat ns*(dmax+1) codes, the univariate coefficients per sample.
    pv:    flat ncand*ns*(dmax+1) powers of each candidate value per sample.
    qe:    size of the sample field (tables are qe x qe).
    """
    d1 = dmax + 1
    for t in range(start, stop):
        base = codes[t] * ns * d1
        zero = True
        for s in range(ns):
            acc = 0
            uoff = s * d1
            poff = base + s * d1
            for d in range(d1):
                u = univ[uoff + d]
                if u:
                    acc = add[acc * qe + mul[u * qe + pv[poff + d]]]
            if acc:
                zero = False
                break
        if zero:
            return t
    return -1
