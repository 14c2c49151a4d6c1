import random
from array import array

import pytest

from charpforms.fields import FieldCtx
from charpforms.kernels import _ref
from charpforms.pforms import _flat_tables, _pow_table

try:
    from charpforms.kernels import _fast
except ImportError:
    _fast = None

needs_fast = pytest.mark.skipif(_fast is None or not hasattr(_fast, "inner_sweep"),
                                reason="compiled kernels not built")


@needs_fast
def test_decode_point_parity():
    rng = random.Random(1)
    for _ in range(50):
        q = rng.choice((2, 3, 4, 9))
        m = rng.randrange(2, 6)
        k = rng.randrange(m)
        idx = rng.randrange(q ** (m - 1 - k))
        assert _ref.decode_point(q, m, k, idx) == _fast.decode_point(q, m, k, idx)


@needs_fast
def test_linear_scan_parity():
    rng = random.Random(2)
    ctx = FieldCtx(2, 2)
    mul, add = _flat_tables(ctx)
    q = ctx.q
    for _ in range(30):
        m = rng.randrange(2, 5)
        k = rng.randrange(m)
        nrows = rng.randrange(1, 4)
        rows = array("i", (rng.randrange(q) for _ in range(nrows * m)))
        block = q ** (m - 1 - k)
        got = _fast.linear_zero_scan(q, m, k, rows, nrows, mul, add, 0, block)
        want = _ref.linear_zero_scan(q, m, k, rows, nrows, mul, add, 0, block)
        assert got == want


@needs_fast
def test_const_scan_parity():
    rng = random.Random(3)
    ctx = FieldCtx(3)
    mul, add = _flat_tables(ctx)
    powt = _pow_table(ctx, 3)
    q = ctx.q
    for _ in range(30):
        m = rng.randrange(2, 5)
        k = rng.randrange(m)
        nterms = rng.randrange(1, 4)
        exps = []
        for _ in range(nterms):
            row = [0] * m
            left = 3
            while left:
                row[rng.randrange(m)] += 1
                left -= 1
            exps.extend(row)
        exps = array("i", exps)
        coeffs = array("i", (rng.randrange(1, q) for _ in range(nterms)))
        block = q ** (m - 1 - k)
        got = _fast.const_zero_scan(q, m, k, exps, coeffs, nterms, mul, add,
                                    powt, 3, 0, block)
        want = _ref.const_zero_scan(q, m, k, exps, coeffs, nterms, mul, add,
                                    powt, 3, 0, block)
        assert got == want


@needs_fast
def test_inner_sweep_parity():
    rng = random.Random(4)
    ext = FieldCtx(2, 6)
    mul, add = _flat_tables(ext)
    qe = ext.q
    ns, dmax = 4, 2
    d1 = dmax + 1
    for _ in range(30):
        ncand = rng.randrange(2, 20)
        codes = array("i", range(ncand))
        univ = array("i", (rng.randrange(qe) for _ in range(ns * d1)))
        pv = array("i", (rng.randrange(qe) for _ in range(ncand * ns * d1)))
        got = _fast.inner_sweep(codes, 0, ncand, univ, pv, mul, add, qe, ns, dmax)
        want = _ref.inner_sweep(codes, 0, ncand, univ, pv, mul, add, qe, ns, dmax)
        assert got == want
