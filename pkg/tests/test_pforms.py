import random

import pytest

from charpforms.errors import (
    BadMultiIndex,
    DimensionMismatch,
    ExplicitLeaf,
    SearchTooLarge,
    ZeroElement,
)
from charpforms.fields import FieldCtx, UniPoly
from charpforms.pforms import (
    DirectSumForm,
    ExplicitForm,
    NormForm,
    ScaledForm,
    TwoDimForm,
    as_mul,
    build_common_slot_form,
    build_phi,
    build_Phi,
    is_p_regular_bruteforce,
    isotropy_search,
    norm,
    order_partials,
    partial_rows,
    regularity_certificate,
    unit_tuples,
)

from helpers import rand_elem, rand_nonzero


class Sym:
    def __init__(self, alpha, slots):
        self.alpha = alpha
        self.slots = tuple(slots)


def resultant(f, g):
    """Res(f, g) by the Euclidean chain; independent of the norm code."""
    ctx = f.ctx
    a, b = f, g
    res = ctx.one()
    while b.degree() > 0:
        _, r = a.divmod(b)
        if r.is_zero():
            return ctx.zero()
        da, db, dr = a.degree(), b.degree(), r.degree()
        res = res * ctx.from_int(-1) ** (da * db) * b.coeffs[-1] ** (da - dr)
        a, b = b, r
    if b.is_zero():
        return ctx.zero()
    return res * b.coeffs[0] ** a.degree()


def test_as_mul_reduces_by_the_defining_relation():
    ctx = FieldCtx(3, names=("x",))
    x = ctx.var("x")
    zero, one = ctx.zero(), ctx.one()
    # T * T^2 = T^3 = T + x
    out = as_mul(x, (zero, one, zero), (zero, zero, one))
    assert out == (x, one, zero)


def test_norm_of_binomial_symbolic():
    # independent oracle: N(x + y*T) = x^p - x*y^(p-1) + t*y^p over F_p(x,y,t)
    for p in (2, 3, 5):
        ctx = FieldCtx(p, names=("x", "y", "t"))
        x, y, t = ctx.var("x"), ctx.var("y"), ctx.var("t")
        coeffs = [x, y] + [ctx.zero()] * (p - 2)
        want = x ** p - x * y ** (p - 1) + t * y ** p
        assert norm(t, coeffs) == want


def test_norm_matches_resultant():
    rng = random.Random(101)
    for p in (2, 3, 5):
        ctx = FieldCtx(p, names=("x",))
        for _ in range(6 if p < 5 else 3):
            alpha = rand_elem(rng, ctx, max_terms=2, max_deg=1)
            coeffs = [rand_elem(rng, ctx, max_terms=2, max_deg=1)
                      for _ in range(p)]
            f = UniPoly(ctx, list(coeffs))
            if f.is_zero():
                continue
            g = UniPoly.wp_poly(ctx, alpha)
            assert norm(alpha, coeffs) == resultant(g, f)


def test_norm_is_multiplicative():
    rng = random.Random(202)
    for p in (2, 3):
        ctx = FieldCtx(p, names=("x", "y"))
        for _ in range(25):
            alpha = rand_elem(rng, ctx)
            f = [rand_elem(rng, ctx, max_terms=2, max_deg=1) for _ in range(p)]
            g = [rand_elem(rng, ctx, max_terms=2, max_deg=1) for _ in range(p)]
            prod = as_mul(alpha, f, g)
            assert norm(alpha, prod) == norm(alpha, f) * norm(alpha, g)


def test_norm_units_and_constants():
    ctx = FieldCtx(3, names=("x",))
    x = ctx.var("x")
    zeros = [ctx.zero()] * 3
    assert norm(x, zeros).is_zero()
    assert norm(x, [ctx.one(), ctx.zero(), ctx.zero()]) == 1
    c = ctx.from_int(2)
    assert norm(x, [c, ctx.zero(), ctx.zero()]) == c ** 3


def test_to_explicit_matches_evaluate():
    rng = random.Random(303)
    for ctx in (FieldCtx(2, names=("x",)), FieldCtx(3, names=("x",)),
                FieldCtx(2, 2, names=("x",))):
        for _ in range(20):
            alpha = rand_elem(rng, ctx, max_terms=2, max_deg=1)
            pick = rng.randrange(4)
            if pick == 0:
                form = TwoDimForm(alpha, rng.choice(("first", "second")))
            elif pick == 1:
                form = NormForm(alpha)
            elif pick == 2:
                form = ScaledForm(rand_nonzero(rng, ctx), NormForm(alpha))
            else:
                form = DirectSumForm((TwoDimForm(alpha), NormForm(alpha)))
            explicit = form.to_explicit()
            coords = [rand_elem(rng, ctx, max_terms=2, max_deg=1)
                      for _ in range(form.dim)]
            assert form.evaluate(coords) == explicit.evaluate(coords)


def test_twodim_tables():
    ctx = FieldCtx(3, names=("x",))
    x = ctx.var("x")
    first = TwoDimForm(x, "first").to_explicit()
    assert first.coeffs == {(3, 0): x, (2, 1): -ctx.one(), (0, 3): ctx.one()}
    second = TwoDimForm(x, "second").to_explicit()
    assert second.coeffs == {(3, 0): x, (1, 2): -ctx.one(), (0, 3): ctx.one()}


def test_order_partials_hand_checked():
    # f = a^2 b at p = 3: d^2/da^2 -> 2b, da db -> 2a, d^2/db^2 -> 0
    ctx = FieldCtx(3)
    form = ExplicitForm(ctx, 2, {(2, 1): ctx.one()})
    two = ctx.from_int(2)
    assert order_partials(form, (2, 0)) == (ctx.zero(), two)
    assert order_partials(form, (1, 1)) == (two, ctx.zero())
    assert order_partials(form, (0, 2)) == (ctx.zero(), ctx.zero())
    with pytest.raises(BadMultiIndex):
        order_partials(form, (1, 0))


def test_partial_rows_count():
    ctx = FieldCtx(3)
    form = ExplicitForm(ctx, 4, {(3, 0, 0, 0): ctx.one()})
    # compositions of p-1 = 2 into 4 parts
    assert len(partial_rows(form)) == 10


def test_diagonal_form_is_never_regular():
    # every order p-1 partial of sum c_i x_i^p vanishes identically
    for p in (2, 3):
        ctx = FieldCtx(p)
        table = {tuple(p if i == j else 0 for j in range(3)): ctx.one()
                 for i in range(3)}
        form = ExplicitForm(ctx, 3, table)
        flag, witness = is_p_regular_bruteforce(form)
        assert flag is False
        assert witness == (ctx.one(), ctx.zero(), ctx.zero())


def test_twodim_is_regular_bruteforce():
    for p, e in ((2, 1), (2, 2), (3, 1), (3, 2)):
        ctx = FieldCtx(p, e)
        for code in range(ctx.q):
            flag, witness = is_p_regular_bruteforce(
                TwoDimForm(ctx.const(code), "first"))
            assert flag is True and witness is None
            flag, _ = is_p_regular_bruteforce(
                TwoDimForm(ctx.const(code), "second"))
            assert flag is True


def test_norm_form_bruteforce_and_certificate():
    ctx = FieldCtx(3)
    # 1 is not of the shape c^3 - c over F_3, so the algebra is a field
    good = NormForm(ctx.one())
    assert is_p_regular_bruteforce(good) == (True, None)
    report = regularity_certificate(good)
    assert report.certified and not report.assumptions
    # 0 = wp(0): the algebra splits and the structural certificate refuses,
    # which claims nothing about the brute-force answer
    split = NormForm(ctx.zero())
    report = regularity_certificate(split)
    assert not report.certified
    assert report.reasons
    flag, _ = is_p_regular_bruteforce(split)
    assert flag is True


def test_certificate_tree_walk():
    ctx = FieldCtx(2, names=("x",))
    x = ctx.var("x")
    form = DirectSumForm((TwoDimForm(x), ScaledForm(x, NormForm(ctx.one()))))
    report = regularity_certificate(form)
    assert report.certified
    with pytest.raises(ExplicitLeaf):
        regularity_certificate(ExplicitForm(ctx, 2, {(2, 0): ctx.one()}))


def test_explicit_validation():
    ctx = FieldCtx(2)
    with pytest.raises(BadMultiIndex):
        ExplicitForm(ctx, 2, {(1, 0): ctx.one()})
    with pytest.raises(BadMultiIndex):
        ExplicitForm(ctx, 2, {(2, 0, 0): ctx.one()})
    with pytest.raises(ZeroElement):
        ScaledForm(ctx.zero(), TwoDimForm(ctx.one()))
    with pytest.raises(DimensionMismatch):
        NormForm(ctx.one()).evaluate([ctx.one()])


def test_exhaustive_search_order_and_hit():
    ctx = FieldCtx(2)
    one, zero = ctx.one(), ctx.zero()
    form = ExplicitForm(ctx, 2, {(2, 0): one, (1, 1): one})
    res = isotropy_search(form)
    # block k=0 scans (1,0) then (1,1); the second is the first zero
    assert res.found and res.point == (one, one)
    assert res.tried == 2 and res.complete
    assert res.mode == "exhaustive"


def test_exhaustive_search_miss_is_complete():
    ctx = FieldCtx(2)
    res = isotropy_search(TwoDimForm(ctx.one(), "first"))
    assert not res.found
    assert res.complete and res.tried == 3


def test_exhaustive_search_cap():
    ctx = FieldCtx(3)
    form = TwoDimForm(ctx.one(), "first")
    big = DirectSumForm(tuple(form for _ in range(6)))
    # first zero sits at index 2 of the first block: (1,0,..,0,2)
    res = isotropy_search(big, cap=2)
    assert not res.found
    assert not res.complete
    assert res.tried == 2
    res = isotropy_search(big)
    assert res.found and res.tried == 3


def test_degree_search_finds_polynomial_zero():
    ctx = FieldCtx(2, names=("x",))
    x = ctx.var("x")
    alpha = x ** 2 + x
    phi = build_Phi(Sym(alpha, (x,)))
    assert phi.dim == 4
    res = isotropy_search(phi, max_degree=1)
    assert res.found
    assert phi.evaluate(res.point).is_zero()
    assert res.point[0] == 1 and res.point[1] == x
    assert res.mode == "degree" and res.max_degree == 1


def test_degree_search_misses_anisotropic():
    ctx = FieldCtx(2, names=("x",))
    x = ctx.var("x")
    form = TwoDimForm(x, "first")
    res = isotropy_search(form, max_degree=1, cap=1000)
    assert not res.found
    # 3 monic leads times 4 tails, plus 3 monic tails with a zero lead
    assert res.complete and res.tried == 15


def test_degree_search_jobs_deterministic():
    ctx = FieldCtx(2, names=("x",))
    x = ctx.var("x")
    phi = build_Phi(Sym(x ** 2 + x, (x,)))
    seq = isotropy_search(phi, max_degree=1)
    par = isotropy_search(phi, max_degree=1, jobs=2)
    assert par.found == seq.found and par.point == seq.point
    assert par.tried == seq.tried


def test_search_too_large_guards():
    ctx = FieldCtx(3, 2)
    form = DirectSumForm(tuple(TwoDimForm(ctx.one()) for _ in range(5)))
    with pytest.raises(SearchTooLarge):
        is_p_regular_bruteforce(form, cap=10 ** 6)
    wide = FieldCtx(3, 2, names=("x", "y"))
    with pytest.raises(SearchTooLarge):
        isotropy_search(TwoDimForm(wide.var("x")), max_degree=2)


def test_unit_tuples_order():
    assert unit_tuples(2) == [(1, 0), (0, 1), (1, 1)]
    assert unit_tuples(3)[0] == (1, 0, 0)
    assert len(unit_tuples(3)) == 7


def test_build_phi_blocks():
    ctx = FieldCtx(2, names=("x", "y"))
    x, y = ctx.var("x"), ctx.var("y")
    alpha = ctx.one()
    sym = Sym(alpha, (x, y))
    phi = build_phi(sym)
    assert phi.dim == 6
    scalars = [x, y, x * y]
    rng = random.Random(404)
    for _ in range(5):
        coords = [rand_elem(rng, ctx) for _ in range(6)]
        want = ctx.zero()
        for i, s in enumerate(scalars):
            want = want + s * norm(alpha, coords[2 * i:2 * i + 2])
        assert phi.evaluate(coords) == want


def test_build_Phi_dims():
    ctx2 = FieldCtx(2, names=("x", "y", "z"))
    vs = [ctx2.var(v) for v in ("x", "y", "z")]
    for n in (1, 2, 3):
        phi = build_Phi(Sym(ctx2.one(), tuple(vs[:n])))
        assert phi.dim == (2 ** n - 1) * 2 + 2
    ctx3 = FieldCtx(3, names=("x",))
    assert build_Phi(Sym(ctx3.one(), (ctx3.var("x"),))).dim == 5


def test_build_common_slot_form_shape():
    ctx = FieldCtx(2, names=("x", "y"))
    x, y = ctx.var("x"), ctx.var("y")
    a1, g1 = x, y
    form = build_common_slot_form([a1], [y], [g1], [x + 1])
    assert form.dim == 2 + 2 + 2
    head = form.parts[0]
    assert head.alpha == a1 - g1
    rng = random.Random(505)
    coords = [rand_elem(rng, ctx) for _ in range(form.dim)]
    want = head.evaluate(coords[:2]) \
        + y * norm(a1, coords[2:4]) + g1 * norm(x + 1, coords[4:6])
    assert form.evaluate(coords) == want
