import pytest

from charpforms.certs import (
    AXIOM_NORM_SLOT_GENERAL,
    AxiomStep,
    RewriteCertificate,
    WpGenerator,
    compose,
    invert,
    lift,
    verify,
)
from charpforms.errors import ChainMismatch, DegreeMismatch, ZeroSlot
from charpforms.exterior import DiffForm, dlog, eval_symbol, wp_image
from charpforms.fields import FieldCtx

from helpers import rand_elem, rand_nonzero

import random


def ctx2():
    return FieldCtx(2, names=("x", "y", "z"))


def test_exact_certificate_verifies():
    ctx = ctx2()
    x, y = ctx.var("x"), ctx.var("y")
    alpha = x / (x + ctx.one())
    # dlog(x*y^2) = dlog(x) at p = 2, so both sides evaluate identically
    lhs = eval_symbol(alpha, (x, y))
    rhs = eval_symbol(alpha, (x * y * y, y))
    cert = RewriteCertificate(ctx, 2, lhs, rhs)
    res = verify(cert)
    assert res.exact and res.ok
    assert res.residual is None


def test_wp_generator_certificate():
    ctx = ctx2()
    x, y = ctx.var("x"), ctx.var("y")
    u = x * y + ctx.one()
    alpha = y
    lhs = eval_symbol(alpha + u.wp(), (x, y))
    rhs = eval_symbol(alpha, (x, y))
    cert = RewriteCertificate(ctx, 2, lhs, rhs,
                              generators=[WpGenerator(u, (x, y))])
    assert verify(cert).exact


def test_theta_certificate():
    ctx = ctx2()
    x, y = ctx.var("x"), ctx.var("y")
    alpha = y / x
    lhs = eval_symbol(alpha + x, (x, y))
    rhs = eval_symbol(alpha, (x, y))
    theta = DiffForm.scalar(x).wedge(dlog(y))
    cert = RewriteCertificate(ctx, 2, lhs, rhs, theta=theta)
    assert verify(cert).exact


def test_corrupted_witness_rejected():
    ctx = ctx2()
    x, y = ctx.var("x"), ctx.var("y")
    u = x * y + ctx.one()
    lhs = eval_symbol(y + u.wp(), (x, y))
    rhs = eval_symbol(y, (x, y))
    bad = RewriteCertificate(ctx, 2, lhs, rhs,
                             generators=[WpGenerator(u + ctx.var("z"), (x, y))])
    res = verify(bad)
    assert not res.ok
    assert res.residual is not None and not res.residual.is_zero()


def test_axiom_step_verifies_modulo():
    ctx = ctx2()
    x, y = ctx.var("x"), ctx.var("y")
    alpha = x + y
    lhs = eval_symbol(alpha, (x, y))
    rhs = eval_symbol(alpha, (y, y + ctx.one()))
    claim = lhs.sub(rhs)
    step = AxiomStep(AXIOM_NORM_SLOT_GENERAL, alpha, (x, y, ctx.zero()), 0,
                     (x, y), claim)
    cert = RewriteCertificate(ctx, 2, lhs, rhs, axiom_steps=[step])
    res = verify(cert)
    assert res.ok and not res.exact
    assert len(res.axioms) == 1


def test_unknown_axiom_tag_refused():
    ctx = ctx2()
    x = ctx.var("x")
    with pytest.raises(Exception):
        AxiomStep("slot_swap", x, (x,), 0, (x,), DiffForm.zero(ctx, 1))


def test_degree_mismatches_raise():
    ctx = ctx2()
    x, y = ctx.var("x"), ctx.var("y")
    lhs = eval_symbol(x, (x, y))
    cert = RewriteCertificate(ctx, 2, lhs, lhs,
                              generators=[WpGenerator(x, (x,))])
    with pytest.raises(DegreeMismatch):
        verify(cert)
    cert2 = RewriteCertificate(ctx, 2, lhs, lhs, theta=DiffForm.scalar(x))
    # theta must have degree 1 here, a scalar has degree 0
    with pytest.raises(DegreeMismatch):
        verify(cert2)


def test_generator_rejects_zero_slot():
    ctx = ctx2()
    x = ctx.var("x")
    with pytest.raises(ZeroSlot):
        WpGenerator(x, (x, ctx.zero()))


def test_compose_chains_and_checks_middle():
    ctx = ctx2()
    x, y = ctx.var("x"), ctx.var("y")
    u = y + ctx.one()
    a0 = x * y
    a1 = a0 + u.wp()
    a2 = a1 + x
    f0 = eval_symbol(a0, (x, y))
    f1 = eval_symbol(a1, (x, y))
    f2 = eval_symbol(a2, (x, y))
    c1 = RewriteCertificate(ctx, 2, f1, f0, generators=[WpGenerator(u, (x, y))])
    c2 = RewriteCertificate(ctx, 2, f2, f1,
                            theta=DiffForm.scalar(x).wedge(dlog(y)))
    chained = compose(c2, c1)
    assert verify(chained).exact
    assert chained.lhs == f2 and chained.rhs == f0
    with pytest.raises(ChainMismatch):
        compose(c1, c2)


def test_compose_context_mismatch():
    ca = FieldCtx(2, names=("x", "y"))
    cb = FieldCtx(3, names=("x", "y"))
    fa = eval_symbol(ca.var("x"), (ca.var("x"), ca.var("y")))
    fb = eval_symbol(cb.var("x"), (cb.var("x"), cb.var("y")))
    c1 = RewriteCertificate(ca, 2, fa, fa)
    c2 = RewriteCertificate(cb, 2, fb, fb)
    with pytest.raises(ChainMismatch):
        compose(c1, c2)


def test_invert_round_trip():
    ctx = ctx2()
    x, y = ctx.var("x"), ctx.var("y")
    u = x + y
    lhs = eval_symbol(y + u.wp(), (x, y))
    rhs = eval_symbol(y, (x, y))
    cert = RewriteCertificate(ctx, 2, lhs, rhs,
                              generators=[WpGenerator(u, (x, y))])
    rev = invert(cert)
    assert verify(rev).exact
    loop = compose(cert, rev)
    assert verify(loop).exact
    assert loop.lhs == lhs and loop.rhs == lhs


def test_lift_preserves_verification():
    ctx = ctx2()
    x, y, z = ctx.var("x"), ctx.var("y"), ctx.var("z")
    u = x * y
    lhs = eval_symbol(x + u.wp(), (x, y))
    rhs = eval_symbol(x, (x, y))
    theta_cert = RewriteCertificate(ctx, 2, lhs, rhs,
                                    generators=[WpGenerator(u, (x, y))])
    lifted = lift(theta_cert, z)
    assert lifted.n == 3
    assert verify(lifted).exact
    assert lifted.lhs == eval_symbol(x + u.wp(), (x, y, z))
    with pytest.raises(ZeroSlot):
        lift(theta_cert, ctx.zero())


def test_random_generator_theta_mix():
    rng = random.Random(20260821)
    for p in (2, 3):
        ctx = FieldCtx(p, names=("x", "y"))
        x, y = ctx.var("x"), ctx.var("y")
        for _ in range(25):
            alpha = rand_elem(rng, ctx)
            u = rand_elem(rng, ctx)
            c = rand_nonzero(rng, ctx)
            lhs = eval_symbol(alpha + u.wp(), (x, y))
            theta = DiffForm.scalar(c).wedge(dlog(y))
            rhs = lhs.sub(wp_image(u, (x, y))).sub(theta.d())
            cert = RewriteCertificate(ctx, 2, lhs, rhs,
                                      generators=[WpGenerator(u, (x, y))],
                                      theta=theta)
            assert verify(cert).exact
            assert verify(invert(cert)).exact
            # corrupting theta must break it unless d(theta) is zero
            bad = RewriteCertificate(ctx, 2, lhs, rhs,
                                     generators=[WpGenerator(u, (x, y))])
            if not theta.d().is_zero():
                assert not verify(bad).ok
