"""Shared random generators for the test suite.  Everything takes an
explicit random.Random so failures reproduce from the printed seed."""

from charpforms.fields import FieldCtx, Poly, FieldElement


def rand_poly(rng, ctx, max_terms=3, max_deg=2, nonzero=False):
    terms = {}
    for _ in range(rng.randint(1 if nonzero else 0, max_terms)):
        exps = tuple(rng.randint(0, max_deg) for _ in range(ctx.nvars))
        code = rng.randint(1, ctx.q - 1)
        terms[exps] = code
    poly = Poly(ctx, terms)
    if nonzero and poly.is_zero():
        return Poly.one(ctx)
    return poly


def rand_elem(rng, ctx, max_terms=3, max_deg=2, fraction=True):
    num = rand_poly(rng, ctx, max_terms, max_deg)
    if fraction and rng.random() < 0.4:
        den = rand_poly(rng, ctx, 2, 1, nonzero=True)
    else:
        den = Poly.one(ctx)
    return FieldElement.make(ctx, num, den)


def rand_nonzero(rng, ctx, max_terms=3, max_deg=2, fraction=True):
    el = rand_elem(rng, ctx, max_terms, max_deg, fraction)
    while el.is_zero():
        el = rand_elem(rng, ctx, max_terms, max_deg, fraction)
    return el
