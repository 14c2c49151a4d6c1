"""Rewrite certificates and their verification.

A certificate asserts that two degree-n forms (given as symbol presentations
or explicit forms) differ by a sum of Artin-Schreier images of decomposables
plus an exact form, with an optional list of axiom steps for the one rule
whose witness the construction leaves symbolic.  Verification recomputes

    delta = eval(lhs) - eval(rhs) - sum(wp images) - d(theta) - sum(claims)

and demands exact zero; every judgement is a canonical-form comparison, so
there is no tolerance anywhere.
"""

from __future__ import annotations

from .errors import ChainMismatch, CharpError, DegreeMismatch, ZeroSlot
from .exterior import DiffForm, dlog, wp_image

__all__ = [
    "WpGenerator",
    "AxiomStep",
    "RewriteCertificate",
    "VerifyResult",
    "verify",
    "compose",
    "invert",
    "lift",
]

AXIOM_NORM_SLOT_GENERAL = "norm_slot_general"


class WpGenerator:
    """A decomposable wp-image witness: contributes wp(u) * dlog-product."""

    __slots__ = ("u", "slots")

    def __init__(self, u, slots):
        slots = tuple(slots)
        if not slots:
            raise CharpError("generator needs at least one slot")
        for b in slots:
            if b.is_zero():
                raise ZeroSlot("zero slot in generator")
        self.u = u
        self.slots = slots

    def form(self):
        return wp_image(self.u, self.slots)

    def negated(self):
        return WpGenerator(-self.u, self.slots)

    def lifted(self, extra):
        return WpGenerator(self.u, self.slots + (extra,))

    def __eq__(self, other):
        return (isinstance(other, WpGenerator) and self.u == other.u
                and self.slots == other.slots)

    def __repr__(self):
        return f"WpGenerator({self.u!r}; {list(self.slots)!r})"


class AxiomStep:
    """A rewrite step whose cohomological justification is recorded but not
    witnessed at the form level; carries the exact difference it claims."""

    __slots__ = ("rule", "alpha", "f", "slot", "slots", "claimed_difference")

    def __init__(self, rule, alpha, f, slot, slots, claimed_difference):
        if rule != AXIOM_NORM_SLOT_GENERAL:
            raise CharpError(f"unknown axiom tag {rule!r}")
        self.rule = rule
        self.alpha = alpha
        self.f = tuple(f)
        self.slot = slot
        self.slots = tuple(slots)
        self.claimed_difference = claimed_difference

    def negated(self):
        return AxiomStep(self.rule, self.alpha, self.f, self.slot, self.slots,
                         self.claimed_difference.neg())

    def lifted(self, extra):
        return AxiomStep(self.rule, self.alpha, self.f, self.slot,
                         self.slots + (extra,),
                         self.claimed_difference.wedge(dlog(extra)))

    def __repr__(self):
        return f"AxiomStep({self.rule}, slot={self.slot})"


def _side_form(side, ctx, n):
    if isinstance(side, DiffForm):
        if side.ctx != ctx:
            raise CharpError("certificate side in a different field context")
        if side.degree != n:
            raise DegreeMismatch(f"side has degree {side.degree}, expected {n}")
        return side
    form = side.eval_form()
    if form.ctx != ctx or form.degree != n:
        raise DegreeMismatch("presentation does not evaluate at the stated degree")
    return form


class RewriteCertificate:
    __slots__ = ("ctx", "n", "lhs", "rhs", "generators", "theta", "axiom_steps")

    def __init__(self, ctx, n, lhs, rhs, generators=(), theta=None, axiom_steps=()):
        if n < 1:
            raise CharpError("certificates are for forms of degree >= 1")
        self.ctx = ctx
        self.n = n
        self.lhs = lhs
        self.rhs = rhs
        self.generators = tuple(generators)
        if theta is None:
            theta = DiffForm.zero(ctx, n - 1)
        self.theta = theta
        self.axiom_steps = tuple(axiom_steps)

    def __repr__(self):
        return (f"RewriteCertificate(n={self.n}, generators={len(self.generators)}, "
                f"axioms={len(self.axiom_steps)})")


class VerifyResult:
    VERIFIED = "verified"
    VERIFIED_MODULO_AXIOMS = "verified_modulo_axioms"
    REJECTED = "rejected"

    __slots__ = ("status", "residual", "axioms")

    def __init__(self, status, residual=None, axioms=()):
        self.status = status
        self.residual = residual
        self.axioms = tuple(axioms)

    @property
    def ok(self):
        return self.status != VerifyResult.REJECTED

    @property
    def exact(self):
        return self.status == VerifyResult.VERIFIED

    def __repr__(self):
        if self.status == VerifyResult.REJECTED:
            return f"VerifyResult(rejected, residual={self.residual!r})"
        return f"VerifyResult({self.status})"


def verify(cert: RewriteCertificate) -> VerifyResult:
    ctx, n = cert.ctx, cert.n
    delta = _side_form(cert.lhs, ctx, n).sub(_side_form(cert.rhs, ctx, n))
    for gen in cert.generators:
        if len(gen.slots) != n:
            raise DegreeMismatch("generator slot count differs from certificate degree")
        delta = delta.sub(gen.form())
    if cert.theta.degree != n - 1:
        raise DegreeMismatch(f"theta has degree {cert.theta.degree}, expected {n - 1}")
    if cert.theta.ctx != ctx:
        raise CharpError("theta in a different field context")
    delta = delta.sub(cert.theta.d())
    for step in cert.axiom_steps:
        if step.claimed_difference.degree != n:
            raise DegreeMismatch("axiom claim degree differs from certificate degree")
        delta = delta.sub(step.claimed_difference)
    if not delta.is_zero():
        return VerifyResult(VerifyResult.REJECTED, residual=delta)
    if cert.axiom_steps:
        return VerifyResult(VerifyResult.VERIFIED_MODULO_AXIOMS,
                            axioms=cert.axiom_steps)
    return VerifyResult(VerifyResult.VERIFIED)


def _sides_equal(a, b):
    if isinstance(a, DiffForm) or isinstance(b, DiffForm):
        return isinstance(a, DiffForm) and isinstance(b, DiffForm) and a == b
    return a == b


def compose(c1: RewriteCertificate, c2: RewriteCertificate) -> RewriteCertificate:
    """Chain two certificates; witnesses concatenate and thetas add."""
    if c1.ctx != c2.ctx or c1.n != c2.n:
        raise ChainMismatch("certificates over different contexts or degrees")
    if not _sides_equal(c1.rhs, c2.lhs):
        raise ChainMismatch("middle presentations do not match")
    return RewriteCertificate(
        c1.ctx, c1.n, c1.lhs, c2.rhs,
        generators=c1.generators + c2.generators,
        theta=c1.theta.add(c2.theta),
        axiom_steps=c1.axiom_steps + c2.axiom_steps,
    )


def invert(cert: RewriteCertificate) -> RewriteCertificate:
    """Certificate for the reverse rewrite; wp witnesses negate through
    wp(-u) = -wp(u), which also holds at p = 2 where -u = u."""
    return RewriteCertificate(
        cert.ctx, cert.n, cert.rhs, cert.lhs,
        generators=tuple(g.negated() for g in cert.generators),
        theta=cert.theta.neg(),
        axiom_steps=tuple(a.negated() for a in cert.axiom_steps),
    )


def lift(cert: RewriteCertificate, extra) -> RewriteCertificate:
    """Append one unchanged slot on both sides: wedging with a closed dlog
    commutes with every witness."""
    if extra.is_zero():
        raise ZeroSlot("cannot lift by a zero slot")
    dx = dlog(extra)

    def lift_side(side):
        if isinstance(side, DiffForm):
            return side.wedge(dx)
        return side.with_extra_slot(extra)

    return RewriteCertificate(
        cert.ctx, cert.n + 1, lift_side(cert.lhs), lift_side(cert.rhs),
        generators=tuple(g.lifted(extra) for g in cert.generators),
        theta=cert.theta.wedge(dx),
        axiom_steps=tuple(a.lifted(extra) for a in cert.axiom_steps),
    )
