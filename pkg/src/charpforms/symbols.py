"""Symbol presentations and the certified rewrite calculus.

A presentation (alpha; b_1, .., b_n) stands for the class of the form
alpha * dlog(b_1) ^ .. ^ dlog(b_n).  Every operation either rewrites the
presentation into an equivalent one or certifies that it presents the
zero class, and returns a RewriteResult whose certificate the verifier
can check by exact arithmetic.  Witness signs are not derived by formula;
the engine builds the candidate and lets the verifier confirm it, trying
the handful of sign combinations when needed.
"""

from __future__ import annotations

from itertools import product

from . import pforms
from .certs import (AXIOM_NORM_SLOT_GENERAL, AxiomStep, RewriteCertificate,
                    WpGenerator, compose, invert, lift, verify)
from .errors import (BadMultiIndex, BadRange, CharpError, DimensionMismatch,
                     SameSlot, SlotOutOfRange, SlotsNotShared,
                     WrongCollectionSize, ZeroElement, ZeroSlot, ZeroVector)
from .exterior import DiffForm, dlog, eval_symbol
from .fields import UniPoly, uni_gcd, uni_split_root

__all__ = [
    "ASElement",
    "SymbolPresentation",
    "RewriteResult",
    "LinkageSystem",
    "LinkedSymbol",
    "LinkageOutcome",
    "TrivializationOutcome",
    "rule_a",
    "rule_b",
    "rule_c",
    "rule_d",
    "rule_e",
    "rule_f",
    "slot_modify",
    "slot_modify_tail",
    "separable_link",
    "trivialize",
]


class ASElement:
    """c_0 + c_1*L + .. + c_{p-1}*L^{p-1} in the rank-p algebra
    F[L]/(L^p - L - alpha), tagged with its alpha."""

    __slots__ = ("alpha", "coeffs")

    def __init__(self, alpha, coeffs):
        ctx = alpha.ctx
        coeffs = tuple(coeffs)
        if len(coeffs) != ctx.p:
            raise DimensionMismatch(
                f"need exactly {ctx.p} coefficients, got {len(coeffs)}")
        for c in coeffs:
            if c.ctx != ctx:
                raise CharpError("coefficient from a different field context")
        self.alpha = alpha
        self.coeffs = coeffs

    @property
    def ctx(self):
        return self.alpha.ctx

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def is_const(self):
        return all(c.is_zero() for c in self.coeffs[1:])

    def is_binomial(self):
        """At most the constant and linear coefficients are nonzero."""
        return all(c.is_zero() for c in self.coeffs[2:])

    def norm(self):
        return pforms.norm(self.alpha, self.coeffs)

    def as_unipoly(self):
        return UniPoly(self.ctx, self.coeffs)

    def scaled(self, c):
        return ASElement(self.alpha, tuple(c * x for x in self.coeffs))

    def __eq__(self, other):
        return (isinstance(other, ASElement) and self.alpha == other.alpha
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.alpha, self.coeffs))

    def __repr__(self):
        return f"ASElement({self.alpha!r}, {list(self.coeffs)!r})"


class SymbolPresentation:
    """(alpha; b_1, .., b_n) with every slot nonzero."""

    __slots__ = ("ctx", "alpha", "slots", "_form")

    def __init__(self, ctx, alpha, slots):
        slots = tuple(slots)
        if not slots:
            raise DimensionMismatch("a presentation needs at least one slot")
        if alpha.ctx != ctx:
            raise CharpError("alpha from a different field context")
        for b in slots:
            if b.ctx != ctx:
                raise CharpError("slot from a different field context")
            if b.is_zero():
                raise ZeroSlot("zero slot in presentation")
        self.ctx = ctx
        self.alpha = alpha
        self.slots = slots
        self._form = None

    @property
    def n(self):
        return len(self.slots)

    def eval_form(self):
        if self._form is None:
            self._form = eval_symbol(self.alpha, self.slots)
        return self._form

    def with_alpha(self, alpha):
        return SymbolPresentation(self.ctx, alpha, self.slots)

    def with_slot(self, i, value):
        """Replace slot i (numbered from 1)."""
        if not 1 <= i <= self.n:
            raise SlotOutOfRange(f"slot {i} outside 1..{self.n}")
        slots = self.slots[:i - 1] + (value,) + self.slots[i:]
        return SymbolPresentation(self.ctx, self.alpha, slots)

    def with_extra_slot(self, extra):
        return SymbolPresentation(self.ctx, self.alpha, self.slots + (extra,))

    def drop_last(self):
        if self.n < 2:
            raise DimensionMismatch("cannot drop the only slot")
        return SymbolPresentation(self.ctx, self.alpha, self.slots[:-1])

    def __eq__(self, other):
        return (isinstance(other, SymbolPresentation) and self.ctx == other.ctx
                and self.alpha == other.alpha and self.slots == other.slots)

    def __hash__(self):
        return hash((self.alpha, self.slots))

    def __repr__(self):
        inner = ", ".join(repr(b) for b in self.slots)
        return f"({self.alpha!r}; {inner})"


class RewriteResult:
    TRIVIAL = "trivial"
    REWRITTEN = "rewritten"

    __slots__ = ("status", "symbol", "cert")

    def __init__(self, status, symbol, cert):
        self.status = status
        self.symbol = symbol
        self.cert = cert

    @classmethod
    def make_trivial(cls, cert):
        return cls(cls.TRIVIAL, None, cert)

    @classmethod
    def make_rewritten(cls, symbol, cert):
        return cls(cls.REWRITTEN, symbol, cert)

    @property
    def is_trivial(self):
        return self.status == RewriteResult.TRIVIAL

    def __repr__(self):
        if self.is_trivial:
            return "RewriteResult(trivial)"
        return f"RewriteResult(rewritten, {self.symbol!r})"


# --------------------------------------------------------------------------
# certificate construction helpers

def _zero_form(s):
    return DiffForm.zero(s.ctx, s.n)


def _dlog_rest(s, skip):
    """Wedge of dlog over the slots whose 1-based index is not in skip."""
    form = DiffForm.scalar(s.ctx.one())
    for k, b in enumerate(s.slots, start=1):
        if k not in skip:
            form = form.wedge(dlog(b))
    return form


def _exact_cert(lhs, rhs, gen=None, theta=None):
    """Certificate for lhs -> rhs closed by the given witnesses, with the
    signs settled by exact verification.  Raises if no combination closes."""
    ctx, n = lhs.ctx, lhs.n
    gens = (None,) if gen is None else (gen, gen.negated())
    thetas = (None,) if theta is None else (theta, theta.neg())
    for g in gens:
        for t in thetas:
            cert = RewriteCertificate(ctx, n, lhs, rhs,
                                      generators=() if g is None else (g,),
                                      theta=t)
            if verify(cert).exact:
                return cert
    raise CharpError("internal: exact witnesses did not close the identity")


def _check_slot(s, i):
    if not 1 <= i <= s.n:
        raise SlotOutOfRange(f"slot {i} outside 1..{s.n}")


def _check_pair(s, i, j):
    _check_slot(s, i)
    _check_slot(s, j)
    if i == j:
        raise SameSlot(f"need two distinct slots, got {i} twice")


def _check_elem(s, f):
    if not isinstance(f, ASElement):
        raise CharpError("expected an ASElement")
    if f.ctx != s.ctx:
        raise CharpError("element from a different field context")
    if f.alpha != s.alpha:
        raise CharpError("element lives over a different parameter")
    if f.is_zero():
        raise ZeroElement("zero extension element")


# --------------------------------------------------------------------------
# the six slot rules

def rule_a(s, i):
    """Fold slot i into the parameter: alpha becomes alpha + b_i.

    The difference of the two evaluations is exactly d(theta) for
    theta = b_i wedged with the remaining dlog factors.
    """
    _check_slot(s, i)
    out = s.with_alpha(s.alpha + s.slots[i - 1])
    theta = _dlog_rest(s, {i}).scale(s.slots[i - 1])
    return RewriteResult.make_rewritten(out, _exact_cert(s, out, theta=theta))


def rule_b(s, i, f):
    """Multiply slot i by the norm of f from the rank-p algebra.

    Zero norm forces the whole class to vanish: the gcd of f with
    L^p - L - alpha is then a proper divisor, its root u satisfies
    wp(u) = alpha, and (u; slots) generates the presentation exactly.
    """
    _check_slot(s, i)
    _check_elem(s, f)
    ctx = s.ctx
    nf = f.norm()
    if nf.is_zero():
        g = uni_gcd(f.as_unipoly(), UniPoly.wp_poly(ctx, s.alpha))
        if g.degree() < 1:
            raise CharpError("internal: zero norm without a shared root")
        u = uni_split_root(g)
        if u.wp() != s.alpha:
            raise CharpError("internal: root fails its defining equation")
        cert = _exact_cert(s, _zero_form(s), gen=WpGenerator(u, s.slots))
        return RewriteResult.make_trivial(cert)
    out = s.with_slot(i, nf * s.slots[i - 1])
    if f.is_const():
        # the norm of a constant is its p-th power; dlog kills it
        return RewriteResult.make_rewritten(out, _exact_cert(s, out))
    if f.is_binomial():
        t = f.coeffs[0] / f.coeffs[1]
        sigma = t.wp() + s.alpha
        aux = s.with_slot(i, sigma)
        gen = None if t.is_zero() else WpGenerator(t, aux.slots)
        theta = _dlog_rest(s, {i}).scale(sigma)
        cert = _exact_cert(s, out, gen=gen, theta=theta)
        return RewriteResult.make_rewritten(out, cert)
    step = AxiomStep(AXIOM_NORM_SLOT_GENERAL, s.alpha, f.coeffs, i, s.slots,
                     s.eval_form().sub(out.eval_form()))
    cert = RewriteCertificate(ctx, s.n, s, out, axiom_steps=(step,))
    return RewriteResult.make_rewritten(out, cert)


def rule_c(s, i, gamma):
    """Shift slot i by a p-th power, rescaling the parameter to match."""
    _check_slot(s, i)
    if gamma.ctx != s.ctx:
        raise CharpError("shift from a different field context")
    w = s.slots[i - 1] + gamma ** s.ctx.p
    if w.is_zero():
        # d(b_i) = d(-gamma^p) = 0, the evaluation is already the zero form
        return RewriteResult.make_trivial(_exact_cert(s, _zero_form(s)))
    out = s.with_slot(i, w).with_alpha(s.alpha * w / s.slots[i - 1])
    return RewriteResult.make_rewritten(out, _exact_cert(s, out))


def rule_d(s, i, j):
    """Multiply slot j by slot i; the extra term repeats a dlog factor."""
    _check_pair(s, i, j)
    out = s.with_slot(j, s.slots[i - 1] * s.slots[j - 1])
    return RewriteResult.make_rewritten(out, _exact_cert(s, out))


def rule_e(s, i, j):
    """Replace the pair (b_i, b_j) by (b_i + b_j, b_j / b_i)."""
    _check_pair(s, i, j)
    bi, bj = s.slots[i - 1], s.slots[j - 1]
    w = bi + bj
    if w.is_zero():
        # dlog(-b) = dlog(b), so the wedge repeats a factor
        return RewriteResult.make_trivial(_exact_cert(s, _zero_form(s)))
    out = s.with_slot(i, w).with_slot(j, bj / bi)
    return RewriteResult.make_rewritten(out, _exact_cert(s, out))


def rule_f(s, i, j, f):
    """Multiply slot j by b_i + N(f), the norm taken from the rank-p
    algebra attached to the parameter.

    The auxiliary presentation with b_i + N(f) in place of slot j carries
    the whole difference; for binomial f it closes through the same
    sigma-witness as the norm rule, with theta built on (b_i + N(f))/b_i.
    """
    _check_pair(s, i, j)
    _check_elem(s, f)
    ctx = s.ctx
    bi, bj = s.slots[i - 1], s.slots[j - 1]
    nf = f.norm()
    w = bi + nf
    if w.is_zero():
        if f.is_const():
            # b_i is minus a p-th power, its dlog vanishes
            return RewriteResult.make_trivial(_exact_cert(s, _zero_form(s)))
        if f.is_binomial():
            t = f.coeffs[0] / f.coeffs[1]
            sigma = t.wp() + s.alpha
            aux = s.with_slot(i, sigma)
            gen = None if t.is_zero() else WpGenerator(t, aux.slots)
            theta = _dlog_rest(s, {i}).scale(sigma)
            cert = _exact_cert(s, _zero_form(s), gen=gen, theta=theta)
            return RewriteResult.make_trivial(cert)
        step = AxiomStep(AXIOM_NORM_SLOT_GENERAL, s.alpha, f.coeffs, i,
                         s.slots, s.eval_form())
        cert = RewriteCertificate(ctx, s.n, s, _zero_form(s),
                                  axiom_steps=(step,))
        return RewriteResult.make_trivial(cert)
    out = s.with_slot(j, w * bj)
    if nf.is_zero() or f.is_const():
        # auxiliary slot pair (b_i, b_i) or (b_i, b_i + c^p): exactly zero
        return RewriteResult.make_rewritten(out, _exact_cert(s, out))
    if f.is_binomial():
        t = f.coeffs[0] / f.coeffs[1]
        sigma = t.wp() + s.alpha
        aux = s.with_slot(j, w)
        gen = None if t.is_zero() else WpGenerator(t, aux.slots)
        theta = DiffForm.scalar(sigma).wedge(dlog(w / bi))
        for k, b in enumerate(s.slots, start=1):
            if k != i and k != j:
                theta = theta.wedge(dlog(b))
        cert = _exact_cert(s, out, gen=gen, theta=theta)
        return RewriteResult.make_rewritten(out, cert)
    step = AxiomStep(AXIOM_NORM_SLOT_GENERAL, s.alpha, f.coeffs, i, s.slots,
                     s.eval_form().sub(out.eval_form()))
    cert = RewriteCertificate(ctx, s.n, s, out, axiom_steps=(step,))
    return RewriteResult.make_rewritten(out, cert)


def _pair_rotate(s, i, j):
    """Exchange the pair (a, b) at slots (i, j) for (1/b, a); exact since
    dlog(1/b) ^ dlog(a) = dlog(a) ^ dlog(b)."""
    _check_pair(s, i, j)
    a, b = s.slots[i - 1], s.slots[j - 1]
    out = s.with_slot(i, b.inv()).with_slot(j, a)
    return RewriteResult.make_rewritten(out, _exact_cert(s, out))


# --------------------------------------------------------------------------
# slot modification

def _phi_value(alpha, slots, v):
    """Sum over components of (slot product for the index) * norm."""
    total = alpha.ctx.zero()
    for d, f in v.items():
        scalar = alpha.ctx.one()
        for b, bit in zip(slots, d):
            if bit:
                scalar = scalar * b
        total = total + scalar * f.norm()
    return total


def _check_vector(s, v, length):
    """Validate indices and elements, dropping zero components."""
    out = {}
    for d, f in v.items():
        d = tuple(d)
        if len(d) != length or any(bit not in (0, 1) for bit in d):
            raise BadMultiIndex(f"bad component index {d!r}")
        if not any(d):
            raise BadMultiIndex("the zero tuple does not index a component")
        if not isinstance(f, ASElement):
            raise CharpError("vector components must be ASElements")
        if f.ctx != s.ctx:
            raise CharpError("component from a different field context")
        if f.alpha != s.alpha:
            raise CharpError("component lives over a different parameter")
        if f.is_zero():
            continue
        out[d] = f
    return out


def _v1_step(s, v1):
    """Rewrite the last slot to the partial sum value of v1, preserving
    slots 1..n-1 syntactically.

    Every key of v1 ends in 1.  Components with support above the last
    position are folded through the one-lower recursion, moved into the
    last slot by the product rule (or the norm variant when the pure-last
    component is present), and the recursion is then undone by the
    inverted, lifted certificate so the leading slots come back.
    """
    n = s.n
    tail_key = (0,) * (n - 1) + (1,)
    f_tail = v1.get(tail_key)
    v1p = {d[:-1]: f for d, f in v1.items() if d != tail_key}
    if not v1p:
        return rule_b(s, n, f_tail)
    res_tau = _modify_rec(s.drop_last(), v1p)
    lifted = lift(res_tau.cert, s.slots[-1])
    if res_tau.is_trivial:
        return RewriteResult.make_trivial(lifted)
    mid = res_tau.symbol.with_extra_slot(s.slots[-1])
    if f_tail is None:
        step = rule_d(mid, n - 1, n)
    else:
        step = rule_f(mid, n - 1, n, f_tail)
    chain = compose(lifted, step.cert)
    if step.is_trivial:
        return RewriteResult.make_trivial(chain)
    last = step.symbol.slots[-1]
    undo = lift(invert(res_tau.cert), last)
    chain = compose(chain, undo)
    return RewriteResult.make_rewritten(s.with_slot(n, last), chain)


def _modify_rec(s, v):
    n = s.n
    if n == 1:
        return rule_b(s, 1, v[(1,)])
    v1 = {d: f for d, f in v.items() if d[-1] == 1}
    v0 = {d[:-1]: f for d, f in v.items() if d[-1] == 0}
    if v1:
        res1 = _v1_step(s, v1)
        if res1.is_trivial or not v0:
            return res1
        phi1 = res1.symbol.slots[-1]
        res0 = _modify_rec(s.drop_last(), v0)
        lifted0 = lift(res0.cert, phi1)
        chain = compose(res1.cert, lifted0)
        if res0.is_trivial:
            return RewriteResult.make_trivial(chain)
        joined = res0.symbol.with_extra_slot(phi1)
        ee = rule_e(joined, n, n - 1)
        chain = compose(chain, ee.cert)
        if ee.is_trivial:
            return RewriteResult.make_trivial(chain)
        return RewriteResult.make_rewritten(ee.symbol, chain)
    res0 = _modify_rec(s.drop_last(), v0)
    lifted = lift(res0.cert, s.slots[-1])
    if res0.is_trivial:
        return RewriteResult.make_trivial(lifted)
    mid = res0.symbol.with_extra_slot(s.slots[-1])
    rot = _pair_rotate(mid, n - 1, n)
    return RewriteResult.make_rewritten(rot.symbol, compose(lifted, rot.cert))


def slot_modify(s, v):
    """Rewrite so the last slot becomes the direct sum value of v.

    v maps nonzero 0/1 tuples of length n to ASElements over the same
    parameter; zero components may be included and are ignored.  Leading
    slots are free to change.  Returns Trivial when a vanishing branch
    fires along the way.
    """
    v = _check_vector(s, v, s.n)
    if not v:
        raise ZeroVector("no nonzero component")
    res = _modify_rec(s, v)
    if not res.is_trivial:
        if res.symbol.slots[-1] != _phi_value(s.alpha, s.slots, v):
            raise CharpError("internal: final slot disagrees with the "
                             "direct sum value")
    return res


def slot_modify_tail(s, level, v):
    """Like slot_modify but touching only slots level..n.

    Component indices must have support at or above the level.  The first
    level-1 slots of a Rewritten output are syntactically the input ones.
    """
    n = s.n
    if not 1 <= level <= n:
        raise BadRange(f"level {level} outside 1..{n}")
    v = _check_vector(s, v, n)
    for d in v:
        if not any(d[level - 1:]):
            raise BadMultiIndex(f"component index {d!r} has no support at "
                                f"or above level {level}")
    if not v:
        raise ZeroVector("no nonzero component")
    groups = {}
    for d, f in v.items():
        top = max(k for k in range(1, n + 1) if d[k - 1])
        groups.setdefault(top, {})[d[:top]] = f
    chain = None
    cur = s
    for k in sorted(groups, reverse=True):
        stripped = cur.slots[k:]
        base = SymbolPresentation(s.ctx, cur.alpha, cur.slots[:k])
        res = _v1_step(base, groups[k])
        cert = res.cert
        for b in stripped:
            cert = lift(cert, b)
        chain = cert if chain is None else compose(chain, cert)
        if res.is_trivial:
            return RewriteResult.make_trivial(chain)
        cur = SymbolPresentation(s.ctx, cur.alpha, res.symbol.slots + stripped)
    ks = sorted(groups)
    if ks[-1] != n:
        rot = _pair_rotate(cur, ks[-1], n)
        chain = compose(chain, rot.cert)
        cur = rot.symbol
    for q in ks[:-1]:
        ee = rule_e(cur, n, q)
        chain = compose(chain, ee.cert)
        if ee.is_trivial:
            return RewriteResult.make_trivial(chain)
        cur = ee.symbol
    if cur.slots[-1] != _phi_value(s.alpha, s.slots, v):
        raise CharpError("internal: final slot disagrees with the direct "
                         "sum value")
    return RewriteResult.make_rewritten(cur, chain)


# --------------------------------------------------------------------------
# separable linkage

class LinkageSystem:
    """The solved linear system behind a linkage run: the index tuples,
    their slot products, the shared x values, the 0/1 y assignment matrix
    and the resulting correction values."""

    __slots__ = ("tuples", "gammas", "xs", "ys", "deltas")

    def __init__(self, tuples, gammas, xs, ys, deltas):
        self.tuples = tuple(tuples)
        self.gammas = tuple(gammas)
        self.xs = tuple(xs)
        self.ys = tuple(tuple(row) for row in ys)
        self.deltas = tuple(deltas)

    def __repr__(self):
        return f"LinkageSystem(m={len(self.gammas)})"


class LinkedSymbol:
    LINKED = "linked"
    TRIVIAL = "trivial"
    UNCHANGED = "unchanged"

    __slots__ = ("status", "symbol", "cert")

    def __init__(self, status, symbol, cert):
        self.status = status
        self.symbol = symbol
        self.cert = cert

    def __repr__(self):
        return f"LinkedSymbol({self.status}, {self.symbol!r})"


class LinkageOutcome:
    __slots__ = ("alpha_star", "system", "results")

    def __init__(self, alpha_star, system, results):
        self.alpha_star = alpha_star
        self.system = system
        self.results = tuple(results)

    def __repr__(self):
        return f"LinkageOutcome(alpha_star={self.alpha_star!r})"


def separable_link(symbols, level):
    """Rewrite a collection of presentations sharing all n slots so they
    share the parameter and the first level-1 slots.

    The collection must have one presentation per 0/1 tuple with support
    at or above the level, plus one more.  For each tuple the slot
    product gamma is formed (tuples enumerated in lexicographic order),
    a shared x value is solved from the linear equation that makes the
    corrected parameters agree, and each presentation is pushed through
    slot_modify_tail with binomial components followed by folding the new
    last slot into the parameter.
    """
    symbols = [s for s in symbols]
    if not symbols:
        raise WrongCollectionSize("empty collection")
    s0 = symbols[0]
    ctx, n = s0.ctx, s0.n
    for s in symbols:
        if not isinstance(s, SymbolPresentation):
            raise CharpError("collection entries must be presentations")
        if s.ctx != ctx:
            raise SlotsNotShared("presentations over different contexts")
        if s.slots != s0.slots:
            raise SlotsNotShared("presentations must share every slot")
    if not 1 <= level <= n:
        raise BadRange(f"level {level} outside 1..{n}")
    tuples = [d for d in product((0, 1), repeat=n) if any(d[level - 1:])]
    tuples.sort()
    m = len(tuples)
    if len(symbols) != m + 1:
        raise WrongCollectionSize(
            f"need {m + 1} presentations for {n} slots at level {level}, "
            f"got {len(symbols)}")
    one = ctx.one()
    zero = ctx.zero()
    alphas = [s.alpha for s in symbols]
    gammas = []
    for d in tuples:
        g = one
        for b, bit in zip(s0.slots, d):
            if bit:
                g = g * b
        gammas.append(g)
    gamma_sum = zero
    for g in gammas:
        gamma_sum = gamma_sum + g
    xs = []
    for i in range(1, m + 1):
        gi = gammas[i - 1]
        xs.append(alphas[0]
                  + gi.inv() * (alphas[0] - alphas[i])
                  * (one + gamma_sum - gi))
    ys = [(1,) * m]
    for i in range(1, m + 1):
        ys.append(tuple(0 if j == i else 1 for j in range(1, m + 1)))
    pad = (zero,) * (ctx.p - 2)
    deltas = []
    for i in range(m + 1):
        total = zero
        for j in range(m):
            yf = one if ys[i][j] else zero
            total = total + gammas[j] * ASElement(
                alphas[i], (xs[j], yf) + pad).norm()
        deltas.append(total)
    alpha_star = alphas[0] + deltas[0]
    for i in range(1, m + 1):
        if alphas[i] + deltas[i] != alpha_star:
            raise CharpError("internal: linkage solution failed")
    results = []
    for i, s in enumerate(symbols):
        v = {}
        for j, d in enumerate(tuples):
            yf = one if ys[i][j] else zero
            f = ASElement(alphas[i], (xs[j], yf) + pad)
            if not f.is_zero():
                v[d] = f
        if not v:
            # nothing to correct; the parameter already equals alpha_star
            ident = RewriteCertificate(ctx, n, s, s)
            results.append(LinkedSymbol(LinkedSymbol.UNCHANGED, s, ident))
            continue
        res = slot_modify_tail(s, level, v)
        if res.is_trivial:
            padded = SymbolPresentation(
                ctx, alpha_star,
                s0.slots[:level - 1] + (one,) * (n - level + 1))
            # same witnesses close it: the padded side is the zero form
            cert = RewriteCertificate(ctx, n, s, padded,
                                      generators=res.cert.generators,
                                      theta=res.cert.theta,
                                      axiom_steps=res.cert.axiom_steps)
            results.append(LinkedSymbol(LinkedSymbol.TRIVIAL, padded, cert))
            continue
        ra = rule_a(res.symbol, n)
        if ra.symbol.alpha != alpha_star:
            raise CharpError("internal: linked parameter mismatch")
        cert = compose(res.cert, ra.cert)
        results.append(LinkedSymbol(LinkedSymbol.LINKED, ra.symbol, cert))
    system = LinkageSystem(tuples, gammas, xs, ys, deltas)
    return LinkageOutcome(alpha_star, system, results)


# --------------------------------------------------------------------------
# trivialization

class TrivializationOutcome:
    TRIVIAL = "trivial"
    NOT_FOUND = "not_found"

    __slots__ = ("status", "case", "witness", "presentation", "cert",
                 "search")

    def __init__(self, status, case=None, witness=None, presentation=None,
                 cert=None, search=None):
        self.status = status
        self.case = case
        self.witness = witness
        self.presentation = presentation
        self.cert = cert
        self.search = search

    @property
    def is_trivial(self):
        return self.status == TrivializationOutcome.TRIVIAL

    def __repr__(self):
        if self.is_trivial:
            return f"TrivializationOutcome(trivial, case={self.case})"
        return "TrivializationOutcome(not_found)"


def trivialize(s, max_degree, cap=pforms.SEARCH_CAP, jobs=None):
    """Search for a certified reason the presentation is the zero class.

    Builds the weighted two-dimensional form joined with the direct sum
    of scaled norm forms and looks for a nontrivial zero with polynomial
    coordinates up to max_degree (constants only when max_degree is
    None).  A zero either exhibits wp(u) = alpha directly, makes the last
    slot a p-th power, or feeds slot_modify so the folded parameter
    becomes an explicit wp value.  Budget exhaustion is a normal outcome.
    """
    if not isinstance(s, SymbolPresentation):
        raise CharpError("expected a presentation")
    ctx = s.ctx
    p = ctx.p
    big = pforms.build_Phi(s)
    found = pforms.isotropy_search(big, max_degree=max_degree, cap=cap,
                                   jobs=jobs)
    if not found.found:
        return TrivializationOutcome(TrivializationOutcome.NOT_FOUND,
                                     search=found)
    point = found.point
    x0, y0 = point[0], point[1]
    blocks = []
    for idx, d in enumerate(pforms.unit_tuples(s.n)):
        blocks.append((d, point[2 + idx * p:2 + (idx + 1) * p]))
    raw = {d: coeffs for d, coeffs in blocks
           if any(not c.is_zero() for c in coeffs)}
    if not raw:
        if x0.is_zero():
            raise CharpError("internal: zero point escaped the search")
        u = -(y0 / x0)
        if u.wp() != s.alpha:
            raise CharpError("internal: root fails its defining equation")
        cert = _exact_cert(s, _zero_form(s), gen=WpGenerator(u, s.slots))
        return TrivializationOutcome(TrivializationOutcome.TRIVIAL,
                                     case="direct_root", witness=u,
                                     cert=cert, search=found)
    if x0.is_zero():
        v = {d: ASElement(s.alpha, coeffs) for d, coeffs in raw.items()}
        res = slot_modify(s, v)
        if res.is_trivial:
            return TrivializationOutcome(TrivializationOutcome.TRIVIAL,
                                         case="power_slot", cert=res.cert,
                                         search=found)
        if res.symbol.slots[-1] != (-y0) ** p:
            raise CharpError("internal: last slot is not the expected power")
        close = _exact_cert(res.symbol, _zero_form(s))
        cert = compose(res.cert, close)
        return TrivializationOutcome(TrivializationOutcome.TRIVIAL,
                                     case="power_slot",
                                     presentation=res.symbol, cert=cert,
                                     search=found)
    inv = x0.inv()
    v = {d: ASElement(s.alpha, tuple(c * inv for c in coeffs))
         for d, coeffs in raw.items()}
    res = slot_modify(s, v)
    if res.is_trivial:
        return TrivializationOutcome(TrivializationOutcome.TRIVIAL,
                                     case="modified", cert=res.cert,
                                     search=found)
    u = -(y0 * inv)
    ra = rule_a(res.symbol, s.n)
    if ra.symbol.alpha != u.wp():
        raise CharpError("internal: folded parameter is not the expected "
                         "wp value")
    gen = None if u.is_zero() else WpGenerator(u, ra.symbol.slots)
    close = _exact_cert(ra.symbol, _zero_form(s), gen=gen)
    cert = compose(compose(res.cert, ra.cert), close)
    return TrivializationOutcome(TrivializationOutcome.TRIVIAL,
                                 case="modified", witness=u,
                                 presentation=ra.symbol, cert=cert,
                                 search=found)
