"""Differential forms with rational-function coefficients.

A degree-n form is a finite map from strictly increasing n-tuples of
variable indices to nonzero coefficients; degree 0 is a single coefficient
keyed by the empty tuple.  Any degree above the variable count is the zero
form.  Signs are tracked through sorting-permutation parity for every p,
including p = 2 where they are invisible.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import CharpError, DegreeMismatch, ZeroArgument, ZeroSlot
from .fields import FieldCtx, FieldElement

__all__ = ["DiffForm", "dlog", "eval_symbol", "wp_image"]


def _merge_sign(left, right):
    """Parity sign for sorting the concatenation of two increasing index
    tuples with disjoint entries."""
    inversions = 0
    for j in right:
        for i in left:
            if i > j:
                inversions += 1
    return -1 if inversions & 1 else 1


class DiffForm:
    __slots__ = ("ctx", "degree", "comps")

    def __init__(self, ctx, degree, comps):
        self.ctx = ctx
        self.degree = degree
        self.comps = comps

    @classmethod
    def make(cls, ctx, degree, comps):
        if degree < 0:
            raise CharpError("negative form degree")
        clean = {}
        for key, coeff in comps.items():
            key = tuple(key)
            if len(key) != degree:
                raise CharpError(f"component {key} does not match degree {degree}")
            if any(not 0 <= i < ctx.nvars for i in key):
                raise CharpError(f"variable index out of range in {key}")
            if any(key[i] >= key[i + 1] for i in range(len(key) - 1)):
                raise CharpError(f"component key {key} not strictly increasing")
            if not coeff.is_zero():
                clean[key] = coeff
        return cls(ctx, degree, clean)

    @classmethod
    def zero(cls, ctx, degree):
        return cls(ctx, degree, {})

    @classmethod
    def scalar(cls, coeff):
        """Degree-0 form holding one coefficient."""
        if coeff.is_zero():
            return cls(coeff.ctx, 0, {})
        return cls(coeff.ctx, 0, {(): coeff})

    def is_zero(self):
        return not self.comps

    def __eq__(self, other):
        return (isinstance(other, DiffForm) and self.ctx == other.ctx
                and self.degree == other.degree and self.comps == other.comps)

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.comps))))

    def __repr__(self):
        if self.is_zero():
            return f"DiffForm(0, degree={self.degree})"
        names = self.ctx.vars
        bits = []
        for key in sorted(self.comps):
            base = "^".join(f"d{names[i]}" for i in key) or "1"
            bits.append(f"({self.comps[key]!r})*{base}")
        return " + ".join(bits)

    # -- linear structure ----------------------------------------------------

    def _check(self, other):
        if self.ctx != other.ctx:
            raise CharpError("mixed field contexts")
        if self.degree != other.degree:
            raise DegreeMismatch(f"{self.degree} vs {other.degree}")

    def add(self, other):
        self._check(other)
        out = dict(self.comps)
        for key, coeff in other.comps.items():
            prev = out.get(key)
            if prev is None:
                out[key] = coeff
            else:
                s = prev + coeff
                if s.is_zero():
                    del out[key]
                else:
                    out[key] = s
        return DiffForm(self.ctx, self.degree, out)

    def neg(self):
        return DiffForm(self.ctx, self.degree, {k: -c for k, c in self.comps.items()})

    def sub(self, other):
        return self.add(other.neg())

    def scale(self, fe):
        if fe.is_zero():
            return DiffForm.zero(self.ctx, self.degree)
        return DiffForm(self.ctx, self.degree, {k: fe * c for k, c in self.comps.items()})

    __add__ = add
    __sub__ = sub
    __neg__ = neg

    # -- exterior operations -------------------------------------------------

    def wedge(self, other):
        if self.ctx != other.ctx:
            raise CharpError("mixed field contexts")
        degree = self.degree + other.degree
        if degree > self.ctx.nvars:
            return DiffForm.zero(self.ctx, degree)
        out = {}
        for ka, ca in self.comps.items():
            seta = set(ka)
            for kb, cb in other.comps.items():
                if seta & set(kb):
                    continue
                sign = _merge_sign(ka, kb)
                key = tuple(sorted(ka + kb))
                coeff = ca * cb
                if sign < 0:
                    coeff = -coeff
                prev = out.get(key)
                if prev is None:
                    out[key] = coeff
                else:
                    s = prev + coeff
                    if s.is_zero():
                        del out[key]
                    else:
                        out[key] = s
        return DiffForm(self.ctx, degree, out)

    def d(self):
        """Exterior derivative; d(f dx_I) = sum_j df/dx_j dx_j ^ dx_I."""
        ctx = self.ctx
        out = {}
        for key, coeff in self.comps.items():
            inside = set(key)
            for j in range(ctx.nvars):
                if j in inside:
                    continue
                dj = coeff.derivative(j)
                if dj.is_zero():
                    continue
                pos = sum(1 for i in key if i < j)
                if pos & 1:
                    dj = -dj
                nk = tuple(sorted(key + (j,)))
                prev = out.get(nk)
                if prev is None:
                    out[nk] = dj
                else:
                    s = prev + dj
                    if s.is_zero():
                        del out[nk]
                    else:
                        out[nk] = s
        return DiffForm(ctx, self.degree + 1, out)


@lru_cache(maxsize=4096)
def _dlog_cached(beta):
    ctx = beta.ctx
    out = {}
    for j in range(ctx.nvars):
        c = beta.derivative(j) / beta
        if not c.is_zero():
            out[(j,)] = c
    return DiffForm(ctx, 1, out)


def dlog(beta: FieldElement) -> DiffForm:
    """Logarithmic derivative (1/beta) d(beta) as a 1-form.

    Slots repeat across rewrite chains, so the result is memoized."""
    if beta.is_zero():
        raise ZeroArgument("dlog of zero")
    return _dlog_cached(beta)


def eval_symbol(alpha: FieldElement, slots) -> DiffForm:
    """alpha * dlog(b_1) ^ .. ^ dlog(b_n)."""
    slots = list(slots)
    if not slots:
        raise CharpError("a symbol needs at least one slot")
    form = dlog(slots[0])
    for b in slots[1:]:
        form = form.wedge(dlog(b))
    return form.scale(alpha)


def wp_image(u: FieldElement, slots) -> DiffForm:
    """(u^p - u) * dlog(b_1) ^ .. ^ dlog(b_n)."""
    slots = list(slots)
    if not slots:
        raise CharpError("a generator needs at least one slot")
    for b in slots:
        if b.is_zero():
            raise ZeroSlot("zero slot in wp image")
    return eval_symbol(u.wp(), slots)
