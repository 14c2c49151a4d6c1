"""Exact arithmetic over rational function fields of characteristic p.

The ground field is F_{p^e}, presented as F_p[g]/(m(g)) for a declared monic
irreducible m.  Elements of F_{p^e} are stored as integer codes in [0, p^e)
whose base-p digits are the coefficients of the g-power expansion; all
coefficient arithmetic goes through precomputed tables so the inner loops
never touch polynomial representations.

On top of that sit sparse multivariate polynomials (dict from exponent tuple
to nonzero coefficient code) and canonical fractions: denominator nonzero,
numerator and denominator coprime, denominator monic with respect to the
graded lexicographic order.  Equality of field elements is equality of the
canonical representation, which is what makes certificate checking a pure
comparison downstream.
"""

from __future__ import annotations

from functools import reduce

from .errors import (
    BothZero,
    CharpError,
    NotAPthPower,
    UnknownVariable,
    ZeroDenominator,
)

__all__ = [
    "FieldCtx",
    "Poly",
    "FieldElement",
    "UniPoly",
    "poly_gcd",
    "uni_split_root",
    "wp_root",
    "wp_decide",
]


# ---------------------------------------------------------------------------
# F_p[T] helpers on little-endian coefficient tuples, used only for table
# construction and min-poly validation.

def _fp_trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return tuple(a[:n])


def _fp_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _fp_trim(out)


def _fp_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and _fp_trim(a):
        d = len(_fp_trim(a)) - 1
        if d < dm:
            break
        lead = a[d]
        for i, cm in enumerate(m):
            a[d - dm + i] = (a[d - dm + i] - lead * cm) % p
        a = list(_fp_trim(a))
        if not a:
            break
    return _fp_trim(a)


def _fp_divides(d, a, p):
    """Whether monic d divides a in F_p[T]."""
    return not _fp_mod(a, d, p)


def _fp_irreducible(m, p):
    deg = len(m) - 1
    if deg < 1 or m[-1] != 1:
        return False
    for ddeg in range(1, deg // 2 + 1):
        for code in range(p ** ddeg):
            cs = []
            c = code
            for _ in range(ddeg):
                cs.append(c % p)
                c //= p
            cs.append(1)
            if _fp_divides(tuple(cs), m, p):
                return False
    return True


def _default_min_poly(p, e):
    """Smallest monic irreducible of degree e, by ascending coefficient code."""
    for code in range(p ** e):
        cs = []
        c = code
        for _ in range(e):
            cs.append(c % p)
            c //= p
        cs.append(1)
        m = tuple(cs)
        if _fp_irreducible(m, p):
            return m
    raise CharpError(f"no irreducible of degree {e} over F_{p}")


# ---------------------------------------------------------------------------
# Coefficient tables for F_{p^e}.

_TABLE_CACHE = {}


class _Tables:
    def __init__(self, p, e, min_poly):
        q = p ** e
        self.q = q
        digits = [tuple((c // p ** i) % p for i in range(e)) for c in range(q)]
        self.digits = digits

        def enc(ds):
            total = 0
            for i, d in enumerate(ds):
                total += d * p ** i
            return total

        def mul_codes(a, b):
            prod = _fp_mul(_fp_trim(digits[a]), _fp_trim(digits[b]), p)
            prod = _fp_mod(prod, min_poly, p)
            return enc(prod + (0,) * (e - len(prod)))

        self.add = [[enc(tuple((x + y) % p for x, y in zip(digits[a], digits[b])))
                     for b in range(q)] for a in range(q)]
        self.neg = [enc(tuple((-x) % p for x in digits[a])) for a in range(q)]

        # log/antilog relative to the smallest multiplicative generator
        gen = None
        for cand in range(2, q):
            seen = 1
            acc = cand
            while acc != 1:
                acc = mul_codes(acc, cand)
                seen += 1
            if seen == q - 1:
                gen = cand
                break
        if q == 2:
            gen = 1
        if gen is None:
            raise CharpError("min_poly is not irreducible")
        alog = [1] * (q - 1)
        for i in range(1, q - 1):
            alog[i] = mul_codes(alog[i - 1], gen)
        log = [0] * q
        for i, c in enumerate(alog):
            log[c] = i
        self.mul = [[0] * q for _ in range(q)]
        for a in range(1, q):
            row = self.mul[a]
            la = log[a]
            for b in range(1, q):
                row[b] = alog[(la + log[b]) % (q - 1)]
        self.inv = [0] * q
        for a in range(1, q):
            self.inv[a] = alog[(q - 1 - log[a]) % (q - 1)]
        self.frob = [0] * q
        for a in range(1, q):
            self.frob[a] = alog[(log[a] * p) % (q - 1)]
        self.proot = [0] * q
        for a in range(q):
            self.proot[self.frob[a]] = a
        self.trace = [0] * q
        for a in range(q):
            acc, t = a, a
            for _ in range(e - 1):
                acc = self.frob[acc]
                t = self.add[t][acc]
            if t >= p:
                raise CharpError("trace left the prime field")
            self.trace[a] = t
        # c -> c^p - c, and one preimage per attained value
        self.wp = [self.add[self.frob[a]][self.neg[a]] for a in range(q)]
        self.wp_pre = {}
        for a in range(q):
            self.wp_pre.setdefault(self.wp[a], a)


def _tables(p, e, min_poly):
    key = (p, e, min_poly)
    tab = _TABLE_CACHE.get(key)
    if tab is None:
        tab = _Tables(p, e, min_poly)
        _TABLE_CACHE[key] = tab
    return tab


class FieldCtx:
    """A rational function field F_{p^e}(x_1, .., x_k) with ordered variables.

    p must be prime; the officially supported range is p in {2, 3, 5} and
    e <= 4, although nothing below hard-codes a particular p.
    """

    __slots__ = ("p", "e", "q", "min_poly", "vars", "tab", "_zero", "_one")

    def __init__(self, p, e=1, min_poly=None, names=()):
        if p < 2 or any(p % d == 0 for d in range(2, p)):
            raise CharpError(f"p = {p} is not prime")
        if e < 1:
            raise CharpError("extension degree must be positive")
        if min_poly is None:
            min_poly = _default_min_poly(p, e) if e > 1 else (0, 1)
        else:
            min_poly = tuple(c % p for c in min_poly)
            if len(min_poly) != e + 1 or min_poly[-1] != 1:
                raise CharpError("min_poly must be monic of degree e")
            if e > 1 and not _fp_irreducible(min_poly, p):
                raise CharpError("min_poly is reducible")
        names = tuple(names)
        if len(set(names)) != len(names):
            raise CharpError("duplicate variable names")
        if "g" in names:
            raise CharpError("'g' is reserved for the field generator")
        self.p = p
        self.e = e
        self.q = p ** e
        self.min_poly = min_poly
        self.vars = names
        self.tab = _tables(p, e, min_poly)
        self._zero = None
        self._one = None

    def key(self):
        return (self.p, self.e, self.min_poly, self.vars)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        base = f"F{self.q}" if self.e > 1 else f"F{self.p}"
        return f"FieldCtx({base}({', '.join(self.vars)}))"

    def var_index(self, name):
        try:
            return self.vars.index(name)
        except ValueError:
            raise UnknownVariable(name) from None

    @property
    def nvars(self):
        return len(self.vars)

    # -- element constructors ------------------------------------------------

    def zero(self):
        if self._zero is None:
            self._zero = FieldElement(self, Poly.zero(self), Poly.one(self))
        return self._zero

    def one(self):
        if self._one is None:
            self._one = FieldElement(self, Poly.one(self), Poly.one(self))
        return self._one

    def from_int(self, n):
        return self.const(n % self.p)

    def const(self, code):
        if not 0 <= code < self.q:
            raise CharpError(f"coefficient code {code} out of range")
        return FieldElement(self, Poly.const(self, code), Poly.one(self))

    def gen(self):
        if self.e == 1:
            raise CharpError("prime field has no extension generator")
        return self.const(self.p)

    def var(self, name):
        return FieldElement(self, Poly.var(self, self.var_index(name)), Poly.one(self))


def _grlex(exps):
    return (sum(exps), exps)


class Poly:
    """Sparse multivariate polynomial over F_{p^e}; terms maps exponent
    tuples to nonzero coefficient codes."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = terms

    @staticmethod
    def zero(ctx):
        return Poly(ctx, {})

    @staticmethod
    def const(ctx, code):
        if code == 0:
            return Poly(ctx, {})
        return Poly(ctx, {(0,) * ctx.nvars: code})

    @staticmethod
    def one(ctx):
        return Poly.const(ctx, 1)

    @staticmethod
    def var(ctx, idx):
        exps = tuple(1 if i == idx else 0 for i in range(ctx.nvars))
        return Poly(ctx, {exps: 1})

    @staticmethod
    def monomial(ctx, exps, code):
        if code == 0:
            return Poly(ctx, {})
        return Poly(ctx, {tuple(exps): code})

    def is_zero(self):
        return not self.terms

    def is_const(self):
        if not self.terms:
            return True
        if len(self.terms) > 1:
            return False
        (exps,) = self.terms
        return not any(exps)

    def const_code(self):
        if not self.terms:
            return 0
        (exps, c), = self.terms.items()
        if any(exps):
            raise CharpError("not a constant polynomial")
        return c

    def is_one(self):
        return self.const_code() == 1 if self.is_const() else False

    def total_degree(self):
        return max((sum(k) for k in self.terms), default=-1)

    def vars_used(self):
        used = set()
        for k in self.terms:
            for i, ei in enumerate(k):
                if ei:
                    used.add(i)
        return used

    def leading(self):
        """(exponent tuple, coefficient) of the graded-lex leading term."""
        k = max(self.terms, key=_grlex)
        return k, self.terms[k]

    def __eq__(self, other):
        return isinstance(other, Poly) and self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx.key(), tuple(sorted(self.terms.items()))))

    def __repr__(self):
        from .parsing import format_poly

        return format_poly(self)

    # -- ring operations -----------------------------------------------------

    def add(self, other):
        addt = self.ctx.tab.add
        out = dict(self.terms)
        for k, c in other.terms.items():
            prev = out.get(k)
            if prev is None:
                out[k] = c
            else:
                s = addt[prev][c]
                if s:
                    out[k] = s
                else:
                    del out[k]
        return Poly(self.ctx, out)

    def neg(self):
        negt = self.ctx.tab.neg
        return Poly(self.ctx, {k: negt[c] for k, c in self.terms.items()})

    def sub(self, other):
        return self.add(other.neg())

    def scale(self, code):
        if code == 0:
            return Poly.zero(self.ctx)
        if code == 1:
            return self
        mrow = self.ctx.tab.mul[code]
        return Poly(self.ctx, {k: mrow[c] for k, c in self.terms.items()})

    def mul(self, other):
        if not self.terms or not other.terms:
            return Poly.zero(self.ctx)
        mult = self.ctx.tab.mul
        addt = self.ctx.tab.add
        out = {}
        bitems = list(other.terms.items())
        for k1, c1 in self.terms.items():
            mrow = mult[c1]
            for k2, c2 in bitems:
                k = tuple(x + y for x, y in zip(k1, k2))
                c = mrow[c2]
                prev = out.get(k)
                if prev is None:
                    out[k] = c
                else:
                    s = addt[prev][c]
                    if s:
                        out[k] = s
                    else:
                        del out[k]
        return Poly(self.ctx, out)

    def mul_monomial(self, exps, code):
        if code == 0:
            return Poly.zero(self.ctx)
        mrow = self.ctx.tab.mul[code]
        return Poly(self.ctx, {tuple(x + y for x, y in zip(k, exps)): mrow[c]
                               for k, c in self.terms.items()})

    def pow(self, n):
        if n < 0:
            raise CharpError("negative power of a polynomial")
        result = Poly.one(self.ctx)
        base = self
        while n:
            if n & 1:
                result = result.mul(base)
            base = base.mul(base) if n > 1 else base
            n >>= 1
        return result

    def frobenius(self):
        p = self.ctx.p
        fr = self.ctx.tab.frob
        return Poly(self.ctx, {tuple(e * p for e in k): fr[c] for k, c in self.terms.items()})

    def pth_root(self):
        """Inverse of frobenius, or None if some exponent is not divisible by p.

        Coefficient codes always have p-th roots in F_{p^e}, so recognition is
        purely about the variable exponents.
        """
        p = self.ctx.p
        pr = self.ctx.tab.proot
        out = {}
        for k, c in self.terms.items():
            if any(e % p for e in k):
                return None
            out[tuple(e // p for e in k)] = pr[c]
        return Poly(self.ctx, out)

    def derivative(self, idx):
        p = self.ctx.p
        mult = self.ctx.tab.mul
        addt = self.ctx.tab.add
        out = {}
        for k, c in self.terms.items():
            m = k[idx] % p
            if m == 0:
                continue
            c2 = mult[c][m] if m > 1 else c
            k2 = k[:idx] + (k[idx] - 1,) + k[idx + 1:]
            prev = out.get(k2)
            if prev is None:
                out[k2] = c2
            else:
                s = addt[prev][c2]
                if s:
                    out[k2] = s
                else:
                    del out[k2]
        return Poly(self.ctx, out)

    def monic(self):
        if not self.terms:
            return self
        _, lc = self.leading()
        if lc == 1:
            return self
        return self.scale(self.ctx.tab.inv[lc])

    # -- division ------------------------------------------------------------

    def exact_div(self, other):
        """Quotient of an exact division; raises if the division leaves a
        remainder."""
        if other.is_zero():
            raise ZeroDenominator("exact division by zero polynomial")
        if other.is_one():
            return self
        if other.is_const():
            return self.scale(self.ctx.tab.inv[other.const_code()])
        mult = self.ctx.tab.mul
        lk, lc = other.leading()
        lci = self.ctx.tab.inv[lc]
        rem = Poly(self.ctx, dict(self.terms))
        out = {}
        while rem.terms:
            k, c = rem.leading()
            qk = tuple(a - b for a, b in zip(k, lk))
            if any(x < 0 for x in qk):
                raise CharpError("non-exact polynomial division")
            qc = mult[c][lci]
            out[qk] = qc
            rem = rem.sub(other.mul_monomial(qk, qc))
        return Poly(self.ctx, out)

    def deg_in(self, v):
        return max((k[v] for k in self.terms), default=-1)

    def coeff_in(self, v, d):
        """Coefficient of x_v^d, as a polynomial with x_v struck out."""
        out = {}
        for k, c in self.terms.items():
            if k[v] == d:
                out[k[:v] + (0,) + k[v + 1:]] = c
        return Poly(self.ctx, out)

    def _univariate_in(self, v):
        out = [0] * (self.deg_in(v) + 1)
        for k, c in self.terms.items():
            out[k[v]] = c
        return out

    def content_pp(self, v):
        """Content and primitive part with respect to variable v."""
        coeffs = [self.coeff_in(v, d) for d in range(self.deg_in(v) + 1)]
        coeffs = [c for c in coeffs if not c.is_zero()]
        coeffs.sort(key=lambda c: len(c.terms))
        content = coeffs[0].monic()
        for c in coeffs[1:]:
            if content.is_one():
                break
            content = poly_gcd(content, c)
        return content, self.exact_div(content)


def _prem(f, g, v):
    """Pseudo-remainder of f by g with respect to variable v."""
    dg = g.deg_in(v)
    lg = g.coeff_in(v, dg)
    r = f
    while not r.is_zero():
        dr = r.deg_in(v)
        if dr < dg:
            break
        lr = r.coeff_in(v, dr)
        shift = tuple(dr - dg if i == v else 0 for i in range(f.ctx.nvars))
        r = r.mul(lg).sub(g.mul(lr).mul_monomial(shift, 1))
    return r


def _uni_gcd_codes(a, b, ctx):
    """Dense Euclid over F_{p^e} on little-endian code lists."""
    mult, addt, neg, inv = ctx.tab.mul, ctx.tab.add, ctx.tab.neg, ctx.tab.inv

    def trim(u):
        while u and u[-1] == 0:
            u.pop()
        return u

    a, b = trim(list(a)), trim(list(b))
    while b:
        lb = inv[b[-1]]
        db = len(b) - 1
        while len(a) - 1 >= db and a:
            lead = mult[a[-1]][lb]
            off = len(a) - 1 - db
            for i, cb in enumerate(b):
                a[off + i] = addt[a[off + i]][neg[mult[lead][cb]]]
            trim(a)
        a, b = b, a
    lead = inv[a[-1]]
    return [mult[c][lead] for c in a]


def _monomial_shift(f):
    """Exponent tuple of the largest monomial dividing every term."""
    mins = None
    for k in f.terms:
        if mins is None:
            mins = list(k)
        else:
            for i, e in enumerate(k):
                if e < mins[i]:
                    mins[i] = e
        if not any(mins):
            break
    return tuple(mins)


def _strip_monomial(f, shift):
    if not any(shift):
        return f
    return Poly(f.ctx, {tuple(a - b for a, b in zip(k, shift)): c
                        for k, c in f.terms.items()})


def poly_gcd(f, g):
    """Monic gcd by content/primitive-part recursion, peeling one variable
    at a time; single-variable work drops to dense Euclid over F_{p^e}.

    The common monomial factor comes off first, and the recursion peels
    the variable of least degree so the pseudo-remainder loop stays
    short.
    """
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_const() or g.is_const():
        return Poly.one(f.ctx)
    sf = _monomial_shift(f)
    sg = _monomial_shift(g)
    common = tuple(min(a, b) for a, b in zip(sf, sg))
    f = _strip_monomial(f, sf)
    g = _strip_monomial(g, sg)
    if f.is_const() or g.is_const():
        return Poly.monomial(f.ctx, common, 1)
    used = f.vars_used() | g.vars_used()
    if len(used) == 1:
        v = used.pop()
        codes = _uni_gcd_codes(f._univariate_in(v), g._univariate_in(v), f.ctx)
        out = {}
        for d, c in enumerate(codes):
            if c:
                out[tuple(d if i == v else 0 for i in range(f.ctx.nvars))] = c
        return Poly(f.ctx, out).mul_monomial(common, 1)
    v = min(used, key=lambda u: (min(f.deg_in(u), g.deg_in(u)), u))
    cf, pf = f.content_pp(v)
    cg, pg = g.content_pp(v)
    c = poly_gcd(cf, cg)
    if pf.deg_in(v) < pg.deg_in(v):
        pf, pg = pg, pf
    while True:
        if pg.is_zero():
            gcd_pp = pf
            break
        if pg.deg_in(v) == 0:
            # primitive and free of v: unit
            gcd_pp = Poly.one(f.ctx)
            break
        r = _prem(pf, pg, v)
        if r.is_zero():
            gcd_pp = pg
            break
        pf, pg = pg, r.content_pp(v)[1]
    return c.mul(gcd_pp).mul_monomial(common, 1).monic()


class FieldElement:
    """Canonical fraction num/den of multivariate polynomials.

    Invariants: den != 0, gcd(num, den) = 1, den monic under graded-lex,
    and the zero element is (0, 1).  Constructed values are trusted; use
    the `make` classmethod (or the arithmetic) for unnormalized input.
    """

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx, num, den):
        self.ctx = ctx
        self.num = num
        self.den = den

    @classmethod
    def make(cls, ctx, num, den=None):
        if den is None:
            den = Poly.one(ctx)
        if den.is_zero():
            raise ZeroDenominator("denominator is zero")
        if num.is_zero():
            return ctx.zero()
        g = poly_gcd(num, den)
        if not g.is_one():
            num = num.exact_div(g)
            den = den.exact_div(g)
        _, lc = den.leading()
        if lc != 1:
            lci = ctx.tab.inv[lc]
            num = num.scale(lci)
            den = den.scale(lci)
        return cls(ctx, num, den)

    def normalize(self):
        """Renormalize; idempotent on canonical elements."""
        return FieldElement.make(self.ctx, self.num, self.den)

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_const(self):
        return self.num.is_const() and self.den.is_one()

    def const_code(self):
        if not self.is_const():
            raise CharpError("not a constant")
        return self.num.const_code()

    def is_poly(self):
        return self.den.is_one()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        return (isinstance(other, FieldElement) and self.ctx == other.ctx
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((tuple(sorted(self.num.terms.items())),
                     tuple(sorted(self.den.terms.items()))))

    def __repr__(self):
        from .parsing import format_element

        return format_element(self)

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, int):
            return self.ctx.from_int(other)
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise CharpError("mixed field contexts")
            return other
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            return FieldElement.make(self.ctx, a.add(c), b)
        g = poly_gcd(b, d)
        if g.is_one():
            num = a.mul(d).add(c.mul(b))
            den = b.mul(d)
            if num.is_zero():
                return self.ctx.zero()
            _, lc = den.leading()
            if lc != 1:
                lci = self.ctx.tab.inv[lc]
                num, den = num.scale(lci), den.scale(lci)
            return FieldElement(self.ctx, num, den)
        b1 = b.exact_div(g)
        d1 = d.exact_div(g)
        t = a.mul(d1).add(c.mul(b1))
        if t.is_zero():
            return self.ctx.zero()
        h = poly_gcd(t, g)
        num = t.exact_div(h)
        den = b1.mul(d.exact_div(h))
        _, lc = den.leading()
        if lc != 1:
            lci = self.ctx.tab.inv[lc]
            num, den = num.scale(lci), den.scale(lci)
        return FieldElement(self.ctx, num, den)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.ctx, self.num.neg(), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.ctx.zero()
        a, b, c, d = self.num, self.den, other.num, other.den
        g1 = poly_gcd(a, d)
        if not g1.is_one():
            a, d = a.exact_div(g1), d.exact_div(g1)
        g2 = poly_gcd(c, b)
        if not g2.is_one():
            c, b = c.exact_div(g2), b.exact_div(g2)
        num = a.mul(c)
        den = b.mul(d)
        _, lc = den.leading()
        if lc != 1:
            lci = self.ctx.tab.inv[lc]
            num, den = num.scale(lci), den.scale(lci)
        return FieldElement(self.ctx, num, den)

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise ZeroDenominator("inverse of zero")
        num, den = self.den, self.num
        _, lc = den.leading()
        if lc != 1:
            lci = self.ctx.tab.inv[lc]
            num, den = num.scale(lci), den.scale(lci)
        return FieldElement(self.ctx, num, den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- characteristic-p structure -------------------------------------------

    def frobenius(self):
        return FieldElement(self.ctx, self.num.frobenius(), self.den.frobenius())

    def pth_root(self):
        """The unique p-th root, or None when the element is not a p-th power.

        Recognition: every variable exponent in numerator and denominator is
        divisible by p (the coefficient side always has roots in F_{p^e}).
        Canonicity is preserved: roots of coprime polynomials stay coprime and
        the monic denominator keeps leading coefficient 1.
        """
        rn = self.num.pth_root()
        if rn is None:
            return None
        rd = self.den.pth_root()
        if rd is None:
            return None
        return FieldElement(self.ctx, rn, rd)

    def wp(self):
        """Artin-Schreier operator a^p - a."""
        return self.frobenius() - self

    def derivative(self, var):
        """Partial derivative with respect to a declared variable name."""
        idx = self.ctx.var_index(var) if isinstance(var, str) else var
        if not 0 <= idx < self.ctx.nvars:
            raise UnknownVariable(str(var))
        a, b = self.num, self.den
        da, db = a.derivative(idx), b.derivative(idx)
        if db.is_zero():
            return FieldElement.make(self.ctx, da, b)
        num = da.mul(b).sub(a.mul(db))
        return FieldElement.make(self.ctx, num, b.mul(b))


class UniPoly:
    """Dense univariate polynomial in an auxiliary variable T with
    FieldElement coefficients (ascending order)."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        while coeffs and coeffs[-1].is_zero():
            coeffs = coeffs[:-1]
        self.ctx = ctx
        self.coeffs = list(coeffs)

    @staticmethod
    def zero(ctx):
        return UniPoly(ctx, [])

    @staticmethod
    def wp_poly(ctx, alpha):
        """T^p - T - alpha."""
        p = ctx.p
        cs = [ctx.zero()] * (p + 1)
        cs[0] = -alpha
        cs[1] = ctx.from_int(-1)
        cs[p] = ctx.one() + cs[p]
        return UniPoly(ctx, cs)

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, UniPoly) and self.ctx == other.ctx
                and self.coeffs == other.coeffs)

    def __repr__(self):
        return f"UniPoly({self.coeffs!r})"

    def add(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.ctx.zero()
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else z
            b = other.coeffs[i] if i < len(other.coeffs) else z
            out.append(a + b)
        return UniPoly(self.ctx, out)

    def neg(self):
        return UniPoly(self.ctx, [-c for c in self.coeffs])

    def sub(self, other):
        return self.add(other.neg())

    def scale(self, fe):
        return UniPoly(self.ctx, [c * fe for c in self.coeffs])

    def mul(self, other):
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.ctx)
        out = [self.ctx.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.ctx, out)

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDenominator("division by zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly.zero(self.ctx), self
        quot = [self.ctx.zero()] * (dq + 1)
        linv = other.coeffs[-1].inv()
        for k in range(dq, -1, -1):
            if len(rem) - 1 != k + other.degree():
                continue
            c = rem[-1] * linv
            quot[k] = c
            for i, b in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * b
            while rem and rem[-1].is_zero():
                rem.pop()
        return UniPoly(self.ctx, quot), UniPoly(self.ctx, rem)

    def shift(self, c):
        """Compose with T + c."""
        result = UniPoly.zero(self.ctx)
        lin = UniPoly(self.ctx, [c, self.ctx.one()])
        for a in reversed(self.coeffs):
            result = result.mul(lin).add(UniPoly(self.ctx, [a]))
        return result

    def evaluate(self, x):
        result = self.ctx.zero()
        for a in reversed(self.coeffs):
            result = result * x + a
        return result

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.coeffs[-1].inv())


def uni_gcd(f, g):
    """Monic gcd in F(x_1..x_k)[T] by the Euclidean algorithm."""
    if f.is_zero() and g.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    while not g.is_zero():
        f, g = g, f.divmod(g)[1]
    return f.monic()


def uni_split_root(g):
    """A root of a proper monic divisor g of some split T^p - T - alpha.

    The roots of such a divisor differ by prime-field constants, so shifted
    gcds gcd(g(T), g(T + c)) split g until it is linear.  Requires
    deg g < p: the full polynomial is invariant under every shift.
    """
    ctx = g.ctx
    p = ctx.p
    g = g.monic()
    if g.degree() >= p:
        raise CharpError("divisor must be proper (degree < p)")
    while g.degree() > 1:
        for c in range(1, p):
            h = uni_gcd(g, g.shift(ctx.from_int(c)))
            if 0 < h.degree() < g.degree():
                g = h
                break
        else:
            raise CharpError("polynomial does not split by prime-field shifts")
    if g.degree() != 1:
        raise CharpError("no linear factor found")
    return -g.coeffs[0]


# ---------------------------------------------------------------------------
# Membership in the image of the Artin-Schreier operator.

def _wp_root_const(ctx, code):
    root = ctx.tab.wp_pre.get(code)
    return None if root is None else ctx.const(root)


def _wp_root_poly(ctx, f):
    """Solve wp(r) = f for polynomial f by graded-lex leading-term descent.

    Complete for polynomials: a nonconstant wp-image has leading term
    LT(r)^p, so either the leading term is a p-th-power monomial or there is
    no root at all.
    """
    p = ctx.p
    acc = ctx.zero()
    while True:
        if f.is_const():
            root = _wp_root_const(ctx, f.const_code())
            if root is None:
                return None
            return acc + root
        exps, c = f.leading()
        if any(e % p for e in exps):
            return None
        mono = Poly.monomial(ctx, tuple(e // p for e in exps), ctx.tab.proot[c])
        m = FieldElement(ctx, mono, Poly.one(ctx))
        acc = acc + m
        f = f.sub(mono.frobenius().sub(mono))


def wp_root(alpha):
    """An element u with u^p - u = alpha, or None if not found.

    Decides the constant and polynomial cases completely; for proper
    fractions it only recognizes the definite failures (see wp_decide).
    """
    ctx = alpha.ctx
    if alpha.is_zero():
        return ctx.zero()
    if alpha.is_const():
        return _wp_root_const(ctx, alpha.const_code())
    if alpha.is_poly():
        return _wp_root_poly(ctx, alpha.num)
    return None


def wp_decide(alpha):
    """Trichotomy for alpha in wp(F): 'in', 'not_in', or 'unknown'.

    Constants use the absolute trace test, polynomials the complete
    leading-term descent.  A proper fraction whose denominator is not a p-th
    power is definitely not a wp-image (wp(r/s) has denominator s^p after
    cancellation); the remaining fraction case is left undecided.
    """
    ctx = alpha.ctx
    if alpha.is_const():
        return "in" if ctx.tab.trace[alpha.const_code()] == 0 else "not_in"
    if alpha.is_poly():
        return "in" if _wp_root_poly(ctx, alpha.num) is not None else "not_in"
    if alpha.den.pth_root() is None:
        return "not_in"
    return "unknown"
