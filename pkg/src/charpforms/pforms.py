"""Homogeneous degree-p polynomial forms and their searches.

A form is described structurally: explicit coefficient tables, the norm
form of the rank-p algebra F[T : T^p - T = alpha], the regular
two-dimensional companion forms, nonzero scalar multiples, and direct
sums.  Structural descriptions keep enough shape to certify p-regularity
node by node and to drive the isotropy searches that the rewrite engine
consumes.

Coordinate conventions: a direct sum concatenates the coordinates of its
parts in order, and the norm form takes the p coefficients of an element
c_0 + c_1*T + ... + c_{p-1}*T^{p-1} in that order.
"""

from array import array
from itertools import permutations
import concurrent.futures
import os
import random

from . import kernels
from .errors import (
    BadMultiIndex,
    CharpError,
    DimensionMismatch,
    ExplicitLeaf,
    NonConstantCoefficients,
    SearchTooLarge,
    ZeroElement,
)
from .fields import FieldCtx, FieldElement, Poly, UniPoly, poly_gcd, wp_decide

__all__ = [
    "as_mul",
    "norm",
    "PolyForm",
    "ExplicitForm",
    "TwoDimForm",
    "NormForm",
    "ScaledForm",
    "DirectSumForm",
    "evaluate",
    "order_partials",
    "partial_rows",
    "is_p_regular_bruteforce",
    "RegularityReport",
    "regularity_certificate",
    "SearchResult",
    "isotropy_search",
    "unit_tuples",
    "build_phi",
    "build_Phi",
    "build_common_slot_form",
]

SEARCH_CAP = 10 ** 7


# --------------------------------------------------------------------------
# arithmetic of F[T : T^p - T = alpha]

def _pad(ctx, coeffs):
    coeffs = list(coeffs)
    if len(coeffs) > ctx.p:
        raise DimensionMismatch(f"expected at most {ctx.p} coefficients")
    zero = ctx.zero()
    while len(coeffs) < ctx.p:
        coeffs.append(zero)
    return tuple(coeffs)


def as_mul(alpha, f, g):
    """Product of two degree-under-p elements, reduced by T^p = T + alpha."""
    ctx = alpha.ctx
    fu = UniPoly(ctx, _pad(ctx, f))
    gu = UniPoly(ctx, _pad(ctx, g))
    _, rem = fu.mul(gu).divmod(UniPoly.wp_poly(ctx, alpha))
    return _pad(ctx, rem.coeffs)


def _det(rows):
    """Determinant by elimination with exact field division."""
    n = len(rows)
    if n == 0:
        raise DimensionMismatch("empty matrix")
    ctx = rows[0][0].ctx
    m = [list(r) for r in rows]
    det = ctx.one()
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not m[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            return ctx.zero()
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        head = m[col][col]
        det = det * head
        inv = head.inv()
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor.is_zero():
                continue
            for c in range(col, n):
                m[r][c] = m[r][c] - factor * m[col][c]
    return det


def _mult_columns(alpha, coeffs):
    """Columns of the multiplication-by-f matrix on the basis 1, T, ..,
    T^(p-1): multiplying a column by T shifts it and folds the top
    coefficient back in as alpha at T^0 plus one at T^1."""
    ctx = alpha.ctx
    p = ctx.p
    col = list(coeffs)
    cols = [tuple(col)]
    for _ in range(p - 1):
        top = col[p - 1]
        nxt = [ctx.zero()] * p
        for k in range(1, p):
            nxt[k] = col[k - 1]
        nxt[0] = top * alpha
        nxt[1] = nxt[1] + top
        col = nxt
        cols.append(tuple(col))
    return cols


def norm(alpha, coeffs):
    """Norm of c_0 + c_1*T + .. + c_{p-1}*T^{p-1} down to the base field."""
    ctx = alpha.ctx
    coeffs = _pad(ctx, coeffs)
    cols = _mult_columns(alpha, coeffs)
    rows = [tuple(cols[j][i] for j in range(ctx.p)) for i in range(ctx.p)]
    return _det(rows)


# --------------------------------------------------------------------------
# form descriptions

class PolyForm:
    kind = "abstract"

    def evaluate(self, coords):
        coords = tuple(coords)
        if len(coords) != self.dim:
            raise DimensionMismatch(
                f"form has dimension {self.dim}, got {len(coords)} coordinates")
        for c in coords:
            if c.ctx != self.ctx:
                raise CharpError("coordinate from a different field context")
        return self._eval(coords)

    def to_explicit(self):
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim})"


class ExplicitForm(PolyForm):
    kind = "explicit"

    __slots__ = ("ctx", "dim", "coeffs")

    def __init__(self, ctx, dim, coeffs):
        if dim < 1:
            raise DimensionMismatch("dimension must be positive")
        p = ctx.p
        table = {}
        for idx, c in dict(coeffs).items():
            idx = tuple(int(v) for v in idx)
            if len(idx) != dim or any(v < 0 for v in idx):
                raise BadMultiIndex(f"bad exponent tuple {idx}")
            if sum(idx) != p:
                raise BadMultiIndex(
                    f"exponent tuple {idx} does not have total degree {p}")
            if c.ctx != ctx:
                raise CharpError("coefficient from a different field context")
            if not c.is_zero():
                table[idx] = c
        self.ctx = ctx
        self.dim = dim
        self.coeffs = table

    def _eval(self, coords):
        total = self.ctx.zero()
        for idx, c in self.coeffs.items():
            term = c
            for a, e in zip(coords, idx):
                if e:
                    term = term * a ** e
            total = total + term
        return total

    def to_explicit(self):
        return self

    def __eq__(self, other):
        return (isinstance(other, ExplicitForm) and self.ctx == other.ctx
                and self.dim == other.dim and self.coeffs == other.coeffs)


class TwoDimForm(PolyForm):
    """alpha*a^p - a^(p-1)*b + b^p (weight "first"), or with the mixed term
    a*b^(p-1) instead (weight "second").  Both are p-regular for every
    alpha."""

    kind = "two_dim"

    __slots__ = ("ctx", "dim", "alpha", "weight")

    def __init__(self, alpha, weight="first"):
        if weight not in ("first", "second"):
            raise CharpError(f"unknown weight {weight!r}")
        self.ctx = alpha.ctx
        self.dim = 2
        self.alpha = alpha
        self.weight = weight

    def _eval(self, coords):
        a, b = coords
        p = self.ctx.p
        if self.weight == "first":
            mixed = a ** (p - 1) * b
        else:
            mixed = a * b ** (p - 1)
        return self.alpha * a ** p - mixed + b ** p

    def to_explicit(self):
        p = self.ctx.p
        mixed = (p - 1, 1) if self.weight == "first" else (1, p - 1)
        table = {(p, 0): self.alpha, (0, p): self.ctx.one()}
        table[mixed] = table.get(mixed, self.ctx.zero()) - self.ctx.one()
        return ExplicitForm(self.ctx, 2, table)


class NormForm(PolyForm):
    """The norm of F[T : T^p - T = alpha] as a degree-p form in p
    coordinates."""

    kind = "norm"

    __slots__ = ("ctx", "dim", "alpha")

    def __init__(self, alpha):
        self.ctx = alpha.ctx
        self.dim = alpha.ctx.p
        self.alpha = alpha

    def _eval(self, coords):
        return norm(self.alpha, coords)

    def to_explicit(self):
        ctx = self.ctx
        p = ctx.p
        zero = ctx.zero()
        # the multiplication matrix with symbolic coefficients: entries are
        # linear forms {coordinate index: coefficient}
        cur = [{i: ctx.one()} for i in range(p)]
        cols = [[dict(row) for row in cur]]
        for _ in range(p - 1):
            top = cur[p - 1]
            nxt = [dict() for _ in range(p)]
            for k in range(1, p):
                nxt[k] = dict(cur[k - 1])
            for j, c in top.items():
                nxt[0][j] = nxt[0].get(j, zero) + c * self.alpha
                nxt[1][j] = nxt[1].get(j, zero) + c
            cur = nxt
            cols.append([dict(row) for row in cur])
        # expand the determinant over permutations of the linear entries
        table = {}
        for perm in permutations(range(p)):
            inversions = sum(1 for i in range(p) for j in range(i + 1, p)
                             if perm[i] > perm[j])
            sign = ctx.from_int(-1 if inversions % 2 else 1)
            prod = {(0,) * p: sign}
            for i in range(p):
                lin = cols[perm[i]][i]
                nxt = {}
                for idx, c in prod.items():
                    for j, lc in lin.items():
                        key = list(idx)
                        key[j] += 1
                        key = tuple(key)
                        acc = nxt.get(key, zero) + c * lc
                        if acc.is_zero():
                            nxt.pop(key, None)
                        else:
                            nxt[key] = acc
                prod = nxt
                if not prod:
                    break
            for idx, c in prod.items():
                acc = table.get(idx, zero) + c
                if acc.is_zero():
                    table.pop(idx, None)
                else:
                    table[idx] = acc
        return ExplicitForm(ctx, p, table)


class ScaledForm(PolyForm):
    kind = "scaled"

    __slots__ = ("ctx", "dim", "scalar", "inner")

    def __init__(self, scalar, inner):
        if scalar.is_zero():
            raise ZeroElement("scale factor is zero")
        if scalar.ctx != inner.ctx:
            raise CharpError("scale factor from a different field context")
        self.ctx = inner.ctx
        self.dim = inner.dim
        self.scalar = scalar
        self.inner = inner

    def _eval(self, coords):
        return self.scalar * self.inner._eval(coords)

    def to_explicit(self):
        inner = self.inner.to_explicit()
        return ExplicitForm(self.ctx, self.dim,
                            {idx: self.scalar * c
                             for idx, c in inner.coeffs.items()})


class DirectSumForm(PolyForm):
    kind = "direct_sum"

    __slots__ = ("ctx", "dim", "parts")

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise DimensionMismatch("direct sum needs at least one part")
        ctx = parts[0].ctx
        for part in parts:
            if part.ctx != ctx:
                raise CharpError("direct sum parts over different contexts")
        self.ctx = ctx
        self.dim = sum(part.dim for part in parts)
        self.parts = parts

    def _eval(self, coords):
        total = self.ctx.zero()
        off = 0
        for part in self.parts:
            total = total + part._eval(coords[off:off + part.dim])
            off += part.dim
        return total

    def to_explicit(self):
        table = {}
        off = 0
        for part in self.parts:
            sub = part.to_explicit()
            for idx, c in sub.coeffs.items():
                full = (0,) * off + idx + (0,) * (self.dim - off - part.dim)
                table[full] = c
            off += part.dim
        return ExplicitForm(self.ctx, self.dim, table)


def evaluate(form, coords):
    return form.evaluate(coords)


# --------------------------------------------------------------------------
# order p-1 partial derivatives

def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def order_partials(form, kappa):
    """Coefficient row of the order p-1 partial derivative at multi-index
    kappa; differentiating a degree-p form p-1 times leaves a linear form,
    returned as its dim coefficients."""
    explicit = form.to_explicit()
    ctx = explicit.ctx
    p = ctx.p
    kappa = tuple(int(v) for v in kappa)
    if len(kappa) != explicit.dim or any(v < 0 for v in kappa):
        raise BadMultiIndex(f"bad differentiation index {kappa}")
    if sum(kappa) != p - 1:
        raise BadMultiIndex("differentiation order must be p - 1")
    row = [ctx.zero()] * explicit.dim
    for idx, c in explicit.coeffs.items():
        mult = 1
        for have, want in zip(idx, kappa):
            if want > have:
                mult = 0
                break
            for j in range(want):
                mult = (mult * (have - j)) % p
            if mult == 0:
                break
        if mult == 0:
            continue
        rest = tuple(a - b for a, b in zip(idx, kappa))
        pos = None
        for i, v in enumerate(rest):
            if v == 1 and pos is None:
                pos = i
            elif v:
                pos = None
                break
        if pos is None:
            raise CharpError("partial derivative is not linear")
        row[pos] = row[pos] + c * ctx.from_int(mult)
    return tuple(row)


def partial_rows(form):
    """All order p-1 partial derivative rows, keyed by differentiation
    index."""
    explicit = form.to_explicit()
    p = explicit.ctx.p
    return [(kappa, order_partials(explicit, kappa))
            for kappa in _compositions(p - 1, explicit.dim)]


# --------------------------------------------------------------------------
# code-level helpers for the scans

_FLAT_CACHE = {}


def _flat_tables(ctx):
    key = (ctx.p, ctx.e, ctx.min_poly)
    hit = _FLAT_CACHE.get(key)
    if hit is None:
        tab = ctx.tab
        q = tab.q
        mul = array("i", (tab.mul[a][b] for a in range(q) for b in range(q)))
        add = array("i", (tab.add[a][b] for a in range(q) for b in range(q)))
        hit = (mul, add)
        _FLAT_CACHE[key] = hit
    return hit


def _pow_table(ctx, dmax):
    tab = ctx.tab
    flat = array("i")
    for c in range(ctx.q):
        acc = 1
        flat.append(1)
        for _ in range(dmax):
            acc = tab.mul[acc][c]
            flat.append(acc)
    return flat


def _const_code(fe):
    if not fe.is_const():
        return None
    return fe.const_code()


def _projective_total(q, m):
    return (q ** m - 1) // (q - 1)


def _point_from_index(ctx, k, m, idx):
    codes = kernels.decode_point(ctx.q, m, k, idx)
    return tuple(ctx.const(c) for c in codes)


# --------------------------------------------------------------------------
# p-regularity

def is_p_regular_bruteforce(form, cap=SEARCH_CAP):
    """Scan all nonzero points up to scalar for one killing every order p-1
    partial derivative.  Returns (True, None) or (False, witness_point).
    Requires constant coefficients."""
    explicit = form.to_explicit()
    ctx = explicit.ctx
    m = explicit.dim
    q = ctx.q
    total = _projective_total(q, m)
    if total > cap:
        raise SearchTooLarge(
            f"{total} projective points exceed the {cap} point budget")
    rows = set()
    for _, row in partial_rows(explicit):
        codes = []
        for c in row:
            code = _const_code(c)
            if code is None:
                raise NonConstantCoefficients(
                    "brute-force regularity needs constant coefficients")
            codes.append(code)
        rows.add(tuple(codes))
    rows = sorted(rows)
    flat = array("i", (c for row in rows for c in row))
    mul, add = _flat_tables(ctx)
    for k in range(m):
        block = q ** (m - 1 - k)
        idx = kernels.linear_zero_scan(q, m, k, flat, len(rows), mul, add,
                                       0, block)
        if idx >= 0:
            return False, _point_from_index(ctx, k, m, idx)
    return True, None


class RegularityReport:
    """Structural p-regularity judgement for a form description."""

    __slots__ = ("certified", "assumptions", "reasons")

    def __init__(self, certified, assumptions=(), reasons=()):
        self.certified = certified
        self.assumptions = tuple(assumptions)
        self.reasons = tuple(reasons)

    @property
    def unconditional(self):
        return self.certified and not self.assumptions

    def __repr__(self):
        state = "certified" if self.certified else "refused"
        if self.assumptions:
            state += f" with {len(self.assumptions)} assumption(s)"
        return f"RegularityReport({state})"


def regularity_certificate(form):
    """Certify p-regularity from the structure of the description.

    Two-dimensional companion forms are always regular; a norm form is
    regular when its parameter is not of the shape c^p - c, which is
    decided where possible and recorded as an assumption where not;
    scalar multiples and direct sums preserve regularity.  Explicit
    tables have no structure to certify and raise ExplicitLeaf.
    """
    from .parsing import format_element

    assumptions = []
    reasons = []

    def walk(node):
        if isinstance(node, ExplicitForm):
            raise ExplicitLeaf(
                "explicit coefficient tables have no structural certificate")
        if isinstance(node, TwoDimForm):
            return
        if isinstance(node, NormForm):
            verdict = wp_decide(node.alpha)
            if verdict == "in":
                reasons.append(
                    f"norm parameter {format_element(node.alpha)} has the "
                    f"shape c^p - c, so the rank-p algebra splits")
            elif verdict == "unknown":
                assumptions.append(
                    f"assumed {format_element(node.alpha)} is not of the "
                    f"shape c^p - c")
            return
        if isinstance(node, ScaledForm):
            walk(node.inner)
            return
        if isinstance(node, DirectSumForm):
            for part in node.parts:
                walk(part)
            return
        raise CharpError(f"unknown form node {type(node).__name__}")

    walk(form)
    return RegularityReport(not reasons, assumptions, reasons)


# --------------------------------------------------------------------------
# isotropy searches

class SearchResult:
    __slots__ = ("found", "point", "tried", "complete", "cap", "mode",
                 "max_degree")

    def __init__(self, found, point, tried, complete, cap, mode, max_degree):
        self.found = found
        self.point = point
        self.tried = tried
        self.complete = complete
        self.cap = cap
        self.mode = mode
        self.max_degree = max_degree

    def __repr__(self):
        if self.found:
            return f"SearchResult(found, tried={self.tried})"
        state = "exhausted" if self.complete else "budget"
        return f"SearchResult(not found, {state}, tried={self.tried})"


def _jobs_value(jobs):
    if jobs is None:
        env = os.environ.get("CHARP_FORMS_JOBS", "")
        jobs = int(env) if env.strip() else 1
    jobs = int(jobs)
    if jobs < 1:
        raise CharpError("jobs must be at least 1")
    return jobs


def _const_terms(explicit):
    terms = []
    for idx, c in explicit.coeffs.items():
        code = _const_code(c)
        if code is None:
            raise NonConstantCoefficients(
                "exhaustive search needs constant coefficients")
        terms.append((idx, code))
    terms.sort()
    return terms


def _const_chunk_entry(payload):
    ctxkey, task = payload
    ctx = FieldCtx(*ctxkey)
    mul, add = _flat_tables(ctx)
    powt = _pow_table(ctx, ctx.p)
    m, exps, coeffs, k, lo, hi = task
    idx = kernels.const_zero_scan(ctx.q, m, k, exps, coeffs, len(coeffs),
                                  mul, add, powt, ctx.p, lo, hi)
    return idx, task


def _const_search(explicit, cap, jobs):
    ctx = explicit.ctx
    q = ctx.q
    m = explicit.dim
    terms = _const_terms(explicit)
    exps = array("i", (v for idx, _ in terms for v in idx))
    coeffs = array("i", (code for _, code in terms))
    total = _projective_total(q, m)
    budget = min(total, cap)
    njobs = _jobs_value(jobs)

    tasks = []
    spent = 0
    for k in range(m):
        block = q ** (m - 1 - k)
        take = min(block, budget - spent)
        if take <= 0:
            break
        tasks.append((k, 0, take))
        spent += take
    chunk = max(200_000, budget // (8 * njobs) or 1)
    chunked = []
    for k, lo, hi in tasks:
        at = lo
        while at < hi:
            top = min(hi, at + chunk)
            chunked.append((m, exps, coeffs, k, at, top))
            at = top

    tried = 0
    found_idx = -1
    found_task = None
    if njobs == 1 or len(chunked) <= 1:
        mul, add = _flat_tables(ctx)
        powt = _pow_table(ctx, ctx.p)
        for task in chunked:
            _, _, _, k, lo, hi = task
            idx = kernels.const_zero_scan(q, m, k, exps, coeffs, len(coeffs),
                                          mul, add, powt, ctx.p, lo, hi)
            tried += (hi - lo) if idx < 0 else (idx - lo + 1)
            if idx >= 0:
                found_idx, found_task = idx, task
                break
    else:
        payloads = [(ctx.key(), task) for task in chunked]
        with concurrent.futures.ProcessPoolExecutor(njobs) as pool:
            for idx, task in pool.map(_const_chunk_entry, payloads):
                lo, hi = task[4], task[5]
                tried += (hi - lo) if idx < 0 else (idx - lo + 1)
                if idx >= 0:
                    found_idx, found_task = idx, task
                    break
    if found_idx >= 0:
        point = _point_from_index(ctx, found_task[3], m, found_idx)
        if not explicit.evaluate(point).is_zero():
            raise CharpError("scan returned a non-zero of the form")
        return SearchResult(True, point, tried, True, cap, "exhaustive", None)
    return SearchResult(False, None, tried, total <= cap, cap, "exhaustive",
                        None)


def _grlex_key(exps):
    return (sum(exps), exps)


def _monomials_upto(nvars, degree):
    if nvars == 0:
        return [()]
    out = []
    for total in range(degree + 1):
        out.extend(sorted(_compositions(total, nvars)))
    out.sort(key=_grlex_key)
    return out


def _clear_denominators(explicit):
    """Rescale the coefficient table by a common denominator so every
    coefficient is a polynomial; a global nonzero scaling keeps the zero
    set."""
    ctx = explicit.ctx
    common = Poly.one(ctx)
    for c in explicit.coeffs.values():
        den = c.den
        g = poly_gcd(common, den)
        common = common.mul(den.exact_div(g))
    out = []
    for idx, c in sorted(explicit.coeffs.items()):
        out.append((idx, c.num.mul(common.exact_div(c.den))))
    return out


def _ext_context(ctx, floor=64):
    """A field of at least floor elements containing ctx's constants, with
    the code embedding, for cheap probabilistic evaluation."""
    k = 1
    while ctx.q ** k < floor:
        k += 1
    if k == 1:
        return ctx, tuple(range(ctx.q))
    ext = FieldCtx(ctx.p, ctx.e * k)
    return ext, _embedding(ctx, ext)


def _embedding(ctx, ext):
    """Code map for the inclusion of ctx's constants into ext's."""
    if ctx.e == 1:
        return tuple(range(ctx.p))
    mp = ctx.min_poly
    tab = ext.tab
    root = None
    for z in range(ext.q):
        acc = 0
        power = 1
        for c in mp:
            if c:
                acc = tab.add[acc][tab.mul[c][power]]
            power = tab.mul[power][z]
        if acc == 0:
            root = z
            break
    if root is None:
        raise CharpError("no embedding root found")
    emb = []
    for code in range(ctx.q):
        digits = ctx.tab.digits[code]
        acc = 0
        power = 1
        for d in digits:
            if d:
                acc = tab.add[acc][tab.mul[d][power]]
            power = tab.mul[power][root]
        emb.append(acc)
    return tuple(emb)


class _PolySearchSpace:
    """Shared tables for the bounded-degree candidate scan.

    Candidate coordinates are polynomials of total degree at most degree,
    coded as base-q digit strings over the graded-lexicographic monomial
    list (constant digit least significant).  The scan normalizes the
    first nonzero coordinate to a monic polynomial and filters candidates
    by evaluation at fixed random points of an extension field before an
    exact check.
    """

    def __init__(self, ctx, terms, m, degree, samples=4):
        self.ctx = ctx
        self.m = m
        self.degree = degree
        q = ctx.q
        self.q = q
        monos = _monomials_upto(ctx.nvars, degree)
        self.monos = monos
        nmon = len(monos)
        if q ** nmon > 65536:
            raise SearchTooLarge(
                f"{q ** nmon} candidate polynomials per coordinate")
        self.ncand = q ** nmon
        ext, emb = _ext_context(ctx)
        self.ext = ext
        self.emb = emb
        self.mulx, self.addx = _flat_tables(ext)
        qe = ext.q
        self.qe = qe
        rng = random.Random(0x5EED)
        self.samples = [tuple(rng.randrange(1, qe) for _ in range(ctx.nvars))
                        for _ in range(samples)]
        self.ns = samples
        tab = ext.tab
        mono_vals = []
        for exps in monos:
            vals = []
            for sample in self.samples:
                acc = 1
                for var, e in enumerate(exps):
                    for _ in range(e):
                        acc = tab.mul[acc][sample[var]]
                vals.append(acc)
            mono_vals.append(tuple(vals))
        # sample values of every candidate code, filled digit by digit
        val = [[0] * samples for _ in range(self.ncand)]
        for t in range(nmon):
            base = q ** t
            for d in range(1, q):
                dcode = emb[d]
                scaled = [tab.mul[dcode][mono_vals[t][s]]
                          for s in range(samples)]
                for rest in range(base):
                    src = val[rest]
                    dst = val[d * base + rest]
                    for s in range(samples):
                        dst[s] = tab.add[src[s]][scaled[s]]
        p = ctx.p
        self.dmax = p
        pv = array("i")
        for c in range(self.ncand):
            row = val[c]
            for s in range(samples):
                acc = 1
                pv.append(1)
                for _ in range(p):
                    acc = tab.mul[acc][row[s]]
                    pv.append(acc)
        self.pv = pv
        # cleared coefficient polynomials and their sample values
        self.terms = terms
        self.term_vals = []
        for _, poly in terms:
            vals = []
            for sample in self.samples:
                acc = 0
                for exps, code in poly.terms.items():
                    v = emb[code]
                    for var, e in enumerate(exps):
                        for _ in range(e):
                            v = tab.mul[v][sample[var]]
                    acc = tab.add[acc][v]
                vals.append(acc)
            self.term_vals.append(tuple(vals))
        # monic candidate codes, ascending
        monic = array("i")
        for t in range(nmon):
            base = q ** t
            for rest in range(base):
                monic.append(base + rest)
        self.monic = monic
        self.full = array("i", range(self.ncand))

    def poly_of(self, code):
        ctx = self.ctx
        acc = Poly.zero(ctx)
        for t, exps in enumerate(self.monos):
            digit = (code // (self.q ** t)) % self.q
            if digit:
                acc = acc.add(Poly.monomial(ctx, exps, digit))
        return acc

    def codes_for_block(self, k):
        return self.monic if k == self.m - 1 else self.full

    def block_rows(self, k):
        if k == self.m - 1:
            return 1
        free = self.m - 2 - k
        return len(self.monic) * self.ncand ** free

    def decode_row(self, k, row):
        """Coordinate codes 0..m-2 for the given row of block k: the monic
        coordinate k moves slowest, coordinate m-2 fastest."""
        m = self.m
        codes = [0] * (m - 1)
        if k == m - 1:
            return codes
        for pos in range(m - 2, k, -1):
            codes[pos] = row % self.ncand
            row //= self.ncand
        codes[k] = self.monic[row]
        return codes

    def univariate(self, prefix_codes):
        """Collapse the form onto the last coordinate for fixed earlier
        ones: flat ns x (dmax+1) coefficient codes over the sample field."""
        ns = self.ns
        d1 = self.dmax + 1
        univ = [0] * (ns * d1)
        mul = self.ext.tab.mul
        add = self.ext.tab.add
        for t, (idx, _) in enumerate(self.terms):
            d = idx[self.m - 1]
            tv = self.term_vals[t]
            for s in range(ns):
                v = tv[s]
                if not v:
                    continue
                for i in range(self.m - 1):
                    e = idx[i]
                    if e:
                        v = mul[v][self.pv[(prefix_codes[i] * ns + s)
                                           * d1 + e]]
                        if not v:
                            break
                if v:
                    slot = s * d1 + d
                    univ[slot] = add[univ[slot]][v]
        return array("i", univ)

    def exact_zero(self, coord_codes):
        """Exact polynomial check of the cleared form at the candidate."""
        polys = [self.poly_of(c) for c in coord_codes]
        total = Poly.zero(self.ctx)
        for idx, coeff in self.terms:
            term = coeff
            for i, e in enumerate(idx):
                if e:
                    if polys[i].is_zero():
                        term = Poly.zero(self.ctx)
                        break
                    term = term.mul(polys[i].pow(e))
            total = total.add(term)
        return total.is_zero()


_SPACE_CACHE = {}


def _space_from_key(spacekey):
    space = _SPACE_CACHE.get(spacekey)
    if space is None:
        ctxkey, terms_prim, m, degree = spacekey
        ctx = FieldCtx(*ctxkey)
        terms = [(tuple(idx), Poly(ctx, dict(tp))) for idx, tp in terms_prim]
        space = _PolySearchSpace(ctx, terms, m, degree)
        _SPACE_CACHE[spacekey] = space
    return space


def _poly_scan_rows(space, k, row0, row1, budget):
    """Scan rows row0..row1-1 of block k, examining at most budget
    candidates.  Returns (tried, found_codes_or_None, finished_range)."""
    codes = space.codes_for_block(k)
    full = len(codes)
    tried = 0
    for row in range(row0, row1):
        if tried >= budget:
            return tried, None, False
        prefix = space.decode_row(k, row)
        univ = space.univariate(prefix)
        stop = min(full, budget - tried)
        start = 0
        while start < stop:
            hit = kernels.inner_sweep(codes, start, stop, univ, space.pv,
                                      space.mulx, space.addx, space.qe,
                                      space.ns, space.dmax)
            if hit < 0:
                tried += stop - start
                break
            tried += hit - start + 1
            cand = prefix + [codes[hit]]
            if space.exact_zero(cand):
                return tried, tuple(cand), True
            start = hit + 1
        if stop < full:
            return tried, None, False
    return tried, None, True


def _poly_chunk_entry(payload):
    spacekey, k, row0, row1, budget = payload
    space = _space_from_key(spacekey)
    return _poly_scan_rows(space, k, row0, row1, budget)


def _poly_found(explicit, space, cand, tried, cap, degree):
    ctx = explicit.ctx
    point = tuple(FieldElement.make(ctx, space.poly_of(c)) for c in cand)
    if not explicit.evaluate(point).is_zero():
        raise CharpError("scan returned a non-zero of the form")
    return SearchResult(True, point, tried, True, cap, "degree", degree)


def _poly_search(explicit, degree, cap, jobs):
    ctx = explicit.ctx
    m = explicit.dim
    cleared = _clear_denominators(explicit)
    terms_prim = tuple(
        (idx, tuple(sorted(poly.terms.items()))) for idx, poly in cleared)
    spacekey = (ctx.key(), terms_prim, m, degree)
    space = _space_from_key(spacekey)
    njobs = _jobs_value(jobs)

    tried = 0
    if njobs == 1:
        for k in range(m):
            got, cand, finished = _poly_scan_rows(space, k, 0,
                                                  space.block_rows(k),
                                                  cap - tried)
            tried += got
            if cand is not None:
                return _poly_found(explicit, space, cand, tried, cap, degree)
            if not finished:
                return SearchResult(False, None, tried, False, cap, "degree",
                                    degree)
        return SearchResult(False, None, tried, True, cap, "degree", degree)

    with concurrent.futures.ProcessPoolExecutor(njobs) as pool:
        for k in range(m):
            nrows = space.block_rows(k)
            width = len(space.codes_for_block(k))
            left = cap - tried
            if left <= 0:
                return SearchResult(False, None, tried, False, cap, "degree",
                                    degree)
            need = min(nrows, -(-left // width))
            per = max(1, max(250_000, cap // (4 * njobs)) // width)
            payloads = []
            r0 = 0
            while r0 < need:
                r1 = min(need, r0 + per)
                payloads.append((spacekey, k, r0, r1,
                                 max(0, left - r0 * width)))
                r0 = r1
            found = None
            cut = False
            for got, cand, finished in pool.map(_poly_chunk_entry, payloads):
                tried += got
                if cand is not None:
                    found = cand
                    break
                if not finished:
                    cut = True
                    break
            if found is not None:
                return _poly_found(explicit, space, found, tried, cap, degree)
            if cut or need < nrows:
                return SearchResult(False, None, tried, False, cap, "degree",
                                    degree)
    return SearchResult(False, None, tried, True, cap, "degree", degree)


def isotropy_search(form, max_degree=None, cap=SEARCH_CAP, jobs=None):
    """Look for a nonzero isotropic vector.

    With max_degree None the search runs over all constant coordinate
    vectors up to scalar; otherwise the coordinates range over polynomials
    of total degree at most max_degree with the first nonzero coordinate
    monic in graded-lexicographic order.  At most cap candidates are
    examined, in a fixed documented order, so a miss reports whether the
    space was exhausted."""
    explicit = form.to_explicit()
    if max_degree is None:
        return _const_search(explicit, cap, jobs)
    max_degree = int(max_degree)
    if max_degree < 0:
        raise CharpError("max_degree must be nonnegative")
    return _poly_search(explicit, max_degree, cap, jobs)


# --------------------------------------------------------------------------
# builders used by the rewrite engine

def unit_tuples(n):
    """All nonzero 0/1 tuples of length n, ordered by the integer they
    spell with the first position as the least significant bit."""
    return [tuple((mask >> i) & 1 for i in range(n))
            for mask in range(1, 2 ** n)]


def build_phi(symbol):
    """Direct sum over all nonzero slot subsets of the norm form scaled by
    the product of the chosen slots; dimension (2^n - 1) * p."""
    alpha = symbol.alpha
    slots = tuple(symbol.slots)
    parts = []
    for d in unit_tuples(len(slots)):
        scalar = alpha.ctx.one()
        for s, bit in zip(slots, d):
            if bit:
                scalar = scalar * s
        parts.append(ScaledForm(scalar, NormForm(alpha)))
    return DirectSumForm(parts)


def build_Phi(symbol):
    """The trivialization search form: the weighted two-dimensional form
    joined with build_phi; dimension (2^n - 1) * p + 2."""
    phi = build_phi(symbol)
    psi = TwoDimForm(symbol.alpha, "first")
    return DirectSumForm((psi,) + phi.parts)


def build_common_slot_form(alphas, betas, gammas, deltas):
    """Search form for making the leading parameters of two symbol products
    equal: a two-dimensional head with parameter sum(alphas) - sum(gammas),
    then one scaled norm block per symbol of either product."""
    alphas = tuple(alphas)
    betas = tuple(betas)
    gammas = tuple(gammas)
    deltas = tuple(deltas)
    if len(alphas) != len(betas) or len(gammas) != len(deltas):
        raise DimensionMismatch("parameter and slot counts differ")
    if not alphas:
        raise DimensionMismatch("first product must be nonempty")
    head = alphas[0].ctx.zero()
    for a in alphas:
        head = head + a
    for c in gammas:
        head = head - c
    parts = [TwoDimForm(head, "first")]
    for a, b in zip(alphas, betas):
        parts.append(ScaledForm(b, NormForm(a)))
    for c, d in zip(gammas, deltas):
        parts.append(ScaledForm(c, NormForm(d)))
    return DirectSumForm(parts)
