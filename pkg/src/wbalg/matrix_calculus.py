"""Functions of a single matrix through its CRT decomposition.

For a square matrix ``x0`` with minimal polynomial ``prod (t - a_i)^{j_i}`` the
algebra ``k[x0]`` splits as a product of local rings ``k[u]/u^{j_i}``.  An
inverse or square root of ``f(x0)`` is assembled from truncated Taylor series
of ``1/f`` and ``sqrt(f)`` around each ``a_i``.

Polynomials are coefficient lists, lowest degree first.  Two modes:

* exact: every entry is rational; eigenvalues must be rational and every
  constant is an ``mpq`` except square roots of non-square constants, which
  become mpmath numbers at the requested precision;
* numeric: entries are mpmath numbers; eigenvalues come from ``mp.eig`` and
  are clustered, nilpotency indices come from numerical ranks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
import mpmath

from . import linalg as la
from .scalars import DEFAULT_PRECISION, mp_context, rational

Q = gmpy2.mpq
_MPQ = type(Q(0))


class IrrationalSpectrum(ArithmeticError):
    pass


class EigenvalueHit(ZeroDivisionError):
    def __init__(self, eigenvalue):
        super().__init__(f"polynomial vanishes at eigenvalue {eigenvalue}")
        self.eigenvalue = eigenvalue


# -- polynomial arithmetic (lists, lowest degree first) ---------------------

def p_trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def p_add(p, q):
    n = max(len(p), len(q))
    return p_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def p_scale(c, p):
    return p_trim([c * x for x in p])


def p_mul(p, q):
    if not p or not q:
        return []
    out = [p[0] * 0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] = out[i + j] + a * b
    return p_trim(out)


def p_divmod(p, d):
    p, d = p_trim(p), p_trim(d)
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [d[-1] * 0] * max(len(p) - len(d) + 1, 0)
    rem = list(p)
    lead = d[-1]
    for k in range(len(p) - len(d), -1, -1):
        c = rem[k + len(d) - 1] / lead
        quo[k] = c
        if c:
            for j, b in enumerate(d):
                rem[k + j] = rem[k + j] + (-(c * b))
    return p_trim(quo), p_trim(rem[: len(d) - 1])


def p_mod(p, d):
    return p_divmod(p, d)[1]


def p_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def p_deriv(p):
    return p_trim([i * c for i, c in enumerate(p)][1:])


def p_gcd(p, q):
    p, q = p_trim(p), p_trim(q)
    while q:
        p, q = q, p_mod(p, q)
    return p_scale(1 / p[-1], p) if p else []


def p_linear_power(a, j):
    """(t - a)^j."""
    one = a * 0 + 1
    out = [one]
    for _ in range(j):
        out = p_mul(out, [-a, one])
    return out


def p_taylor_shift(p, a):
    """Coefficients of p(a + u) in u."""
    out = list(p)
    n = len(out)
    for i in range(n):
        for k in range(n - 2, i - 1, -1):
            out[k] = out[k] + a * out[k + 1]
    return out


def p_from_shifted(h, a):
    """Inverse of :func:`p_taylor_shift`: h(u) with u = t - a as a polynomial in t."""
    return p_trim(p_taylor_shift(h, -a)) if h else []


def series_mul(p, q, n):
    out = [0] * n
    for i, a in enumerate(p[:n]):
        if a:
            for j, b in enumerate(q[: n - i]):
                out[i + j] = out[i + j] + a * b
    return out


def series_inverse(p, n):
    """1/p mod u^n; requires p[0] != 0."""
    if not p or not p[0]:
        raise ZeroDivisionError("series with zero constant term")
    inv0 = 1 / p[0]
    out = [inv0] + [0] * (n - 1)
    for k in range(1, n):
        acc = 0
        for i in range(1, min(k, len(p) - 1) + 1):
            acc = acc + p[i] * out[k - i]
        out[k] = -acc * inv0
    return out[:n]


def sqrt_series_coefficients(n):
    """Binomial coefficients C(1/2, k), k < n, exactly."""
    out = [Q(1)]
    for k in range(1, n):
        out.append(out[-1] * (Q(1, 2) - (k - 1)) / k)
    return out


def series_sqrt_unit(w, n):
    """(1 + w)^{1/2} mod u^n for a series w with w[0] = 0."""
    coeffs = sqrt_series_coefficients(n)
    out = [0] * n
    out[0] = Q(1)
    power = [Q(1)] + [0] * (n - 1)
    for k in range(1, n):
        power = series_mul(power, w, n)
        if not any(power):
            break
        out = [x + coeffs[k] * y for x, y in zip(out, power)]
    return out


# -- mode helpers ------------------------------------------------------------

def is_exact_matrix(A) -> bool:
    return all(isinstance(x, (_MPQ, int)) for r in A for x in r)


def _as_exact(A):
    return [[rational(x) for x in r] for r in A]


def poly_matrix(p, A):
    """p(A) by Horner."""
    n = len(A)
    exact = is_exact_matrix(A) and all(isinstance(c, (_MPQ, int)) for c in p)
    one = Q(1) if exact else _numeric_one(A, p)
    I = la.eye(n, one, one * 0)
    if not p:
        return la.zeros(n, n, one * 0)
    acc = la.scale(p[-1], I)
    for c in reversed(p[:-1]):
        acc = la.matmul(A, acc)
        if c:
            for i in range(n):
                acc[i][i] = acc[i][i] + c
    return acc


def _numeric_one(A, p):
    for r in A:
        for x in r:
            if not isinstance(x, (_MPQ, int)):
                return x * 0 + 1
    for c in p:
        if not isinstance(c, (_MPQ, int)):
            return c * 0 + 1
    return Q(1)


# -- minimal polynomial (exact) ---------------------------------------------

def _vector_minpoly(A, v):
    """Monic minimal polynomial of v under A via Krylov iteration."""
    rows = []  # (reduced vector, pivot, polynomial giving it)
    w, poly = list(v), [Q(1)]
    while True:
        red, rp = list(w), list(poly)
        for vec, pc, pp in rows:
            c = red[pc]
            if c:
                red = [x - c * y for x, y in zip(red, vec)]
                rp = p_add(rp, p_scale(-c, pp))
        pc = next((i for i, x in enumerate(red) if x), None)
        if pc is None:
            return p_scale(1 / rp[-1], rp)
        inv = 1 / red[pc]
        rows.append(([x * inv for x in red], pc, p_scale(inv, rp)))
        w = la.matvec(A, w)
        poly = [Q(0)] + poly


def minimal_polynomial(A):
    """Exact minimal polynomial: running lcm of the local minimal polynomials."""
    n = len(A)
    mu = [Q(1)]
    for i in range(n):
        e = [Q(0)] * n
        e[i] = Q(1)
        w = _apply_poly(mu, A, e)
        if any(w):
            mu = p_mul(mu, _vector_minpoly(A, w))
    return mu


def _apply_poly(p, A, v):
    acc = [Q(0)] * len(v)
    for c in reversed(p):
        acc = la.matvec(A, acc)
        if c:
            acc = [x + c * y for x, y in zip(acc, v)]
    return acc


def rational_roots(p):
    """Rational roots with multiplicities; raises IrrationalSpectrum otherwise."""
    p = p_trim(p)
    roots = []
    zero_mult = 0
    while p and not p[0]:
        p = p[1:]
        zero_mult += 1
    if zero_mult:
        roots.append((Q(0), zero_mult))
    if len(p) <= 1:
        return roots
    sf = p_divmod(p, p_gcd(p, p_deriv(p)))[0]
    lcm_den = 1
    for c in sf:
        lcm_den = gmpy2.lcm(lcm_den, Q(c).denominator)
    ints = [int(c * lcm_den) for c in sf]
    lead = abs(ints[-1])
    ctx = mp_context(max(64, 8 * len(ints) + 4 * max(abs(x) for x in ints).bit_length()))
    approx = ctx.polyroots([ctx.mpf(x) for x in reversed(ints)], maxsteps=200, extraprec=200)
    found = []
    for z in approx:
        if abs(ctx.im(z)) > 1e-6:
            raise IrrationalSpectrum(f"non-real root near {z}")
        guess = Fraction(float(ctx.re(z))).limit_denominator(max(lead, 1))
        cand = Q(guess.numerator, guess.denominator)
        if p_eval(sf, cand):
            raise IrrationalSpectrum(f"root near {ctx.nstr(z, 15)} is not rational")
        found.append(cand)
    if len(set(found)) != len(sf) - 1:
        raise IrrationalSpectrum("root isolation failed")
    rest = p
    for a in sorted(set(found)):
        m = 0
        lin = [-a, Q(1)]
        while True:
            quo, rem = p_divmod(rest, lin)
            if rem:
                break
            rest, m = quo, m + 1
        roots.append((a, m))
    if len(rest) != 1:
        raise IrrationalSpectrum("leftover factor after rational deflation")
    return sorted(roots)


# -- spectral data -------------------------------------------------------------

@dataclass
class Component:
    eigenvalue: object
    index: int
    poly: list
    matrix: list


@dataclass
class SpectralData:
    element: list
    minimal_polynomial: list
    components: list = field(default_factory=list)
    exact: bool = True
    precision: int = DEFAULT_PRECISION

    def component(self, a):
        for c in self.components:
            if c.eigenvalue == a:
                return c
        raise KeyError(a)

    @property
    def eigenvalues(self):
        return [c.eigenvalue for c in self.components]


def _crt_idempotents(mu, comps):
    """P_i(t) = c_i(t) * u_i(t) mod mu with c_i = mu / (t-a_i)^{j_i}."""
    out = []
    for a, j in comps:
        local = p_linear_power(a, j)
        c = p_divmod(mu, local)[0]
        shifted = p_taylor_shift(c, a)[:j]
        shifted += [0] * (j - len(shifted))
        u = p_from_shifted(series_inverse(shifted, j), a)
        out.append(p_mod(p_mul(c, u), mu))
    return out


def spectral_decompose(x0, precision: int = DEFAULT_PRECISION, tol=None) -> SpectralData:
    if is_exact_matrix(x0):
        A = _as_exact(x0)
        mu = minimal_polynomial(A)
        comps = rational_roots(mu)
        polys = _crt_idempotents(mu, comps)
        components = [Component(a, j, p, poly_matrix(p, A)) for (a, j), p in zip(comps, polys)]
        return SpectralData(A, mu, components, True, precision)
    return _numeric_spectral(x0, precision, tol)


def to_mp(x, ctx):
    if isinstance(x, _MPQ):
        return ctx.mpf(int(x.numerator)) / int(x.denominator)
    if isinstance(x, (int, Fraction)):
        return ctx.mpf(x.numerator) / x.denominator
    return ctx.mpmathify(x)


def _numeric_spectral(x0, precision, tol):
    ctx = mp_context(precision)
    n = len(x0)
    A = [[to_mp(x, ctx) for x in r] for r in x0]
    scale_ = max(la.max_abs(A), 1)
    tol = tol if tol is not None else ctx.mpf(2) ** (-precision // 2) * scale_
    vals = ctx.eig(ctx.matrix(A), left=False, right=False)
    cluster_tol = ctx.mpf(10) ** (-8) * scale_
    clusters: list[list] = []
    for v in vals:
        for cl in clusters:
            if abs(cl[0] - v) < cluster_tol:
                cl.append(v)
                break
        else:
            clusters.append([v])
    comps = []
    for cl in clusters:
        a = ctx.fsum(cl) / len(cl)
        if abs(ctx.im(a)) < tol:
            a = ctx.re(a)
        N = [[A[i][j] - (a if i == j else 0) for j in range(n)] for i in range(n)]
        power, prev_rank, j = N, n, 0
        rank_tol = ctx.mpf(10) ** (-(precision // 8)) * scale_
        while True:
            r = la.rank(power, rank_tol)
            if r == prev_rank:
                break
            prev_rank, j = r, j + 1
            if r == n - len(cl):
                break
            power = la.matmul(power, N)
        comps.append((a, max(j, 1)))
    mu = [ctx.mpf(1)]
    for a, j in comps:
        mu = p_mul(mu, _num_linear_power(a, j, ctx))
    polys = _crt_idempotents(mu, comps)
    components = [Component(a, j, p, poly_matrix(p, A)) for (a, j), p in zip(comps, polys)]
    return SpectralData(A, mu, components, False, precision)


def _num_linear_power(a, j, ctx):
    out = [ctx.mpf(1)]
    for _ in range(j):
        out = p_mul(out, [-a, ctx.mpf(1)])
    return out


# -- functions of f(x0) -------------------------------------------------------

def _local_series(f, a, j):
    s = p_taylor_shift(list(f) or [0], a)[:j]
    return s + [0] * (j - len(s))


def _spectral(x0, spec, precision):
    return spec if spec is not None else spectral_decompose(x0, precision)


def _coerce(f, sd):
    if sd.exact:
        return [rational(c) for c in f]
    ctx = mp_context(sd.precision)
    return [to_mp(c, ctx) for c in f]


def inverse_parts(x0, f, spec=None, avoid=(), precision=DEFAULT_PRECISION):
    """[(eigenvalue, polynomial g_i)] with g = sum g_i and g_i = P_i * (1/f local)."""
    sd = _spectral(x0, spec, precision)
    parts = []
    for comp in sd.components:
        if any(comp.eigenvalue == b for b in avoid):
            continue
        loc = _local_series(_coerce(f, sd), comp.eigenvalue, comp.index)
        if not loc[0]:
            raise EigenvalueHit(comp.eigenvalue)
        h = p_from_shifted(series_inverse(loc, comp.index), comp.eigenvalue)
        parts.append((comp.eigenvalue, p_mod(p_mul(comp.poly, h), sd.minimal_polynomial)))
    return sd, parts


def inverse_polynomial(x0, f, spec=None, precision=DEFAULT_PRECISION):
    sd, parts = inverse_parts(x0, f, spec, (), precision)
    g = []
    for _, p in parts:
        g = p_add(g, p)
    return g


def inverse_of_polynomial(x0, f, spec=None, precision=DEFAULT_PRECISION):
    sd = _spectral(x0, spec, precision)
    return poly_matrix(inverse_polynomial(x0, f, sd, precision), sd.element)


def truncated_inverse(x0, f, avoid, spec=None, precision=DEFAULT_PRECISION):
    """(eta, g) with eta the idempotent away from ``avoid`` and f(x0) g = eta."""
    sd = _spectral(x0, spec, precision)
    spectrum = sd.eigenvalues
    for a in avoid:
        if not any(a == b for b in spectrum):
            raise ValueError(f"avoided value {a} is not an eigenvalue")
    eta = []
    for comp in sd.components:
        if not any(comp.eigenvalue == b for b in avoid):
            eta = p_add(eta, comp.poly)
    _, parts = inverse_parts(x0, f, sd, avoid, precision)
    g = []
    for _, p in parts:
        g = p_add(g, p)
    return poly_matrix(eta, sd.element), poly_matrix(g, sd.element)


def principal_sqrt(c, precision=DEFAULT_PRECISION):
    """Exact root when c is a non-negative rational square, else mpmath principal root."""
    if isinstance(c, (_MPQ, int)):
        c = Q(c)
        if c >= 0 and gmpy2.is_square(c.numerator) and gmpy2.is_square(c.denominator):
            return Q(gmpy2.isqrt(c.numerator), gmpy2.isqrt(c.denominator))
        ctx = mp_context(precision)
        return ctx.sqrt(ctx.mpf(c.numerator) / c.denominator)
    ctx = mp_context(precision)
    return ctx.sqrt(c)


def sqrt_parts(x0, f, spec=None, precision=DEFAULT_PRECISION, avoid=()):
    """[(root, R_i)] with sqrt(f(x0)) = sum root * R_i(x0).

    R_i = P_i * (1 + w)^{1/2} where f(a_i + u) = c (1 + w(u)); in exact mode
    every R_i is a rational polynomial and only ``root`` may be irrational.
    Components whose eigenvalue lies in ``avoid`` are dropped (truncated root).
    """
    sd = _spectral(x0, spec, precision)
    out = []
    for comp in sd.components:
        if any(comp.eigenvalue == b for b in avoid):
            continue
        loc = _local_series(_coerce(f, sd), comp.eigenvalue, comp.index)
        c = loc[0]
        if not c:
            raise EigenvalueHit(comp.eigenvalue)
        w = [0] + [x / c for x in loc[1:]]
        h = p_from_shifted(series_sqrt_unit(w, comp.index), comp.eigenvalue)
        out.append((principal_sqrt(c, precision), p_mod(p_mul(comp.poly, h), sd.minimal_polynomial)))
    return sd, out


def sqrt_of_polynomial(x0, f, spec=None, precision=DEFAULT_PRECISION):
    sd, parts = sqrt_parts(x0, f, spec, precision)
    total = None
    for root, poly in parts:
        term = la.scale(root, poly_matrix(poly, sd.element))
        total = term if total is None else la.add(total, term)
    return total
