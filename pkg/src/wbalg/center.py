"""Central elements built from Jucys-Murphy polynomials.

Polynomials live in ``R = Q[y_1, ..., y_n]`` with ``n = r + t``.  A permutation
``w`` (tuple of 1-based images) acts by ``(w.p)(y_1..y_n) = p(y_w(1)..y_w(n))``
and on orientation sequences by ``(w.x)_w(i) = x_i``.  With these conventions
``w.p`` evaluated at ``y_k = u, y_l = -u`` is ``p`` evaluated at
``y_w^-1(k) = u, y_w^-1(l) = -u``.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field

import gmpy2

from . import linalg as la
from . import relations as R
from .diagrams import DOWN, UP, compose, enumerate_diagrams, generator, identity, seq, seq_str, sequences
from .scalars import DeltaPoly, rational, rational_to_str
from .walled_brauer import (
    _KIND,
    AlgebraElement,
    BrauerAlgebra,
    CheckRecord,
    Report,
    multiply,
)
from .young4 import partitions


class NotAdmissible(ValueError):
    pass


class MultiPoly:
    """Sparse polynomial: exponent tuple -> nonzero rational coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms: dict = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            c = rational(c)
            if c:
                self.terms[e] = self.terms.get(e, 0) + c
                if not self.terms[e]:
                    del self.terms[e]

    @classmethod
    def const(cls, n: int, c=1) -> "MultiPoly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n: int, i: int) -> "MultiPoly":
        """y_i, 1-based."""
        e = [0] * n
        e[i - 1] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def power_sum(cls, n: int, k: int, idx=None) -> "MultiPoly":
        idx = range(1, n + 1) if idx is None else idx
        out = cls(n)
        for i in idx:
            e = [0] * n
            e[i - 1] = k
            out = out + cls(n, {tuple(e): 1})
        return out

    def _same(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different numbers of variables")
            return other
        return MultiPoly.const(self.nvars, other)

    def __add__(self, other):
        other = self._same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._same(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiPoly.const(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    @classmethod
    def _raw(cls, n, terms):
        p = cls.__new__(cls)
        p.nvars = n
        p.terms = terms
        return p

    def __eq__(self, other):
        if isinstance(other, (int, type(gmpy2.mpq(0)))):
            other = MultiPoly.const(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), tuple(-x for x in ec[0])))

    def act(self, w) -> "MultiPoly":
        """w.p: the variable y_i of p becomes y_w(i)."""
        w = tuple(w)
        if sorted(w) != list(range(1, self.nvars + 1)):
            raise ValueError(f"{w} is not a permutation of 1..{self.nvars}")
        out = {}
        for e, c in self.terms.items():
            f = [0] * self.nvars
            for i, x in enumerate(e):
                f[w[i] - 1] = x
            out[tuple(f)] = c
        return MultiPoly._raw(self.nvars, out)

    def substitute(self, images: dict) -> "MultiPoly":
        """Replace y_i by images[i] (a MultiPoly or scalar); other variables stay."""
        n = self.nvars
        imgs = [images.get(i + 1, MultiPoly.var(n, i + 1)) for i in range(n)]
        imgs = [x if isinstance(x, MultiPoly) else MultiPoly.const(n, x) for x in imgs]
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = imgs[i] ** k
            return cache[key]

        out = MultiPoly(n)
        for e, c in self.terms.items():
            term = MultiPoly.const(n, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def is_invariant(self, r: int, t: int) -> bool:
        """Invariant under permutations of y_1..y_r and of y_{r+1}..y_{r+t}."""
        n = self.nvars
        for i in list(range(1, r)) + list(range(r + 1, n)):
            w = list(range(1, n + 1))
            w[i - 1], w[i] = w[i], w[i - 1]
            if self.act(w) != self:
                return False
        return True

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"y{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"{rational_to_str(c)}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Q-cancellation


def q_cancellation_check(p: MultiPoly, k: int, l: int) -> bool:
    """p(.., y_k = u, .., y_l = -u, ..) == p(.., 0, .., 0, ..); u is y_k itself."""
    n = p.nvars
    if k == l or not (1 <= k <= n and 1 <= l <= n):
        raise ValueError(f"need distinct indices in 1..{n}, got {k}, {l}")
    u = MultiPoly.var(n, k)
    lhs = p.substitute({k: u, l: -u})
    rhs = p.substitute({k: 0, l: 0})
    return lhs == rhs


def q_cancellation_check_permuted(p: MultiPoly, k: int, l: int) -> bool:
    """Same property, routed through the transposition w and positions (1, 2)."""
    n = p.nvars
    if k == l or not (1 <= k <= n and 1 <= l <= n) or n < 2:
        raise ValueError(f"need distinct indices in 1..{n}, got {k}, {l}")
    # w^-1 must send 1 -> k and 2 -> l
    winv = list(range(1, n + 1))
    winv[0], winv[k - 1] = winv[k - 1], winv[0]
    j = winv.index(l) + 1
    winv[1], winv[j - 1] = winv[j - 1], winv[1]
    w = [0] * n
    for i, x in enumerate(winv):
        w[x - 1] = i + 1
    q = p.act(w)
    u = MultiPoly.var(n, 1)
    return q.substitute({1: u, 2: -u}) == q.substitute({1: 0, 2: 0})


# ---------------------------------------------------------------------------
# orientation permutations


def shuffle_permutation(a, choice: str = "minimal") -> tuple:
    """A permutation w with w.(UP^r, DOWN^t) = a.

    ``minimal`` keeps the relative order of equal arrows (the unique
    minimal-length choice); ``maximal`` reverses it inside each class.
    """
    a = seq(a)
    ups = [i + 1 for i, x in enumerate(a) if x == UP]
    downs = [i + 1 for i, x in enumerate(a) if x == DOWN]
    if choice == "maximal":
        ups, downs = ups[::-1], downs[::-1]
    elif choice != "minimal":
        raise ValueError(f"unknown choice {choice!r}")
    return tuple(ups + downs)


def act_on_sequence(w, x) -> tuple:
    out = [None] * len(x)
    for i, xi in enumerate(x):
        out[w[i] - 1] = xi
    return tuple(out)


def permutation_length(w) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] > w[j])


# ---------------------------------------------------------------------------
# central elements


def check_admissible(p: MultiPoly, r: int, t: int) -> None:
    if p.nvars != r + t:
        raise NotAdmissible(f"polynomial has {p.nvars} variables, expected {r + t}")
    if not p.is_invariant(r, t):
        raise NotAdmissible("polynomial is not invariant under S_r x S_t")
    if r and t and not q_cancellation_check(p, r, r + 1):
        raise NotAdmissible(f"polynomial fails Q-cancellation in (y_{r}, y_{r + 1})")


class _MonomialEvaluator:
    """z^e 1_a memoised per block, where z_k 1_a = (scale * xi_k + shift(a_k)) 1_a."""

    def __init__(self, alg: BrauerAlgebra, shifts=None, scale=1):
        self.alg = alg
        self.shifts = shifts or {}
        self.scale = scale
        self.cache: dict = {}

    def __call__(self, e: tuple, a: tuple) -> AlgebraElement:
        key = (e, a)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        k = next((i for i, x in enumerate(e) if x), None)
        if k is None:
            val = self.alg.idem(a)
        else:
            prev = list(e)
            prev[k] -= 1
            rest = self(tuple(prev), a)
            val = multiply(self.alg.jucys_murphy(k + 1), rest).scale(self.scale)
            s = self.shifts.get(a[k], 0)
            if s:
                val = val + rest.scale(s)
        self.cache[key] = val
        return val


def orientation_shifts(loop, mode: str = "transport") -> dict:
    """Variable substitution y_k -> xi_k + shift(a_k).

    ``transport`` shifts the UP positions by the loop value: this is the image
    of y_k under the cyclotomic isomorphism up to an overall sign and up to
    shifts (c, -c) that preserve Q-cancellation.  ``literal`` substitutes xi_k
    unchanged.
    """
    if mode == "transport":
        return {UP: loop}
    if mode == "literal":
        return {}
    raise ValueError(f"unknown substitution mode {mode!r}")


def _evaluate(p: MultiPoly, a: tuple, ev: _MonomialEvaluator) -> AlgebraElement:
    out = ev.alg.zero()
    for e, c in p.terms.items():
        out = out + ev(e, a).scale(c)
    return out


def central_element(
    p: MultiPoly, r: int, t: int, loop=None, choice: str = "minimal", alg=None, mode: str = "transport"
) -> AlgebraElement:
    """sum_a (w_a . p)(z_1, ..., z_n) 1_a over all (r, t)-sequences a, z as in :func:`orientation_shifts`."""
    check_admissible(p, r, t)
    alg = alg or BrauerAlgebra(r, t, DeltaPoly.delta() if loop is None else loop)
    return _central_unchecked(p, r, t, alg, choice, mode=mode)


def _central_unchecked(p, r, t, alg, choice="minimal", ev=None, mode="transport"):
    ev = ev or _MonomialEvaluator(alg, orientation_shifts(alg.loop, mode))
    out = alg.zero()
    for a in alg.seqs:
        out = out + _evaluate(p.act(shuffle_permutation(a, choice)), a, ev)
    return out


def transported_element(p: MultiPoly, r: int, t: int, params) -> AlgebraElement:
    """sum_a (w_a . p)(beta_2^{a_1} - xi_1, ...) 1_a in Br(-delta) for numeric parameters."""
    check_admissible(p, r, t)
    alg = BrauerAlgebra(r, t, -params.delta)
    shifts = {UP: params.beta2(UP), DOWN: params.beta2(DOWN)}
    ev = _MonomialEvaluator(alg, shifts, scale=-1)
    out = alg.zero()
    for a in alg.seqs:
        out = out + _evaluate(p.act(shuffle_permutation(a)), a, ev)
    return out


def choice_agreement(p: MultiPoly, r: int, t: int, loop=None) -> dict:
    """Compare the elements built from the minimal and maximal w_a choices."""
    alg = BrauerAlgebra(r, t, DeltaPoly.delta() if loop is None else loop)
    z1 = central_element(p, r, t, alg=alg, choice="minimal")
    z2 = central_element(p, r, t, alg=alg, choice="maximal")
    return {"equal": z1 == z2, "terms_minimal": len(z1.terms), "terms_maximal": len(z2.terms)}


def verify_central(z: AlgebraElement, r: int, t: int) -> Report:
    """Exact commutators of z with every block generator and block idempotent."""
    alg = BrauerAlgebra(r, t, z.loop)
    rep = Report("central")
    for a in alg.seqs:
        g = alg.idem(a)
        diff = multiply(z, g) - multiply(g, z)
        rep.add(CheckRecord("idempotent", seq_str(a), [], _ok(diff), len(diff.terms)))
        for kind in ("s", "sh", "e", "eh"):
            for k in range(1, alg.n):
                if not R.admissible(kind, k, a):
                    continue
                g = alg.gen(kind, k, a)
                diff = multiply(z, g) - multiply(g, z)
                rep.add(CheckRecord(f"commutes-{kind}", seq_str(a), [k], _ok(diff), len(diff.terms)))
    if not rep.records:
        rep.add(CheckRecord("trivial-algebra", "", [], "not applicable", 0))
    return rep


def _ok(el) -> str:
    return "pass" if el.is_zero() else "fail"


# ---------------------------------------------------------------------------
# the symmetric-JM counterexample on UP UP DOWN


def reproduce_counterexample() -> Report:
    """x2 = s1, x3 = -s1 e2 s1 - e2 on the block UP UP DOWN, formal delta."""
    alg = BrauerAlgebra(2, 1)
    a = (UP, UP, DOWN)
    d = DeltaPoly.delta()
    W = lambda *letters: alg.word(list(letters), a)  # noqa: E731
    s1, e2 = ("s", 1), ("e", 2)
    one = alg.idem(a)
    x2 = W(s1)
    x3 = -W(s1, e2, s1) - W(e2)
    rep = Report("counterexample")

    def check(name, lhs, rhs, expect_equal=True):
        diff = lhs - rhs
        ok = diff.is_zero() == expect_equal
        rep.add(CheckRecord(name, seq_str(a), [], "pass" if ok else "fail", len(diff.terms)))
        return lhs

    prod = multiply(x2, x3)
    check("x2x3-expansion", prod, -W(e2, s1) - W(s1, e2))
    e2el = W(e2)
    right = multiply(prod, e2el)
    left = multiply(e2el, prod)
    check("x2x3-times-e2", right, -W(e2) - W(s1, e2).scale(d))
    check("e2-times-x2x3", left, -W(e2, s1).scale(d) - W(e2))
    check("difference", right - left, (W(e2, s1) - W(s1, e2)).scale(d))
    check("e2s1-differs-from-s1e2", W(e2, s1), W(s1, e2), expect_equal=False)
    check("x2x3-not-commuting", right, left, expect_equal=False)
    total = x2 + x3
    for g in (W(s1), e2el):
        check("sum-commutes", multiply(total, g), multiply(g, total))
    # the same elements arise from the JM recursion used throughout the package
    check("x2-is-xi2", x2, multiply(alg.jucys_murphy(2), one))
    check("x3-is-xi3", x3, multiply(alg.jucys_murphy(3), one))
    p = MultiPoly.var(3, 2) * MultiPoly.var(3, 3)
    rep.add(
        CheckRecord(
            "y2y3-fails-q-cancellation",
            seq_str(a),
            [2, 3],
            "pass" if not q_cancellation_check(p, 2, 3) else "fail",
            0,
        )
    )
    rep.data = {
        "x2": x2.to_json(),
        "x3": x3.to_json(),
        "x2x3": prod.to_json(),
        "x2x3_e2": right.to_json(),
        "e2_x2x3": left.to_json(),
        "difference": (right - left).to_json(),
    }
    return rep


# ---------------------------------------------------------------------------
# dimension of the center versus the constructed subalgebra


def _block_index(r, t):
    seqs = sequences(r, t)
    index: dict = {}
    for a in seqs:
        for d in enumerate_diagrams(a, a):
            index[d] = len(index)
    return seqs, index


def _commutator_rows(r, t, loop, seqs, index):
    """Linear equations g z_a - z_b g = 0 on block-diagonal z, one per diagram of 1_b A 1_a."""
    rows = []
    for a in seqs:
        basis_a = enumerate_diagrams(a, a)
        for kind in ("s", "sh", "e", "eh"):
            for k in range(1, r + t):
                if not R.admissible(kind, k, a):
                    continue
                g = generator(_KIND[kind], k, a)
                b = g.target
                eqs: dict = {}
                for d in basis_a:
                    out, loops = compose(g, d)
                    row = eqs.setdefault(out, {})
                    row[index[d]] = row.get(index[d], 0) + loop**loops
                for d in enumerate_diagrams(b, b):
                    out, loops = compose(d, g)
                    row = eqs.setdefault(out, {})
                    row[index[d]] = row.get(index[d], 0) - loop**loops
                rows.extend(eqs.values())
    return rows


def invariant_basis(r: int, t: int, degree: int) -> list:
    """Monomial symmetric products m_lam(y_1..y_r) m_mu(y_{r+1}..y_n), total degree <= degree."""
    n = r + t
    out = []
    for total in range(degree + 1):
        for dl in range(total + 1):
            lams = [lam for lam in partitions(dl) if len(lam) <= r]
            mus = [mu for mu in partitions(total - dl) if len(mu) <= t]
            for lam in lams:
                for mu in mus:
                    out.append(((lam, mu), _msym(lam, r, 0, n) * _msym(mu, t, r, n)))
    return out


def _msym(lam, k, offset, n):
    exps = set()
    padded = tuple(lam) + (0,) * (k - len(lam))
    for perm in set(itertools.permutations(padded)):
        e = [0] * n
        for i, x in enumerate(perm):
            e[offset + i] = x
        exps.add(tuple(e))
    return MultiPoly(n, {e: 1 for e in exps})


def admissible_basis(r: int, t: int, degree: int) -> list:
    """Basis of the invariant polynomials of degree <= degree with Q-cancellation in (y_r, y_{r+1})."""
    basis = invariant_basis(r, t, degree)
    polys = [p for _, p in basis]
    if not (r and t):
        return polys
    n = r + t
    u = MultiPoly.var(n, r)
    diffs = [p.substitute({r: u, r + 1: -u}) - p.substitute({r: 0, r + 1: 0}) for p in polys]
    keys = sorted({e for q in diffs for e in q.terms})
    if not keys:
        return polys
    M = [[q.terms.get(e, la.Q0) for q in diffs] for e in keys]
    out = []
    for v in la.nullspace(M):
        p = MultiPoly(n)
        for c, q in zip(v, polys):
            if c:
                p = p + q * c
        out.append(p)
    return out


def _vector(el: AlgebraElement, index: dict) -> dict:
    return {index[d]: c for d, c in el.terms.items()}


@dataclass
class CenterDimension:
    r: int
    t: int
    delta: object
    degree: int
    full_dim: int
    constructed_dim: int
    admissible_count: int
    all_constructed_central: bool
    choice_independent: bool
    extra: dict = field(default_factory=dict)

    @property
    def equal(self) -> bool:
        return self.full_dim == self.constructed_dim

    def to_json(self):
        return {
            "r": self.r,
            "t": self.t,
            "delta": rational_to_str(self.delta),
            "degree_bound": self.degree,
            "full_dim": self.full_dim,
            "constructed_dim": self.constructed_dim,
            "equal": self.equal,
            "admissible_polynomials": self.admissible_count,
            "all_constructed_central": self.all_constructed_central,
            "w_choice_independent": self.choice_independent,
            **self.extra,
        }


def center_dimension(r: int, t: int, delta, degree: int | None = None) -> CenterDimension:
    """Exact dimension of the center and of the span of the constructed central elements."""
    if r + t > 4:
        raise ValueError("center_dimension is limited to r + t <= 4")
    delta = rational(delta)
    degree = 2 * (r + t) if degree is None else degree
    seqs, index = _block_index(r, t)
    rows = _commutator_rows(r, t, delta, seqs, index)
    full = len(index) - la.sparse_rank(rows)

    alg = BrauerAlgebra(r, t, delta)
    adm = admissible_basis(r, t, degree)
    stats = {}
    for mode in ("transport", "literal"):
        ev = _MonomialEvaluator(alg, orientation_shifts(alg.loop, mode))
        vecs, central_ok, choice_ok = [], True, True
        for p in adm:
            z = _central_unchecked(p, r, t, alg, "minimal", ev)
            v = _vector(z, index)
            vecs.append(v)
            if central_ok and any(sum(c * v.get(i, 0) for i, c in row.items()) for row in rows):
                central_ok = False
            if choice_ok and z != _central_unchecked(p, r, t, alg, "maximal", ev):
                choice_ok = False
        stats[mode] = (la.sparse_rank(vecs), central_ok, choice_ok)
    constructed, central_ok, choice_ok = stats["transport"]
    lit_dim, lit_central, _ = stats["literal"]
    extra = {"literal_span_dim": lit_dim, "literal_all_central": lit_central}
    return CenterDimension(r, t, delta, degree, full, constructed, len(adm), central_ok, choice_ok, extra)


def center_csv(results) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["r", "t", "delta", "full_dim", "constructed_dim", "degree_bound"])
    for res in results:
        w.writerow([res.r, res.t, rational_to_str(res.delta), res.full_dim, res.constructed_dim, res.degree])
    return buf.getvalue()
