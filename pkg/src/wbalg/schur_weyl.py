"""Mixed tensor space V^{(x) a} for GL_m as an independent check of the diagram algebra.

A basis vector is an index tuple (i_1, ..., i_n), 0 <= i_j < m; a position
carrying DOWN stands for the dual space.  An oriented diagram acts by colouring:
a through strand copies its index, a bottom arc (cap) contracts two equal indices,
a top arc (cup) inserts sum_l e_l (x) e_l^*.  No signs are needed because the
pairing V (x) V^* -> C is symmetric in the index.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from . import linalg as la
from . import relations as R
from .diagrams import UP, compose, enumerate_diagrams, generator, seq, seq_str, sequences
from .matrix_calculus import minimal_polynomial, p_deriv, p_gcd, p_trim, rational_roots
from .scalars import rational
from .walled_brauer import BrauerAlgebra, CheckRecord, Report

_KIND = {"s": "S", "sh": "Shat", "e": "E", "eh": "Ehat"}


def index_tuples(m: int, n: int) -> list:
    return list(itertools.product(range(m), repeat=n))


def diagram_matrix(d, m: int) -> list:
    """Integer matrix (rows: target tuples, cols: source tuples) of a diagram."""
    n = d.n
    tuples = index_tuples(m, n)
    pos = {t: i for i, t in enumerate(tuples)}
    M = [[0] * len(tuples) for _ in tuples]
    through = d.through_strands()
    caps = d.bottom_arcs()
    cups = d.top_arcs()
    for j, src in enumerate(tuples):
        if any(src[p - 1] != src[q - 1] for p, q in caps):
            continue
        top = [None] * n
        for bi, ti in through:
            top[ti - 1] = src[bi - 1]
        for labels in itertools.product(range(m), repeat=len(cups)):
            for (p, q), l in zip(cups, labels):
                top[p - 1] = top[q - 1] = l
            M[pos[tuple(top)]][j] += 1
    return M


@dataclass
class TensorRep:
    """Generator matrices on every block of Seq(r, t); ``a`` fixes (r, t)."""

    m: int
    a: tuple
    matrices: dict = field(default_factory=dict)  # (kind, k, b) -> (target, matrix)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def dim(self) -> int:
        return self.m ** self.n

    def seqs(self):
        r = sum(1 for x in self.a if x == UP)
        return sequences(r, self.n - r)

    def generator(self, kind, k, b=None):
        b = self.a if b is None else seq(b)
        return self.matrices.get((kind, k, b))

    def word(self, word, b):
        """(target, matrix) of a concrete word on block b, or None if inadmissible."""
        M = la.eye(self.dim, one=1, zero=0)
        cur = b
        for kind, k in reversed(word):
            g = self.matrices.get((kind, k, cur))
            if g is None:
                return None
            cur, X = g
            M = la.matmul(X, M)
        return cur, M


def build_rep(m: int, a) -> TensorRep:
    if m < 1:
        raise ValueError("m must be positive")
    a = seq(a)
    rep = TensorRep(m, a)
    for b in rep.seqs():
        for k in range(1, len(a)):
            for kind, K in _KIND.items():
                if R.admissible(kind, k, b):
                    d = generator(K, k, b)
                    rep.matrices[(kind, k, b)] = (d.target, diagram_matrix(d, m))
    return rep


def _int_zero(M) -> bool:
    return all(not x for row in M for x in row)


def verify_rep_is_homomorphism(m: int, r: int, t: int, max_n: int = 4) -> Report:
    """All walled Brauer relations with loop value m, plus multiplicativity of the
    diagram action on every composable pair of basis diagrams."""
    n = r + t
    if n > max_n:
        raise ValueError(f"r+t = {n} exceeds {max_n}")
    seqs = sequences(r, t)
    rep = Report(f"tensor-homomorphism(m={m},r={r},t={t})")
    if n == 0:
        return rep
    T = build_rep(m, seqs[0])
    N = T.dim
    for b in seqs:
        for c in seqs:
            # identities on distinct blocks are orthogonal by construction: check the unit only
            if b == c:
                ok = diagram_matrix(generator("Id", None, b), m) == la.eye(N, one=1, zero=0)
                rep.add(CheckRecord("Br1", seq_str(b), [], "pass" if ok else "fail", 0))
    params = R.with_negatives({"delta": rational(m)})
    rels = R.walled_brauer_relations(n) + R.reidemeister_relations(n) + R.braid_variant_relations(n)
    for rel in rels:
        for b in seqs:
            for inst in R.instances(rel, b, params):
                total = la.zeros(N, N, zero=0)
                for coef, w in inst.terms:
                    tgt, M = T.word(w, b)
                    total = la.add(total, la.scale(coef, M))
                name = rel.family + (f"[{rel.note}]" if rel.note else "")
                rep.add(CheckRecord(name, seq_str(b), list(rel.indices), "pass" if _int_zero(total) else "fail", 0))
    mats = {}
    for a in seqs:
        for b in seqs:
            for d in enumerate_diagrams(a, b):
                mats[d] = diagram_matrix(d, m)
    bad = 0
    count = 0
    for a, b, c in itertools.product(seqs, repeat=3):
        for lower in enumerate_diagrams(a, b):
            for upper in enumerate_diagrams(b, c):
                prod, loops = compose(upper, lower)
                lhs = la.matmul(mats[upper], mats[lower])
                rhs = la.scale(m**loops, mats[prod])
                count += 1
                if lhs != rhs:
                    bad += 1
    rep.add(CheckRecord("multiplicative", "all", [count], "pass" if not bad else "fail", bad))
    return rep


# -- commutant -------------------------------------------------------------------

def gl_action(m: int, a, p: int, q: int) -> dict:
    """Sparse rho(E_pq) on V^{(x) a}: UP factors by E_pq, DOWN factors by -E_qp."""
    a = seq(a)
    tuples = index_tuples(m, len(a))
    pos = {t: i for i, t in enumerate(tuples)}
    out: dict = {}
    for j, tup in enumerate(tuples):
        for f, arrow in enumerate(a):
            src, dst, sign = (q, p, 1) if arrow == UP else (p, q, -1)
            if tup[f] == src:
                new = tup[:f] + (dst,) + tup[f + 1:]
                i = pos[new]
                out[(i, j)] = out.get((i, j), 0) + sign
    return {k: v for k, v in out.items() if v}


def _weight(m, a, tup):
    w = [0] * m
    for f, arrow in enumerate(a):
        w[tup[f]] += 1 if arrow == UP else -1
    return tuple(w)


def commutant_dimension(m: int, a) -> int:
    """dim {X : X rho(E) = rho(E) X for all E in gl_m}, solved exactly.

    Commuting with the diagonal E_pp forces X to preserve weight spaces, so the
    unknowns are the weight-block entries; the simple root vectors E_{p,p+1},
    E_{p+1,p} then cut out the commutant.
    """
    a = seq(a)
    tuples = index_tuples(m, len(a))
    weights = [_weight(m, a, t) for t in tuples]
    unknown = {}
    for i, wi in enumerate(weights):
        for j, wj in enumerate(weights):
            if wi == wj:
                unknown[(i, j)] = len(unknown)
    rows = []
    for p in range(m - 1):
        for (x, y) in ((p, p + 1), (p + 1, p)):
            E = gl_action(m, a, x, y)
            by_row: dict = {}
            by_col: dict = {}
            for (i, j), v in E.items():
                by_row.setdefault(i, []).append((j, v))
                by_col.setdefault(j, []).append((i, v))
            # (X E - E X)[i, j] = sum_l X[i,l] E[l,j] - E[i,l] X[l,j]
            eqs: dict = {}
            for (l, j), v in E.items():
                for i in range(len(tuples)):
                    key = unknown.get((i, l))
                    if key is not None:
                        eqs.setdefault((i, j), {})
                        eqs[(i, j)][key] = eqs[(i, j)].get(key, 0) + v
            for (i, l), v in E.items():
                for j in range(len(tuples)):
                    key = unknown.get((l, j))
                    if key is not None:
                        eqs.setdefault((i, j), {})
                        eqs[(i, j)][key] = eqs[(i, j)].get(key, 0) - v
            rows.extend(eqs.values())
    return len(unknown) - la.sparse_rank(rows)


def diagram_span_dimension(m: int, a) -> int:
    """Rank of the span of all diagram matrices 1_a -> 1_a."""
    a = seq(a)
    vecs = [[x for row in diagram_matrix(d, m) for x in row] for d in enumerate_diagrams(a, a)]
    return la.rank([[rational(x) for x in v] for v in vecs])


def diagrams_commute_with_gl(m: int, a) -> bool:
    a = seq(a)
    N = m ** len(a)
    gens = []
    for p in range(m):
        for q in range(m):
            E = gl_action(m, a, p, q)
            D = la.zeros(N, N, zero=0)
            for (i, j), v in E.items():
                D[i][j] = v
            gens.append(D)
    for d in enumerate_diagrams(a, a):
        X = diagram_matrix(d, m)
        for D in gens:
            if la.matmul(X, D) != la.matmul(D, X):
                return False
    return True


def jm_matrices(m: int, a) -> list:
    """rho(xi_k) 1_a on V^{(x) a} for k = 1..n."""
    a = seq(a)
    r = sum(1 for x in a if x == UP)
    alg = BrauerAlgebra(r, len(a) - r, rational(m))
    N = m ** len(a)
    out = []
    for k in range(1, len(a) + 1):
        xi = alg.jucys_murphy(k).block(a, a)
        M = la.zeros(N, N)
        for d, c in xi.terms.items():
            M = la.add(M, la.scale(rational(c), [[rational(x) for x in row] for row in diagram_matrix(d, m)]))
        out.append(M)
    return out


def jm_spectra_report(m: int, r: int, t: int) -> Report:
    """Pairwise commutation and integral diagonalizability of rho(xi_k); the joint
    spectra are recorded (no reference values are asserted)."""
    from .cyclotomic import joint_spectrum

    rep = Report(f"tensor-jm(m={m},r={r},t={t})")
    spectra = {}
    for a in sequences(r, t):
        X = jm_matrices(m, a)
        for i in range(len(X)):
            for j in range(i + 1, len(X)):
                ok = la.is_zero(la.sub(la.matmul(X[i], X[j]), la.matmul(X[j], X[i])))
                rep.add(CheckRecord("jm-commute", seq_str(a), [i + 1, j + 1], "pass" if ok else "fail", 0))
        for k, M in enumerate(X, start=1):
            mu = minimal_polynomial(M)
            squarefree = len(p_trim(p_gcd(mu, p_deriv(mu)))) <= 1
            roots = rational_roots(mu)
            integral = all(x.denominator == 1 for x, _ in roots)
            if m >= r + t:
                rep.add(CheckRecord("jm-diagonalizable", seq_str(a), [k], "pass" if squarefree else "fail", 0))
                rep.add(CheckRecord("jm-integral", seq_str(a), [k], "pass" if integral else "fail", 0))
        js = joint_spectrum(X)
        spectra[seq_str(a)] = {" ".join(str(x) for x in key): dim for key, dim in sorted(js.items())}
    rep.data["joint_spectra"] = spectra
    return rep


def schur_weyl_report(m: int, r: int, t: int) -> Report:
    """Homomorphism, commutant = span of diagrams = (r+t)! (when m >= r+t), JM spectra."""
    rep = verify_rep_is_homomorphism(m, r, t)
    want = math.factorial(r + t)
    dims = {}
    for a in sequences(r, t):
        cd = commutant_dimension(m, a)
        sd = diagram_span_dimension(m, a)
        dims[seq_str(a)] = {"commutant": cd, "diagram_span": sd}
        rep.add(CheckRecord("span=commutant", seq_str(a), [sd, cd], "pass" if sd == cd else "fail", abs(sd - cd)))
        if m >= r + t:
            rep.add(CheckRecord("commutant=(r+t)!", seq_str(a), [cd, want], "pass" if cd == want else "fail", abs(cd - want)))
        ok = diagrams_commute_with_gl(m, a)
        rep.add(CheckRecord("diagrams-commute-with-gl", seq_str(a), [], "pass" if ok else "fail", 0))
    jm = jm_spectra_report(m, r, t)
    rep.records.extend(jm.records)
    rep.data["dimensions"] = dims
    rep.data["jm_joint_spectra"] = jm.data["joint_spectra"]
    return rep
