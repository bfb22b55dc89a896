"""The images sigma_k, sigma-hat_k, tau_k, tau-hat_k inside f A f and their checks.

Everything is realised on the truncated regular representation

    V = f A f = (+)_col  f A 1_col f,

which is faithful for f A f (it contains the unit f).  ``V_col`` has one block
per target orientation ``b``; each block has dimension (r+t)!.  The generators
of A enter only through their compressions ``f X f`` to V, which are exact
rational matrices; the truncated inverses (1/b_k) f are exact as well.  The
square roots Q_k bring in irrational scalars, so the images themselves are
BigFloat (mpmath) matrices at a chosen precision.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import mpmath

from . import linalg as la
from . import relations as R
from .cyclotomic import FTable, _right_f_subspace
from .diagrams import DOWN, UP, seq, seq_str, swap
from .matrix_calculus import (
    EigenvalueHit,
    inverse_parts,
    p_add,
    p_eval,
    poly_matrix,
    spectral_decompose,
    sqrt_parts,
    to_mp,
)
from .scalars import DEFAULT_PRECISION, DEFAULT_RELATION_TOL, mp_context, rational
from .walled_brauer import CheckRecord, Report

REV = {UP: DOWN, DOWN: UP}
KINDS = ("s", "sh", "e", "eh")
IMAGE_NAME = {"s": "sigma", "sh": "sigma_hat", "e": "tau", "eh": "tau_hat"}


def rev(x):
    return REV[x]


def b_poly(params, a, k) -> list:
    """b_k 1_a = beta_1^{rev(a_k)} + y_k as a polynomial in y_k."""
    return [params.beta1(rev(a[k - 1])), rational(1)]


def c_poly(params, a, k) -> list:
    """c_k 1_a = beta_1^{a_k} - y_k."""
    return [params.beta1(a[k - 1]), rational(-1)]


# -- exact frames ------------------------------------------------------------------

@dataclass
class Frame:
    """Coordinates for f A 1_col f inside the column module of ``col``."""

    col: tuple
    basis: dict  # b -> B (block rows x d), columns are basis vectors
    left: dict  # b -> L with L B = I
    offsets: dict  # b -> start index of block b in V_col

    def dim(self, b) -> int:
        return len(self.basis[b][0]) if self.basis[b] else 0


def build_frame(alg, table: FTable, col) -> Frame:
    column = alg.column(col)
    vecs = _right_f_subspace(alg, table, col)
    basis, left, offsets = {}, {}, {}
    pos = 0
    for b in alg.seqs:
        s, e = column.slices[b]
        F = table.f_block(b, col)
        imgs = [la.matvec(F, [v.get(s + i, rational(0)) for i in range(e - s)]) for v in vecs]
        rows = la.column_space_basis(imgs)
        B = la.transpose(rows)
        basis[b] = B
        left[b] = la.solve_left_inverse(B)
        offsets[b] = pos
        pos += len(rows)
    return Frame(col, basis, left, offsets)


class ExactTruncation:
    """Exact compressions f X f of the generators to V, per column."""

    def __init__(self, alg, table: FTable | None = None):
        self.alg = alg
        self.params = alg.params
        self.table = table or FTable(alg)
        self.frames = {col: build_frame(alg, self.table, col) for col in alg.seqs}
        self._c: dict = {}
        self._spec: dict = {}

    def compress(self, col, letter, b):
        """(target, L_t F_t X B_b) for a generator letter, or None if inadmissible."""
        kind, k = letter
        if not R.admissible(kind, k, b):
            return None
        tgt = R.target_of(kind, k, b)
        key = (col, letter, b)
        if key not in self._c:
            column = self.alg.column(col)
            fr = self.frames[col]
            X = column.matrix(letter, rows=tgt, cols=b)
            M = la.matmul(la.matmul(fr.left[tgt], la.matmul(self.table.f_block(tgt, col), X)), fr.basis[b])
            self._c[key] = M
        return tgt, self._c[key]

    def y(self, col, k, b):
        return self.compress(col, ("y", k), b)[1]

    def identity(self, col, b):
        return la.eye(self.frames[col].dim(b))

    def spectrum(self, k, b):
        """Spectral data of y_k f 1_b, computed on its own block f 1_b A 1_b f."""
        key = (k, b)
        if key not in self._spec:
            self._spec[key] = spectral_decompose(self.y(b, k, b))
        return self._spec[key]

    def inverse_poly(self, poly, k, b):
        """Polynomial g in y_k with g(y_k) * poly(y_k) f 1_b = f 1_b."""
        sd, parts = inverse_parts(None, poly, spec=self.spectrum(k, b))
        g: list = []
        for _, p in parts:
            g = p_add(g, p)
        return g

    def inv_b(self, col, k, b):
        """(1/b_k) f 1_b on V_col."""
        return poly_matrix(self.inverse_poly(b_poly(self.params, b, k), k, b), self.y(col, k, b))

    def inv_c(self, col, k, b):
        return poly_matrix(self.inverse_poly(c_poly(self.params, b, k), k, b), self.y(col, k, b))

    def b_mat(self, col, k, b):
        return poly_matrix(b_poly(self.params, b, k), self.y(col, k, b))

    def c_mat(self, col, k, b):
        return poly_matrix(c_poly(self.params, b, k), self.y(col, k, b))

    def ratio(self, col, k, b, upper, lower):
        """b_upper * (1/b_lower) f 1_b on V_col (k is unused, kept for symmetry)."""
        return la.matmul(self.b_mat(col, upper, b), self.inv_b(col, lower, b))


# -- BigFloat images -----------------------------------------------------------------

@dataclass
class PhiImages:
    """Images of the walled Brauer generators, per column of V."""

    alg: object
    precision: int
    branch: str
    exact: ExactTruncation
    ctx: object
    Q: dict = field(default_factory=dict)  # (col, k, b) -> matrix
    images: dict = field(default_factory=dict)  # (col, kind, k, b) -> (target, matrix)
    sqrt_data: dict = field(default_factory=dict)  # (k, b) -> [(root, poly)]
    r: int = 0
    t: int = 0

    @property
    def n(self):
        return self.alg.n

    @property
    def seqs(self):
        return self.alg.seqs

    def num(self, M):
        return la.mat_convert(M, lambda x: to_mp(x, self.ctx))

    def eye(self, col, b):
        d = self.exact.frames[col].dim(b)
        return la.eye(d, one=self.ctx.mpf(1), zero=self.ctx.mpf(0))

    def zero(self, col, rows, cols):
        fr = self.exact.frames[col]
        return la.zeros(fr.dim(rows), fr.dim(cols), zero=self.ctx.mpf(0))

    def image(self, col, letter, b):
        kind, k = letter
        return self.images.get((col, kind, k, b))

    def word(self, col, word, b):
        """(target, matrix) of a word in the images applied to f 1_b, or None."""
        M = self.eye(col, b)
        cur = b
        for letter in reversed(word):
            img = self.image(col, letter, cur)
            if img is None:
                return None
            cur, X = img
            M = la.matmul(X, M)
        return cur, M


def _branch_roots(parts, branch, ctx):
    roots = []
    for i, (root, poly) in enumerate(parts):
        z = to_mp(root, ctx)
        if branch == "opposite":
            z = -z
        elif branch.startswith("flip:") and int(branch.split(":")[1]) == i:
            z = -z
        roots.append((z, poly))
    return roots


def sqrt_on_block(exact: ExactTruncation, k, b, upper, lower, precision):
    """sqrt(b_upper / b_lower) f 1_b: spectral data of the ratio on f 1_b A 1_b f."""
    H = exact.ratio(b, k, b, upper, lower)
    sd, parts = sqrt_parts(H, [rational(0), rational(1)], precision=precision)
    return sd, parts


def build_phi_images(alg, a=None, precision: int = DEFAULT_PRECISION, branch: str = "principal",
                     exact: ExactTruncation | None = None) -> PhiImages:
    """Images on every column (``a`` restricts the columns that are filled in).

    Raises EigenvalueHit if some b_k f is singular.
    """
    alg.params.check_assumption(alg.r, alg.t)
    exact = exact or ExactTruncation(alg)
    ctx = mp_context(precision)
    P = PhiImages(alg, precision, branch, exact, ctx, r=alg.r, t=alg.t)
    cols = alg.seqs if a is None else [seq(a)]
    n = alg.n
    roots = {}
    for b in alg.seqs:
        for k in range(1, n):
            _, parts = sqrt_on_block(exact, k, b, k + 1, k, precision)
            roots[(k, b)] = _branch_roots(parts, branch, ctx)
    P.sqrt_data = roots
    for col in cols:
        for b in alg.seqs:
            for k in range(1, n):
                H = P.num(exact.ratio(col, k, b, k + 1, k))
                Q = None
                for z, poly in roots[(k, b)]:
                    term = la.scale(z, poly_matrix([to_mp(c, ctx) for c in poly], H))
                    Q = term if Q is None else la.add(Q, term)
                P.Q[(col, k, b)] = Q
        for b in alg.seqs:
            for k in range(1, n):
                for kind in KINDS:
                    c = exact.compress(col, (kind, k), b)
                    if c is None:
                        continue
                    tgt, X = c
                    M = la.matmul(P.Q[(col, k, tgt)], la.matmul(P.num(X), P.Q[(col, k, b)]))
                    if kind == "s":
                        M = la.add(la.scale(ctx.mpf(-1), M), P.num(exact.inv_b(col, k, b)))
                    elif kind == "sh":
                        M = la.scale(ctx.mpf(-1), M)
                    P.images[(col, kind, k, b)] = (tgt, M)
    return P


def alternate_sigma(P: PhiImages, col, k, b):
    """-f sqrt(b_k/b_{k+1}) s_k sqrt(b_k/b_{k+1}) f - (1/b_{k+1}) f on V_col."""
    ex, ctx = P.exact, P.ctx
    _, parts = sqrt_on_block(ex, k, b, k, k + 1, P.precision)
    H = P.num(ex.ratio(col, k, b, k, k + 1))
    Q = None
    for z, poly in _branch_roots(parts, P.branch, ctx):
        term = la.scale(z, poly_matrix([to_mp(c, ctx) for c in poly], H))
        Q = term if Q is None else la.add(Q, term)
    _, S = ex.compress(col, ("s", k), b)
    M = la.matmul(Q, la.matmul(P.num(S), Q))
    return la.sub(la.scale(ctx.mpf(-1), M), P.num(ex.inv_b(col, k + 1, b)))


# -- verification --------------------------------------------------------------------

def _residual(M):
    return la.max_abs(M) if M else 0


def _record(rep, name, orientation, indices, res, tol, residuals):
    ok = res < tol
    rep.add(CheckRecord(name, orientation, list(indices), "pass" if ok else "fail", 0, f"residual={mpmath.nstr(res, 5)}"))
    key = f"{name}|{orientation}|{','.join(map(str, indices))}"
    residuals[key] = float(res) if res else 0.0
    return ok


def _eval_terms(P: PhiImages, col, terms, src, tgt):
    """sum coef * word on V_col from block src to block tgt."""
    total = P.zero(col, tgt, src)
    for coef, w in terms:
        img = P.word(col, w, src)
        if img is None:
            continue
        t_, M = img
        if t_ != tgt:
            raise ValueError("word lands in an unexpected block")
        total = la.add(total, la.scale(to_mp(coef, P.ctx), M))
    return total


def image_relations(n: int) -> list:
    rels = R.walled_brauer_relations(n) + R.reidemeister_relations(n) + R.braid_variant_relations(n)
    # two-sided absorption and the hat-square in explicit form
    for k in range(1, n):
        rels.append(R.Relation("hat-square", (k,), ((1, (("sh", k), ("sh", k))), (-1, ())),
                               condition=lambda b, k=k: b[k - 1] != b[k]))
        rels.append(R.Relation("absorb-left", (k,), ((1, (("sh", k), ("e", k))), (-1, (("eh", k),)))))
        rels.append(R.Relation("absorb-right", (k,), ((1, (("e", k), ("sh", k))), (-1, (("eh", k),)))))
    for k in range(1, n - 1):
        k1 = k + 1
        rels.append(R.Relation("reidemeister-up", (k,), ((1, (("e", k), ("s", k1), ("e", k))), (-1, (("e", k),))),
                               condition=lambda b, k=k: b[k] == b[k + 1]))
        rels.append(R.Relation("reidemeister-down", (k1,), ((1, (("e", k1), ("s", k), ("e", k1))), (-1, (("e", k1),))),
                               condition=lambda b, k=k: b[k - 1] == b[k]))
        quartet = [
            ((("sh", k), ("e", k1), ("e", k)), (("s", k1), ("eh", k))),
            ((("s", k), ("eh", k1), ("e", k)), (("sh", k1), ("e", k))),
            ((("sh", k1), ("e", k), ("e", k1)), (("s", k), ("eh", k1))),
            ((("s", k1), ("eh", k), ("e", k1)), (("sh", k), ("e", k1))),
        ]
        for i, (lhs, rhs) in enumerate(quartet):
            rels.append(R.Relation("hat-absorption", (k,), ((1, lhs), (-1, rhs)), note=f"form{i + 1}"))
    return rels


def verify_isomorphism_relations(images: PhiImages, r: int | None = None, t: int | None = None,
                                 tol=DEFAULT_RELATION_TOL) -> Report:
    """Every walled Brauer relation at loop value -delta, on every column of V.

    Families that have no admissible instance at this rank are reported as
    'not applicable'.
    """
    P = images
    n = P.n
    rep = Report(f"isomorphism-relations(r={P.r},t={P.t},bits={P.precision},branch={P.branch})")
    params = R.with_negatives({"delta": -P.alg.params.delta})
    residuals: dict = {}
    seen_family = {}
    cols = sorted({key[0] for key in P.Q} | {key[0] for key in P.images}) or P.seqs
    for rel in image_relations(n):
        name = rel.family + (f"[{rel.note}]" if rel.note else "")
        seen_family.setdefault(name, False)
        for b in P.seqs:
            for inst in R.instances(rel, b, params):
                seen_family[name] = True
                worst = 0
                for col in cols:
                    M = _eval_terms(P, col, inst.terms, inst.source, inst.target)
                    worst = max(worst, _residual(M))
                _record(rep, name, seq_str(b), rel.indices, worst, tol, residuals)
    for name, hit in seen_family.items():
        if not hit:
            rep.add(CheckRecord(name, "-", [], "not applicable", 0, "no admissible instance"))
    # f acts as the unit: images are supported on V
    rep.data["residuals"] = residuals
    rep.data["max_residual"] = max(residuals.values(), default=0.0)
    rep.data["loop_value"] = str(-P.alg.params.delta)
    return rep


def jm_images(P: PhiImages, col):
    """X[(k, b)] = image of xi_k 1_b by the recursion on the images."""
    X = {}
    for b in P.seqs:
        X[(1, b)] = P.zero(col, b, b)
    for k in range(1, P.n):
        for b in P.seqs:
            if b[k - 1] == b[k]:
                _, S = P.image(col, ("s", k), b)
                M = la.add(la.matmul(S, la.matmul(X[(k, b)], S)), S)
            else:
                b2, Sh = P.image(col, ("sh", k), b)
                _, Sh_back = P.image(col, ("sh", k), b2)
                _, E = P.image(col, ("e", k), b)
                M = la.sub(la.matmul(Sh_back, la.matmul(X[(k, b2)], Sh)), E)
            X[(k + 1, b)] = M
    return X


def verify_jm_transport(images: PhiImages, alg=None, tol=DEFAULT_RELATION_TOL) -> Report:
    """image of (xi_k - beta_2^{b_k}) 1_b equals -y_k f 1_b."""
    P = images
    rep = Report(f"jm-transport(r={P.r},t={P.t},bits={P.precision})")
    residuals: dict = {}
    ctx = P.ctx
    cols = sorted({key[0] for key in P.images}) or P.seqs
    for col in cols:
        X = jm_images(P, col)
        for (k, b), M in sorted(X.items()):
            beta2 = to_mp(P.alg.params.beta2(b[k - 1]), ctx)
            lhs = la.sub(M, la.scale(beta2, P.eye(col, b)))
            rhs = la.scale(ctx.mpf(-1), P.num(P.exact.y(col, k, b)))
            _record(rep, "jm-transport", f"{seq_str(b)} in col {seq_str(col)}", [k], _residual(la.sub(lhs, rhs)), tol,
                    residuals)
    rep.data["residuals"] = residuals
    return rep


def _hat_path(a, target):
    """Shortest list of positions k (swapping unequal neighbours) taking a to target."""
    a, target = tuple(a), tuple(target)
    prev = {a: None}
    queue = deque([a])
    while queue:
        cur = queue.popleft()
        if cur == target:
            break
        for k in range(1, len(cur)):
            if cur[k - 1] != cur[k]:
                nxt = swap(cur, k)
                if nxt not in prev:
                    prev[nxt] = (cur, k)
                    queue.append(nxt)
    path = []
    cur = target
    while prev[cur] is not None:
        cur, k = prev[cur]
        path.append(k)
    return path  # positions in application order, last-applied first


def _span_words(P: PhiImages, col, tol):
    """BFS over image words applied to f 1_col; per target block an independent set."""
    spans = {b: la.SpanBuilder(P.exact.frames[col].dim(b), tol) for b in P.seqs}
    words = {b: [] for b in P.seqs}
    queue = deque([((), col)])
    letters = [(kind, k) for k in range(1, P.n) for kind in KINDS]
    vecs = {(): _unit_coords(P, col)}
    while queue:
        w, blk = queue.popleft()
        v = vecs[w]
        if not spans[blk].add(v):
            continue
        words[blk].append(w)
        for L in letters:
            img = P.image(col, L, blk)
            if img is None:
                continue
            tgt, M = img
            nw = (L,) + w
            vecs[nw] = la.matvec(M, v)
            queue.append((nw, tgt))
    return words, {b: len(spans[b]) for b in P.seqs}


def _unit_coords(P: PhiImages, col):
    """Coordinates of f 1_col in the frame of its own block."""
    ex = P.exact
    column = ex.alg.column(col)
    (j0, _), = column.unit().items()
    s, _ = column.slices[col]
    F = ex.table.f_block(col, col)
    vec = [row[j0 - s] for row in F]
    coords = la.matvec(ex.frames[col].left[col], vec)
    return [to_mp(x, P.ctx) for x in coords]


def verify_dimension_and_surjectivity(images: PhiImages, alg=None) -> Report:
    P = images
    ex = P.exact
    rep = Report(f"dimension(r={P.r},t={P.t})")
    fact = math.factorial(P.n)
    tol = P.ctx.mpf(2) ** (-(P.precision // 2))
    total = 0
    block_words = {}
    for col in P.seqs:
        words, dims = _span_words(P, col, tol)
        for b, d in dims.items():
            total += d
            block_words[(b, col)] = words[b]
            rep.add(CheckRecord("image-span", f"{seq_str(b)}<-{seq_str(col)}", [d, fact],
                                "pass" if d == fact else "fail", abs(d - fact)))
    want = len(P.seqs) ** 2 * fact
    rep.add(CheckRecord("image-span-total", "all", [total, want], "pass" if total == want else "fail", abs(total - want)))
    from .cyclotomic import two_sided_rank

    dims = {}
    for a in P.seqs:
        for b in P.seqs:
            d = two_sided_rank(ex.alg, ex.table, b, a)
            dims[f"{seq_str(b)}<-{seq_str(a)}"] = d
            rep.add(CheckRecord("f-truncated-dimension", f"{seq_str(b)}<-{seq_str(a)}", [d, fact],
                                "pass" if d == fact else "fail", abs(d - fact)))
    # precomposition with a hat-sigma word is a linear isomorphism between blocks
    for a in P.seqs:
        for a2 in P.seqs:
            path = _hat_path(a, a2)
            z_word = tuple(("sh", k) for k in path)
            img = P.word(a, z_word, a)
            assert img is not None and img[0] == a2
            zvec = la.matvec(img[1], _unit_coords(P, a))
            for b in P.seqs:
                vecs = []
                for w in block_words[(b, a2)]:
                    got = P.word(a, w, a2)
                    vecs.append(la.matvec(got[1], zvec))
                rk = la.rank(vecs, tol) if vecs else 0
                rep.add(CheckRecord("hat-precomposition", f"{seq_str(b)}<-{seq_str(a2)}->{seq_str(a)}",
                                    [rk, fact], "pass" if rk == fact else "fail", abs(rk - fact)))
    rep.data["f_block_dimensions"] = dims
    rep.data["span_total"] = total
    return rep


# -- the supporting identities -------------------------------------------------------

def _exact_status(M):
    return "pass" if la.is_zero(M) else "fail"


def _full(alg, col, letter, b):
    kind, k = letter
    if not R.admissible(kind, k, b):
        return None
    tgt = R.target_of(kind, k, b)
    return tgt, alg.column(col).matrix(letter, rows=tgt, cols=b)


def _full_poly(alg, col, poly, k, b):
    return poly_matrix(poly, alg.column(col).matrix(("y", k), rows=b, cols=b))


def _full_inverse_on(alg, table, col, poly, k, b, upto):
    """(1/poly(y_k)) f_upto 1_b on the block-b part of column ``col``, plus validity."""
    sd = table.data[b].spectra[k - 1]
    avoid = [c.eigenvalue for c in sd.components if not p_eval(poly, c.eigenvalue)]
    _, parts = inverse_parts(None, poly, spec=sd, avoid=avoid)
    g: list = []
    eta: list = []
    for _, p in parts:
        g = p_add(g, p)
    for comp in sd.components:
        if comp.eigenvalue not in avoid:
            eta = p_add(eta, comp.poly)
    Y = alg.column(col).matrix(("y", k), rows=b, cols=b)
    Fu = table.f_partial(upto, b, col)
    G = la.matmul(poly_matrix(g, Y), Fu)
    valid = la.is_zero(la.sub(la.matmul(poly_matrix(eta, Y), Fu), Fu))
    return G, valid


def verify_identity_suite(images: PhiImages, tol=DEFAULT_RELATION_TOL) -> Report:
    """Straightening, truncated straightening, c f e f = c e f, the crucial
    e (1/b) e identity, the second form of sigma, and e s (1/b) e f = 0."""
    P = images
    ex = P.exact
    alg = ex.alg
    params = alg.params
    table = ex.table
    n = alg.n
    rep = Report(f"identity-suite(r={P.r},t={P.t},bits={P.precision})")
    residuals: dict = {}
    mm, sub, add = la.matmul, la.sub, la.add

    def rec(name, col, b, idx, status):
        rep.add(CheckRecord(name, f"{seq_str(b)} in col {seq_str(col)}", list(idx), status, 0))

    for col in alg.seqs:
        for b in alg.seqs:
            for k in range(1, n):
                def bm(kk, blk):
                    return _full_poly(alg, col, b_poly(params, blk, kk), kk, blk)

                def cm(kk, blk):
                    return _full_poly(alg, col, c_poly(params, blk, kk), kk, blk)

                dim = alg.column(col).block_dim(b)
                I = la.eye(dim)
                if b[k - 1] == b[k]:
                    _, S = _full(alg, col, ("s", k), b)
                    rec("straighten s b_k", col, b, [k], _exact_status(add(sub(mm(S, bm(k, b)), mm(bm(k + 1, b), S)), I)))
                    rec("straighten s b_k+1", col, b, [k], _exact_status(sub(sub(mm(S, bm(k + 1, b)), mm(bm(k, b), S)), I)))
                    rec("straighten s c_k", col, b, [k], _exact_status(sub(sub(mm(S, cm(k, b)), mm(cm(k + 1, b), S)), I)))
                    rec("straighten s c_k+1", col, b, [k], _exact_status(add(sub(mm(S, cm(k + 1, b)), mm(cm(k, b), S)), I)))
                else:
                    b2, Sh = _full(alg, col, ("sh", k), b)
                    _, Eh = _full(alg, col, ("eh", k), b)
                    rec("straighten sh b_k", col, b, [k], _exact_status(sub(sub(mm(Sh, bm(k, b)), mm(bm(k + 1, b2), Sh)), Eh)))
                    rec("straighten sh b_k+1", col, b, [k], _exact_status(add(sub(mm(Sh, bm(k + 1, b)), mm(bm(k, b2), Sh)), Eh)))
                    rec("straighten sh c_k", col, b, [k], _exact_status(add(sub(mm(Sh, cm(k, b)), mm(cm(k + 1, b2), Sh)), Eh)))
                    rec("straighten sh c_k+1", col, b, [k], _exact_status(sub(sub(mm(Sh, cm(k + 1, b)), mm(cm(k, b2), Sh)), Eh)))

    # truncated straightening on V (exact)
    for col in alg.seqs:
        for b in alg.seqs:
            for k in range(1, n):
                Gk, Gk1 = ex.inv_b(col, k, b), ex.inv_b(col, k + 1, b)
                if b[k - 1] == b[k]:
                    _, S = ex.compress(col, ("s", k), b)
                    Ck, Ck1 = ex.inv_c(col, k, b), ex.inv_c(col, k + 1, b)
                    rec("truncated s (1/b_k)f", col, b, [k], _exact_status(sub(sub(mm(S, Gk), mm(Gk1, S)), mm(Gk, Gk1))))
                    rec("truncated s (1/b_k+1)f", col, b, [k], _exact_status(add(sub(mm(S, Gk1), mm(Gk, S)), mm(Gk, Gk1))))
                    rec("truncated s (1/c_k)f", col, b, [k], _exact_status(add(sub(mm(S, Ck), mm(Ck1, S)), mm(Ck, Ck1))))
                    rec("truncated s (1/c_k+1)f", col, b, [k], _exact_status(sub(sub(mm(S, Ck1), mm(Ck, S)), mm(Ck, Ck1))))
                else:
                    b2, Sh = ex.compress(col, ("sh", k), b)
                    _, Eh = ex.compress(col, ("eh", k), b)
                    Gk_2, Gk1_2 = ex.inv_b(col, k, b2), ex.inv_b(col, k + 1, b2)
                    Ck, Ck1 = ex.inv_c(col, k, b), ex.inv_c(col, k + 1, b)
                    Ck_2, Ck1_2 = ex.inv_c(col, k, b2), ex.inv_c(col, k + 1, b2)
                    rec("truncated sh (1/b_k)f", col, b, [k],
                        _exact_status(add(sub(mm(Sh, Gk), mm(Gk1_2, Sh)), mm(Gk1_2, mm(Eh, Gk)))))
                    rec("truncated sh (1/b_k+1)f", col, b, [k],
                        _exact_status(sub(sub(mm(Sh, Gk1), mm(Gk_2, Sh)), mm(Gk_2, mm(Eh, Gk1)))))
                    rec("truncated sh (1/c_k)f", col, b, [k],
                        _exact_status(sub(sub(mm(Sh, Ck), mm(Ck1_2, Sh)), mm(Ck1_2, mm(Eh, Ck)))))
                    rec("truncated sh (1/c_k+1)f", col, b, [k],
                        _exact_status(add(sub(mm(Sh, Ck1), mm(Ck_2, Sh)), mm(Ck_2, mm(Eh, Ck1)))))
                # inverse from the calculus agrees with the plain matrix inverse
                direct = la.inverse(ex.b_mat(col, k, b))
                rec("inverse routes agree", col, b, [k], _exact_status(sub(direct, Gk)))

    # c_k f X f = c_k X f for X in {e_k, eh_k, sh_k}
    for col in alg.seqs:
        for b in alg.seqs:
            for k in range(1, n):
                if b[k - 1] == b[k]:
                    continue
                F = table.f_block(b, col)
                for kind in ("e", "eh", "sh"):
                    tgt, X = _full(alg, col, (kind, k), b)
                    C = _full_poly(alg, col, c_poly(params, tgt, k), k, tgt)
                    Ft = table.f_block(tgt, col)
                    d = sub(mm(C, mm(Ft, mm(X, F))), mm(C, mm(X, F)))
                    rec(f"c f {kind} f = c {kind} f", col, b, [k], _exact_status(d))

    # e_k (1/b_k) e_k f_{k-1} = e_k f_{k-1}
    for col in alg.seqs:
        for b in alg.seqs:
            for k in range(1, n):
                if b[k - 1] == b[k]:
                    continue
                G, valid = _full_inverse_on(alg, table, col, b_poly(params, b, k), k, b, k - 1)
                _, E = _full(alg, col, ("e", k), b)
                Fk = table.f_partial(k - 1, b, col)
                d = sub(mm(E, mm(G, mm(E, Fk))), mm(E, Fk))
                rec("e (1/b_k) e f_k-1 = e f_k-1", col, b, [k], _exact_status(d) if valid else "fail")

    # e_k s_{k+1} (1/b_k) e_k f = e_k (1/b_k) s_{k+1} e_k f = 0
    for col in alg.seqs:
        for b in alg.seqs:
            for k in range(1, n - 1):
                if b[k - 1] == b[k] or b[k] != b[k + 1]:
                    continue
                G, valid = _full_inverse_on(alg, table, col, b_poly(params, b, k), k, b, k - 1)
                _, E = _full(alg, col, ("e", k), b)
                _, S1 = _full(alg, col, ("s", k + 1), b)
                F = table.f_block(b, col)
                d1 = mm(E, mm(S1, mm(G, mm(E, F))))
                d2 = mm(E, mm(G, mm(S1, mm(E, F))))
                rec("e s (1/b_k) e f = 0", col, b, [k], _exact_status(d1) if valid else "fail")
                rec("e (1/b_k) s e f = 0", col, b, [k], _exact_status(d2) if valid else "fail")

    # the second expression for sigma_k
    cols = sorted({key[0] for key in P.images})
    for col in cols:
        for b in alg.seqs:
            for k in range(1, n):
                if b[k - 1] != b[k]:
                    continue
                alt = alternate_sigma(P, col, k, b)
                _, sig = P.image(col, ("s", k), b)
                _record(rep, "sigma second form", f"{seq_str(b)} in col {seq_str(col)}", [k],
                        _residual(la.sub(alt, sig)), tol, residuals)
    rep.data["residuals"] = residuals
    return rep


def branch_rerun(alg, exact: ExactTruncation, precision=DEFAULT_PRECISION, tol=DEFAULT_RELATION_TOL) -> Report:
    """Relations again with every root negated, plus an observation for a single
    flipped component (not a pass/fail criterion)."""
    opp = build_phi_images(alg, precision=precision, branch="opposite", exact=exact)
    rep = verify_isomorphism_relations(opp, tol=tol)
    rep.name = f"branch-rerun(r={alg.r},t={alg.t})"
    observations = {}
    if alg.n > 1:
        flip = build_phi_images(alg, precision=precision, branch="flip:0", exact=exact)
        frep = verify_isomorphism_relations(flip, tol=tol)
        observations["single_component_flip_passed"] = frep.passed
        observations["single_component_flip_failures"] = len(frep.failures())
    rep.data["observations"] = observations
    return rep


def precision_scaling(alg, lo: int = 128, hi: int = 256, orders: float = 10.0, exact=None) -> Report:
    """Each residual must drop by ``orders`` decimal orders from ``lo`` to ``hi`` bits.

    Residuals are floored at the unit roundoff 2^-bits of their run, so an exact
    zero counts as roundoff-sized rather than as infinitely accurate."""
    exact = exact or ExactTruncation(alg)
    rep = Report(f"precision-scaling(r={alg.r},t={alg.t},{lo}->{hi})")
    runs = {}
    for bits in (lo, hi):
        P = build_phi_images(alg, precision=bits, exact=exact)
        res = {}
        for sub_rep in (verify_isomorphism_relations(P), verify_jm_transport(P)):
            res.update(sub_rep.data["residuals"])
        runs[bits] = res
    worst = None
    for key, r_hi in runs[hi].items():
        # residuals below unit roundoff are indistinguishable from it
        r_lo = max(runs[lo].get(key, 0.0), 2.0 ** -lo)
        r_hi = max(r_hi, 2.0 ** -hi)
        gain = math.log10(r_lo) - math.log10(r_hi)
        status = "pass" if gain >= orders else "fail"
        worst = gain if worst is None else min(worst, gain)
        name, orient, idx = key.split("|")
        rep.add(CheckRecord("scaling:" + name, orient, [idx], status, 0, f"gain={gain:.1f}"))
    rep.data["min_gain_orders"] = worst
    return rep


def verify_all(alg, precision: int = DEFAULT_PRECISION, tol=DEFAULT_RELATION_TOL, scaling: bool = True,
               branch: bool = True) -> dict:
    exact = ExactTruncation(alg)
    P = build_phi_images(alg, precision=precision, exact=exact)
    reports = {
        "relations": verify_isomorphism_relations(P, tol=tol),
        "jm_transport": verify_jm_transport(P, tol=tol),
        "dimension": verify_dimension_and_surjectivity(P),
        "identities": verify_identity_suite(P, tol=tol),
    }
    if branch:
        reports["branch"] = branch_rerun(alg, exact, precision, tol)
    if scaling:
        reports["scaling"] = precision_scaling(alg, exact=exact)
    return reports
