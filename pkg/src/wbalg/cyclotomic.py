"""The level-two cyclotomic quotient of the degenerate affine walled Brauer algebra.

Each column module ``A 1_a`` is constructed by vector enumeration from the
defining relations, then rewritten in the two-sided normal-monomial basis
(a diagram plus at most one dot per component).  Everything is exact.
"""

from __future__ import annotations

import itertools
import json
import os
import time
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import gmpy2

from . import linalg as la
from . import relations as R
from .diagrams import (
    DOWN,
    UP,
    compose,
    enumerate_diagrams,
    from_text,
    generator,
    identity,
    seq,
    seq_str,
    sequences,
)
from .enumeration import EnumerationBudgetExceeded, VectorEnumerator
from .matrix_calculus import p_add, poly_matrix, spectral_decompose
from .params import DEFAULT_PARAMS, Params
from .scalars import rational_from_str, rational_to_str
from .walled_brauer import CheckRecord, Report

Q = gmpy2.mpq
SCHEMA_VERSION = 1
MAX_RANK = 3

ReductionBudgetExceeded = EnumerationBudgetExceeded


class ClosureFailure(RuntimeError):
    def __init__(self, msg, achieved=None):
        super().__init__(msg)
        self.achieved = achieved


_KIND = {"s": "S", "sh": "Shat", "e": "E", "eh": "Ehat"}


def letter_str(letter) -> str:
    return f"{letter[0]}{letter[1]}"


def parse_letter(s: str):
    i = next(j for j, c in enumerate(s) if c.isdigit())
    return (s[:i], int(s[i:]))


def parse_word(text: str):
    """``"e1 y1 e1"`` -> letters in algebra order."""
    return tuple(parse_letter(tok) for tok in text.replace("*", " ").replace("·", " ").split())


def letters_for(n: int, b: tuple) -> list:
    out = [("y", k) for k in range(1, n + 1)]
    for k in range(1, n):
        for kind in ("s", "sh", "e", "eh"):
            if R.admissible(kind, k, b):
                out.append((kind, k))
    return out


def defining_relations(n: int) -> list:
    return R.walled_brauer_relations(n) + R.affine_relations(n) + R.bubble_relations(n) + R.cyclotomic_relations(n)


# -- normal monomials ---------------------------------------------------------

def dot_sites(d) -> list:
    """Where each component carries its dot: ("T", j) for through strands and
    cups (top endpoint, left end for cups), ("B", i) for caps (left end)."""
    top = [tp for _, tp in d.through_strands()] + [i for i, _ in d.top_arcs()]
    bottom = [i for i, _ in d.bottom_arcs()]
    return [("T", j) for j in sorted(top)] + [("B", i) for i in sorted(bottom)]


@lru_cache(maxsize=None)
def _diagram_words(a: tuple) -> dict:
    """Loop-free generator word for every diagram with bottom ``a`` (BFS)."""
    n = len(a)
    start = identity(a)
    words = {start: ()}
    queue = deque([start])
    while queue:
        d = queue.popleft()
        for k in range(1, n):
            for kind in ("s", "sh", "e", "eh"):
                if not R.admissible(kind, k, d.target):
                    continue
                g = generator(_KIND[kind], k, d.target)
                nd, loops = compose(g, d)
                if loops == 0 and nd not in words:
                    words[nd] = ((kind, k),) + words[d]
                    queue.append(nd)
    return words


def diagram_word(d) -> tuple:
    return _diagram_words(d.source)[d]


@dataclass(frozen=True)
class NormalMonomial:
    diagram: object
    eps: tuple

    def word(self) -> tuple:
        sites = dot_sites(self.diagram)
        top = tuple(("y", j) for (side, j), e in zip(sites, self.eps) if e and side == "T")
        bottom = tuple(("y", i) for (side, i), e in zip(sites, self.eps) if e and side == "B")
        return top + diagram_word(self.diagram) + bottom

    def to_text(self) -> str:
        return f"{self.diagram.to_text()} ; eps={''.join(map(str, self.eps))}"

    @classmethod
    def from_text(cls, text: str) -> "NormalMonomial":
        head, _, eps = text.rpartition("; eps=")
        return cls(from_text(head.strip()), tuple(int(c) for c in eps.strip()))


def normal_monomials(a, b) -> list:
    out = []
    for d in enumerate_diagrams(seq(a), seq(b)):
        for eps in itertools.product((0, 1), repeat=len(d.source)):
            out.append(NormalMonomial(d, eps))
    return out


# -- column modules ------------------------------------------------------------

@dataclass
class Column:
    a: tuple
    basis: list  # NormalMonomial, grouped by target block in sequence order
    action: dict  # letter -> {col: {row: coef}}
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        self.index = {m: i for i, m in enumerate(self.basis)}
        self.blocks = [m.diagram.target for m in self.basis]
        self.slices = {}
        for i, b in enumerate(self.blocks):
            s, e = self.slices.get(b, (i, i))
            self.slices[b] = (min(s, i), i + 1)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def block_dim(self, b) -> int:
        s, e = self.slices.get(b, (0, 0))
        return e - s

    def unit(self) -> dict:
        return {self.index[NormalMonomial(identity(self.a), (0,) * len(self.a))]: Q(1)}

    def apply(self, letter, v: dict) -> dict:
        table = self.action.get(letter, {})
        out: dict = {}
        for j, c in v.items():
            img = table.get(j)
            if not img:
                continue
            for i, d in img.items():
                x = out.get(i, 0) + c * d
                if x:
                    out[i] = x
                else:
                    out.pop(i, None)
        return out

    def apply_word(self, word, v: dict) -> dict:
        for letter in reversed(word):
            v = self.apply(letter, v)
            if not v:
                break
        return v

    def matrix(self, letter, rows=None, cols=None) -> list:
        """Dense matrix of ``letter`` from block ``cols`` to block ``rows`` (whole column if None)."""
        r0, r1 = self.slices[rows] if rows is not None else (0, self.dim)
        c0, c1 = self.slices[cols] if cols is not None else (0, self.dim)
        M = la.zeros(r1 - r0, c1 - c0)
        table = self.action.get(letter, {})
        for j in range(c0, c1):
            for i, c in table.get(j, {}).items():
                if r0 <= i < r1:
                    M[i - r0][j - c0] = c
        return M

    def word_matrix(self, word, rows=None, cols=None) -> list:
        r0, r1 = self.slices[rows] if rows is not None else (0, self.dim)
        c0, c1 = self.slices[cols] if cols is not None else (0, self.dim)
        M = la.zeros(r1 - r0, c1 - c0)
        for j in range(c0, c1):
            for i, c in self.apply_word(word, {j: Q(1)}).items():
                if r0 <= i < r1:
                    M[i - r0][j - c0] = c
        return M


def _enumerate_column(a, n, params: Params, budget: int):
    pr = params.relation_params()
    rels = defining_relations(n)
    cache: dict = {}

    def relators(b):
        if b not in cache:
            cache[b] = [inst.terms for rel in rels for inst in R.instances(rel, b, pr)]
        return cache[b]

    ve = VectorEnumerator(a, lambda b: letters_for(n, b), relators, lambda L: 3 if L[0] == "y" else 1, budget)
    return ve.run()


def build_column(a, r: int, t: int, params: Params, budget: int = 200_000) -> Column:
    t0 = time.time()
    n = r + t
    res = _enumerate_column(a, n, params, budget)
    enum_action = res.action

    def apply_enum(word):
        v = {0: Q(1)}
        for letter in reversed(word):
            out: dict = {}
            table = enum_action.get(letter, {})
            for j, c in v.items():
                for i, d in table.get(j, {}).items():
                    x = out.get(i, 0) + c * d
                    if x:
                        out[i] = x
                    else:
                        out.pop(i, None)
            v = out
            if not v:
                break
        return v

    seqs = sequences(r, t)
    enum_blocks = {}
    for i, b in enumerate(res.blocks):
        enum_blocks.setdefault(b, []).append(i)
    basis: list = []
    inverse_by_block: dict = {}
    for b in seqs:
        mons = normal_monomials(a, b)
        rows = enum_blocks.get(b, [])
        pos = {i: p for p, i in enumerate(rows)}
        B = la.zeros(len(rows), len(mons))
        for j, mon in enumerate(mons):
            for i, c in apply_enum(mon.word()).items():
                B[pos[i]][j] = c
        if len(rows) != len(mons) or la.rank(B) != len(mons):
            raise ClosureFailure(
                f"block {seq_str(b)}<-{seq_str(a)}: module dimension {len(rows)}, "
                f"monomial rank {la.rank(B) if rows else 0} of {len(mons)}",
                achieved=len(rows),
            )
        inverse_by_block[b] = (rows, pos, la.inverse(B), len(basis))
        basis.extend(mons)
    # action in the monomial basis
    action: dict = {}
    letters = sorted({L for b in seqs for L in letters_for(n, b)})
    for j, mon in enumerate(basis):
        v_enum = apply_enum(mon.word())
        for letter in letters:
            img = {}
            for i, c in v_enum.items():
                for i2, d in enum_action.get(letter, {}).get(i, {}).items():
                    x = img.get(i2, 0) + c * d
                    if x:
                        img[i2] = x
                    else:
                        img.pop(i2, None)
            if not img:
                continue
            tgt = res.blocks[next(iter(img))]
            rows, pos, Binv, off = inverse_by_block[tgt]
            coords = {}
            for p_row in range(len(rows)):
                acc = Q(0)
                row = Binv[p_row]
                for i, c in img.items():
                    x = row[pos[i]]
                    if x:
                        acc += x * c
                if acc:
                    coords[off + p_row] = acc
            if coords:
                action.setdefault(letter, {})[j] = coords
    stats = {"enumerated_dim": res.dim, "vectors_defined": res.defined, "seconds": round(time.time() - t0, 3)}
    return Column(a, basis, action, stats)


# -- the algebra -----------------------------------------------------------------

@dataclass
class CyclotomicAlgebra:
    r: int
    t: int
    params: Params
    columns: dict  # a -> Column

    @property
    def n(self) -> int:
        return self.r + self.t

    @property
    def seqs(self) -> list:
        return sequences(self.r, self.t)

    def column(self, a) -> Column:
        return self.columns[seq(a)]

    def block_dimension(self, b, a) -> int:
        return self.column(a).block_dim(seq(b))

    def reduce(self, word, a) -> dict:
        """Normal form of ``word * 1_a`` as {NormalMonomial: coefficient}."""
        if isinstance(word, str):
            word = parse_word(word)
        col = self.column(a)
        v = col.apply_word(tuple(word), col.unit())
        return {col.basis[i]: c for i, c in sorted(v.items())}

    def element_matrix(self, terms, a, rows=None, cols=None):
        """Matrix of sum(coef * word) on column ``a``."""
        col = self.column(a)
        M = None
        for coef, word in terms:
            W = la.scale(Q(coef) if not isinstance(coef, type(Q(0))) else coef, col.word_matrix(word, rows, cols))
            M = W if M is None else la.add(M, W)
        return M

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        cols = {}
        for a, col in self.columns.items():
            act = {}
            for letter, table in col.action.items():
                act[letter_str(letter)] = [[j, i, rational_to_str(c)] for j, img in sorted(table.items()) for i, c in sorted(img.items())]
            cols[seq_str(a)] = {"basis": [m.to_text() for m in col.basis], "action": act, "stats": col.stats}
        return {"schema_version": SCHEMA_VERSION, "r": self.r, "t": self.t, "params": self.params.to_json(), "columns": cols}

    @classmethod
    def from_json(cls, data: dict) -> "CyclotomicAlgebra":
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError("cache schema mismatch")
        p = data["params"]
        params = Params(p["m"], p["n"], rational_from_str(p["delta"]))
        columns = {}
        for a_str, cd in data["columns"].items():
            basis = [NormalMonomial.from_text(s) for s in cd["basis"]]
            action: dict = {}
            for ls, entries in cd["action"].items():
                table = action.setdefault(parse_letter(ls), {})
                for j, i, c in entries:
                    table.setdefault(j, {})[i] = rational_from_str(c)
            columns[seq(a_str)] = Column(seq(a_str), basis, action, cd.get("stats", {}))
        return cls(data["r"], data["t"], params, columns)


def cache_dir() -> Path:
    return Path(os.environ.get("WBALG_CACHE_DIR", Path.home() / ".cache" / "wbalg"))


def cache_path(r, t, params: Params) -> Path:
    return cache_dir() / f"cyclotomic_r{r}_t{t}_{params.key()}.json"


def build(r: int, t: int, params: Params = DEFAULT_PARAMS, use_cache: bool = True, max_rank: int = MAX_RANK,
          budget: int = 200_000) -> CyclotomicAlgebra:
    if r + t > max_rank:
        raise ValueError(f"r+t = {r + t} exceeds the configured bound {max_rank}")
    if r + t == 0:
        raise ValueError("need at least one strand")
    params.check_assumption(r, t)
    path = cache_path(r, t, params)
    if use_cache and path.exists():
        try:
            return CyclotomicAlgebra.from_json(json.loads(path.read_text()))
        except (ValueError, KeyError):
            pass
    cols = {a: build_column(a, r, t, params, budget) for a in sequences(r, t)}
    alg = CyclotomicAlgebra(r, t, params, cols)
    if use_cache:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps(alg.to_json()))
            tmp.replace(path)
        except OSError:
            pass
    return alg


# -- verification ------------------------------------------------------------------

def verify_relations(alg: CyclotomicAlgebra) -> Report:
    """Every defining relation, as an identity on every basis vector of every column."""
    rep = Report(f"cyclotomic-relations(r={alg.r},t={alg.t})")
    pr = alg.params.relation_params()
    rels = defining_relations(alg.n)
    for a, col in alg.columns.items():
        for rel in rels:
            for b in alg.seqs:
                insts = R.instances(rel, b, pr)
                if not insts:
                    continue
                s, e = col.slices.get(b, (0, 0))
                for inst in insts:
                    bad = 0
                    for j in range(s, e):
                        total: dict = {}
                        for coef, word in inst.terms:
                            for i, c in col.apply_word(word, {j: Q(1)}).items():
                                x = total.get(i, 0) + coef * c
                                if x:
                                    total[i] = x
                                else:
                                    total.pop(i, None)
                        bad += len(total)
                    name = rel.family + (f"[{rel.note}]" if rel.note else "")
                    rep.add(CheckRecord(name, f"{seq_str(b)} in col {seq_str(a)}", list(rel.indices), "pass" if not bad else "fail", bad))
    # orthogonal block idempotents and block-respecting letters
    for a, col in alg.columns.items():
        for letter, table in col.action.items():
            bad = 0
            for j, img in table.items():
                src = col.blocks[j]
                kind, k = letter
                if not R.admissible(kind, k, src):
                    bad += 1
                    continue
                tgt = R.target_of(kind, k, src)
                bad += sum(1 for i in img if col.blocks[i] != tgt)
            rep.add(CheckRecord("Br2", seq_str(a), [letter_str(letter)], "pass" if not bad else "fail", bad))
    rep.data["block_dimensions"] = {
        f"{seq_str(b)}<-{seq_str(a)}": alg.block_dimension(b, a) for a in alg.seqs for b in alg.seqs
    }
    return rep


def expected_block_dimension(r: int, t: int) -> int:
    import math

    return 2 ** (r + t) * math.factorial(r + t)


def check_dimensions(alg: CyclotomicAlgebra) -> Report:
    rep = Report(f"cyclotomic-dimension(r={alg.r},t={alg.t})")
    want = expected_block_dimension(alg.r, alg.t)
    for a in alg.seqs:
        got = alg.block_dimension(a, a)
        rep.add(CheckRecord("dimension", seq_str(a), [got, want], "pass" if got == want else "fail", abs(got - want)))
    return rep


# -- truncation idempotent f ---------------------------------------------------------

@dataclass
class TruncationData:
    """eta_k 1_a as polynomials in y_k and the resulting f 1_a."""

    a: tuple
    eta: list  # eta[k-1] = polynomial (coefficient list) in y_k
    spectra: list  # SpectralData of y_k on 1_a A 1_a

    def polys(self):
        return list(self.eta)


def y_matrix(alg, k, a, b=None):
    """y_k on the block 1_b A 1_a (b defaults to a)."""
    a = seq(a)
    b = a if b is None else seq(b)
    return alg.column(a).matrix(("y", k), rows=b, cols=b)


def truncation(alg: CyclotomicAlgebra, a) -> TruncationData:
    a = seq(a)
    etas, spectra = [], []
    for k in range(1, alg.n + 1):
        sd = spectral_decompose(y_matrix(alg, k, a))
        big = alg.params.beta1(a[k - 1])
        poly: list = []
        for comp in sd.components:
            if comp.eigenvalue != big:
                poly = p_add(poly, comp.poly)
        etas.append(poly)
        spectra.append(sd)
    return TruncationData(a, etas, spectra)


class FTable:
    """Cached f-data and f-matrices for an algebra."""

    def __init__(self, alg: CyclotomicAlgebra):
        self.alg = alg
        self.data = {a: truncation(alg, a) for a in alg.seqs}
        self._mats: dict = {}

    def eta_matrix(self, k, b, col):
        """eta_k 1_b acting on the block-b part of column ``col``."""
        key = ("eta", k, b, col)
        if key not in self._mats:
            Y = self.alg.column(col).matrix(("y", k), rows=b, cols=b)
            self._mats[key] = poly_matrix(self.data[b].eta[k - 1], Y)
        return self._mats[key]

    def f_partial(self, upto, b, col):
        """f_upto 1_b = eta_1 ... eta_upto 1_b on the block-b part of column ``col``."""
        key = ("f", upto, b, col)
        if key not in self._mats:
            s, e = self.alg.column(col).slices[b]
            M = la.eye(e - s)
            for k in range(1, upto + 1):
                M = la.matmul(self.eta_matrix(k, b, col), M)
            self._mats[key] = M
        return self._mats[key]

    def f_block(self, b, col):
        return self.f_partial(self.alg.n, b, col)

    def f_column(self, col, upto=None):
        """Block-diagonal f (or f_upto) on the whole column."""
        upto = self.alg.n if upto is None else upto
        column = self.alg.column(col)
        M = la.zeros(column.dim)
        for b in self.alg.seqs:
            s, e = column.slices[b]
            F = self.f_partial(upto, b, col)
            for i in range(e - s):
                for j in range(e - s):
                    if F[i][j]:
                        M[s + i][s + j] = F[i][j]
        return M


def compute_f(alg: CyclotomicAlgebra, a, table: FTable | None = None):
    """f 1_a as a matrix on 1_a A 1_a."""
    a = seq(a)
    table = table or FTable(alg)
    return table.f_block(a, a)


def check_f(alg: CyclotomicAlgebra, table: FTable | None = None) -> Report:
    """Idempotence, pairwise commuting eta's, rank (r+t)! of f 1_a A 1_a f, and the
    compatibilities e_k f_{k+1} = e_k f_k and s_k f = f s_k."""
    import math

    table = table or FTable(alg)
    rep = Report(f"truncation(r={alg.r},t={alg.t})")
    n = alg.n
    for col in alg.seqs:
        for b in alg.seqs:
            F = table.f_block(b, col)
            rep.add(CheckRecord("f-idempotent", f"{seq_str(b)} in col {seq_str(col)}", [], _st(la.sub(la.matmul(F, F), F)), 0))
            for j in range(1, n + 1):
                for k in range(j + 1, n + 1):
                    Ej, Ek = table.eta_matrix(j, b, col), table.eta_matrix(k, b, col)
                    d = la.sub(la.matmul(Ej, Ek), la.matmul(Ek, Ej))
                    rep.add(CheckRecord("eta-commute", f"{seq_str(b)} in col {seq_str(col)}", [j, k], _st(d), 0))
    ranks = {}
    for a in alg.seqs:
        rk = two_sided_rank(alg, table, a, a)
        ranks[seq_str(a)] = rk
        want = math.factorial(n)
        rep.add(CheckRecord("f-rank", seq_str(a), [rk, want], "pass" if rk == want else "fail", abs(rk - want)))
    rep.data["f_block_dimensions"] = ranks
    # e_k f_{k+1} 1_b = e_k f_k 1_b ; s_k f 1_b = f s_k 1_b (on every column)
    for col in alg.seqs:
        column = alg.column(col)
        for b in alg.seqs:
            for k in range(1, n):
                if R.admissible("e", k, b):
                    Ek = column.matrix(("e", k), rows=b, cols=b)
                    d = la.sub(la.matmul(Ek, table.f_partial(k + 1, b, col)), la.matmul(Ek, table.f_partial(k, b, col)))
                    rep.add(CheckRecord("e_k f_{k+1} = e_k f_k", f"{seq_str(b)} in col {seq_str(col)}", [k], _st(d), 0))
                if R.admissible("s", k, b):
                    Sk = column.matrix(("s", k), rows=b, cols=b)
                    F = table.f_block(b, col)
                    d = la.sub(la.matmul(Sk, F), la.matmul(F, Sk))
                    rep.add(CheckRecord("s_k f = f s_k", f"{seq_str(b)} in col {seq_str(col)}", [k], _st(d), 0))
    return rep


def _st(M) -> str:
    return "pass" if la.is_zero(M) else "fail"


def _right_f_subspace(alg, table, col):
    """Basis (as columns of a dense matrix) of A 1_col f inside column ``col``: the
    left submodule generated by the vector f 1_col."""
    column = alg.column(col)
    s, e = column.slices[col]
    F = table.f_block(col, col)
    u = column.unit()
    (j0, _), = u.items()
    start = {s + i: F[i][j0 - s] for i in range(e - s) if F[i][j0 - s]}
    span = la.SpanBuilder(column.dim)
    vecs = []
    queue = deque([start])
    letters = sorted({L for b in alg.seqs for L in letters_for(alg.n, b)})
    while queue:
        v = queue.popleft()
        dense = [v.get(i, Q(0)) for i in range(column.dim)]
        if not span.add(dense):
            continue
        vecs.append(v)
        for L in letters:
            w = column.apply(L, v)
            if w:
                queue.append(w)
    return vecs


def two_sided_rank(alg, table, b, a) -> int:
    """dim f 1_b A 1_a f."""
    b, a = seq(b), seq(a)
    column = alg.column(a)
    vecs = _right_f_subspace(alg, table, a)
    s, e = column.slices[b]
    F = table.f_block(b, a)
    imgs = []
    for v in vecs:
        part = [v.get(s + i, Q(0)) for i in range(e - s)]
        imgs.append(la.matvec(F, part))
    return la.rank(imgs) if imgs else 0


# -- spectra -----------------------------------------------------------------------

def joint_spectrum(mats, restrict=None) -> dict:
    """{eigenvalue tuple: dimension} of the joint generalized eigenspaces of
    commuting exact matrices, optionally on the image of an idempotent."""
    n = len(mats[0])
    start = restrict if restrict is not None else la.eye(n)
    pieces = [((), start)]
    for M in mats:
        sd = spectral_decompose(M)
        nxt = []
        for key, P in pieces:
            for comp in sd.components:
                PP = la.matmul(comp.matrix, P)
                if not la.is_zero(PP):
                    nxt.append((key + (comp.eigenvalue,), PP))
        pieces = nxt
    return {key: la.rank(P) for key, P in pieces}


def eigen_cross_check(alg: CyclotomicAlgebra, a=None, table: FTable | None = None) -> Report:
    """Joint spectra of (y_1..y_n) on every block vs. 4-Young path predictions."""
    from .young4 import predicted_spectrum

    table = table or FTable(alg)
    rep = Report(f"eigen-crosscheck(r={alg.r},t={alg.t})")
    cols = [seq(a)] if a is not None else alg.seqs
    details = {}
    for col in cols:
        column = alg.column(col)
        for b in alg.seqs:
            Ys = [column.matrix(("y", k), rows=b, cols=b) for k in range(1, alg.n + 1)]
            got = joint_spectrum(Ys)
            want = predicted_spectrum(b, col, alg.params)
            tag = f"{seq_str(b)}<-{seq_str(col)}"
            rep.add(CheckRecord("spectrum", tag, [], "pass" if _same(got, want) else "fail", 0, _diff(got, want)))
            F = table.f_block(b, col)
            got_f = joint_spectrum(Ys, restrict=F)
            want_f = predicted_spectrum(b, col, alg.params, left_small=True)
            rep.add(CheckRecord("f-image-spectrum", tag, [], "pass" if _same(got_f, want_f) else "fail", 0, _diff(got_f, want_f)))
            # f carries exactly the small eigenvalues: kernel side has no all-small tuple
            ker = la.sub(la.eye(len(F)), F)
            got_k = joint_spectrum(Ys, restrict=ker)
            small = {key for key in got_f}
            leak = [k for k in got_k if k in small]
            rep.add(CheckRecord("f-kernel-large", tag, [], "pass" if not leak else "fail", len(leak)))
            details[tag] = {",".join(rational_to_str(x) for x in k): v for k, v in sorted(got.items())}
    rep.data["spectra"] = details
    return rep


def _same(got: dict, want: dict) -> bool:
    return {k: v for k, v in got.items() if v} == {k: v for k, v in want.items() if v}


def _diff(got, want) -> str:
    if _same(got, want):
        return ""
    keys = set(got) | set(want)
    bad = [f"{tuple(map(rational_to_str, k))}: got {got.get(k, 0)} want {want.get(k, 0)}" for k in keys if got.get(k, 0) != want.get(k, 0)]
    return "; ".join(sorted(bad))


def eigenspace_checks(alg: CyclotomicAlgebra) -> Report:
    """Generalized-eigenspace behaviour of s_k, ŝ_k, e_k, ê_k and propagation of
    proper eigenvalues, on every column."""
    rep = Report(f"eigenspace-behaviour(r={alg.r},t={alg.t})")
    n = alg.n
    for col in alg.seqs:
        column = alg.column(col)
        proj = {}
        for b in alg.seqs:
            Ys = [column.matrix(("y", k), rows=b, cols=b) for k in range(1, n + 1)]
            proj[b] = _joint_projectors(Ys)
            proj[b, "Y"] = Ys
        for b in alg.seqs:
            for k in range(1, n):
                sb = tuple(b[: k - 1]) + (b[k], b[k - 1]) + tuple(b[k + 1:])
                for key, P in proj[b].items():
                    swapped = key[: k - 1] + (key[k], key[k - 1]) + key[k + 1:]
                    ssum = key[k - 1] + key[k]
                    if R.admissible("s", k, b):
                        S = column.matrix(("s", k), rows=b, cols=b)
                        allowed = _sum_proj([proj[b].get(key), proj[b].get(swapped)] if swapped != key else [proj[b].get(key)], len(S))
                        d = la.sub(la.matmul(allowed, la.matmul(S, P)), la.matmul(S, P))
                        rep.add(CheckRecord("s_k eigenspaces", f"{seq_str(b)} in col {seq_str(col)}", [k], _st(d), 0))
                        continue
                    for kind in ("e", "eh", "sh"):
                        tgt = b if kind == "e" else sb
                        G = column.matrix((kind, k), rows=tgt, cols=b)
                        GP = la.matmul(G, P)
                        if ssum != 0:
                            if kind in ("e", "eh"):
                                rep.add(CheckRecord(f"{kind}_k kills i_k+i_k+1 != 0", f"{seq_str(b)} in col {seq_str(col)}", [k], _st(GP), 0))
                            else:
                                target_P = proj[tgt].get(swapped)
                                ok = target_P is not None and la.is_zero(la.sub(la.matmul(target_P, GP), GP))
                                ok = ok or la.is_zero(GP)
                                rep.add(CheckRecord("sh_k swaps eigenspaces", f"{seq_str(b)} in col {seq_str(col)}", [k], "pass" if ok else "fail", 0))
                        else:
                            allowed_keys = [kk for kk in proj[tgt] if all(kk[j] == key[j] for j in range(n) if j not in (k - 1, k)) and kk[k - 1] + kk[k] == 0]
                            allowed = _sum_proj([proj[tgt][kk] for kk in allowed_keys], len(G))
                            d = la.sub(la.matmul(allowed, GP), GP)
                            rep.add(CheckRecord(f"{kind}_k into i_k+i_k+1 = 0", f"{seq_str(b)} in col {seq_str(col)}", [k], _st(d), 0))
                # proper-eigenvalue propagation
                for key, P in proj[b].items():
                    ik, ik1 = key[k - 1], key[k]
                    swapped = key[: k - 1] + (ik1, ik) + key[k + 1:]
                    if b[k - 1] == b[k]:
                        if ik1 in (ik, ik + 1, ik - 1):
                            continue
                        other = proj[b].get(swapped)
                        Yk = proj[b, "Y"][k - 1]
                    else:
                        if ik + ik1 == 0:
                            continue
                        other = proj[sb].get(swapped)
                        Yk = proj[sb, "Y"][k - 1]
                    if other is None:
                        hyp = True
                    else:
                        hyp = la.is_zero(la.matmul(_shift(Yk, ik1), other))
                    if not hyp:
                        continue
                    concl = la.matmul(_shift(proj[b, "Y"][k], ik1), P)
                    rep.add(CheckRecord("proper eigenvalue propagation", f"{seq_str(b)} in col {seq_str(col)}", [k], _st(concl), 0))
    return rep


def _shift(Y, c):
    return [[x - (c if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(Y)]


def _sum_proj(ps, n):
    M = la.zeros(n)
    for P in ps:
        if P is not None:
            M = la.add(M, P)
    return M


def _joint_projectors(Ys) -> dict:
    n = len(Ys[0])
    pieces = [((), la.eye(n))]
    for M in Ys:
        sd = spectral_decompose(M)
        nxt = []
        for key, P in pieces:
            for comp in sd.components:
                PP = la.matmul(comp.matrix, P)
                if not la.is_zero(PP):
                    nxt.append((key + (comp.eigenvalue,), PP))
        pieces = nxt
    return dict(pieces)
