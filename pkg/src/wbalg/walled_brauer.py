"""The walled Brauer algebra as linear combinations of oriented diagrams."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import gmpy2

from . import relations as R
from .diagrams import (
    OrientedDiagram,
    compose,
    enumerate_diagrams,
    generator,
    identity,
    sequences,
    seq,
)
from .scalars import DeltaPoly, rational


_KIND = {"s": "S", "sh": "Shat", "e": "E", "eh": "Ehat"}


def _zero_like(c):
    return not c


class AlgebraElement:
    """Finite linear combination of oriented diagrams.

    ``loop`` is the value of a closed circle: a :class:`DeltaPoly` (formal
    delta) or a rational.  Zero coefficients are never stored.
    """

    __slots__ = ("terms", "loop")

    def __init__(self, terms=None, loop=None):
        self.loop = DeltaPoly.delta() if loop is None else loop
        self.terms: dict[OrientedDiagram, object] = {}
        if terms:
            for d, c in terms.items():
                if c:
                    self.terms[d] = c

    @classmethod
    def from_diagram(cls, d: OrientedDiagram, coef=1, loop=None) -> "AlgebraElement":
        el = cls(loop=loop)
        c = _coef(coef, el.loop)
        if c:
            el.terms[d] = c
        return el

    def copy(self):
        return AlgebraElement(dict(self.terms), self.loop)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if type(self.loop) is not type(other.loop) or self.loop != other.loop:
            raise TypeError("elements over different loop parameters")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            v = out.get(d, 0) + c
            if v:
                out[d] = v
            else:
                out.pop(d, None)
        return AlgebraElement._raw(out, self.loop)

    def __neg__(self):
        return AlgebraElement._raw({d: -c for d, c in self.terms.items()}, self.loop)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _coef(c, self.loop)
        if not c:
            return AlgebraElement(loop=self.loop)
        return AlgebraElement._raw({d: v * c for d, v in self.terms.items()}, self.loop)

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    @classmethod
    def _raw(cls, terms, loop):
        el = cls.__new__(cls)
        el.terms = terms
        el.loop = loop
        return el

    def block(self, b, a) -> "AlgebraElement":
        """1_b · X · 1_a."""
        b, a = seq(b), seq(a)
        return AlgebraElement._raw(
            {d: c for d, c in self.terms.items() if d.source == a and d.target == b}, self.loop
        )

    def blocks(self) -> set:
        return {(d.target, d.source) for d in self.terms}

    def coefficient(self, d):
        return self.terms.get(d, 0)

    def to_json(self):
        out = []
        for d in sorted(self.terms, key=lambda d: (d.source, d.target, d.partner)):
            c = self.terms[d]
            out.append({"diagram": d.to_text(), "coef": _coef_json(c)})
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*[{d.to_text()}]" for d, c in self.terms.items())


def _coef(c, loop):
    if isinstance(loop, DeltaPoly):
        return c if isinstance(c, DeltaPoly) else DeltaPoly.const(c)
    return rational(c) if not isinstance(c, DeltaPoly) else c


def _coef_json(c):
    if isinstance(c, DeltaPoly):
        return c.to_list()
    return str(c)


def _loop_power(loop, k, cache={}):
    key = (loop, k)
    v = cache.get(key)
    if v is None:
        v = loop**k if not isinstance(loop, DeltaPoly) else loop**k
        cache[key] = v
    return v


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """x·y with x stacked above y; mismatched blocks contribute zero."""
    x._check(y)
    loop = x.loop
    by_target: dict[tuple, list] = {}
    for d, c in y.terms.items():
        by_target.setdefault(d.target, []).append((d, c))
    out: dict = {}
    for du, cu in x.terms.items():
        for dl, cl in by_target.get(du.source, ()):
            d, loops = compose(du, dl)
            c = cu * cl
            if loops:
                c = c * _loop_power(loop, loops)
            v = out.get(d)
            v = c if v is None else v + c
            if v:
                out[d] = v
            else:
                out.pop(d, None)
    return AlgebraElement._raw(out, loop)


@dataclass
class BrauerAlgebra:
    """Br_{r,t}(loop) with generator and Jucys-Murphy constructors."""

    r: int
    t: int
    loop: object = field(default_factory=DeltaPoly.delta)

    def __post_init__(self):
        if isinstance(self.loop, (int,)) or type(self.loop).__name__ in ("mpq", "Fraction", "str"):
            self.loop = rational(self.loop)
        self.n = self.r + self.t
        self.seqs = sequences(self.r, self.t)
        self._jm = {}

    # -- elements ---------------------------------------------------------
    def zero(self):
        return AlgebraElement(loop=self.loop)

    def one(self) -> AlgebraElement:
        return AlgebraElement({identity(a): self._c(1) for a in self.seqs}, self.loop)

    def idem(self, a) -> AlgebraElement:
        return AlgebraElement.from_diagram(identity(seq(a)), 1, self.loop)

    def _c(self, x):
        return _coef(x, self.loop)

    def gen(self, kind: str, k: int, a=None) -> AlgebraElement:
        """s/sh/e/eh at k, either on one block ``a`` or summed over all blocks."""
        blocks = [seq(a)] if a is not None else self.seqs
        out = {}
        for b in blocks:
            if R.admissible(kind, k, b):
                out[generator(_KIND[kind], k, b)] = self._c(1)
        return AlgebraElement(out, self.loop)

    def diagram(self, d) -> AlgebraElement:
        return AlgebraElement.from_diagram(d, 1, self.loop)

    def word(self, word, a) -> AlgebraElement:
        """Concrete word (algebra order) applied to block ``a``; zero if inadmissible."""
        el = self.idem(a)
        for kind, k in reversed(word):
            if kind == "y":
                el = multiply(self.jucys_murphy(k), el)
            else:
                el = multiply(self.gen(kind, k), el)
            if el.is_zero():
                return el
        return el

    def basis(self, a, b):
        return enumerate_diagrams(seq(a), seq(b))

    # -- Jucys-Murphy -----------------------------------------------------
    def jucys_murphy(self, k: int) -> AlgebraElement:
        if not 1 <= k <= self.n:
            raise IndexError(f"JM index {k} outside 1..{self.n}")
        if k in self._jm:
            return self._jm[k]
        if k == 1:
            xi = self.zero()
        else:
            prev = self.jucys_murphy(k - 1)
            j = k - 1
            xi = self.zero()
            for a in self.seqs:
                one_a = self.idem(a)
                if a[j - 1] == a[j]:
                    s = self.gen("s", j, a)
                    term = multiply(self.gen("s", j), multiply(prev, s)) + s
                else:
                    # xi_{k} 1_{s a'} with a' = s_j a, i.e. 1_a here
                    sh = self.gen("sh", j, a)
                    term = multiply(self.gen("sh", j), multiply(prev, sh)) - multiply(self.gen("e", j), one_a)
                xi = xi + term
        self._jm[k] = xi
        return xi


# ---------------------------------------------------------------------------
# Reports


@dataclass
class CheckRecord:
    relation: str
    orientation: str
    indices: list
    status: str
    lhs_minus_rhs_term_count: int
    detail: str = ""

    def to_json(self):
        d = {
            "relation": self.relation,
            "orientation": self.orientation,
            "indices": self.indices,
            "status": self.status,
            "lhs_minus_rhs_term_count": self.lhs_minus_rhs_term_count,
        }
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class Report:
    name: str
    records: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.status in ("pass", "not applicable") for r in self.records)

    def add(self, rec):
        self.records.append(rec)

    def failures(self):
        return [r for r in self.records if r.status not in ("pass", "not applicable")]

    def to_json(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": len(self.records),
            "failures": [r.to_json() for r in self.failures()],
            "families": sorted({r.relation for r in self.records}),
            "data": self.data,
        }


def evaluate_instance(alg: BrauerAlgebra, inst: R.RelationInstance) -> AlgebraElement:
    total = alg.zero()
    for c, w in inst.terms:
        total = total + alg.word(w, inst.source).scale(c)
    return total


def presentation_relations(n: int):
    return R.walled_brauer_relations(n) + R.reidemeister_relations(n) + R.braid_variant_relations(n)


def verify_presentation(r: int, t: int, loop=None, max_n: int = 4) -> Report:
    """Check (Br1)-(Br6), the Reidemeister forms and the braid variants by diagram composition."""
    if r + t > max_n:
        raise ValueError(f"r+t = {r + t} exceeds the configured bound {max_n}")
    alg = BrauerAlgebra(r, t, DeltaPoly.delta() if loop is None else loop)
    rep = Report(f"presentation(r={r},t={t})")
    params = R.with_negatives({"delta": alg.loop})
    # (Br1): orthogonal idempotents summing to 1
    for a in alg.seqs:
        for b in alg.seqs:
            prod = multiply(alg.idem(a), alg.idem(b))
            want = alg.idem(a) if a == b else alg.zero()
            diff = prod - want
            rep.add(CheckRecord("Br1", "".join(a) + "|" + "".join(b), [], _status(diff), len(diff.terms)))
    total = alg.zero()
    for a in alg.seqs:
        total = total + alg.idem(a)
    diff = total - alg.one()
    rep.add(CheckRecord("Br1", "sum", [], _status(diff), len(diff.terms)))
    # (Br2): block structure of generators; inadmissible choices vanish
    for a in alg.seqs:
        for kind in ("s", "sh", "e", "eh"):
            for k in range(1, alg.n):
                g = alg.gen(kind, k, a)
                if not R.admissible(kind, k, a):
                    rep.add(CheckRecord("Br2", "".join(a), [k], _status(g), len(g.terms), f"{kind} vanishes"))
                    continue
                tgt = R.target_of(kind, k, a)
                right = multiply(g, alg.idem(a)) - g
                left = multiply(alg.idem(tgt), g) - g
                rep.add(CheckRecord("Br2", "".join(a), [k], _status(right, left), len(right.terms) + len(left.terms), kind))
                for c in alg.seqs:
                    if c != tgt:
                        z = multiply(alg.idem(c), g)
                        if not z.is_zero():
                            rep.add(CheckRecord("Br2", "".join(a), [k], "fail", len(z.terms), f"{kind} leaks to {''.join(c)}"))
    for rel in presentation_relations(alg.n):
        for a in alg.seqs:
            for inst in R.instances(rel, a, params):
                diff = evaluate_instance(alg, inst)
                name = rel.family + (f"[{rel.note}]" if rel.note else "")
                rep.add(CheckRecord(name, "".join(a), list(rel.indices), _status(diff), len(diff.terms)))
    rep.data["block_dimension"] = math.factorial(alg.n)
    return rep


def _status(*diffs) -> str:
    return "pass" if all(d.is_zero() for d in diffs) else "fail"


def check_jm_commutativity(r: int, t: int, loop=None) -> Report:
    alg = BrauerAlgebra(r, t, DeltaPoly.delta() if loop is None else loop)
    rep = Report(f"jm-commutativity(r={r},t={t})")
    xs = [alg.jucys_murphy(k) for k in range(1, alg.n + 1)]
    for j in range(alg.n):
        for k in range(alg.n):
            diff = multiply(xs[j], xs[k]) - multiply(xs[k], xs[j])
            rep.add(CheckRecord("JM-commute", "all", [j + 1, k + 1], _status(diff), len(diff.terms)))
    for k, x in enumerate(xs, start=1):
        for (tgt, src) in x.blocks():
            if tgt != src:
                rep.add(CheckRecord("JM-block-diagonal", "".join(src), [k], "fail", 1))
    return rep


def jucys_murphy(k: int, r: int, t: int, loop=None) -> AlgebraElement:
    return BrauerAlgebra(r, t, DeltaPoly.delta() if loop is None else loop).jucys_murphy(k)


def block_dimensions(r: int, t: int) -> dict:
    seqs = sequences(r, t)
    return {("".join(b), "".join(a)): len(enumerate_diagrams(a, b)) for a in seqs for b in seqs}


ZERO = gmpy2.mpq(0)
