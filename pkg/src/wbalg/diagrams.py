"""Oriented Brauer diagrams, their concatenation and enumeration.

Endpoints are numbered internally as ``0..n-1`` for the bottom row and
``n..2n-1`` for the top row; the public text format uses ``B1..Bn`` and
``T1..Tn``.  The product convention is ``upper * lower`` (upper stacked on
top), so a diagram ``X 1_a`` has bottom sequence ``a``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache

UP = "∧"
DOWN = "∨"
ARROWS = (UP, DOWN)

# ASCII aliases accepted by the parser
_ALIASES = {"^": UP, "u": UP, "U": UP, "v": DOWN, "d": DOWN, "D": DOWN, UP: UP, DOWN: DOWN}


class OrientationError(ValueError):
    pass


class CompositionError(ValueError):
    pass


def seq(s) -> tuple:
    """Parse ``"∧∧∨"`` / ``"^^v"`` / iterable of arrows into a tuple."""
    if isinstance(s, str):
        return tuple(_ALIASES[c] for c in s if not c.isspace())
    out = tuple(s)
    for c in out:
        if c not in ARROWS:
            raise ValueError(f"bad arrow {c!r}")
    return out


def seq_str(a) -> str:
    return "".join(a)


def sequences(r: int, t: int) -> list[tuple]:
    """All (r,t)-sequences in lexicographic order (UP before DOWN)."""
    n = r + t
    out = []
    for ups in itertools.combinations(range(n), r):
        out.append(tuple(UP if i in ups else DOWN for i in range(n)))
    out.sort(key=lambda a: tuple(0 if c == UP else 1 for c in a))
    return out


def swap(a: tuple, k: int) -> tuple:
    """s_k a (1-based k)."""
    b = list(a)
    b[k - 1], b[k] = b[k], b[k - 1]
    return tuple(b)


def rt_of(a) -> tuple[int, int]:
    return sum(1 for c in a if c == UP), sum(1 for c in a if c == DOWN)


@dataclass(frozen=True)
class OrientedDiagram:
    source: tuple  # bottom row
    target: tuple  # top row
    partner: tuple  # involution on 0..2n-1 without fixed points

    @property
    def n(self) -> int:
        return len(self.source)

    def validate(self) -> None:
        n = self.n
        if len(self.target) != n or len(self.partner) != 2 * n:
            raise OrientationError("size mismatch")
        cups = caps = 0
        for i, j in enumerate(self.partner):
            if self.partner[j] != i or i == j:
                raise OrientationError("pairing is not a perfect matching")
            if i > j:
                continue
            if j < n:  # bottom arc
                caps += 1
                if self.source[i] == self.source[j]:
                    raise OrientationError("bottom arc joins equal arrows")
            elif i >= n:  # top arc
                cups += 1
                if self.target[i - n] == self.target[j - n]:
                    raise OrientationError("top arc joins equal arrows")
            elif self.source[i] != self.target[j - n]:
                raise OrientationError("through strand changes orientation")
        if cups != caps:
            raise OrientationError("unequal numbers of top and bottom arcs")

    def pairs(self) -> list[tuple[str, str]]:
        n = self.n

        def name(p):
            return f"B{p + 1}" if p < n else f"T{p - n + 1}"

        def key(p):
            return (0, p) if p < n else (1, p - n)

        out = []
        for i, j in enumerate(self.partner):
            if i < j:
                out.append((name(i), name(j)))
        out.sort(key=lambda pq: (key(_parse_end(pq[0], n)), key(_parse_end(pq[1], n))))
        return out

    def to_text(self) -> str:
        ps = "".join(f"({p},{q})" for p, q in self.pairs())
        return f"a={seq_str(self.source)} ; b={seq_str(self.target)} ; pairs={ps}"

    __str__ = to_text

    def through_strands(self) -> list[tuple[int, int]]:
        """(bottom index, top index), 1-based."""
        n = self.n
        return [(i + 1, self.partner[i] - n + 1) for i in range(n) if self.partner[i] >= n]

    def top_arcs(self) -> list[tuple[int, int]]:
        n = self.n
        return sorted((i - n + 1, j - n + 1) for i, j in enumerate(self.partner) if n <= i < j)

    def bottom_arcs(self) -> list[tuple[int, int]]:
        return sorted((i + 1, j + 1) for i, j in enumerate(self.partner) if i < j < self.n)

    def propagating_number(self) -> int:
        return len(self.through_strands())


def _parse_end(tok: str, n: int) -> int:
    side, idx = tok[0], int(tok[1:]) - 1
    if not 0 <= idx < n:
        raise ValueError(f"endpoint {tok} out of range")
    return idx if side == "B" else n + idx


_TEXT = re.compile(r"a=(?P<a>[^;]+);\s*b=(?P<b>[^;]+);\s*pairs=(?P<p>.*)")


def from_text(text: str) -> OrientedDiagram:
    m = _TEXT.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse diagram {text!r}")
    a, b = seq(m.group("a")), seq(m.group("b"))
    n = len(a)
    partner = [None] * (2 * n)
    for p, q in re.findall(r"\((\w+),(\w+)\)", m.group("p")):
        i, j = _parse_end(p, n), _parse_end(q, n)
        partner[i], partner[j] = j, i
    if any(x is None for x in partner):
        raise ValueError("incomplete pairing")
    d = OrientedDiagram(a, b, tuple(partner))
    d.validate()
    return d


def identity(a) -> OrientedDiagram:
    a = seq(a)
    n = len(a)
    return OrientedDiagram(a, a, tuple([n + i for i in range(n)] + list(range(n))))


GENERATOR_KINDS = ("Id", "S", "Shat", "E", "Ehat")


@lru_cache(maxsize=None)
def generator(kind: str, k: int | None, a) -> OrientedDiagram:
    """Diagram of ``kind`` (Id, S, Shat, E, Ehat) at position k applied on ``a``."""
    a = seq(a)
    n = len(a)
    if kind == "Id":
        return identity(a)
    if k is None or not 1 <= k < n:
        raise OrientationError(f"index k={k} outside 1..{n - 1}")
    i = k - 1
    same = a[i] == a[i + 1]
    if kind == "S" and not same:
        raise OrientationError(f"s_{k} needs a_k = a_(k+1), got {seq_str(a)}")
    if kind in ("Shat", "E", "Ehat") and same:
        raise OrientationError(f"{kind}_{k} needs a_k != a_(k+1), got {seq_str(a)}")
    partner = [n + j for j in range(n)] + list(range(n))
    if kind in ("S", "Shat"):
        partner[i], partner[i + 1] = n + i + 1, n + i
        partner[n + i], partner[n + i + 1] = i + 1, i
        target = a if kind == "S" else swap(a, k)
    elif kind in ("E", "Ehat"):
        partner[i], partner[i + 1] = i + 1, i
        partner[n + i], partner[n + i + 1] = n + i + 1, n + i
        target = a if kind == "E" else swap(a, k)
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    d = OrientedDiagram(a, target, tuple(partner))
    d.validate()
    return d


def compose(upper: OrientedDiagram, lower: OrientedDiagram) -> tuple[OrientedDiagram, int]:
    """Stack ``upper`` on top of ``lower``; return the diagram and the loop count."""
    if lower.target != upper.source:
        raise CompositionError(
            f"boundary mismatch: {seq_str(lower.target)} vs {seq_str(upper.source)}"
        )
    return _compose(upper.partner, lower.partner, lower.source, upper.target)


@lru_cache(maxsize=200_000)
def _compose(up: tuple, lo: tuple, src: tuple, tgt: tuple):
    n = len(src)
    # outer endpoints: lower bottom i -> ('L', i), upper top j -> ('U', n + j)
    result = [None] * (2 * n)
    seen_mid = [False] * n

    def follow(layer, p):
        # p is an endpoint index in `layer`'s own numbering; walk until an outer endpoint
        while True:
            if layer == "L":
                q = lo[p]
                if q < n:
                    return q  # lower bottom
                mid = q - n
                seen_mid[mid] = True
                layer, p = "U", mid
            else:
                q = up[p]
                if q >= n:
                    return q  # upper top, already in outer numbering n..2n-1
                mid = q
                seen_mid[mid] = True
                layer, p = "L", n + mid

    for i in range(n):
        if result[i] is None:
            j = follow("L", i)
            result[i], result[j] = j, i
    for j in range(n, 2 * n):
        if result[j] is None:
            k = follow("U", j)
            result[j], result[k] = k, j
    loops = 0
    for m in range(n):
        if seen_mid[m]:
            continue
        loops += 1
        # walk the closed loop through the middle row
        p = m
        while not seen_mid[p]:
            seen_mid[p] = True
            q = up[p]  # upper bottom p -> upper bottom q (must be an arc)
            seen_mid[q] = True
            p = lo[n + q] - n  # lower top q -> lower top
    return OrientedDiagram(src, tgt, tuple(result)), loops


@lru_cache(maxsize=None)
def enumerate_diagrams(a, b) -> tuple[OrientedDiagram, ...]:
    """All oriented diagrams with bottom ``a`` and top ``b``.

    A strand starts at a bottom UP or a top DOWN and ends at a top UP or a
    bottom DOWN, so diagrams are bijections starts -> ends.
    """
    a, b = seq(a), seq(b)
    n = len(a)
    if len(b) != n or rt_of(a) != rt_of(b):
        return ()
    starts = [i for i in range(n) if a[i] == UP] + [n + j for j in range(n) if b[j] == DOWN]
    ends = [n + j for j in range(n) if b[j] == UP] + [i for i in range(n) if a[i] == DOWN]
    out = []
    for perm in itertools.permutations(ends):
        partner = [None] * (2 * n)
        for s, e in zip(starts, perm):
            partner[s], partner[e] = e, s
        d = OrientedDiagram(a, b, tuple(partner))
        out.append(d)
    out.sort(key=lambda d: d.partner)
    return tuple(out)


def expected_count(r: int, t: int) -> int:
    return math.factorial(r + t)
