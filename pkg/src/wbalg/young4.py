"""4-Young diagrams, their contents and weights, and the path sets they index.

The strip has ``m + n`` columns numbered ``m+n, ..., 1`` from left to right; the
wall ``v`` sits between columns ``m+1`` and ``m``, the line ``o`` is horizontal.
Each of the four regions holds an ordinary partition; placement is realised in
the column map and in the content shift only:

=============  ==========  ====================  ===========
region         side of o   strip column of col c  shift
=============  ==========  ====================  ===========
outer_below    below       m + n - c             beta1(DOWN)
inner_above    above       m + 1 + c             beta2(UP)
inner_below    below       m - c                 beta2(DOWN)
outer_above    above       1 + c                 beta1(UP)
=============  ==========  ====================  ===========
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from functools import lru_cache

from .diagrams import DOWN, UP, seq
from .params import AssumptionViolation, Params
from .scalars import rational, rational_to_str

REGIONS = ("outer_below", "inner_above", "inner_below", "outer_above")
ABOVE = {"inner_above": True, "outer_above": True, "inner_below": False, "outer_below": False}
MIDDLE = {"inner_above", "inner_below"}


class InvalidRegion(ValueError):
    pass


def _shift(region: str, params: Params):
    if region == "outer_below":
        return params.beta1(DOWN)
    if region == "inner_above":
        return params.beta2(UP)
    if region == "inner_below":
        return params.beta2(DOWN)
    if region == "outer_above":
        return params.beta1(UP)
    raise InvalidRegion(region)


def content(region: str, row: int, col: int, params: Params):
    """row - col of the box in its own (unrotated) diagram, plus the region shift."""
    return rational(row - col) + _shift(region, params)


def strip_column(region: str, col: int, m: int, n: int) -> int:
    if region == "outer_below":
        return m + n - col
    if region == "inner_above":
        return m + 1 + col
    if region == "inner_below":
        return m - col
    if region == "outer_above":
        return 1 + col
    raise InvalidRegion(region)


def conjugate(part: tuple) -> tuple:
    if not part:
        return ()
    return tuple(sum(1 for x in part if x > c) for c in range(part[0]))


def is_partition(part) -> bool:
    return all(x > 0 for x in part) and all(a >= b for a, b in zip(part, part[1:]))


@dataclass(frozen=True)
class FourYoungDiagram:
    m: int
    n: int
    outer_below: tuple = ()
    inner_above: tuple = ()
    inner_below: tuple = ()
    outer_above: tuple = ()

    def region(self, name: str) -> tuple:
        if name not in REGIONS:
            raise InvalidRegion(name)
        return getattr(self, name)

    def with_region(self, name: str, part: tuple) -> "FourYoungDiagram":
        kw = {r: self.region(r) for r in REGIONS}
        kw[name] = tuple(part)
        return FourYoungDiagram(self.m, self.n, **kw)

    def is_valid(self) -> bool:
        if not all(is_partition(self.region(r)) for r in REGIONS):
            return False
        width = {r: (self.region(r)[0] if self.region(r) else 0) for r in REGIONS}
        # no strip column may hold boxes on both sides of o
        if width["inner_above"] + width["outer_below"] > self.n:
            return False
        if width["inner_below"] + width["outer_above"] > self.m:
            return False
        return True

    def size(self) -> int:
        return sum(sum(self.region(r)) for r in REGIONS)

    def weight(self) -> tuple:
        """(b_1, ..., b_{m+n}): signed column heights."""
        b = [0] * (self.m + self.n)
        for r in REGIONS:
            sign = 1 if ABOVE[r] else -1
            for c, h in enumerate(conjugate(self.region(r))):
                b[strip_column(r, c, self.m, self.n) - 1] += sign * h
        return tuple(b)

    def boxes(self):
        for r in REGIONS:
            for row, length in enumerate(self.region(r)):
                for col in range(length):
                    yield r, row, col


def weight(Y: FourYoungDiagram) -> tuple:
    return Y.weight()


def weight_str(w: tuple) -> str:
    terms = [f"{c:+d}e{j + 1}" for j, c in enumerate(w) if c]
    return " ".join(terms) if terms else "0"


def addable(part: tuple):
    """Boxes (row, col) that can be added to a partition."""
    out = []
    for i in range(len(part) + 1):
        cur = part[i] if i < len(part) else 0
        if i == 0 or part[i - 1] > cur:
            out.append((i, cur))
    return out


def removable(part: tuple):
    return [(i, part[i] - 1) for i in range(len(part)) if i == len(part) - 1 or part[i] > part[i + 1]]


def _add(part, row):
    p = list(part)
    if row == len(p):
        p.append(1)
    else:
        p[row] += 1
    return tuple(p)


def _remove(part, row):
    p = list(part)
    p[row] -= 1
    return tuple(x for x in p if x)


@dataclass(frozen=True)
class Move:
    action: str  # "add" | "remove"
    region: str
    box: tuple  # (row, col)
    content: object
    sign: int

    @property
    def eigenvalue(self):
        return self.sign * self.content

    @property
    def small(self) -> bool:
        return self.region in MIDDLE


@dataclass(frozen=True)
class FourYoungPath:
    orientation: tuple
    steps: tuple  # Y_0, ..., Y_{r+t}
    moves: tuple

    @property
    def end(self) -> FourYoungDiagram:
        return self.steps[-1]

    @property
    def eigenvalues(self) -> tuple:
        return tuple(mv.eigenvalue for mv in self.moves)

    @property
    def small_flags(self) -> tuple:
        return tuple(mv.small for mv in self.moves)

    @property
    def is_small(self) -> bool:
        return all(self.small_flags)


def _moves(Y: FourYoungDiagram, arrow: str, params: Params):
    above_add = arrow == UP
    for r in REGIONS:
        part = Y.region(r)
        if ABOVE[r] == above_add:
            for row, col in addable(part):
                Z = Y.with_region(r, _add(part, row))
                if Z.is_valid():
                    yield Z, Move("add", r, (row, col), content(r, row, col, params), 1)
        else:
            for row, col in removable(part):
                Z = Y.with_region(r, _remove(part, row))
                if Z.is_valid():
                    yield Z, Move("remove", r, (row, col), content(r, row, col, params), -1)


def enumerate_paths(a, params: Params, small_only: bool = False, check: bool = True) -> list:
    """All sequences Y_0 = empty, ..., Y_{r+t} allowed by the orientation ``a``.

    ``small_only`` keeps only moves inside the two middle diagrams.
    """
    a = seq(a)
    r = sum(1 for x in a if x == UP)
    if check:
        params.check_assumption(r, len(a) - r)
    empty = FourYoungDiagram(params.m, params.n)
    frontier = [((empty,), ())]
    for arrow in a:
        nxt = []
        for steps, moves in frontier:
            for Z, mv in _moves(steps[-1], arrow, params):
                if small_only and not mv.small:
                    continue
                nxt.append((steps + (Z,), moves + (mv,)))
        frontier = nxt
    return [FourYoungPath(a, s, mv) for s, mv in frontier]


def eigenvalue_sequence(p: FourYoungPath) -> list:
    """[(nu_j * i_j, small?)] along the path."""
    return [(mv.eigenvalue, mv.small) for mv in p.moves]


def predicted_spectrum(b, a, params: Params, left_small: bool = False, right_small: bool = False) -> dict:
    """Multiset of joint eigenvalue sequences on 1_b A 1_a: one entry per pair of
    paths (p in Y_b, q in Y_a) ending in the same diagram, labelled by p.

    ``left_small``/``right_small`` restrict p/q to small paths (the images of
    f acting from the left/right)."""
    pb = enumerate_paths(b, params, left_small)
    pa = enumerate_paths(a, params, right_small)
    ends: dict = {}
    for q in pa:
        ends[q.end] = ends.get(q.end, 0) + 1
    out: dict = {}
    for p in pb:
        c = ends.get(p.end, 0)
        if c:
            out[p.eigenvalues] = out.get(p.eigenvalues, 0) + c
    return out


def endpoint_multiplicities(paths) -> dict:
    out: dict = {}
    for p in paths:
        out[p.end] = out.get(p.end, 0) + 1
    return out


# -- ordinary Young diagrams -----------------------------------------------------

@lru_cache(maxsize=None)
def partitions(n: int) -> tuple:
    def gen(n, maxpart):
        if n == 0:
            yield ()
            return
        for k in range(min(n, maxpart), 0, -1):
            for rest in gen(n - k, k):
                yield (k,) + rest

    return tuple(gen(n, n))


def hook_length_count(part: tuple) -> int:
    """Number of standard tableaux of the shape, by the hook length formula."""
    n = sum(part)
    conj = conjugate(part)
    prod = 1
    for i, row in enumerate(part):
        for j in range(row):
            prod *= row - j + conj[j] - i - 1
    return math.factorial(n) // prod


def standard_tableaux_count(part: tuple) -> int:
    """Same count by removing corners recursively (independent of the hook formula)."""
    return _syt(tuple(part))


@lru_cache(maxsize=None)
def _syt(part):
    if sum(part) <= 1:
        return 1
    return sum(_syt(_remove(part, row)) for row, _ in removable(part))


def sum_of_squares(n: int) -> int:
    return sum(hook_length_count(p) ** 2 for p in partitions(n))


# -- tables ----------------------------------------------------------------------

def paths_csv(paths) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["path_id", "orientation", "endpoint_weight", "eigenvalues", "small_flags"])
    for i, p in enumerate(paths):
        w.writerow(
            [
                i,
                "".join(p.orientation),
                weight_str(p.end.weight()),
                " ".join(rational_to_str(x) for x in p.eigenvalues),
                " ".join("S" if s else "L" for s in p.small_flags),
            ]
        )
    return buf.getvalue()
