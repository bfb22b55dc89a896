"""Relation families of the walled Brauer presentation and its affine extension.

A relation is a linear combination of *word patterns*.  Words are written in
algebra order (leftmost letter acts last).  Letters:

``s, sh, e, eh`` -- concrete generators s_k, ŝ_k, e_k, ê_k;
``S``           -- the dotted ṡ_k (whichever of s_k / ŝ_k is admissible);
``E``           -- the dotted ė_k (either e_k or ê_k);
``y``           -- the affine generator y_k.

For a source orientation ``b`` every term is expanded over all admissible
choices; the expansions are grouped by target orientation, giving one
:class:`RelationInstance` per (source, target) pair.  Each grouped instance is
a concrete identity ``sum coef * word = 0`` in ``1_c A 1_b``.  Terms that are
inadmissible for ``b`` vanish, which is the convention of the presentation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .diagrams import DOWN, UP, swap

Letter = tuple  # (kind, k)
Word = tuple  # tuple of letters, algebra order


def admissible(kind: str, k: int, b: tuple) -> bool:
    if kind == "y":
        return 1 <= k <= len(b)
    if not 1 <= k < len(b):
        return False
    same = b[k - 1] == b[k]
    return same if kind == "s" else not same


def target_of(kind: str, k: int, b: tuple) -> tuple:
    if kind in ("sh", "eh"):
        return swap(b, k)
    return b


def apply_word(word: Word, b: tuple):
    """Target of ``word`` applied to block ``b`` or None if some letter vanishes."""
    for kind, k in reversed(word):
        if not admissible(kind, k, b):
            return None
        b = target_of(kind, k, b)
    return b


def expand(pattern: Word, b: tuple) -> list[tuple[Word, tuple]]:
    """All concrete admissible words for ``pattern`` on source ``b``."""
    results = [((), b)]
    for kind, k in reversed(pattern):
        new = []
        for w, cur in results:
            if kind == "S":
                opts = ("s",) if admissible("s", k, cur) else ("sh",)
            elif kind == "E":
                opts = ("e", "eh")
            else:
                opts = (kind,)
            for o in opts:
                if admissible(o, k, cur):
                    new.append((((o, k),) + w, target_of(o, k, cur)))
        results = new
    return results


@dataclass(frozen=True)
class Relation:
    family: str
    indices: tuple
    terms: tuple  # ((coef, pattern), ...); coef is a number or a parameter key
    condition: Callable | None = None
    note: str = ""

    def applies(self, b) -> bool:
        return self.condition is None or bool(self.condition(b))


@dataclass
class RelationInstance:
    family: str
    indices: tuple
    source: tuple
    target: tuple
    terms: list = field(default_factory=list)  # [(coef, concrete word)]

    def describe(self) -> dict:
        return {
            "relation": self.family,
            "orientation": "".join(self.source),
            "target": "".join(self.target),
            "indices": list(self.indices),
        }


class AmbiguousExpansion(RuntimeError):
    pass


def instances(rel: Relation, b: tuple, params: dict | None = None) -> list[RelationInstance]:
    if not rel.applies(b):
        return []
    params = params or {}
    groups: dict[tuple, RelationInstance] = {}
    for coef, pat in rel.terms:
        c = params[coef] if isinstance(coef, str) else coef
        per_target = {}
        for w, tgt in expand(pat, b):
            if tgt in per_target:
                raise AmbiguousExpansion(f"{rel.family}: two choices of {pat} land in {tgt}")
            per_target[tgt] = w
            inst = groups.setdefault(tgt, RelationInstance(rel.family, rel.indices, b, tgt))
            inst.terms.append((c, w))
    return list(groups.values())


def _S(k):
    return ("S", k)


def _E(k):
    return ("E", k)


def walled_brauer_relations(n: int, loop: str = "delta") -> list[Relation]:
    """(Br3)-(Br6) for n = r+t strands.  ``loop`` names the loop parameter."""
    J = range(1, n)
    rels: list[Relation] = []
    for k in J:
        rels.append(Relation("Br3", (k,), ((1, (("s", k), ("s", k))), (1, (("sh", k), ("sh", k))), (-1, ()))))
    for k, j in itertools.product(J, J):
        if abs(k - j) > 1 and k < j:
            rels.append(Relation("Br4a", (k, j), ((1, (_S(k), _S(j))), (-1, (_S(j), _S(k))))))
    for k in J:
        if k + 1 in J:
            rels.append(
                Relation("Br4b", (k,), ((1, (_S(k), _S(k + 1), _S(k))), (-1, (_S(k + 1), _S(k), _S(k + 1)))))
            )
    for k in J:
        rels.append(Relation("Br5", (k,), ((1, (("e", k), ("e", k))), (_neg(loop), (("e", k),)))))
    for k, j in itertools.product(J, J):
        if abs(k - j) > 1:
            rels.append(Relation("Br6a", (k, j), ((1, (_S(k), _E(j))), (-1, (_E(j), _S(k))))))
            if k < j:
                rels.append(Relation("Br6a", (k, j), ((1, (_E(k), _E(j))), (-1, (_E(j), _E(k))))))
    for k in J:
        rels.append(Relation("Br6b", (k,), ((1, (("sh", k), _E(k))), (-1, (_E(k),))), note="left"))
        rels.append(Relation("Br6b", (k,), ((1, (_E(k), ("sh", k))), (-1, (_E(k),))), note="right"))
    for k in J:
        if k + 1 not in J:
            continue
        k1 = k + 1
        forms = [
            ((_S(k), _E(k1), _E(k)), (_S(k1), _E(k))),
            ((_E(k), _E(k1), _S(k)), (_E(k), _S(k1))),
            ((_E(k1), _E(k), _S(k1)), (_E(k1), _S(k))),
            ((_S(k1), _E(k), _E(k1)), (_S(k), _E(k1))),
        ]
        for i, (lhs, rhs) in enumerate(forms):
            rels.append(Relation("Br6c", (k,), ((1, lhs), (-1, rhs)), note=f"form{i + 1}"))
        rels.append(Relation("Br6d", (k,), ((1, (_E(k1), _E(k), _E(k1))), (-1, (_E(k1),))), note="form1"))
        rels.append(Relation("Br6d", (k,), ((1, (_E(k), _E(k1), _E(k))), (-1, (_E(k),))), note="form2"))
    return rels


def _neg(key):
    return "-" + key


def reidemeister_relations(n: int) -> list[Relation]:
    """Replacement for (Br6d): e_{k+1} s_k e_{k+1} = e_{k+1} and e_k s_{k+1} e_k = e_k."""
    rels = []
    for k in range(1, n - 1):
        rels.append(
            Relation(
                "reidemeister",
                (k,),
                ((1, (("e", k + 1), ("s", k), ("e", k + 1))), (-1, (("e", k + 1),))),
                condition=lambda b, k=k: b[k - 1] == b[k],
                note="e_{k+1}s_ke_{k+1}",
            )
        )
        rels.append(
            Relation(
                "reidemeister",
                (k,),
                ((1, (("e", k), ("s", k + 1), ("e", k))), (-1, (("e", k),))),
                condition=lambda b, k=k: b[k] == b[k + 1],
                note="e_ks_{k+1}e_k",
            )
        )
    return rels


def braid_variant_relations(n: int) -> list[Relation]:
    """Braid variants: s s s, ŝ ŝ s = s ŝ ŝ and ŝ s ŝ = ŝ s ŝ."""
    rels = []
    for k in range(1, n - 1):
        k1 = k + 1
        rels.append(
            Relation("braid-variant", (k,), ((1, (("s", k), ("s", k1), ("s", k))), (-1, (("s", k1), ("s", k), ("s", k1)))), note="sss")
        )
        rels.append(
            Relation(
                "braid-variant",
                (k,),
                ((1, (("sh", k), ("sh", k1), ("s", k))), (-1, (("s", k1), ("sh", k), ("sh", k1)))),
                note="hat-hat-s",
            )
        )
        rels.append(
            Relation(
                "braid-variant",
                (k,),
                ((1, (("sh", k), ("s", k1), ("sh", k))), (-1, (("sh", k1), ("s", k), ("sh", k1)))),
                note="hat-s-hat",
            )
        )
    return rels


def affine_relations(n: int) -> list[Relation]:
    """(Br7)-(Br11) without the bubble relation (Br9)."""
    rels = []
    for i, j in itertools.combinations(range(1, n + 1), 2):
        rels.append(Relation("Br7", (i, j), ((1, (("y", i), ("y", j))), (-1, (("y", j), ("y", i))))))
    for k in range(1, n):
        for i in range(1, n + 1):
            if i in (k, k + 1):
                continue
            rels.append(Relation("Br8a", (k, i), ((1, (_S(k), ("y", i))), (-1, (("y", i), _S(k))))))
            rels.append(Relation("Br8b", (k, i), ((1, (_E(k), ("y", i))), (-1, (("y", i), _E(k))))))
    for k in range(1, n):
        y1, y2 = ("y", k), ("y", k + 1)
        s_, sh, eh = ("s", k), ("sh", k), ("eh", k)
        same = lambda b, k=k: b[k - 1] == b[k]
        rels.append(Relation("Br10a", (k,), ((1, (s_, y1)), (-1, (y2, s_)), (1, ())), condition=same, note="first"))
        rels.append(Relation("Br10a", (k,), ((1, (s_, y2)), (-1, (y1, s_)), (-1, ())), condition=same, note="second"))
        rels.append(Relation("Br10b", (k,), ((1, (sh, y1)), (-1, (y2, sh)), (-1, (eh,))), note="first"))
        rels.append(Relation("Br10b", (k,), ((1, (sh, y2)), (-1, (y1, sh)), (1, (eh,))), note="second"))
        rels.append(Relation("Br11a", (k,), ((1, (_E(k), y1)), (1, (_E(k), y2)))))
        rels.append(Relation("Br11b", (k,), ((1, (y1, _E(k))), (1, (y2, _E(k))))))
    return rels


def bubble_relations(n: int) -> list[Relation]:
    """(Br9) at degree one, read per orientation of the first two strands.

    On (UP, DOWN) blocks the coefficient is ``omega1``; on (DOWN, UP) blocks it
    is ``omega1star``.  Degree zero is (Br5) with loop value ``omega0``.
    """
    if n < 2:
        return []
    e1, y1 = ("e", 1), ("y", 1)
    return [
        Relation("Br9", (1,), ((1, (e1, y1, e1)), ("-omega1", (e1,))), condition=lambda b: b[0] == UP and b[1] == DOWN, note="up-down"),
        Relation("Br9", (1,), ((1, (e1, y1, e1)), ("-omega1star", (e1,))), condition=lambda b: b[0] == DOWN and b[1] == UP, note="down-up"),
    ]


def cyclotomic_relations(n: int) -> list[Relation]:
    """(y_1 - beta_1)(y_1 - beta_2) 1_b = 0 with the betas of the first arrow."""
    y1 = ("y", 1)
    return [
        Relation("Cyc", (1,), ((1, (y1, y1)), ("-sum_up", (y1,)), ("prod_up", ())), condition=lambda b: b[0] == UP, note="up"),
        Relation("Cyc", (1,), ((1, (y1, y1)), ("-sum_down", (y1,)), ("prod_down", ())), condition=lambda b: b[0] == DOWN, note="down"),
    ]


def with_negatives(params: dict) -> dict:
    out = dict(params)
    for k, v in params.items():
        out["-" + k] = -v
    return out
