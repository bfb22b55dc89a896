"""Vector enumeration for block-graded finitely presented algebras.

Given a start block ``a``, letters (generators acting between blocks) and
relators (linear combinations of words that must vanish on every vector),
this builds the cyclic module ``A · 1_a`` explicitly: a basis and the action
table of every letter.  It is the linear analogue of Todd-Coxeter coset
enumeration (HLT strategy): every live vector has every relator traced
through it, new vectors are defined on demand, and nonzero traces are
coincidences that eliminate the heaviest vector involved.

Vectors are sparse dicts ``{id: mpq}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import gmpy2

from .relations import admissible, target_of


class EnumerationBudgetExceeded(RuntimeError):
    pass


def _axpy(out: dict, c, v: dict) -> None:
    for j, d in v.items():
        x = out.get(j)
        x = c * d if x is None else x + c * d
        if x:
            out[j] = x
        else:
            out.pop(j, None)


@dataclass
class EnumerationResult:
    start: tuple
    basis_words: list  # word (algebra order) defining each live vector
    blocks: list  # block of each live vector
    action: dict  # letter -> {col: {row: coef}} on live vectors (renumbered)
    defined: int  # total vectors ever defined

    @property
    def dim(self) -> int:
        return len(self.blocks)


class VectorEnumerator:
    def __init__(
        self,
        start: tuple,
        letters: Callable[[tuple], list],
        relators: Callable[[tuple], list],
        letter_weight: Callable[[tuple], int] = lambda letter: 1,
        budget: int = 200_000,
    ):
        self.letters = letters
        self.relators = relators
        self.letter_weight = letter_weight
        self.budget = budget
        self.block: list[tuple] = []
        self.alive: list[bool] = []
        self.weight: list[int] = []
        self.word: list[tuple] = []
        self.table: list[dict | None] = []
        self.repl: dict[int, dict] = {}
        self._new(start, 0, ())

    # -- bookkeeping ------------------------------------------------------
    def _new(self, block, weight, word) -> int:
        i = len(self.block)
        if i >= self.budget:
            raise EnumerationBudgetExceeded(f"more than {self.budget} vectors defined")
        self.block.append(block)
        self.alive.append(True)
        self.weight.append(weight)
        self.word.append(word)
        self.table.append({})
        return i

    def norm(self, v: dict) -> dict:
        out: dict = {}
        for i, c in v.items():
            if self.alive[i]:
                _axpy(out, c, {i: 1})
            else:
                _axpy(out, c, self._resolved(i))
        return out

    def _resolved(self, i: int) -> dict:
        r = self.repl[i]
        if all(self.alive[j] for j in r):
            return r
        r = self.norm(r)
        self.repl[i] = r
        return r

    def image(self, letter, i: int, define: bool = True):
        tab = self.table[i]
        img = tab.get(letter)
        if img is None:
            if not define:
                return None
            kind, k = letter
            b = self.block[i]
            j = self._new(target_of(kind, k, b), self.weight[i] + self.letter_weight(letter), (letter,) + self.word[i])
            img = {j: gmpy2.mpq(1)}
            tab[letter] = img
            return img
        if not all(self.alive[j] for j in img):
            img = self.norm(img)
            tab[letter] = img
        return img

    def apply(self, letter, v: dict, define: bool = True):
        kind, k = letter
        out: dict = {}
        for i, c in v.items():
            if not self.alive[i]:
                _axpy(out, c, self.apply(letter, self._resolved(i), define) or {})
                continue
            if not admissible(kind, k, self.block[i]):
                continue
            img = self.image(letter, i, define)
            if img is None:
                return None
            _axpy(out, c, img)
        return self.norm(out)

    def trace(self, terms, i: int, define: bool = True):
        total: dict = {}
        for coef, word in terms:
            v = {i: gmpy2.mpq(1)}
            for letter in reversed(word):
                v = self.apply(letter, v, define)
                if v is None:
                    return None
                if not v:
                    break
            if v:
                _axpy(total, coef, v)
        return self.norm(total)

    def coincide(self, vec: dict) -> None:
        pending = [vec]
        while pending:
            v = self.norm(pending.pop())
            if not v:
                continue
            p = max(v, key=lambda j: (self.weight[j], j))
            c = v[p]
            expr = {j: -d / c for j, d in v.items() if j != p}
            self.alive[p] = False
            self.repl[p] = expr
            tab = self.table[p]
            self.table[p] = None
            for letter, img in tab.items():
                lhs = self.apply(letter, expr, True)
                diff = dict(lhs)
                _axpy(diff, -1, self.norm(img))
                if diff:
                    pending.append(diff)

    # -- driver -----------------------------------------------------------
    def run(self) -> EnumerationResult:
        i = 0
        while i < len(self.block):
            if self.alive[i]:
                for terms in self.relators(self.block[i]):
                    val = self.trace(terms, i)
                    if val:
                        self.coincide(val)
                    if not self.alive[i]:
                        break
                if self.alive[i]:
                    for letter in self.letters(self.block[i]):
                        self.image(letter, i)
            i += 1
        return self._finish()

    def _finish(self) -> EnumerationResult:
        live = [i for i in range(len(self.block)) if self.alive[i]]
        index = {old: new for new, old in enumerate(live)}
        action: dict = {}
        for old in live:
            for letter in self.letters(self.block[old]):
                img = self.image(letter, old, define=False)
                if img is None:
                    raise RuntimeError("enumeration finished with an undefined action")
                col = action.setdefault(letter, {})
                col[index[old]] = {index[j]: c for j, c in img.items()}
        # closure: every relator vanishes on every live vector without new definitions
        for old in live:
            for terms in self.relators(self.block[old]):
                val = self.trace(terms, old, define=False)
                if val is None or val:
                    raise RuntimeError("enumeration is not closed under the relators")
        return EnumerationResult(
            start=self.block[0],
            basis_words=[self.word[i] for i in live],
            blocks=[self.block[i] for i in live],
            action=action,
            defined=len(self.block),
        )
