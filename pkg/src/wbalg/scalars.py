"""Exact and high-precision scalars.

Three carriers share one tagged facade (:class:`Scalar`):

* ``Rational``  -- ``gmpy2.mpq``, always in lowest terms with positive denominator;
* ``DeltaPoly`` -- univariate polynomial in the formal parameter delta with
  rational coefficients, stored lowest degree first without trailing zeros;
* ``BigFloat``  -- an ``mpmath`` float carried at a fixed precision in bits.

Hot loops elsewhere in the package work on the raw carriers directly; the
facade exists for API boundaries and for enforcing the promotion rules
(Rational may promote to DeltaPoly or BigFloat, nothing else mixes).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import gmpy2
import mpmath

Rational = type(gmpy2.mpq(0))

DEFAULT_PRECISION = 256
DEFAULT_SCALAR_TOL = 1e-30
DEFAULT_RELATION_TOL = 1e-20


class ScalarTagError(TypeError):
    """Arithmetic between scalar kinds that do not promote into each other."""


def rational(x) -> Rational:
    """Coerce ints, Fractions, mpq and "p/q" strings to an exact rational."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return gmpy2.mpq(x)
    if isinstance(x, Fraction):
        return gmpy2.mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            p, q = s.split("/")
            return gmpy2.mpq(int(p), int(q))
        return gmpy2.mpq(int(s))
    if type(x).__name__ == "mpz":
        return gmpy2.mpq(x)
    raise TypeError(f"cannot make a rational from {type(x).__name__}")


def rational_to_str(q) -> str:
    q = rational(q)
    return f"{int(q.numerator)}/{int(q.denominator)}"


def rational_from_str(s: str) -> Rational:
    return rational(s)


def _is_exact(x) -> bool:
    return isinstance(x, (int, Rational, Fraction)) and not isinstance(x, bool)


# ---------------------------------------------------------------------------
# DeltaPoly


class DeltaPoly:
    """Polynomial in delta with rational coefficients (lowest degree first)."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self._hash = None

    @classmethod
    def delta(cls) -> "DeltaPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "DeltaPoly":
        return cls((c,))

    @classmethod
    def _raw(cls, cs: tuple) -> "DeltaPoly":
        obj = cls.__new__(cls)
        cs = list(cs)
        while cs and cs[-1] == 0:
            cs.pop()
        obj.coeffs = tuple(cs)
        obj._hash = None
        return obj

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, DeltaPoly):
            return other
        if _is_exact(other):
            return DeltaPoly._raw((rational(other),))
        if isinstance(other, Scalar):
            return self._coerce(other.value)
        raise ScalarTagError(f"DeltaPoly does not mix with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return DeltaPoly._raw(tuple(out))

    __radd__ = __add__

    def __neg__(self):
        return DeltaPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return DeltaPoly._raw(())
        out = [gmpy2.mpq(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return DeltaPoly._raw(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not _is_exact(other):
            raise ScalarTagError("DeltaPoly can only be divided by a rational")
        c = rational(other)
        return DeltaPoly._raw(tuple(x / c for x in self.coeffs))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = DeltaPoly._raw((gmpy2.mpq(1),))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ScalarTagError:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("DeltaPoly", self.coeffs))
        return self._hash

    def __call__(self, value):
        return evaluate_delta(self, value)

    def to_list(self) -> list[str]:
        return [rational_to_str(c) for c in self.coeffs]

    @classmethod
    def from_list(cls, items: Sequence) -> "DeltaPoly":
        return cls(rational(x) for x in items)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("δ" if i == 1 else f"δ^{i}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{mono}")
        return " + ".join(parts)


def evaluate_delta(p: DeltaPoly, value) -> Rational:
    """Horner evaluation of ``p`` at delta = ``value``."""
    v = rational(value)
    acc = gmpy2.mpq(0)
    for c in reversed(p.coeffs):
        acc = acc * v + c
    return acc


# ---------------------------------------------------------------------------
# BigFloat


@lru_cache(maxsize=None)
def mp_context(bits: int = DEFAULT_PRECISION) -> mpmath.ctx_mp.MPContext:
    """A private mpmath context fixed at ``bits`` of working precision."""
    ctx = mpmath.MPContext()
    ctx.prec = int(bits)
    return ctx


class BigFloat:
    __slots__ = ("value", "bits")

    def __init__(self, value, bits: int = DEFAULT_PRECISION):
        ctx = mp_context(bits)
        if isinstance(value, BigFloat):
            value = value.value
        if isinstance(value, DeltaPoly) or isinstance(value, Scalar):
            raise ScalarTagError("BigFloat cannot hold a polynomial")
        if _is_exact(value):
            q = rational(value)
            self.value = ctx.mpf(int(q.numerator)) / int(q.denominator)
        else:
            self.value = ctx.mpf(value)
        self.bits = int(bits)

    def _coerce(self, other):
        if isinstance(other, BigFloat):
            return other
        if _is_exact(other):
            return BigFloat(other, self.bits)
        if isinstance(other, Scalar) and other.tag != "DeltaPoly":
            return self._coerce(other.value)
        raise ScalarTagError(f"BigFloat does not mix with {type(other).__name__}")

    def _bin(self, other, op):
        o = self._coerce(other)
        bits = max(self.bits, o.bits)
        ctx = mp_context(bits)
        return BigFloat(op(ctx.mpf(self.value), ctx.mpf(o.value)), bits)

    def __add__(self, o):
        return self._bin(o, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, o):
        return self._bin(o, lambda a, b: a - b)

    def __rsub__(self, o):
        return self._bin(o, lambda a, b: b - a)

    def __mul__(self, o):
        return self._bin(o, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, o):
        return self._bin(o, lambda a, b: a / b)

    def __rtruediv__(self, o):
        return self._bin(o, lambda a, b: b / a)

    def __neg__(self):
        return BigFloat(-self.value, self.bits)

    def __abs__(self):
        return BigFloat(abs(self.value), self.bits)

    def sqrt(self):
        return BigFloat(mp_context(self.bits).sqrt(self.value), self.bits)

    def __float__(self):
        return float(self.value)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ScalarTagError:
            return NotImplemented
        return self.value == o.value

    def __hash__(self):
        return hash(("BigFloat", self.value))

    def __lt__(self, other):
        return self.value < self._coerce(other).value

    def close_to(self, other, tol: float = DEFAULT_SCALAR_TOL) -> bool:
        o = self._coerce(other)
        return abs(self.value - o.value) <= tol * max(1, abs(o.value))

    def __repr__(self):
        return f"BigFloat({mpmath.nstr(self.value, 20)}, bits={self.bits})"


# ---------------------------------------------------------------------------
# Tagged facade

_TAGS = ("Rational", "DeltaPoly", "BigFloat")


def tag_of(x) -> str:
    if isinstance(x, Scalar):
        return x.tag
    if _is_exact(x):
        return "Rational"
    if isinstance(x, DeltaPoly):
        return "DeltaPoly"
    if isinstance(x, BigFloat):
        return "BigFloat"
    raise TypeError(f"not a scalar: {type(x).__name__}")


def _promote_pair(a, b):
    ta, tb = tag_of(a), tag_of(b)
    if ta == tb:
        return ta, a, b
    if ta == "Rational":
        return tb, _lift(a, tb, b), b
    if tb == "Rational":
        return ta, a, _lift(b, ta, a)
    raise ScalarTagError(f"cannot combine {ta} with {tb}")


def _lift(q, tag, like):
    if tag == "DeltaPoly":
        return DeltaPoly.const(q)
    return BigFloat(q, like.bits)


@dataclass(frozen=True)
class Scalar:
    """One tagged scalar value: Rational, DeltaPoly or BigFloat."""

    tag: str
    value: object

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ValueError(f"unknown scalar tag {self.tag!r}")
        if self.tag == "Rational":
            object.__setattr__(self, "value", rational(self.value))

    @classmethod
    def of(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        return cls(tag_of(x), x)

    def _op(self, other, fn):
        other = Scalar.of(other)
        tag, a, b = _promote_pair(self.value, other.value)
        return Scalar(tag, fn(a, b))

    def __add__(self, o):
        return self._op(o, lambda a, b: a + b)

    def __sub__(self, o):
        return self._op(o, lambda a, b: a - b)

    def __mul__(self, o):
        return self._op(o, lambda a, b: a * b)

    def __truediv__(self, o):
        return self._op(o, lambda a, b: a / b)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.tag, -self.value)

    def __eq__(self, other):
        try:
            other = Scalar.of(other)
            _, a, b = _promote_pair(self.value, other.value)
        except (ScalarTagError, TypeError):
            return False
        return a == b

    def __hash__(self):
        return hash((self.tag, self.value))

    def serialize(self):
        if self.tag == "Rational":
            return rational_to_str(self.value)
        if self.tag == "DeltaPoly":
            return self.value.to_list()
        return mpmath.nstr(self.value.value, 40)
