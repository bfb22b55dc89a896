"""Cyclotomic parameters attached to (m, n, delta)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .diagrams import DOWN, UP
from .scalars import rational, rational_to_str


class AssumptionViolation(ValueError):
    pass


@dataclass(frozen=True)
class Params:
    m: int
    n: int
    delta: object = 0

    def __post_init__(self):
        if self.m <= 0 or self.n <= 0:
            raise ValueError("m and n must be positive")
        object.__setattr__(self, "delta", rational(self.delta))

    @cached_property
    def beta(self) -> dict:
        """beta[(orientation, i)] for i in (1, 2)."""
        m, n, d = rational(self.m), rational(self.n), self.delta
        return {
            (UP, 1): -d + (m + n) / 2,
            (UP, 2): (n - m) / 2,
            (DOWN, 1): (m + n) / 2,
            (DOWN, 2): d + (m - n) / 2,
        }

    def beta1(self, a):
        return self.beta[(a, 1)]

    def beta2(self, a):
        return self.beta[(a, 2)]

    @property
    def omega0(self):
        return rational(self.m + self.n)

    @property
    def omega1(self):
        return -self.delta * self.m + rational(self.m + self.n) ** 2 / 2

    @property
    def omega1star(self):
        return -self.omega1 + self.omega0**2

    def omega(self, j: int, star: bool = False):
        """omega_j (or omega_j^*), extended by the recurrence of the cyclotomic polynomial."""
        a = DOWN if star else UP
        s = self.beta1(a) + self.beta2(a)
        p = self.beta1(a) * self.beta2(a)
        seq = [self.omega0, self.omega1star if star else self.omega1]
        while len(seq) <= j:
            seq.append(s * seq[-1] - p * seq[-2])
        return seq[j]

    def check_assumption(self, r: int, t: int) -> None:
        """Raise unless the middle contents stay clear of the outer ones."""
        k = r + t
        up = abs(self.beta2(UP)) + k < self.beta1(UP)
        down = abs(self.beta2(DOWN)) + k < self.beta1(DOWN)
        if not up:
            raise AssumptionViolation(f"|beta2^up| + r + t < beta1^up fails: {abs(self.beta2(UP)) + k} >= {self.beta1(UP)}")
        if not down:
            raise AssumptionViolation(
                f"|beta2^down| + r + t < beta1^down fails: {abs(self.beta2(DOWN)) + k} >= {self.beta1(DOWN)}"
            )
        if self.m < k or self.n < k:
            raise AssumptionViolation(f"need m, n >= r + t = {k}")

    def relation_params(self) -> dict:
        """Coefficient table for the relation templates (loop value is omega0)."""
        from .relations import with_negatives

        return with_negatives(
            {
                "delta": self.omega0,
                "omega1": self.omega1,
                "omega1star": self.omega1star,
                "sum_up": self.beta1(UP) + self.beta2(UP),
                "prod_up": self.beta1(UP) * self.beta2(UP),
                "sum_down": self.beta1(DOWN) + self.beta2(DOWN),
                "prod_down": self.beta1(DOWN) * self.beta2(DOWN),
            }
        )

    def key(self) -> str:
        return f"m{self.m}_n{self.n}_d{rational_to_str(self.delta).replace('/', '_')}"

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "delta": rational_to_str(self.delta),
            "beta1_up": rational_to_str(self.beta1(UP)),
            "beta2_up": rational_to_str(self.beta2(UP)),
            "beta1_down": rational_to_str(self.beta1(DOWN)),
            "beta2_down": rational_to_str(self.beta2(DOWN)),
            "omega0": rational_to_str(self.omega0),
            "omega1": rational_to_str(self.omega1),
            "omega1star": rational_to_str(self.omega1star),
        }


DEFAULT_PARAMS = Params(6, 6, 2)
