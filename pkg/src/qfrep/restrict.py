"""Linear restrictions on quaternary representations: a linear form in the
four variables plus a target set for its value."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .forms import Quadruple


@dataclass(frozen=True)
class Target:
    kind: str  # "fixed" | "anyof" | "square" | "pow4"
    values: tuple[int, ...] = ()

    @classmethod
    def fixed(cls, v: int) -> "Target":
        return cls("fixed", (v,))

    @classmethod
    def any_of(cls, values) -> "Target":
        vals = tuple(sorted(set(values)))
        if not vals:
            raise ValueError("anyof target needs at least one value")
        return cls("anyof", vals)

    @classmethod
    def squares(cls) -> "Target":
        return cls("square")

    @classmethod
    def powers_of_four(cls) -> "Target":
        return cls("pow4")

    def contains(self, v: int) -> bool:
        if self.kind in ("fixed", "anyof"):
            return v in self.values
        if self.kind == "square":
            return v >= 0 and isqrt(v) ** 2 == v
        q = 1
        while q < v:
            q *= 4
        return q == v  # pow4: v in {1, 4, 16, ...}

    def iter_values(self, bound: int):
        """Target values with absolute value at most `bound`, ascending."""
        if self.kind in ("fixed", "anyof"):
            yield from (v for v in self.values if abs(v) <= bound)
        elif self.kind == "square":
            yield from (k * k for k in range(isqrt(bound) + 1))
        else:
            q = 1
            while q <= bound:
                yield q
                q *= 4

    def describe(self) -> str:
        if self.kind == "fixed":
            return f"fixed:{self.values[0]}"
        if self.kind == "anyof":
            return "anyof:" + ",".join(str(v) for v in self.values)
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "Target":
        if text == "square":
            return cls.squares()
        if text == "pow4":
            return cls.powers_of_four()
        if text.startswith("fixed:"):
            return cls.fixed(int(text[6:]))
        if text.startswith("anyof:"):
            return cls.any_of(int(v) for v in text[6:].split(","))
        raise ValueError(f"unknown target spec {text!r}")


@dataclass(frozen=True)
class RestrictionSpec:
    coeffs: tuple[int, int, int, int]
    target: Target
    domain: str = "int"  # "int" | "nat"

    def __post_init__(self):
        if self.domain not in ("int", "nat"):
            raise ValueError("domain must be 'int' or 'nat'")
        if not any(self.coeffs):
            raise ValueError("restriction needs a nonzero coefficient")

    def linear(self, v: Quadruple) -> int:
        return sum(c * x for c, x in zip(self.coeffs, v))

    def satisfied_by(self, v: Quadruple) -> bool:
        if self.domain == "nat" and any(x < 0 for x in v):
            return False
        return self.target.contains(self.linear(v))

    def literal(self) -> str:
        return ",".join(str(c) for c in self.coeffs)
