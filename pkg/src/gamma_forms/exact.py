"""Exact integer and rational arithmetic.

Rationals are plain :class:`fractions.Fraction` values (always reduced, with a
positive denominator).  The integer ``S_n`` is astronomically large, so it is
only ever held in factored form as a :class:`FactoredInteger`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce

BigRational = Fraction

__all__ = [
    "BigRational",
    "FactoredInteger",
    "binomial",
    "harmonic",
    "lcm_upto",
    "s_n_exponent",
    "s_n_factored",
]


@dataclass(frozen=True)
class FactoredInteger:
    """An integer kept as ``prod(base ** exponent)``; the empty product is 1."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        factors = tuple((int(b), int(e)) for b, e in self.factors)
        bases = [b for b, _ in factors]
        if any(b < 1 for b in bases):
            raise ValueError("bases must be positive integers")
        if any(e < 0 for _, e in factors):
            raise ValueError("exponents must be non-negative")
        if any(b1 >= b2 for b1, b2 in zip(bases, bases[1:])):
            raise ValueError("bases must be strictly increasing")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> FactoredInteger:
        return cls(tuple(sorted(d.items())))

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def expand(self) -> int:
        """Multiply out.  Only sensible for tiny inputs (S_1, S_2, S_3)."""
        return math.prod(b**e for b, e in self.factors)


def _require_positive(n: int, name: str = "n") -> None:
    if n < 1:
        raise ValueError(f"{name} must be >= 1, got {n}")


@lru_cache(maxsize=None)
def lcm_upto(n: int) -> int:
    """d_n = LCM(1, 2, ..., n), by an iterated gcd-based fold."""
    _require_positive(n)
    return reduce(math.lcm, range(1, n + 1), 1)


@lru_cache(maxsize=None)
def harmonic(N: int) -> Fraction:
    """Exact harmonic number H_N, with H_0 = 0."""
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    total = Fraction(0)
    for k in range(1, N + 1):
        total += Fraction(1, k)
    return total


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be non-negative")
    if k > n:
        raise ValueError(f"binomial({n}, {k}): k must not exceed n")
    return math.comb(n, k)


def s_n_exponent(n: int, m: int) -> int:
    """Exponent of the base n+m in S_n."""
    d = lcm_upto(2 * n)
    total = 0
    for k in range(min(m - 1, n - m) + 1):
        inner = sum(2 * d // j for j in range(k + 1, n - k + 1))
        total += binomial(n, k) ** 2 * inner
    return total


def s_n_factored(n: int) -> FactoredInteger:
    """S_n as the factor list ((n+1, e_1), ..., (2n, e_n)).

    Every 2*d_{2n}/j is an integer because j <= n divides d_{2n}, so the
    exponents are computed in integer arithmetic throughout.
    """
    _require_positive(n)
    return FactoredInteger(tuple((n + m, s_n_exponent(n, m)) for m in range(1, n + 1)))
