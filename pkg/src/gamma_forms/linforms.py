"""Linear forms in 1, Euler's constant and logarithms built from rational functions.

A rational function

    R(t) = sum_{k=0}^{n} ( B_{k2} / (t+k)^2 + B_{k1} / (t+k) )

that decays like t^-3 yields

    sum_{v=n+1}^inf  int_v^inf R(t) dt  =  B*gamma + sum_m c_m log(n+m) - A

with B = sum_k B_{k2}, c_m = sum_{k>=m} B_{k1}, A = sum_k B_{k2} H_{n+k}.
Everything here is exact; numerical evaluation lives in
:mod:`gamma_forms.representations`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import binomial, harmonic, lcm_upto

__all__ = [
    "InclusionReport",
    "LinearForm",
    "MixedValue",
    "NotAsymptoticError",
    "PartialFraction",
    "build_linear_form",
    "check_inclusion",
    "closed_form_Ln_An",
    "decompose_Rn",
    "inner_integral_closed",
    "validate_asymptotic",
]


class NotAsymptoticError(ValueError):
    """The coefficient table does not decay like t^-3."""


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")


@dataclass(frozen=True)
class PartialFraction:
    """Coefficients B_{k2}, B_{k1} for k = 0..n."""

    n: int
    b2: tuple[Fraction, ...]
    b1: tuple[Fraction, ...]

    def __post_init__(self):
        _check_n(self.n)
        b2 = tuple(Fraction(x) for x in self.b2)
        b1 = tuple(Fraction(x) for x in self.b1)
        if len(b2) != self.n + 1 or len(b1) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} coefficients of each order")
        object.__setattr__(self, "b2", b2)
        object.__setattr__(self, "b1", b1)

    @classmethod
    def zero(cls, n: int) -> PartialFraction:
        return cls(n, (0,) * (n + 1), (0,) * (n + 1))

    def __call__(self, t) -> Fraction:
        """Evaluate R(t) exactly at a rational point away from the poles."""
        t = Fraction(t)
        return sum(
            (b2 / (t + k) ** 2 + b1 / (t + k) for k, (b2, b1) in enumerate(zip(self.b2, self.b1))),
            Fraction(0),
        )


@dataclass(frozen=True)
class LinearForm:
    """gamma_coeff*gamma + sum_m log_coeffs[m-1]*log(n+m) - constant."""

    n: int
    gamma_coeff: Fraction
    log_coeffs: tuple[Fraction, ...]
    constant: Fraction

    def log_terms(self) -> list[tuple[int, Fraction]]:
        return [(self.n + m, c) for m, c in enumerate(self.log_coeffs, start=1)]


@dataclass(frozen=True)
class MixedValue:
    """rational + sum(coeff * log(arg)) with integer arguments."""

    rational: Fraction
    logs: tuple[tuple[int, Fraction], ...]


def decompose_Rn(n: int) -> PartialFraction:
    """Partial fractions of R_n(t) = (n! / (t(t+1)...(t+n)))^2.

    B_{k2} = C(n,k)^2 and B_{k1} = 2 C(n,k)^2 (H_k - H_{n-k}).
    """
    _check_n(n)
    b2 = []
    b1 = []
    for k in range(n + 1):
        c2 = binomial(n, k) ** 2
        b2.append(Fraction(c2))
        b1.append(2 * c2 * (harmonic(k) - harmonic(n - k)))
    return PartialFraction(n, tuple(b2), tuple(b1))


def validate_asymptotic(pf: PartialFraction) -> bool:
    """True iff sum B_{k1} = 0 and sum (B_{k2} - k B_{k1}) = 0, i.e. R = O(t^-3)."""
    first = sum(pf.b1, Fraction(0))
    second = sum((b2 - k * b1 for k, (b2, b1) in enumerate(zip(pf.b2, pf.b1))), Fraction(0))
    return first == 0 and second == 0


def _require_asymptotic(pf: PartialFraction) -> None:
    if not validate_asymptotic(pf):
        raise NotAsymptoticError("coefficients violate sum B_k1 = 0 or sum (B_k2 - k B_k1) = 0")


def build_linear_form(pf: PartialFraction) -> LinearForm:
    _require_asymptotic(pf)
    n = pf.n
    gamma_coeff = sum(pf.b2, Fraction(0))
    log_coeffs = tuple(sum(pf.b1[m:], Fraction(0)) for m in range(1, n + 1))
    constant = sum((b2 * harmonic(n + k) for k, b2 in enumerate(pf.b2)), Fraction(0))
    return LinearForm(n, gamma_coeff, log_coeffs, constant)


def closed_form_Ln_An(n: int) -> LinearForm:
    """L_n and A_n straight from their triple and double sums.

    Deliberately does not go through :func:`decompose_Rn`, so the two can be
    compared.
    """
    _check_n(n)
    log_coeffs = []
    for m in range(1, n + 1):
        c = Fraction(0)
        for k in range(min(m - 1, n - m) + 1):
            c += binomial(n, k) ** 2 * sum(Fraction(2, j) for j in range(k + 1, n - k + 1))
        log_coeffs.append(c)
    constant = sum((binomial(n, k) ** 2 * harmonic(n + k) for k in range(n + 1)), Fraction(0))
    return LinearForm(n, Fraction(binomial(2 * n, n)), tuple(log_coeffs), constant)


def inner_integral_closed(pf: PartialFraction, nu: int) -> MixedValue:
    """int_nu^inf R(t) dt = sum_k ( B_{k2}/(nu+k) - B_{k1} log(nu+k) ), exactly."""
    _require_asymptotic(pf)
    if nu <= pf.n:
        raise ValueError(f"nu must exceed n={pf.n}, got {nu}")
    rational = sum((b2 / (nu + k) for k, b2 in enumerate(pf.b2)), Fraction(0))
    logs = tuple((nu + k, -b1) for k, b1 in enumerate(pf.b1) if b1 != 0)
    return MixedValue(rational, logs)


@dataclass(frozen=True)
class InclusionReport:
    n: int
    d2n: int
    d2n_A: Fraction
    d2n_logcoeffs: tuple[Fraction, ...]
    d2n_gamma_coeff: int
    d2n_A_integral: bool
    d2n_logcoeffs_integral: bool


def check_inclusion(n: int) -> InclusionReport:
    """Check that d_{2n} clears every denominator in the linear form for I_n."""
    form = closed_form_Ln_An(n)
    d = lcm_upto(2 * n)
    d_a = d * form.constant
    d_c = tuple(d * c for c in form.log_coeffs)
    return InclusionReport(
        n=n,
        d2n=d,
        d2n_A=d_a,
        d2n_logcoeffs=d_c,
        d2n_gamma_coeff=d * int(form.gamma_coeff),
        d2n_A_integral=d_a.denominator == 1,
        d2n_logcoeffs_integral=all(c.denominator == 1 for c in d_c),
    )
