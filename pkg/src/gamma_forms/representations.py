"""Four independent evaluations of I_n and their cross-validation.

* ``hypergeometric``: quadrature in t of the 3F2 integrand over [n+1, inf).
* ``series``: sum over v > n of the exact tail integrals of R_n, with an
  Euler-Maclaurin tail.  Fully rigorous.
* ``double_integral``: tanh-sinh product quadrature of the Beukers-type
  integrand over the unit square.
* ``closed_form``: C(2n,n) gamma + L_n - A_n with the reference gamma.

The series route never touches 3F2, the hypergeometric route never touches
partial fractions (its tail bound aside), and the square route uses neither.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mp, mpf

from .exact import binomial
from .linforms import (
    LinearForm,
    MixedValue,
    PartialFraction,
    build_linear_form,
    closed_form_Ln_An,
    decompose_Rn,
    inner_integral_closed,
    validate_asymptotic,
)
from .numerics import (
    HPValue,
    HypergeometricParams,
    Rigor,
    eval_3F2,
    gamma_ratio_poly,
    gamma_reference,
    gamma_table_capacity,
    integrate_semi_infinite,
    integrate_unit_square,
)
from .numerics.hpvalue import to_mpf, ulp

__all__ = [
    "CrossValidation",
    "InEvaluation",
    "Method",
    "In_closed_form",
    "In_double_integral",
    "In_hypergeometric",
    "In_series",
    "Prop1Trial",
    "appendix_index_shift_check",
    "cross_validate",
    "evaluate",
    "evaluate_linear_form",
    "index_shift_pairs",
    "prop1_oracle_check",
    "random_asymptotic_pf",
    "series_tail_bound",
    "sum_tail_integrals",
]

DEFAULT_SAFETY_FACTOR = 10


class Method(str, enum.Enum):
    HYPERGEOMETRIC = "hypergeometric"
    SERIES = "series"
    DOUBLE_INTEGRAL = "double_integral"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class InEvaluation:
    n: int
    method: Method
    value: HPValue
    terms_or_panels_used: int


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")


def heuristic_tolerance(n: int, precision: int):
    """Absolute accuracy aimed at by the quadrature routes.

    Relative to the a-priori bound 2^-4n and capped at ~27 digits; pushing
    quadrature to the full working precision buys nothing for the
    cross-checks and costs minutes.
    """
    return mpmath.ldexp(1, -4 * n - min(precision - 8, 90))


# -- exact linear forms, evaluated ---------------------------------------------------

def _log_int(m: int, cache: dict):
    v = cache.get(m)
    if v is None:
        v = cache[m] = mpmath.log(m)
    return v


def evaluate_linear_form(form: LinearForm, precision: int = 256) -> HPValue:
    """B*gamma + sum c_m log(n+m) - A with the reference gamma, rigorously."""
    terms = form.log_terms()
    scale = abs(form.gamma_coeff) + abs(form.constant) + sum(abs(c) for _, c in terms) * 8
    wp = precision + 32 + max(1, int(scale)).bit_length() + 8 * form.n
    # the table bounds the usable precision; its radius carries the shortfall
    gamma = gamma_reference(min(wp, gamma_table_capacity()))
    with mp.workprec(wp):
        err = abs(to_mpf(form.gamma_coeff)) * gamma.radius
        total = to_mpf(form.gamma_coeff) * gamma.value
        err += ulp(total, wp)
        for arg, c in terms:
            lg = mpmath.log(arg)
            piece = to_mpf(c) * lg
            total += piece
            err += abs(to_mpf(c)) * ulp(lg, wp) * 2 + ulp(piece, wp) + ulp(total, wp)
        total -= to_mpf(form.constant)
        err += ulp(to_mpf(form.constant), wp) * 2 + ulp(total, wp)
    return HPValue.from_estimate(total, err, Rigor.RIGOROUS, precision)


def In_closed_form(n: int, precision: int = 256) -> InEvaluation:
    _check_n(n)
    form = closed_form_Ln_An(n)
    return InEvaluation(n, Method.CLOSED_FORM, evaluate_linear_form(form, precision), len(form.log_coeffs) + 2)


# -- the series of tail integrals -----------------------------------------------------

def series_tail_bound(n: int, V: int):
    """Integral-comparison bound on sum_{v>V} int_v^inf R_n: (n!)^2 V^-2n / (2n(2n+1))."""
    return mpf(math.factorial(n) ** 2) / (2 * n * (2 * n + 1)) / mpf(V) ** (2 * n)


def _mixed_value(mv: MixedValue, logs: dict):
    val = to_mpf(mv.rational)
    mag = abs(val)
    for arg, c in mv.logs:
        piece = to_mpf(c) * _log_int(arg, logs)
        val += piece
        mag += abs(piece)
    return val, mag


def _em_remainder_bound(pf: PartialFraction, start: int, p: int):
    """Bound on the Euler-Maclaurin remainder of order p from ``start`` on.

    |R_p| <= 2 zeta(2p)/(2 pi)^2p * int |f^(2p)|, f^(2p) = -R^(2p-1), and
    each partial fraction's derivative is bounded in absolute value.
    """
    total = mpf(0)
    f2 = mpmath.factorial(2 * p - 1)
    f1 = mpmath.factorial(2 * p - 2)
    for k, (b2, b1) in enumerate(zip(pf.b2, pf.b1)):
        x = mpf(start + k)
        total += abs(to_mpf(b2)) * f2 / x ** (2 * p) + abs(to_mpf(b1)) * f1 / x ** (2 * p - 1)
    return mpf("2.2") / (2 * mpf("3.14159")) ** (2 * p) * total


def _plan_em(pf: PartialFraction, target):
    """Smallest start V and order p whose remainder bound meets ``target``."""
    start = max(8, pf.n + 2)
    while start <= 1 << 16:
        best = None
        for p in range(2, 400):
            b = _em_remainder_bound(pf, start, p)
            if best is None or b < best[0]:
                best = (b, p)
            elif b > best[0] * 1e6:
                break
            if b <= target:
                return start, p, b
        start *= 2
    raise ArithmeticError("Euler-Maclaurin tail could not reach the requested accuracy")


def _r_derivative(pf: PartialFraction, t, m: int):
    """m-th derivative of R at t, from the partial fractions, with its absolute size."""
    sign = -1 if m % 2 else 1
    fm = mpmath.factorial(m)
    fm1 = fm * (m + 1)
    val = mpf(0)
    mag = mpf(0)
    for k, (b2, b1) in enumerate(zip(pf.b2, pf.b1)):
        x = t + k
        piece = to_mpf(b2) * fm1 / x ** (m + 2) + to_mpf(b1) * fm / x ** (m + 1)
        val += piece
        mag += abs(piece)
    return sign * val, mag


def sum_tail_integrals(pf: PartialFraction, precision: int = 256, tol=None) -> tuple[HPValue, int]:
    """Rigorous enclosure of sum_{v=n+1}^inf int_v^inf R(t) dt.

    Terms v < V are summed from their exact closed forms; the rest is
    Euler-Maclaurin from V with a proven remainder bound.  Returns the value
    and the number of terms plus correction orders used.
    """
    if not validate_asymptotic(pf):
        raise ValueError("coefficient table is not O(t^-3)")
    n = pf.n
    beta = sum(abs(x) for x in pf.b1 + pf.b2)
    if beta == 0:
        return HPValue(mpf(0), mpf(0), Rigor.RIGOROUS, precision), 0
    with mp.workprec(precision + 64):
        first = abs(_mixed_value(inner_integral_closed(pf, n + 1), {})[0])
        scale = first if first else mpf(1)
        target = scale * (mpmath.ldexp(1, -precision) if tol is None else mpf(tol)) / 4
        start, p, rem = _plan_em(pf, target)
    guard = 48 + math.ceil((2 * n + 3) * math.log2(start + n)) + int(beta).bit_length()
    wp = precision + guard
    logs: dict = {}
    with mp.workprec(wp):
        total = mpf(0)
        mag = mpf(0)
        for v in range(n + 1, start):
            val, m_ = _mixed_value(inner_integral_closed(pf, v), logs)
            total += val
            mag += m_
        # Euler-Maclaurin from `start`: int f + f/2 + sum B_2j/(2j)! R^(2j-2)
        V = mpf(start)
        integral = mpf(0)
        for k, (b2, b1) in enumerate(zip(pf.b2, pf.b1)):
            c = to_mpf(b2) - (k + start) * to_mpf(b1)
            piece = -c * _log_int(start + k, logs)
            integral += piece - to_mpf(b2)
            mag += abs(piece) + abs(to_mpf(b2))
        total += integral
        fV, m_ = _mixed_value(inner_integral_closed(pf, start), logs)
        total += fV / 2
        mag += m_
        for j in range(1, p):
            d, m_ = _r_derivative(pf, V, 2 * j - 2)
            coeff = mpmath.bernoulli(2 * j) / mpmath.factorial(2 * j)
            total += coeff * d
            mag += abs(coeff) * m_
        radius = rem + mag * mpmath.ldexp(1, -wp) * (8 * (n + 2) + 16)
    value = HPValue.from_estimate(total, radius, Rigor.RIGOROUS, precision)
    return value, (start - n - 1) + p


def In_series(n: int, precision: int = 256) -> InEvaluation:
    _check_n(n)
    value, used = sum_tail_integrals(decompose_Rn(n), precision)
    return InEvaluation(n, Method.SERIES, value, used)


# -- the hypergeometric integral ----------------------------------------------------

def _hyp_tail_bound(n: int):
    c = math.factorial(n) ** 2

    def bound(T):
        return c * (T ** (-2 * n - 1) / (2 * n + 1) + T ** (-2 * n) / (2 * n * (2 * n + 1)))

    return bound


def hypergeometric_integrand(n: int, t, precision: int = 256, rel_tol=None):
    """(n!)^2 Gamma(t) / ((2n+1) Gamma(2n+1+t)) * 3F2(n+1, n+1, 2n+1; 2n+2, 2n+1+t | 1)."""
    params = HypergeometricParams((n + 1, n + 1, 2 * n + 1), (2 * n + 2, 2 * n + 1 + t))
    f = eval_3F2(params, precision, rel_tol)
    ratio = gamma_ratio_poly(HPValue(t, mpf(0), Rigor.RIGOROUS, precision), 2 * n + 1)
    return ratio * f * Fraction(math.factorial(n) ** 2, 2 * n + 1)


def In_hypergeometric(n: int, precision: int = 256, tol=None) -> InEvaluation:
    _check_n(n)
    tol = heuristic_tolerance(n, precision) if tol is None else tol
    node_tol = mpmath.ldexp(1, -min(precision - 4, 110))

    def f(t):
        return hypergeometric_integrand(n, t, precision, node_tol).value

    info: dict = {}
    value = integrate_semi_infinite(f, n + 1, _hyp_tail_bound(n), precision, tol, info=info)
    return InEvaluation(n, Method.HYPERGEOMETRIC, value, info["panels"])


# -- the double integral --------------------------------------------------------------

def double_integrand(n: int):
    """(x(1-x)y(1-y))^n / ((1-xy)(-log xy)) written in terms of x, y and 1-x, 1-y."""

    @lru_cache(maxsize=None)
    def node(x, xc):
        lg = mpmath.log1p(-xc) if xc < 0.5 else mpmath.log(x)
        return (x * xc) ** n, lg

    def f(x, y, xc, yc):
        px, lx = node(x, xc)
        py, ly = node(y, yc)
        return px * py / ((xc + yc - xc * yc) * -(lx + ly))

    return f


def In_double_integral(n: int, precision: int = 256, tol=None, max_level: int = 8) -> InEvaluation:
    _check_n(n)
    tol = heuristic_tolerance(n, precision) if tol is None else tol
    info: dict = {}
    value = integrate_unit_square(double_integrand(n), precision, max_level, tol, symmetric=True, info=info)
    return InEvaluation(n, Method.DOUBLE_INTEGRAL, value, info["nodes"])


# -- dispatch and cross-validation ----------------------------------------------------

_ROUTES = {
    Method.HYPERGEOMETRIC: In_hypergeometric,
    Method.SERIES: In_series,
    Method.DOUBLE_INTEGRAL: In_double_integral,
    Method.CLOSED_FORM: In_closed_form,
}


def evaluate(n: int, method, precision: int = 256) -> InEvaluation:
    return _ROUTES[Method(method)](n, precision)


@dataclass(frozen=True)
class CrossValidation:
    n: int
    evaluations: tuple[InEvaluation, ...]
    max_gap: mpf
    all_agree: bool
    safety_factor: float


def _factor(ev: InEvaluation, safety):
    return 1 if ev.value.is_rigorous else safety


def cross_validate(n: int, precision: int = 256, safety_factor=DEFAULT_SAFETY_FACTOR) -> CrossValidation:
    """All four routes; heuristic radii are inflated by ``safety_factor`` before comparing."""
    evs = tuple(evaluate(n, m, precision) for m in Method)
    agree = True
    max_gap = mpf(0)
    for i, a in enumerate(evs):
        for b in evs[i + 1:]:
            max_gap = max(max_gap, a.value.gap(b.value))
            if not a.value.overlaps(b.value, _factor(a, safety_factor), _factor(b, safety_factor)):
                agree = False
    return CrossValidation(n, evs, max_gap, agree, safety_factor)


# -- re-indexing of the shifted series ------------------------------------------

def index_shift_pairs(n: int, terms: int = 5, precision: int = 96) -> list[tuple[HPValue, HPValue]]:
    """Quadrature of int_k^inf (n!/((t+n+1)...(t+2n+1)))^2 dt against int_{k+n+1}^inf R_n."""
    _check_n(n)
    fact = mpf(math.factorial(n))
    c = fact**2 / (2 * n + 1)

    def shifted(t):
        prod = mpf(1)
        for j in range(n + 1, 2 * n + 2):
            prod *= t + j
        return (fact / prod) ** 2

    def rn(t):
        prod = mpf(1)
        for j in range(n + 1):
            prod *= t + j
        return (fact / prod) ** 2

    tol = mpmath.ldexp(1, -precision + 8)
    pairs = []
    for k in range(terms):
        left = integrate_semi_infinite(
            shifted, k, lambda T: c / (T + n + 1) ** (2 * n + 1), precision, tol)
        right = integrate_semi_infinite(
            rn, k + n + 1, lambda T: c / T ** (2 * n + 1), precision, tol)
        pairs.append((left, right))
    return pairs


def appendix_index_shift_check(n: int, terms: int = 5, precision: int = 96) -> bool:
    return all(a.overlaps(b) for a, b in index_shift_pairs(n, terms, precision))


# -- oracle for the general construction on random coefficient tables ------------

def random_asymptotic_pf(rng: random.Random, n_max: int = 4, bound: int = 5) -> PartialFraction:
    """Random integer table, with B_{01} and B_{02} adjusted so that R = O(t^-3)."""
    n = rng.randint(1, n_max)
    b2 = [rng.randint(-bound, bound) for _ in range(n + 1)]
    b1 = [rng.randint(-bound, bound) for _ in range(n + 1)]
    b1[0] = -sum(b1[1:])
    b2[0] = sum(k * b1[k] for k in range(n + 1)) - sum(b2[1:])
    return PartialFraction(n, tuple(b2), tuple(b1))


@dataclass(frozen=True)
class Prop1Trial:
    pf: PartialFraction
    series: HPValue
    linear_form: HPValue
    agree: bool


def prop1_oracle_check(seed: int = 0, trials: int = 20, n_max: int = 4,
                       precision: int = 128) -> list[Prop1Trial]:
    """Numerical series sum against B*gamma + L - A for random valid tables."""
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        pf = random_asymptotic_pf(rng, n_max)
        series, _ = sum_tail_integrals(pf, precision)
        form = evaluate_linear_form(build_linear_form(pf), precision)
        out.append(Prop1Trial(pf, series, form, series.overlaps(form)))
    return out
