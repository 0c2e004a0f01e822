"""The fractional-part criterion for Euler's constant.

gamma is rational exactly when frac(log S_n) = d_{2n} I_n for some (and then
every large) n.  At finite precision the equality can be refuted but never
confirmed, so the verdict is ternary.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from .exact import binomial, lcm_upto, s_n_factored
from .linforms import check_inclusion, closed_form_Ln_An
from .numerics import HPValue, Rigor, gamma_reference, gamma_table_capacity, log_factored
from .numerics.constants import load_gamma_digits
from .numerics.hpvalue import to_mpf, ulp
from .representations import DEFAULT_SAFETY_FACTOR, Method, evaluate

__all__ = [
    "CriterionReport",
    "Equality",
    "GammaExtraction",
    "ImpliedGamma",
    "PrecisionExhausted",
    "certified_log_Sn",
    "check_theorem1",
    "criterion_sweep",
    "extract_gamma",
    "implied_gamma_approx",
    "matching_digits",
]

MAX_RETRIES = 4


class PrecisionExhausted(ArithmeticError):
    """An interval still straddled an integer (or zero) at the retry cap."""


class Equality(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNDECIDABLE = "undecidable"


@dataclass(frozen=True)
class CriterionReport:
    n: int
    precision: int
    method: Method
    log_Sn: HPValue
    floor_log_Sn: int
    frac_log_Sn: HPValue
    d2n_In: HPValue
    residual: HPValue
    residual_identity: HPValue
    equality_holds: Equality
    implied_gamma: Fraction
    implied_gamma_gap: HPValue
    inequality_In_lt_2pow: bool
    inclusion_ok: bool


@dataclass(frozen=True)
class ImpliedGamma:
    q: Fraction
    gap: HPValue


def _magnitude_bits(n: int) -> int:
    # log S_n = d_{2n} L_n <= d_{2n} * sum c_m * log(2n), a generous size estimate
    form = closed_form_Ln_An(n)
    size = lcm_upto(2 * n) * sum(form.log_coeffs) * math.log(2 * n + 1)
    return max(1, int(size) + 1).bit_length()


def certified_log_Sn(n: int, precision: int = 256) -> tuple[HPValue, int]:
    """log S_n with a floor that is proven: the enclosure contains no integer.

    Precision doubles up to MAX_RETRIES times before giving up.
    """
    prec = precision
    for _ in range(MAX_RETRIES + 1):
        val = log_factored(s_n_factored(n), prec + _magnitude_bits(n))
        with mp.workprec(val.prec + 8):
            lo, hi = val.lower, val.upper
            f = int(mpmath.floor(lo))
            ok = int(mpmath.floor(hi)) == f and lo != f
        if ok:
            return val, f
        prec *= 2
    raise PrecisionExhausted(f"floor(log S_{n}) could not be certified")


def implied_gamma_approx(n: int, precision: int = 256) -> ImpliedGamma:
    """The rational q that would make the criterion's equality hold, and |gamma - q|."""
    _, floor_ = certified_log_Sn(n, precision)
    form = closed_form_Ln_An(n)
    d = lcm_upto(2 * n)
    q = (d * form.constant - floor_) / (d * form.gamma_coeff)
    gap = gamma_reference(precision) - q
    if gap.value < 0:
        gap = -gap
    return ImpliedGamma(q, gap)


def _residual_identity(n: int, floor_: int, precision: int) -> HPValue:
    """d_{2n} C(2n,n) gamma - d_{2n} A_n + floor(log S_n), which avoids I_n."""
    form = closed_form_Ln_An(n)
    d = lcm_upto(2 * n)
    coeff = d * binomial(2 * n, n)
    wp = min(precision + coeff.bit_length() + 16, gamma_table_capacity())
    g = gamma_reference(wp)
    shift = Fraction(floor_) - d * form.constant
    out = g * coeff + shift
    return HPValue.from_estimate(out.value, out.radius, out.rigor, precision)


def _verdict(residual: HPValue, rigor_factor) -> Equality:
    with mp.workprec(residual.prec + 16):
        if abs(residual.value) > residual.radius * rigor_factor:
            return Equality.NO
    return Equality.UNDECIDABLE


def check_theorem1(n: int, precision: int = 256, In_method=Method.SERIES,
                   safety_factor=DEFAULT_SAFETY_FACTOR) -> CriterionReport:
    """Compare frac(log S_n) with d_{2n} I_n; escalate precision while undecided."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    method = Method(In_method)
    prec = precision
    for attempt in range(MAX_RETRIES + 1):
        report = _check_once(n, prec, method, safety_factor)
        if report.equality_holds is not Equality.UNDECIDABLE or attempt == MAX_RETRIES:
            return report
        prec *= 2
    return report


def _check_once(n, precision, method, safety_factor) -> CriterionReport:
    log_sn, floor_ = certified_log_Sn(n, precision)
    frac = log_sn - floor_
    frac = HPValue.from_estimate(frac.value, frac.radius, frac.rigor, precision)
    d = lcm_upto(2 * n)
    ev = evaluate(n, method, precision)
    d2n_in = ev.value * d
    residual = d2n_in - frac
    factor = 1 if residual.is_rigorous else safety_factor
    implied = implied_gamma_approx(n, precision)
    with mp.workprec(precision):
        bound = mpmath.ldexp(1, -4 * n)
        below = ev.value.upper < bound
    incl = check_inclusion(n)
    return CriterionReport(
        n=n,
        precision=precision,
        method=method,
        log_Sn=log_sn,
        floor_log_Sn=floor_,
        frac_log_Sn=frac,
        d2n_In=d2n_in,
        residual=residual,
        residual_identity=_residual_identity(n, floor_, precision),
        equality_holds=_verdict(residual, factor),
        implied_gamma=implied.q,
        implied_gamma_gap=implied.gap,
        inequality_In_lt_2pow=bool(below),
        inclusion_ok=incl.d2n_A_integral and incl.d2n_logcoeffs_integral,
    )


def criterion_sweep(n_max: int, precision: int = 256, In_method=Method.SERIES,
                    safety_factor=DEFAULT_SAFETY_FACTOR) -> list[CriterionReport]:
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    return [check_theorem1(n, precision, In_method, safety_factor) for n in range(1, n_max + 1)]


# -- gamma recovered from I_n -------------------------------------------------------

@dataclass(frozen=True)
class GammaExtraction:
    n: int
    method: Method
    gamma: HPValue
    reference: HPValue
    agree: bool
    digits: int


def matching_digits(x: HPValue) -> int:
    """Leading decimal digits of x.value that agree with the stored table."""
    digits = load_gamma_digits()
    with mp.workprec(int(len(digits) * 3.33) + 16):
        diff = abs(mpf(x.value) - mpf("0." + digits))
        if diff == 0:
            return len(digits)
        return max(0, min(len(digits), int(mpmath.floor(-mpmath.log10(diff)))))


def extract_gamma(n: int, precision: int = 256, In_method=Method.SERIES,
                  safety_factor=DEFAULT_SAFETY_FACTOR) -> GammaExtraction:
    """gamma = (I_n + A_n - sum c_m log(n+m)) / C(2n, n), from a non-circular route."""
    method = Method(In_method)
    if method is Method.CLOSED_FORM:
        raise ValueError("closed_form already contains gamma; extraction would be circular")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    ev = evaluate(n, method, precision)
    form = closed_form_Ln_An(n)
    wp = precision + 32 + 8 * n
    with mp.workprec(wp):
        acc = to_mpf(form.constant)
        err = ulp(acc, wp)
        for arg, c in form.log_terms():
            piece = to_mpf(c) * mpmath.log(arg)
            acc -= piece
            err += 3 * ulp(piece, wp) + ulp(acc, wp)
    rest = HPValue.from_estimate(acc, err, Rigor.RIGOROUS, wp)
    gamma = (ev.value + rest) / int(form.gamma_coeff)
    gamma = HPValue.from_estimate(gamma.value, gamma.radius, gamma.rigor, precision)
    ref = gamma_reference(precision)
    factor = 1 if gamma.is_rigorous else safety_factor
    return GammaExtraction(n, method, gamma, ref, gamma.overlaps(ref, factor, 1), matching_digits(gamma))
