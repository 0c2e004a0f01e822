"""Euler's constant from a vendored digit table, and logarithms of factored integers."""

from __future__ import annotations

import math
import os
from functools import lru_cache
from importlib import resources
from pathlib import Path

import mpmath
from mpmath import mp, mpf

from ..exact import FactoredInteger
from .hpvalue import HPValue, Rigor, ulp

__all__ = ["DIGITS_ENV_VAR", "gamma_reference", "gamma_table_capacity", "load_gamma_digits", "log_factored"]

DIGITS_ENV_VAR = "GAMMA_FORMS_DIGITS_PATH"
_LOG2_10 = math.log2(10)


def _digits_source() -> str:
    override = os.environ.get(DIGITS_ENV_VAR)
    if override:
        return Path(override).read_text()
    return resources.files(__package__).joinpath("data/euler_gamma.txt").read_text()


@lru_cache(maxsize=8)
def _parse_digits(text: str) -> str:
    first = text.strip().splitlines()[0].strip()
    if not first.startswith("0.") or not first[2:].isdigit():
        raise ValueError("digit table must start with a line of the form 0.5772156649...")
    if not first.startswith("0.5772156649"):
        raise ValueError("digit table does not hold Euler's constant")
    return first[2:]


def load_gamma_digits() -> str:
    """Decimal digits of gamma after the point, as stored."""
    return _parse_digits(_digits_source())


def gamma_table_capacity() -> int:
    """Largest precision in bits that the table can back (8 bits of headroom)."""
    return int(len(load_gamma_digits()) * _LOG2_10) - 8


def gamma_reference(precision: int = 256) -> HPValue:
    """gamma rounded to ``precision`` bits; radius covers truncation and rounding."""
    digits = load_gamma_digits()
    if precision > gamma_table_capacity():
        raise ValueError(
            f"{precision} bits requested but the digit table only supports "
            f"{gamma_table_capacity()} bits")
    used = min(len(digits), math.ceil(precision / _LOG2_10) + 4)
    with mp.workprec(precision + 16):
        exact = mpf("0." + digits[:used])
        trunc = mpf(10) ** (-used)
    return HPValue.from_estimate(exact, trunc + ulp(exact, precision + 16), Rigor.RIGOROUS, precision)


def log_factored(F: FactoredInteger, precision: int = 256) -> HPValue:
    """sum e_i log(b_i), with rounding errors of every log, product and sum tracked."""
    factors = list(F)
    if not factors:
        return HPValue(mpf(0), mpf(0), Rigor.RIGOROUS, precision)
    extra = max(e.bit_length() for _, e in factors) + 16
    wp = precision + extra
    with mp.workprec(wp):
        total = mpf(0)
        err = mpf(0)
        for base, expo in factors:
            lg = mpmath.log(base)
            term = expo * lg
            total += term
            # log rounding scaled by the exponent, product rounding, sum rounding
            err += expo * ulp(lg, wp) + ulp(term, wp) + ulp(total, wp)
    return HPValue.from_estimate(total, err, Rigor.RIGOROUS, precision)
