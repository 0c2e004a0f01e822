from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from gamma_forms.numerics.hpvalue import HPValue, Rigor, mpf_to_fraction, to_mpf, ulp

fractions = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)


def _exact_mid(x: HPValue) -> Fraction:
    return mpf_to_fraction(x.value)


def _encloses(x: HPValue, q: Fraction) -> bool:
    return abs(_exact_mid(x) - q) <= mpf_to_fraction(x.radius)


@given(fractions, fractions)
def test_arithmetic_encloses_exact_result(p, q):
    a = HPValue.exact(p, 64)
    b = HPValue.exact(q, 64)
    assert _encloses(a + b, p + q)
    assert _encloses(a - b, p - q)
    assert _encloses(a * b, p * q)
    if q != 0:
        assert _encloses(a / b, p / q)


def test_negation_keeps_precision():
    # regression: negating under the default 53-bit context lost digits
    x = HPValue.exact(Fraction(1, 3), 256)
    y = -x
    with mp.workprec(256):
        assert y.value + x.value == 0
    assert (x - x).value == 0
    assert _encloses(1 - x, Fraction(2, 3))


def test_exact_integer_has_zero_radius():
    assert HPValue.exact(12345, 64).radius == 0
    assert HPValue.exact(Fraction(1, 4), 64).radius == 0
    assert HPValue.exact(Fraction(1, 3), 64).radius > 0


def test_from_estimate_absorbs_rounding():
    with mp.workprec(300):
        v = mpf(1) / 3
    h = HPValue.from_estimate(v, 0, Rigor.HEURISTIC, 64)
    assert h.prec == 64 and h.rigor is Rigor.HEURISTIC
    with mp.workprec(300):
        assert abs(h.value - v) <= h.radius


def test_rigor_combination():
    a = HPValue.exact(1, 64)
    b = HPValue(mpf(2), mpf("1e-10"), Rigor.HEURISTIC, 64)
    assert (a + b).rigor is Rigor.HEURISTIC
    assert (a * a).rigor is Rigor.RIGOROUS


def test_overlap_and_gap():
    a = HPValue(mpf(1), mpf("0.1"), Rigor.RIGOROUS, 64)
    b = HPValue(mpf("1.25"), mpf("0.1"), Rigor.HEURISTIC, 64)
    assert not a.overlaps(b)
    assert a.overlaps(b, 1, 2)
    assert a.overlaps(b, 2)
    assert abs(a.gap(b) - mpf("0.25")) < 1e-15
    assert a.inflated(10).contains_interval(b)


def test_log_encloses():
    x = HPValue.exact(Fraction(7, 3), 128)
    with mp.workprec(200):
        assert abs(mpmath.log(mpf(7) / 3) - x.log().value) <= x.log().radius
    with pytest.raises(ValueError):
        HPValue(mpf(0), mpf(1), Rigor.RIGOROUS, 64).log()


def test_division_by_interval_containing_zero():
    with pytest.raises(ZeroDivisionError):
        HPValue.exact(1, 64) / HPValue(mpf(0), mpf("0.1"), Rigor.RIGOROUS, 64)


def test_negative_radius_rejected():
    with pytest.raises(ValueError):
        HPValue(mpf(1), mpf(-1))


def test_helpers():
    with mp.workprec(64):
        assert to_mpf(Fraction(1, 2)) == mpf("0.5")
        assert ulp(mpf(1), 10) == mpmath.ldexp(1, -9)
        assert ulp(0, 10) == 0
    assert mpf_to_fraction(mpf("0.375")) == Fraction(3, 8)
    assert mpf_to_fraction(mpf(48)) == 48
