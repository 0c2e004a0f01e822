import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf

from gamma_forms.numerics import (
    HPValue,
    HypergeometricParams,
    eval_3F2,
    gamma_ratio_poly,
    integrand_params,
    random_thomae_params,
    thomae_check,
)


def test_basel_value():
    # 3F2(1,1,1;2,2|1) = zeta(2)
    v = eval_3F2(HypergeometricParams((1, 1, 1), (2, 2)), 256)
    with mp.workprec(300):
        assert abs(v.value - mpmath.pi**2 / 6) <= v.radius
    assert v.radius < mpf(2) ** -240
    assert v.is_rigorous


def _gauss(a, b, e):
    # 2F1(a, b; e | 1) = Gamma(e) Gamma(e-a-b) / (Gamma(e-a) Gamma(e-b))
    return mpmath.gamma(e) * mpmath.gamma(e - a - b) / (mpmath.gamma(e - a) * mpmath.gamma(e - b))


pos = st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=8)


@settings(max_examples=25, deadline=None)
@given(pos, pos, pos, st.fractions(min_value=Fraction(1, 2), max_value=4, max_denominator=8))
def test_reduces_to_gauss_sum(a, b, c, s):
    # with a lower parameter equal to an upper one, 3F2 collapses to 2F1
    e = a + b + s
    v = eval_3F2(HypergeometricParams((a, b, c), (c, e)), 128)
    with mp.workprec(200):
        exact = _gauss(mpf(a.numerator) / a.denominator, mpf(b.numerator) / b.denominator,
                       mpf(e.numerator) / e.denominator)
        assert abs(v.value - exact) <= v.radius


def test_terminating_parameter():
    assert eval_3F2(HypergeometricParams((0, 2, 3), (1, 1)), 64).value == 1


def test_invalid_parameters():
    with pytest.raises(ValueError):
        eval_3F2(HypergeometricParams((1, 1, 1), (1, 2)), 64)
    with pytest.raises(ValueError):
        eval_3F2(HypergeometricParams((-1, 1, 1), (3, 3)), 64)
    with pytest.raises(ValueError):
        HypergeometricParams((1, 1), (2, 2))
    with pytest.raises(ValueError):
        HypergeometricParams((1, 1, HPValue(mpf(1), mpf("0.1"))), (3, 3))


def test_margin_and_image():
    p = integrand_params(2, 3)
    assert p.margin == 3
    img = p.thomae_image()
    assert img.upper == (3, 3, 5)
    assert img.lower == (6, 8)
    assert img.margin == p.upper[0]


@pytest.mark.parametrize("params", [((1, 1, 1), (2, 2)), ((2, 2, 3), (4, Fraction(11, 2)))])
def test_partial_sums_stay_below_upper_end(params):
    # brute-force partial sums of a positive series never exceed the limit
    v = eval_3F2(HypergeometricParams(*params), 64)
    (a, b, c), (d, e) = params
    with mp.workprec(80):
        term, total = mpf(1), mpf(0)
        for k in range(20000):
            total += term
            term *= mpf(a + k) * (b + k) * (c + k) / ((k + 1) * mpf(d + k) * (e + k))
        assert total <= v.value + v.radius


@pytest.mark.parametrize("params", [((1, 1, 1), (2, 2)), ((2, 2, 3), (4, Fraction(11, 2))),
                                    ((3, 3, 5), (6, Fraction(17, 2)))])
def test_nesting_across_precisions(params):
    p = HypergeometricParams(*params)
    v64, v128, v256 = (eval_3F2(p, prec) for prec in (64, 128, 256))
    assert v64.contains_interval(v128) or v64.overlaps(v128)
    assert v128.overlaps(v256)
    assert v64.contains(v256.value) and v128.contains(v256.value)
    assert v256.radius < v128.radius < v64.radius


def test_thomae_random_sets():
    rng = random.Random(20240611)
    for _ in range(25):
        p = random_thomae_params(rng)
        s = p.margin
        assert Fraction(1, 2) <= s <= 5
        assert p.lower[0] > p.upper[0] and p.lower[1] > p.upper[0]
        assert thomae_check(p, 128).agree


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("dt", [1, Fraction(5, 2)])
def test_thomae_on_integrand_parameters(n, dt):
    assert thomae_check(integrand_params(n, n + dt), 128).agree


def test_thomae_domain():
    with pytest.raises(ValueError):
        thomae_check(HypergeometricParams((3, 1, 1), (2, 5)), 64)


def test_gamma_ratio_poly_products():
    rng = random.Random(5)
    for _ in range(50):
        t = Fraction(rng.randint(1, 10**6), 10**4)
        shift = rng.randint(0, 12)
        r = gamma_ratio_poly(t, shift, 128)
        prod = Fraction(1)
        for i in range(shift):
            prod *= t + i
        with mp.workprec(200):
            err = abs(r.value * mpf(prod.numerator) / prod.denominator - 1)
        assert err <= 2 * mpf(2) ** -126 * (shift + 1)


def test_gamma_ratio_poly_domain():
    with pytest.raises(ValueError):
        gamma_ratio_poly(-1, 2)
    with pytest.raises(ValueError):
        gamma_ratio_poly(1, -1)
