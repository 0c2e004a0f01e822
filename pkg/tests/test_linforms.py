from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st
from mpmath import mp

from gamma_forms.linforms import (
    NotAsymptoticError,
    PartialFraction,
    build_linear_form,
    check_inclusion,
    closed_form_Ln_An,
    decompose_Rn,
    inner_integral_closed,
    validate_asymptotic,
)

from oracles import direct_Rn


def _exact_Rn(n, t):
    prod = Fraction(1)
    for j in range(n + 1):
        prod *= t + j
    f = 1
    for j in range(2, n + 1):
        f *= j
    return (Fraction(f) / prod) ** 2


@given(st.integers(min_value=1, max_value=8),
       st.fractions(min_value=Fraction(1, 7), max_value=50, max_denominator=50))
def test_partial_fractions_reproduce_Rn_exactly(n, t):
    assert decompose_Rn(n)(t) == _exact_Rn(n, t)


def test_partial_fraction_coefficients_n1():
    pf = decompose_Rn(1)
    assert pf.b2 == (1, 1)
    assert pf.b1 == (-2, 2)


@pytest.mark.parametrize("n", range(1, 16))
def test_decomposition_is_asymptotic(n):
    assert validate_asymptotic(decompose_Rn(n))


def test_known_linear_forms():
    f1 = closed_form_Ln_An(1)
    assert (f1.gamma_coeff, f1.log_coeffs, f1.constant) == (2, (2,), Fraction(5, 2))
    f2 = closed_form_Ln_An(2)
    assert (f2.gamma_coeff, f2.log_coeffs, f2.constant) == (6, (3, 3), Fraction(131, 12))
    assert f2.log_terms() == [(3, 3), (4, 3)]


@pytest.mark.parametrize("n", range(1, 13))
def test_general_construction_matches_direct_sums(n):
    assert build_linear_form(decompose_Rn(n)) == closed_form_Ln_An(n)


def test_not_asymptotic_rejected():
    pf = PartialFraction(1, (1, 0), (1, 0))
    assert not validate_asymptotic(pf)
    with pytest.raises(NotAsymptoticError):
        build_linear_form(pf)
    with pytest.raises(NotAsymptoticError):
        inner_integral_closed(pf, 2)


def test_partial_fraction_shape_checked():
    with pytest.raises(ValueError):
        PartialFraction(2, (1, 2), (0, 0, 0))
    with pytest.raises(ValueError):
        PartialFraction(0, (1,), (0,))
    assert PartialFraction.zero(3)(5) == 0


def test_first_inner_integral_n1():
    # int_2^inf (1/(t(t+1)))^2 dt = 5/6 - 2 log(3/2)
    mv = inner_integral_closed(decompose_Rn(1), 2)
    assert mv.rational == Fraction(5, 6)
    assert sorted(mv.logs) == [(2, 2), (3, -2)]
    with mp.workdps(30):
        val = mpmath.mpf(5) / 6 - 2 * mpmath.log(mpmath.mpf(3) / 2)
        # quadrature oracle value; 0.0224026 quoted elsewhere is off in the 7th digit
        assert abs(val - mpmath.mpf("0.02240311711700456937730710240")) < 1e-28


@pytest.mark.parametrize("n,nu", [(1, 2), (1, 7), (2, 3), (3, 5), (4, 9)])
def test_inner_integral_against_quadrature(n, nu):
    mv = inner_integral_closed(decompose_Rn(n), nu)
    with mp.workdps(70):
        closed = mpmath.mpf(mv.rational.numerator) / mv.rational.denominator
        closed += sum(mpmath.mpf(c.numerator) / c.denominator * mpmath.log(a) for a, c in mv.logs)
        numeric = mpmath.quad(lambda t: direct_Rn(n, t), [nu, 2 * nu, 10 * nu, mpmath.inf])
        assert abs(closed - numeric) < mpmath.mpf(10) ** -32 * abs(numeric)


def test_inner_integral_domain():
    with pytest.raises(ValueError):
        inner_integral_closed(decompose_Rn(3), 3)


@pytest.mark.parametrize("n", range(1, 26))
def test_inclusion(n):
    rep = check_inclusion(n)
    assert rep.d2n_A_integral and rep.d2n_logcoeffs_integral
    assert rep.d2n_gamma_coeff % rep.d2n == 0
