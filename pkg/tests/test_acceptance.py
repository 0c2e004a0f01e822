"""Acceptance criteria 1-10.

Each test prints one ``criterion k: PASS/FAIL`` line (shown with ``-s`` and
repeated in the terminal summary).  Run standalone with
``python tests/test_acceptance.py``.
"""

import random
import subprocess
import sys
import time
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from gamma_forms.criterion import Equality, check_theorem1, extract_gamma
from gamma_forms.exact import lcm_upto, s_n_exponent
from gamma_forms.linforms import check_inclusion, closed_form_Ln_An
from gamma_forms.numerics import (
    beta_integral_check,
    integrand_params,
    random_thomae_params,
    thomae_check,
)
from gamma_forms.representations import (
    In_series,
    appendix_index_shift_check,
    cross_validate,
    prop1_oracle_check,
)

from oracles import brent_mcmillan_gamma


def test_criterion_01_cross_method_agreement(record_criterion):
    start = time.perf_counter()
    worst = mpf(0)
    ok = True
    for n in range(1, 7):
        cv = cross_validate(n, 256, safety_factor=10)
        evs = cv.evaluations
        for i, a in enumerate(evs):
            for b in evs[i + 1:]:
                fa = 1 if a.value.is_rigorous else cv.safety_factor
                fb = 1 if b.value.is_rigorous else cv.safety_factor
                with mp.workprec(300):
                    allowed = max(mpf(10) ** -15, a.value.radius * fa + b.value.radius * fb)
                    gap = a.value.gap(b.value)
                ok &= gap <= allowed
                worst = max(worst, gap)
    elapsed = time.perf_counter() - start
    ok &= elapsed < 300
    record_criterion(1, ok, f"n=1..6, max gap {mpmath.nstr(worst, 3)}, {elapsed:.0f} s")
    assert ok


def test_criterion_02_closed_form_spot_values(record_criterion):
    with mp.workdps(60):
        g = brent_mcmillan_gamma(80)
        oracle = {1: 2 * g + 2 * mpmath.log(2) - mpf(5) / 2,
                  2: 6 * g + 3 * mpmath.log(3) + 3 * mpmath.log(4) - mpf(131) / 12}
        digits = {}
        for n, ref in oracle.items():
            v = In_series(n, 256).value.value
            digits[n] = int(-mpmath.log10(abs(v - ref) / ref)) if v != ref else 60
    ok = all(d >= 10 for d in digits.values())
    record_criterion(2, ok, f"I_1 {digits[1]} digits, I_2 {digits[2]} digits")
    assert ok


def test_criterion_03_inequality(record_criterion):
    margins = []
    for n in range(1, 11):
        v = In_series(n, 256).value
        with mp.workprec(256):
            margins.append(v.upper < mpf(2) ** (-4 * n))
    ok = all(margins)
    record_criterion(3, ok, "I_n + radius < 2^-4n for n=1..10")
    assert ok


def test_criterion_04_integrality(record_criterion):
    ok = True
    for n in range(1, 26):
        rep = check_inclusion(n)
        ok &= rep.d2n_A_integral and rep.d2n_logcoeffs_integral
    for n in range(1, 13):
        d = lcm_upto(2 * n)
        coeffs = closed_form_Ln_An(n).log_coeffs
        ok &= all(d * c == s_n_exponent(n, m) for m, c in enumerate(coeffs, start=1))
    record_criterion(4, ok, "d_2n A_n, d_2n c_m integral n<=25; exponents match n<=12")
    assert ok


def test_criterion_05_residuals(record_criterion):
    with mp.workdps(60):
        g = brent_mcmillan_gamma(80)
        want = {1: 4 * g - 3, 2: 72 * g - 42}
        r = {n: check_theorem1(n, 256) for n in (1, 2)}
        ok = all(abs(r[n].residual.value - want[n]) < mpf(10) ** -8 for n in (1, 2))
    verdicts = [check_theorem1(n, 256).equality_holds for n in range(1, 7)]
    ok &= all(v is Equality.NO for v in verdicts)
    record_criterion(5, ok, f"delta_1={mpmath.nstr(r[1].residual.value, 8)}, "
                            f"delta_2={mpmath.nstr(r[2].residual.value, 8)}, n=1..6 all 'no'")
    assert ok


def test_criterion_06_linear_form_oracle(record_criterion):
    trials = prop1_oracle_check(seed=0, trials=20, n_max=4)
    failures = sum(not t.agree for t in trials)
    ok = len(trials) == 20 and failures == 0
    record_criterion(6, ok, f"{len(trials)} random tables, {failures} failures")
    assert ok


def test_criterion_07_thomae(record_criterion):
    rng = random.Random(0)
    results = [thomae_check(random_thomae_params(rng), 128).agree for _ in range(25)]
    for n in (1, 2, 3):
        for t in (Fraction(n + 1), Fraction(2 * n + 5, 2)):
            results.append(thomae_check(integrand_params(n, t), 128).agree)
    ok = len(results) == 31 and all(results)
    record_criterion(7, ok, f"{sum(results)}/{len(results)} parameter sets agree")
    assert ok


def test_criterion_08_beta_and_index_shift(record_criterion):
    beta = [beta_integral_check(n, t, 128).agree
            for n in range(1, 5) for t in (Fraction(1, 2), Fraction(1), Fraction(5, 2))]
    shift = [appendix_index_shift_check(n) for n in (1, 2, 3)]
    ok = all(beta) and all(shift)
    record_criterion(8, ok, f"beta {sum(beta)}/12, index shift {sum(shift)}/3")
    assert ok


def test_criterion_09_gamma_extraction(record_criterion):
    lo = extract_gamma(3, 256)
    hi = extract_gamma(3, 512)
    ok = lo.digits >= 12 and hi.digits > lo.digits and lo.agree and hi.agree
    record_criterion(9, ok, f"{lo.digits} digits at 256 bits, {hi.digits} at 512 bits")
    assert ok


def test_criterion_10_determinism(record_criterion):
    cmd = [sys.executable, "-m", "gamma_forms", "criterion", "--n-max", "6", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    ok = a == b and len(a) > 0
    record_criterion(10, ok, f"two runs, {len(a)} bytes each, identical={a == b}")
    assert ok


if __name__ == "__main__":
    import pytest

    sys.exit(pytest.main([__file__, "-s", "-q"]))
