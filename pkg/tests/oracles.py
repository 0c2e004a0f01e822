"""Independent reference computations used by the tests.

Nothing here imports gamma_forms.
"""

import mpmath
from mpmath import mp, mpf


def brent_mcmillan_gamma(digits: int) -> mpf:
    """Euler's constant via U/V - log N, error about exp(-4N)."""
    N = int(digits * 2.302585 / 4) + 10
    with mp.workdps(digits + 30):
        logN = mpmath.log(N)
        a = -logN
        b = mpf(1)
        U, V = a, b
        k = 1
        N2 = mpf(N) ** 2
        while True:
            b = b * N2 / (k * k)
            a = (a * N2 / k + b) / k
            U += a
            V += b
            if abs(a) < mpf(10) ** (-digits - 25) * abs(U) and k > N:
                break
            k += 1
        return U / V


def direct_Rn(n: int, t) -> mpf:
    """(n! / (t (t+1) ... (t+n)))^2 by plain multiplication."""
    prod = mpf(1)
    for j in range(n + 1):
        prod *= t + j
    return (mpmath.factorial(n) / prod) ** 2
