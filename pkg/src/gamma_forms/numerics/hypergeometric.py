"""3F2 at unit argument with a rigorous truncation bound.

Terms t_k = (a)_k (b)_k (c)_k / (k! (d)_k (e)_k) are positive and decay like
k^(-1-s) with s = d + e - a - b - c.  For small s plain truncation is
hopeless (pi^2/6 = 3F2(1,1,1;2,2|1) would need 10^77 terms for 256 bits), so
the tail after K terms is handled in one of two ways:

* Ratio majorant.  If t_{k+1}/t_k <= (k + alpha)/(k + beta) for every k >= K
  then Gauss' sum gives tail <= t_K (K + beta - 1)/(beta - alpha - 1).  The
  condition is a cubic inequality in k, certified by shifting to k = K + x
  and checking that every coefficient is non-negative.  Tight only when
  t_K is already tiny, e.g. for a large lower parameter.

* Telescoping correction.  Choose Q(k) = sum_{j<=M} q_j k^(1-j) with
  Q(k) - r(k) Q(k+1) = 1 - E(k), E(k) = O(k^(-M-1)).  Then
  tail = t_K Q(K) + sum_{k>=K} t_k E(k), hence
  tail lies in [g/(1+eta), g/(1-eta)] with g = t_K Q(K) and eta = sup|E|.
  E is analytic in x = 1/k on |x| < 1/max(1, d, e); eta is bounded by its
  low-order residual coefficients plus a Cauchy estimate on a circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from .hpvalue import HPValue, Rigor, to_mpf, ulp

__all__ = [
    "HypergeometricParams",
    "ThomaeResult",
    "eval_3F2",
    "gamma_ratio_poly",
    "integrand_params",
    "random_thomae_params",
    "thomae_check",
]

GUARD_BITS = 40
MAX_TERMS = 1 << 20


def _param(x):
    if isinstance(x, HPValue):
        if x.radius:
            raise ValueError("hypergeometric parameters must be exact (zero radius)")
        return x.value
    if isinstance(x, (int, Fraction, mpf)):
        return x
    return Fraction(x) if isinstance(x, float) else mpf(x)


@dataclass(frozen=True)
class HypergeometricParams:
    upper: tuple
    lower: tuple

    def __post_init__(self):
        if len(self.upper) != 3 or len(self.lower) != 2:
            raise ValueError("3F2 needs three upper and two lower parameters")
        object.__setattr__(self, "upper", tuple(_param(x) for x in self.upper))
        object.__setattr__(self, "lower", tuple(_param(x) for x in self.lower))

    @property
    def margin(self):
        """s = d + e - a - b - c; the unit-argument series converges iff s > 0."""
        a, b, c = self.upper
        d, e = self.lower
        if all(isinstance(x, (int, Fraction)) for x in (a, b, c, d, e)):
            return Fraction(d) + e - a - b - c
        return to_mpf(d) + to_mpf(e) - to_mpf(a) - to_mpf(b) - to_mpf(c)

    def thomae_image(self) -> HypergeometricParams:
        """Parameters (s, d-a, e-a; s+b, s+c) of the transformed series."""
        a, b, c = self.upper
        d, e = self.lower
        s = self.margin
        return HypergeometricParams((s, d - a, e - a), (s + b, s + c))


# -- polynomial and power-series helpers (coefficient lists, lowest order first) --

def _poly_mul(p, q):
    out = [mpf(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


def _taylor_shift(p, K):
    """Coefficients of p(K + x) in x (synthetic division)."""
    c = list(p)
    n = len(c)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            c[j] += K * c[j + 1]
    return c


def _ratio_majorant_tail(params, s, K, tK):
    """Upper bound on sum_{k>=K} t_k, or None if the cubic test fails at K."""
    a, b, c, d, e = params
    sigma = s / 2
    alpha, beta = mpf(0), 1 + sigma
    lhs = _poly_mul(_poly_mul([alpha, 1], [1, 1]), _poly_mul([d, 1], [e, 1]))
    rhs = _poly_mul(_poly_mul([beta, 1], [a, 1]), _poly_mul([b, 1], [c, 1]))
    diff = [x - y for x, y in zip(lhs, rhs)]
    shifted = _taylor_shift(diff, K)
    scale = max(abs(x) for x in lhs + rhs) * (K + 1) ** 4
    slack = scale * mpmath.ldexp(1, 16 - mp.prec)
    if any(x < slack for x in shifted[:4]):
        return None
    return tK * (K + sigma) / sigma


def _telescoping_tail(params, s, K, tK, M):
    """(midpoint, radius) enclosure of the tail, or None if the bound is useless."""
    a, b, c, d, e = params
    B = max(mpf(1), d, e)
    rho = 1 / (2 * B)
    if K * rho < 2:
        return None
    L = M + 2
    # r(x) = prod(1 + a_i x) / prod(1 + b_i x), x = 1/k, as a series to order L
    num = _poly_mul(_poly_mul([1, a], [1, b]), [1, c])
    ser = num + [mpf(0)] * (L + 1 - len(num))
    for beta in (mpf(1), d, e):
        for i in range(1, L + 1):
            ser[i] -= beta * ser[i - 1]
    # rho_0 = r(x) (1 + x); rho_j = rho_{j-1} / (1 + x);  v_j = (1 - rho_j) / x
    cur = [ser[0]] + [ser[i] + ser[i - 1] for i in range(1, L + 1)]
    v = []
    for j in range(M + 1):
        if j:
            for i in range(1, L + 1):
                cur[i] -= cur[i - 1]
        v.append([-x for x in cur[1:]])
    # sum_j q_j x^j v_j(x) = 1 + O(x^(M+1))
    q = []
    for m in range(M + 1):
        acc = mpf(1) if m == 0 else mpf(0)
        for j in range(m):
            acc -= q[j] * v[j][m - j]
        q.append(acc / v[m][0])
    # residual coefficients e_m of E(x), m <= M, plus their rounding allowance
    eps = mpmath.ldexp(1, 8 - mp.prec)
    invK = 1 / mpf(K)
    low = mpf(0)
    for m in range(M + 1):
        acc = mpf(1) if m == 0 else mpf(0)
        size = mpf(1) if m == 0 else mpf(0)
        for j in range(m + 1):
            term = q[j] * v[j][m - j]
            acc -= term
            size += abs(term)
        low += (abs(acc) + eps * (m + 2) * size) * invK**m
    # Cauchy bound on |x| = rho for the part of order > M
    r_max = (1 + abs(a) * rho) * (1 + abs(b) * rho) * (1 + abs(c) * rho)
    r_max /= (1 - rho) * (1 - d * rho) * (1 - e * rho)
    sup_e = mpf(1)
    for j, qj in enumerate(q):
        growth = (1 + rho) ** (1 - j) if j <= 1 else (1 - rho) ** (1 - j)
        sup_e += abs(qj) * rho**j * (1 + r_max * growth) / rho
    z = invK / rho
    high = sup_e * z ** (M + 1) / (1 - z)
    eta = low + high
    if eta >= mpf(1) / 4:
        return None
    g = tK * sum(qj * mpf(K) ** (1 - j) for j, qj in enumerate(q))
    if g <= 0:
        return None
    return g / (1 - eta**2), g * eta / (1 - eta**2)


def _telescoping_order(K, B, rel_target):
    z = 2 * B / K
    if z >= 1:
        return 0
    m = math.ceil(math.log(max(rel_target, 1e-300)) / math.log(z)) + 2
    return max(4, min(m, 160))


def eval_3F2(p: HypergeometricParams, precision: int = 256, tol=None) -> HPValue:
    """Rigorous enclosure of 3F2(a, b, c; d, e | 1).

    ``tol`` is the relative accuracy aimed for (default 2^-precision); the
    returned radius is an upper bound on the error whatever is achieved.
    """
    a, b, c = p.upper
    d, e = p.lower
    exact_params = (a, b, c, d, e)
    if any(x == 0 for x in (a, b, c)):
        return HPValue(mpf(1), mpf(0), Rigor.RIGOROUS, precision)
    if any(x <= 0 for x in exact_params):
        raise ValueError("3F2 parameters must be positive")
    s_exact = p.margin
    if s_exact <= 0:
        raise ValueError(f"series diverges at unit argument (margin {s_exact} <= 0)")
    rel = mpmath.ldexp(1, -precision) if tol is None else mpf(tol)
    wp = precision + GUARD_BITS + 24
    with mp.workprec(wp):
        a, b, c, d, e = params = tuple(to_mpf(x) for x in exact_params)
        s = to_mpf(s_exact)
        B = max(mpf(1), d, e)
        total = mpf(0)
        term = mpf(1)
        k = 0
        checkpoint = 8
        tail = None
        while k < MAX_TERMS:
            total += term
            term = term * (a + k) * (b + k) * (c + k) / ((k + 1) * (d + k) * (e + k))
            k += 1
            if k < checkpoint:
                continue
            checkpoint *= 2
            target = rel * total / 4
            bound = _ratio_majorant_tail(params, s, k, term)
            if bound is not None and bound <= target:
                tail = (bound / 2, bound / 2)
                break
            M = _telescoping_order(k, B, float(rel / 8))
            if M:
                tele = _telescoping_tail(params, s, k, term, M)
                if tele is not None and tele[1] <= target:
                    tail = tele
                    break
            if bound is not None and k >= MAX_TERMS // 2:
                tail = (bound / 2, bound / 2)
        if tail is None:
            raise ArithmeticError("3F2 tail could not be bounded within the term budget")
        # recursion drift: each term carries at most ~8k ulps of relative error
        rounding = (total + tail[0]) * (9 * k + 9) * mpmath.ldexp(1, -wp)
        value = total + tail[0]
        radius = tail[1] + rounding
    return HPValue.from_estimate(value, radius + ulp(value, precision), Rigor.RIGOROUS, precision)


def gamma_ratio_poly(t, shift: int, precision: int = 256) -> HPValue:
    """Gamma(t) / Gamma(t + shift) as 1 / (t (t+1) ... (t+shift-1))."""
    if shift < 0:
        raise ValueError("shift must be non-negative")
    if not isinstance(t, HPValue):
        t = HPValue.exact(Fraction(t) if isinstance(t, float) else t, precision)
    if t.value - t.radius <= 0:
        raise ValueError("t must be positive")
    prod = HPValue.exact(1, t.prec)
    for i in range(shift):
        prod = prod * (t + i)
    return 1 / prod


@dataclass(frozen=True)
class ThomaeResult:
    lhs: HPValue
    rhs: HPValue
    agree: bool


def _gamma_prefactor(num, den1, den2, prec) -> HPValue:
    """Gamma(num) / (Gamma(den1) Gamma(den2)), relying on mpmath's Gamma."""
    wp = prec + GUARD_BITS
    with mp.workprec(wp):
        v = mpmath.gamma(to_mpf(num)) * mpmath.rgamma(to_mpf(den1)) * mpmath.rgamma(to_mpf(den2))
        r = abs(v) * mpmath.ldexp(1, 8 - wp)
    return HPValue.from_estimate(v, r, Rigor.RIGOROUS, prec)


def thomae_check(p: HypergeometricParams, precision: int = 256, tol=None) -> ThomaeResult:
    """Evaluate both sides of Thomae's relation and test whether they overlap.

    Gamma(a)/(Gamma(d)Gamma(e)) 3F2(a,b,c;d,e|1)
        = Gamma(s)/(Gamma(s+b)Gamma(s+c)) 3F2(s, d-a, e-a; s+b, s+c|1)
    """
    a, b, c = p.upper
    d, e = p.lower
    if d - a <= 0 or e - a <= 0:
        raise ValueError("Thomae image leaves the positive-parameter domain (need d > a and e > a)")
    if p.margin <= 0:
        raise ValueError("original series diverges")
    image = p.thomae_image()
    s = p.margin
    lhs = _gamma_prefactor(a, d, e, precision) * eval_3F2(p, precision, tol)
    rhs = _gamma_prefactor(s, s + b, s + c, precision) * eval_3F2(image, precision, tol)
    return ThomaeResult(lhs, rhs, lhs.overlaps(rhs))


def random_thomae_params(rng) -> HypergeometricParams:
    """Positive rational parameters with margin in [0.5, 5] and d, e > a.

    Denominators are 8 so that the image parameters stay exact.
    """
    while True:
        a, b, c = (Fraction(rng.randint(4, 32), 8) for _ in range(3))
        s = Fraction(rng.randint(4, 40), 8)
        d = a + Fraction(rng.randint(1, 32), 8)
        e = s + a + b + c - d
        if e - a > 0:
            return HypergeometricParams((a, b, c), (d, e))


def integrand_params(n: int, t) -> HypergeometricParams:
    """(n+1, n+1, 2n+1; 2n+2, 2n+1+t), the series inside the t-integral for I_n."""
    t = Fraction(t) if isinstance(t, (int, float)) else t
    return HypergeometricParams((n + 1, n + 1, 2 * n + 1), (2 * n + 2, 2 * n + 1 + t))
