"""Quadrature engines.

One-dimensional integrals use globally adaptive Gauss-Legendre: every panel is
integrated with a 20- and a 30-point rule, the difference is the panel's error
estimate, and the worst panel is bisected until the total estimate meets the
target.  Semi-infinite ranges start from geometrically growing panels and are
truncated where a caller-supplied tail bound is small enough.

The unit square uses a tensor product of tanh-sinh rules.  Nodes crowd
double-exponentially toward the edges and the corners, which absorbs the
logarithmic edge behaviour and the bounded corner singularity of the
Beukers-type integrands.  Each level halves the step; the estimate is the
difference between successive levels.

All quadrature results are flagged heuristic.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mp, mpf

from .hpvalue import HPValue, Rigor, to_mpf, ulp

__all__ = [
    "BetaCheck",
    "QuadratureError",
    "beta_integral_check",
    "gauss_legendre",
    "integrate_interval",
    "integrate_semi_infinite",
    "integrate_unit_square",
]

GUARD_BITS = 20
LOW_ORDER = 20
HIGH_ORDER = 30


class QuadratureError(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def gauss_legendre(m: int, prec: int) -> tuple[tuple[mpf, mpf], ...]:
    """Nodes and weights of the m-point rule on [-1, 1], by Newton on P_m."""
    wp = prec + 20
    out = []
    with mp.workprec(wp):
        eps = mpmath.ldexp(1, -prec - 4)
        for i in range((m + 1) // 2):
            x = mpmath.cos(mpmath.pi * (i + mpf(3) / 4) / (m + mpf(1) / 2))
            for _ in range(100):
                p0, p1 = mpf(1), x
                for k in range(2, m + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = m * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < eps:
                    break
            p0, p1 = mpf(1), x
            for k in range(2, m + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = m * (x * p1 - p0) / (x * x - 1)
            w = 2 / ((1 - x * x) * dp * dp)
            out.append((x, w))
            if 2 * i + 1 != m:
                out.append((-x, w))
    return tuple(sorted(out))


def _panel(f, a, b, prec):
    half = (b - a) / 2
    mid = (a + b) / 2
    lo = sum(w * f(mid + half * x) for x, w in gauss_legendre(LOW_ORDER, prec)) * half
    hi = sum(w * f(mid + half * x) for x, w in gauss_legendre(HIGH_ORDER, prec)) * half
    return hi, abs(hi - lo)


@dataclass(frozen=True)
class _Result:
    value: mpf
    error: mpf
    panels: int


def _adaptive(f, breakpoints, tol, prec, max_panels):
    heap = []
    for i, (a, b) in enumerate(zip(breakpoints, breakpoints[1:])):
        v, e = _panel(f, a, b, prec)
        heap.append((-e, a, b, v))
    heapq.heapify(heap)
    count = len(heap)
    while True:
        total_err = sum(-item[0] for item in heap)
        if total_err <= tol:
            break
        if count >= max_panels:
            raise QuadratureError(
                f"adaptive quadrature did not reach {mpmath.nstr(tol, 3)} "
                f"(estimate {mpmath.nstr(total_err, 3)}) within {max_panels} panels")
        _, a, b, _ = heapq.heappop(heap)
        m = (a + b) / 2
        for lo, hi in ((a, m), (m, b)):
            v, e = _panel(f, lo, hi, prec)
            heapq.heappush(heap, (-e, lo, hi, v))
        count += 1
    # fixed summation order for reproducibility
    items = sorted(heap, key=lambda item: item[1])
    value = mpmath.fsum(item[3] for item in items)
    error = mpmath.fsum(-item[0] for item in items)
    return _Result(value, error, len(items))


def integrate_interval(f, a, b, precision: int = 256, tol=None, breakpoints=None,
                       max_panels: int = 4000, info: dict | None = None) -> HPValue:
    """Adaptive Gauss-Legendre on [a, b]; ``tol`` is an absolute target."""
    wp = precision + GUARD_BITS
    with mp.workprec(wp):
        a, b = to_mpf(a), to_mpf(b)
        target = mpmath.ldexp(1, -precision) if tol is None else mpf(tol)
        pts = [a] + [to_mpf(x) for x in (breakpoints or ())] + [b]
        res = _adaptive(f, pts, target, wp, max_panels)
        radius = res.error + res.panels * HIGH_ORDER * ulp(res.value, wp) * 4
    if info is not None:
        info["panels"] = res.panels
    return HPValue.from_estimate(res.value, radius, Rigor.HEURISTIC, precision)


def integrate_semi_infinite(f, lower, tail_bound, precision: int = 256, tol=None,
                            max_panels: int = 4000, info: dict | None = None) -> HPValue:
    """Integral of a positive f over [lower, inf).

    ``tail_bound(T)`` must bound the integral over [T, inf) and decrease in T.
    The range is truncated at the first T = lower + 2^j with
    tail_bound(T) < tol/2; [lower, T] gets tol/2.
    """
    wp = precision + GUARD_BITS
    with mp.workprec(wp):
        lower = to_mpf(lower)
        target = mpmath.ldexp(1, -precision) if tol is None else mpf(tol)
        pts = [lower]
        step = mpf(1)
        T = lower + step
        while True:
            pts.append(T)
            tb = mpf(tail_bound(T))
            if tb < target / 2:
                break
            step *= 2
            T = lower + step
            if len(pts) > 4 * wp + 64:
                raise QuadratureError("tail bound never fell below the target")
        res = _adaptive(f, pts, target / 2, wp, max_panels)
        radius = res.error + tb + res.panels * HIGH_ORDER * ulp(res.value, wp) * 4
    if info is not None:
        info["panels"] = res.panels
        info["truncation"] = T
    return HPValue.from_estimate(res.value, radius, Rigor.HEURISTIC, precision)


# -- tanh-sinh on the unit square -------------------------------------------------

def _ts_nodes(level: int, wp: int, odd_only: bool):
    """tanh-sinh nodes on [0, 1] for step 2^-level as (x, 1 - x, dx/dt).

    ``odd_only`` restricts to the nodes that are new at this level.
    """
    h = mpmath.ldexp(1, -level)
    cutoff = mpmath.ldexp(1, -wp - 8)
    halfpi = mpmath.pi / 2
    out = []
    k = 1 if odd_only else 0
    step = 2 if odd_only else 1
    while True:
        t = k * h
        e = mpmath.exp(-2 * halfpi * mpmath.sinh(t))
        xc = e / (1 + e)
        x = 1 / (1 + e)
        w = 2 * halfpi * mpmath.cosh(t) * e / (1 + e) ** 2
        if w < cutoff:
            break
        out.append((x, xc, w))
        if k:
            out.append((xc, x, w))
        k += step
    return out


def integrate_unit_square(f, precision: int = 256, corner_refinement_depth: int = 7,
                          tol=None, symmetric: bool = False, min_level: int = 3,
                          info: dict | None = None) -> HPValue:
    """Heuristic integral of f(x, y, 1-x, 1-y) over [0, 1]^2.

    The integrand receives both coordinates and their complements so that
    quantities such as 1 - xy can be formed without cancellation near (1, 1).
    ``corner_refinement_depth`` caps the number of step halvings; failing to
    meet ``tol`` (absolute, default 2^-precision) by then raises
    :class:`QuadratureError`.  ``symmetric=True`` asserts f(x,y) = f(y,x) and
    evaluates only half of the node pairs.
    """
    wp = precision + GUARD_BITS
    with mp.workprec(wp):
        target = mpmath.ldexp(1, -precision) if tol is None else mpf(tol)
        nodes: list = []
        raw = mpf(0)
        prev = None
        for level in range(corner_refinement_depth + 1):
            new = _ts_nodes(level, wp, odd_only=level > 0)
            raw = raw + _pair_sum(f, nodes, new, symmetric)
            nodes.extend(new)
            h = mpmath.ldexp(1, -level)
            estimate = raw * h * h
            if prev is not None and level >= min_level:
                diff = abs(estimate - prev)
                if diff <= target:
                    if info is not None:
                        info["nodes"] = len(nodes)
                        info["level"] = level
                    radius = diff + len(nodes) ** 2 * ulp(estimate, wp)
                    return HPValue.from_estimate(estimate, radius, Rigor.HEURISTIC, precision)
            prev = estimate
    raise QuadratureError(
        f"unit-square quadrature did not settle to {mpmath.nstr(target, 3)} "
        f"after {corner_refinement_depth} refinements")


def _pair_sum(f, old, new, symmetric):
    """Weighted sum over node pairs that involve at least one new node."""
    total = mpf(0)
    if symmetric:
        for i, (x, xc, wx) in enumerate(new):
            acc = mpf(0)
            for (y, yc, wy) in old:
                acc += wy * f(x, y, xc, yc)
            acc *= 2
            acc += wx * f(x, x, xc, xc)
            for (y, yc, wy) in new[i + 1:]:
                acc += 2 * wy * f(x, y, xc, yc)
            total += wx * acc
        return total
    for (x, xc, wx) in new:
        acc = mpf(0)
        for (y, yc, wy) in old:
            acc += wy * (f(x, y, xc, yc) + f(y, x, yc, xc))
        for (y, yc, wy) in new:
            acc += wy * f(x, y, xc, yc)
        total += wx * acc
    return total


# -- Beta integral ----------------------------------------------------------------

@dataclass(frozen=True)
class BetaCheck:
    numeric: HPValue
    closed: HPValue
    agree: bool


def beta_integral_check(n: int, t, precision: int = 128, tol=None) -> BetaCheck:
    """Quadrature of u^(n+t) (1-u)^n over [0, 1] against n!/((t+n+1)...(t+2n+1))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if isinstance(t, float):
        t = Fraction(t)
    with mp.workprec(precision + GUARD_BITS):
        tm = to_mpf(t)
        if tm <= -1:
            raise ValueError("t must exceed -1")
        expo = n + tm

        def integrand(u):
            return u**expo * (1 - u) ** n

        # dyadic breakpoints toward 0 handle the u^(n+t) endpoint behaviour
        brk = [mpmath.ldexp(1, -j) for j in range(precision // 4, 0, -1)]
    numeric = integrate_interval(integrand, 0, 1, precision, tol, breakpoints=brk)
    closed = HPValue.exact(math.factorial(n), precision)
    tv = t if isinstance(t, HPValue) else HPValue.exact(t, precision)
    for j in range(1, n + 2):
        closed = closed / (tv + (n + j))
    return BetaCheck(numeric, closed, numeric.overlaps(closed))
