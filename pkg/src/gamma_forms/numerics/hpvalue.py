"""Midpoint-radius numbers on top of mpmath.

An :class:`HPValue` is an mpf midpoint at a fixed binary precision, a
non-negative error radius and a rigor flag.  When the flag is ``rigorous`` the
true quantity lies in ``[value - radius, value + radius]``; ``heuristic``
radii come from error *estimates* (quadrature) and carry no such guarantee.

Radii are propagated conservatively: every operation adds one unit in the last
place of the rounded result, and the radius itself is nudged upward to absorb
its own rounding.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpf
from mpmath.libmp import from_rational

__all__ = ["HPValue", "Rigor", "mpf_to_fraction", "ulp", "to_mpf"]


class Rigor(str, enum.Enum):
    RIGOROUS = "rigorous"
    HEURISTIC = "heuristic"

    def __and__(self, other: Rigor) -> Rigor:
        if self is Rigor.RIGOROUS and other is Rigor.RIGOROUS:
            return Rigor.RIGOROUS
        return Rigor.HEURISTIC


def ulp(x, prec: int) -> mpf:
    """Upper bound on the rounding error of x at ``prec`` bits (round-to-nearest)."""
    if not x:
        return mpf(0)
    return mpmath.ldexp(mpf(1), mp.mag(x) - prec)


def to_mpf(x) -> mpf:
    """Convert ints, Fractions, strings and floats at the current working precision."""
    if isinstance(x, HPValue):
        return x.value
    if isinstance(x, Fraction):
        return mpf(from_rational(x.numerator, x.denominator, mp.prec, "n"))
    return mpf(x)


def mpf_to_fraction(x: mpf) -> Fraction:
    """Exact rational value of a finite mpf."""
    sign, man, exp, _ = mpf(x)._mpf_ if not isinstance(x, mpf) else x._mpf_
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return Fraction(man << int(exp))
    return Fraction(man, 1 << int(-exp))


def _round_up(r: mpf, prec: int) -> mpf:
    return r * (1 + mpmath.ldexp(mpf(1), 4 - prec))


@dataclass(frozen=True)
class HPValue:
    value: mpf
    radius: mpf
    rigor: Rigor = Rigor.RIGOROUS
    prec: int = 256

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("error radius must be non-negative")
        object.__setattr__(self, "rigor", Rigor(self.rigor))

    # -- construction -----------------------------------------------------------
    @classmethod
    def exact(cls, x, prec: int) -> HPValue:
        """Round an exact number (int, Fraction, decimal string) to ``prec`` bits."""
        with mp.workprec(prec):
            v = to_mpf(x)
            if isinstance(x, int):
                err = mpf(0) if int(v) == x else ulp(v, prec)
            elif isinstance(x, Fraction):
                err = mpf(0) if mpf_to_fraction(v) == x else ulp(v, prec)
            else:
                err = ulp(v, prec)
        return cls(v, err, Rigor.RIGOROUS, prec)

    @classmethod
    def from_estimate(cls, value, radius, rigor, prec: int) -> HPValue:
        """Round a value computed at higher working precision down to ``prec`` bits."""
        # mpf(x) rounds to the ambient context, so only convert non-mpf inputs
        if not isinstance(value, mpf):
            with mp.workprec(prec + 64):
                value = to_mpf(value)
        if not isinstance(radius, mpf):
            with mp.workprec(64):
                radius = _round_up(to_mpf(radius), 60)
        with mp.workprec(prec):
            v = +value
            # the rounding difference must be formed exactly, not at prec bits
            r = _round_up(radius + abs(mpmath.fsub(value, v, exact=True)), prec)
        return cls(v, r, Rigor(rigor), prec)

    # -- inspection -------------------------------------------------------------
    @property
    def lower(self) -> mpf:
        with mp.workprec(self.prec):
            return mpmath.mpf(self.value) - self.radius

    @property
    def upper(self) -> mpf:
        with mp.workprec(self.prec):
            return mpmath.mpf(self.value) + self.radius

    @property
    def is_rigorous(self) -> bool:
        return self.rigor is Rigor.RIGOROUS

    def contains(self, x) -> bool:
        with mp.workprec(self.prec + 32):
            return abs(to_mpf(x) - self.value) <= self.radius

    def inflated(self, factor) -> HPValue:
        with mp.workprec(self.prec):
            return HPValue(self.value, self.radius * factor, self.rigor, self.prec)

    def overlaps(self, other: HPValue, factor=1, other_factor=None) -> bool:
        """Intervals intersect, after scaling each radius by the given factors."""
        if other_factor is None:
            other_factor = factor
        with mp.workprec(max(self.prec, other.prec) + 32):
            gap = abs(self.value - other.value)
            return gap <= self.radius * factor + other.radius * other_factor

    def gap(self, other: HPValue) -> mpf:
        with mp.workprec(max(self.prec, other.prec) + 32):
            return abs(self.value - other.value)

    def contains_interval(self, other: HPValue) -> bool:
        with mp.workprec(max(self.prec, other.prec) + 32):
            return (self.value - self.radius <= other.value - other.radius
                    and other.value + other.radius <= self.value + self.radius)

    # -- arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> HPValue:
        if isinstance(other, HPValue):
            return other
        return HPValue.exact(other, self.prec)

    def _result(self, v, r, other: HPValue) -> HPValue:
        prec = min(self.prec, other.prec)
        return HPValue(v, _round_up(r + ulp(v, prec), prec), self.rigor & other.rigor, prec)

    def __add__(self, other) -> HPValue:
        other = self._coerce(other)
        with mp.workprec(min(self.prec, other.prec)):
            return self._result(self.value + other.value, self.radius + other.radius, other)

    __radd__ = __add__

    def __neg__(self) -> HPValue:
        # negation of an mpf rounds to the ambient context, so pin it
        with mp.workprec(self.prec):
            return HPValue(-self.value, self.radius, self.rigor, self.prec)

    def __sub__(self, other) -> HPValue:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> HPValue:
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> HPValue:
        other = self._coerce(other)
        with mp.workprec(min(self.prec, other.prec)):
            a, b = self.value, other.value
            r = abs(a) * other.radius + abs(b) * self.radius + self.radius * other.radius
            return self._result(a * b, r, other)

    __rmul__ = __mul__

    def __truediv__(self, other) -> HPValue:
        other = self._coerce(other)
        with mp.workprec(min(self.prec, other.prec)):
            b = abs(other.value)
            if b <= other.radius:
                raise ZeroDivisionError("divisor interval contains zero")
            r = (abs(self.value) * other.radius + b * self.radius) / (b * (b - other.radius))
            return self._result(self.value / other.value, r, other)

    def __rtruediv__(self, other) -> HPValue:
        return self._coerce(other) / self

    def log(self) -> HPValue:
        with mp.workprec(self.prec):
            lo = self.value - self.radius
            if lo <= 0:
                raise ValueError("log of an interval reaching zero or below")
            v = mpmath.log(self.value)
            return HPValue(v, _round_up(self.radius / lo + ulp(v, self.prec), self.prec),
                           self.rigor, self.prec)

    # -- formatting -------------------------------------------------------------
    def __str__(self) -> str:
        with mp.workprec(self.prec):
            return f"{mpmath.nstr(self.value, 20)} +/- {mpmath.nstr(self.radius, 3)} ({self.rigor.value})"
