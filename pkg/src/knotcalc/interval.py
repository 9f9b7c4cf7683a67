"""Arbitrary-precision real intervals with certified transcendental enclosures.

Endpoints are Fractions (dyadic after rounding); every operation is
conservative, so any value enclosed on input stays enclosed on output.
cos/sin are evaluated by exact rational Taylor sums with the classical
remainder bound, arccos by Newton refinement followed by an exact
bracketing certificate (cos of the returned endpoints is checked to
straddle the argument), and pi by Machin's formula with alternating
series tails.  Nothing here trusts floating point: floats only provide
Newton seeds, and all certificates are exact rational comparisons.

Precision is a number of bits and is restartable: ask again with more
bits and the computation reruns from scratch.
"""

from __future__ import annotations

import math
from fractions import Fraction


def _round_down(x, bits):
    scale = 1 << bits
    return Fraction(math.floor(x * scale), scale)


def _round_up(x, bits):
    scale = 1 << bits
    return Fraction(math.ceil(x * scale), scale)


class RealInterval:
    """A closed interval [lo, hi] certified to contain an exact real."""

    __slots__ = ("lo", "hi", "bits")

    def __init__(self, lo, hi, bits=53):
        lo = Fraction(lo)
        hi = Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval: [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.bits = bits

    @classmethod
    def exact(cls, value, bits=53):
        value = Fraction(value)
        return cls(value, value, bits)

    def width(self):
        return self.hi - self.lo

    def midpoint(self):
        return (self.lo + self.hi) / 2

    def rounded(self, bits):
        """Outward-round both endpoints to the dyadic grid 2^-bits."""
        return RealInterval(_round_down(self.lo, bits), _round_up(self.hi, bits), bits)

    def __repr__(self):
        return f"RealInterval({self.lo}, {self.hi}, bits={self.bits})"

    def __float__(self):
        return float(self.midpoint())

    # -- arithmetic (exact endpoints, conservative) ----------------------

    def __add__(self, other):
        other = _as_interval(other)
        return RealInterval(self.lo + other.lo, self.hi + other.hi,
                            min(self.bits, other.bits))

    __radd__ = __add__

    def __neg__(self):
        return RealInterval(-self.hi, -self.lo, self.bits)

    def __sub__(self, other):
        return self + (-_as_interval(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_interval(other)
        products = [self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi]
        return RealInterval(min(products), max(products),
                            min(self.bits, other.bits))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_interval(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("dividing by an interval containing 0")
        quotients = [self.lo / other.lo, self.lo / other.hi,
                     self.hi / other.lo, self.hi / other.hi]
        return RealInterval(min(quotients), max(quotients),
                            min(self.bits, other.bits))

    # -- certified predicates ---------------------------------------------

    def contains(self, value):
        value = Fraction(value)
        return self.lo <= value <= self.hi

    def excludes_zero(self):
        return self.lo > 0 or self.hi < 0

    def separated_from(self, other):
        """True when the two intervals are provably disjoint."""
        return self.hi < other.lo or other.hi < self.lo


def _as_interval(x):
    if isinstance(x, RealInterval):
        return x
    return RealInterval.exact(x)


def _ceil_div(a, b):
    return -((-a) // b)


def _sincos_fixed(X, F, odd):
    """Certified fixed-point Taylor sum: with x = X / 2^F >= 0, returns
    integers (lo, hi) with the true cos x (odd=False) or sin x (odd=True)
    in [lo, hi] / 2^F.  All arithmetic is integer; term enclosures use
    directed rounding and the alternating tail is bounded explicitly."""
    X2 = X * X
    shift = 1 << (2 * F)
    if odd:
        term_lo, term_hi = X, X
    else:
        term_lo, term_hi = 1 << F, 1 << F
    total_lo, total_hi = term_lo, term_hi
    k = 0
    while True:
        k += 1
        if odd:
            den = shift * (2 * k) * (2 * k + 1)
        else:
            den = shift * (2 * k - 1) * (2 * k)
        term_lo = (term_lo * X2) // den
        term_hi = _ceil_div(term_hi * X2, den)
        if k % 2 == 1:
            total_lo -= term_hi
            total_hi -= term_lo
        else:
            total_lo += term_lo
            total_hi += term_hi
        # once the term ratio drops below 1/2 and the term itself is tiny,
        # the alternating tail is at most twice the current term bound
        if term_hi <= 1 and 2 * X2 <= den:
            total_lo -= 2 * (term_hi + 1)
            total_hi += 2 * (term_hi + 1)
            return total_lo, total_hi
        if k > 4 * F + 64:
            raise ArithmeticError("Taylor series failed to converge")


def _sincos_interval(x, bits, odd):
    x = Fraction(x)
    if abs(x) > 16:
        raise ValueError("no range reduction: need |x| <= 16")
    sign = 1
    if x < 0:
        x = -x
        if odd:
            sign = -1
    F = bits + 24
    X = (x.numerator << F) // x.denominator  # |x - X/2^F| <= 2^-F
    lo, hi = _sincos_fixed(X, F, odd)
    # input rounding: both sin and cos are 1-Lipschitz
    lo -= 2
    hi += 2
    if sign < 0:
        lo, hi = -hi, -lo
    return RealInterval(Fraction(lo, 1 << F), Fraction(hi, 1 << F), bits)


def cos_interval(x, bits):
    """Certified enclosure of cos(x) for a rational x with |x| <= 16."""
    return _sincos_interval(x, bits, odd=False)


def sin_interval(x, bits):
    """Certified enclosure of sin(x) for a rational x with |x| <= 16."""
    return _sincos_interval(x, bits, odd=True)


def _atan_inv_interval(n, bits):
    # arctan(1/n) for integer n >= 2: alternating series in fixed point
    F = bits + 16
    total = 0
    k = 0
    nn = n * n
    npow = n
    while True:
        term = (1 << F) // ((2 * k + 1) * npow)
        if term == 0:
            return RealInterval(Fraction(total - 2, 1 << F),
                                Fraction(total + 2, 1 << F), bits)
        total += term if k % 2 == 0 else -term
        k += 1
        npow *= nn


_PI_CACHE = {}


def pi_interval(bits):
    """Certified enclosure of pi (Machin: 16 atan(1/5) - 4 atan(1/239))."""
    if bits not in _PI_CACHE:
        a = _atan_inv_interval(5, bits + 8)
        b = _atan_inv_interval(239, bits + 8)
        _PI_CACHE[bits] = (16 * a - 4 * b).rounded(bits + 4)
    return _PI_CACHE[bits]


def sqrt_interval(x, bits):
    """Certified enclosure of sqrt(x) for a rational x >= 0."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("sqrt of a negative rational")
    scale = 1 << (2 * bits)
    n = math.isqrt(math.floor(x * scale))
    lo = Fraction(n, 1 << bits)
    hi = Fraction(n + 1, 1 << bits)
    assert lo * lo <= x <= hi * hi
    return RealInterval(lo, hi, bits)


def arccos_interval(c, bits):
    """Certified enclosure of arccos(c) for a rational c in (-1, 1).

    A float seed is refined by exact Newton steps and the final bracket
    [lo, hi] is certified by checking cos(lo) >= c >= cos(hi) with exact
    Taylor enclosures (cos is decreasing on (0, pi)).
    """
    c = Fraction(c)
    if not (-1 < c < 1):
        raise ValueError("arccos_interval expects c strictly inside (-1, 1)")
    work = bits + 32
    theta = Fraction(math.acos(max(-1.0, min(1.0, float(c)))))
    if theta <= 0:
        theta = Fraction(1, 1 << 20)
    tol = Fraction(1, 1 << (bits + 8))
    for _ in range(64):
        cos_t = cos_interval(theta, work).midpoint()
        err = cos_t - c
        if abs(err) < tol:
            break
        sin_t = sin_interval(theta, work).midpoint()
        if sin_t == 0:
            sin_t = Fraction(1, 1 << work)
        theta = theta + err / sin_t
        theta = _round_down(theta, work)
        pi_hi = pi_interval(64).hi
        if theta <= 0:
            theta = Fraction(1, 1 << 20)
        elif theta >= pi_hi:
            theta = pi_hi - Fraction(1, 1 << 20)
    else:
        raise ArithmeticError("arccos Newton refinement failed to converge")

    eps = Fraction(1, 1 << bits)
    for _ in range(12):
        lo = theta - eps
        hi = theta + eps
        if lo <= 0:
            lo = Fraction(0)
        ok_lo = lo == 0 or cos_interval(lo, work).lo >= c
        ok_hi = cos_interval(hi, work).hi <= c
        if ok_lo and ok_hi:
            return RealInterval(lo, hi, bits)
        eps *= 2
    raise ArithmeticError("arccos bracket certification failed")


def digits_to_bits(digits):
    """Bits of precision comfortably covering the given decimal digits."""
    return int(digits * 3.3219280948873626) + 8
