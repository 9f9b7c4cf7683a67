"""Exact Laurent polynomials over the integers.

A Laurent polynomial is stored as a dict mapping exponents to nonzero
integer coefficients, so t**-3 is as cheap as t**3.  This is the ring
Z[t, t^-1] that Alexander polynomials live in; equality is strict
coefficient-wise equality, while ``units_equal`` compares up to the
units +-t^k (the ambiguity of Alexander polynomials).

Coprimality over Q[t, t^-1] is decided by the extended Euclidean
algorithm and returned together with an integral Bezout certificate
f*a + g*b = c (c a nonzero integer), which callers can re-verify by
exact expansion.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class LaurentPolynomial:
    """An integer Laurent polynomial in one variable t.

    >>> t = LaurentPolynomial.t()
    >>> (t - 2) * (2 * t - 1)
    LaurentPolynomial({2: 2, 1: -5, 0: 2})
    >>> ((t - 2) * (2 * t - 1)).symmetrized()
    LaurentPolynomial({1: 2, 0: -5, -1: 2})
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        self.coeffs = {int(e): int(c) for e, c in coeffs.items() if c != 0}

    # -- constructors ---------------------------------------------------

    @classmethod
    def t(cls, exponent=1):
        return cls({exponent: 1})

    @classmethod
    def const(cls, n):
        return cls({0: n})

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def one(cls):
        return cls({0: 1})

    # -- basic structure -------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def support(self):
        return sorted(self.coeffs)

    def min_exp(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no support")
        return min(self.coeffs)

    def max_exp(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no support")
        return max(self.coeffs)

    def degree_span(self):
        """max exponent minus min exponent; 0 for constants and zero."""
        if not self.coeffs:
            return 0
        return self.max_exp() - self.min_exp()

    def __getitem__(self, e):
        return self.coeffs.get(e, 0)

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.const(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        items = {e: self.coeffs[e] for e in sorted(self.coeffs, reverse=True)}
        return f"LaurentPolynomial({items})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                term = str(abs(c))
            else:
                tpow = "t" if e == 1 else f"t^{e}"
                term = tpow if abs(c) == 1 else f"{abs(c)}*{tpow}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, term))
        sign, term = parts[0]
        out = ("-" if sign == "-" else "") + term
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.const(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial({e: c * other for e, c in self.coeffs.items()})
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers only for monomials; use shift")
        out = LaurentPolynomial.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k):
        """Multiply by the unit t^k."""
        return LaurentPolynomial({e + k: c for e, c in self.coeffs.items()})

    def conjugate(self):
        """The involution t -> t^-1."""
        return LaurentPolynomial({-e: c for e, c in self.coeffs.items()})

    def evaluate(self, x):
        """Evaluate at a nonzero Fraction (or int)."""
        x = Fraction(x)
        if x == 0 and self.coeffs and self.min_exp() < 0:
            raise ZeroDivisionError("evaluating negative exponents at 0")
        total = Fraction(0)
        for e, c in self.coeffs.items():
            total += c * x ** e
        return total

    def content(self):
        g = 0
        for c in self.coeffs.values():
            g = gcd(g, abs(c))
        return g

    # -- normalization ----------------------------------------------------

    def symmetrized(self):
        """The representative +-t^k * self with symmetric support, when one exists.

        Alexander polynomials satisfy p(t) = p(1/t) up to units; the
        symmetric representative is normalized to have positive value at
        t = 1 when that value is nonzero, else positive leading
        coefficient.  Raises ValueError if no unit multiple is symmetric.
        """
        if self.is_zero():
            return self
        span = self.max_exp() + self.min_exp()
        if span % 2 != 0:
            raise ValueError(f"{self} has no symmetric unit multiple")
        p = self.shift(-span // 2)
        if p != p.conjugate():
            raise ValueError(f"{self} has no symmetric unit multiple")
        at1 = p.evaluate(1)
        if at1 < 0 or (at1 == 0 and p.coeffs[p.max_exp()] < 0):
            p = -p
        return p

    def units_normal_form(self):
        """Canonical representative of the orbit under +-t^k."""
        if self.is_zero():
            return self
        p = self.shift(-self.min_exp())
        if p.coeffs[p.max_exp()] < 0:
            p = -p
        return p

    def units_equal(self, other):
        """Equality up to multiplication by +-t^k."""
        return self.units_normal_form() == other.units_normal_form()

    def to_int_coeff_list(self):
        """Coefficients of t^min .. t^max as a plain list (ordinary poly)."""
        if self.is_zero():
            return []
        lo, hi = self.min_exp(), self.max_exp()
        return [self.coeffs.get(e, 0) for e in range(lo, hi + 1)]


def _poly_divmod(num, den):
    """Division with remainder in Q[t] on coefficient lists (Fractions)."""
    num = list(num)
    dden = len(den) - 1
    q = [Fraction(0)] * max(0, len(num) - dden)
    lead = den[-1]
    for i in range(len(num) - 1, dden - 1, -1):
        c = num[i] / lead
        q[i - dden] = c
        if c:
            for j, d in enumerate(den):
                num[i - dden + j] -= c * d
    r = num[:dden]
    while r and r[-1] == 0:
        r.pop()
    return q, r


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def laurent_gcd_coprime(a, b):
    """Decide coprimality of a, b over Q[t, t^-1], with a Bezout certificate.

    Returns (coprime, certificate) where certificate is None when the
    inputs share a nonconstant factor and otherwise a triple
    (f, g, c) of two LaurentPolynomials and a positive integer with

        f*a + g*b == c

    exactly in Z[t, t^-1].  The certificate is re-verified by expansion
    before being returned.  Zero inputs are rejected.
    """
    if a.is_zero() or b.is_zero():
        raise ValueError("coprimality is undefined for the zero polynomial")
    sa, sb = a.min_exp(), b.min_exp()
    A = [Fraction(c) for c in a.to_int_coeff_list()]
    B = [Fraction(c) for c in b.to_int_coeff_list()]

    # Extended Euclid in Q[t]: track r = s*A + u*B.
    r0, s0, u0 = A[:], [Fraction(1)], []
    r1, s1, u1 = B[:], [], [Fraction(1)]

    def _sub_scaled(p, q, quot):
        # p - quot*q on coefficient lists
        out = list(p) + [Fraction(0)] * max(0, len(q) + len(quot) - 1 - len(p))
        for i, qc in enumerate(quot):
            if qc:
                for j, c in enumerate(q):
                    out[i + j] -= qc * c
        return _trim(out)

    while r1:
        quot, rem = _poly_divmod(r0, r1)
        r0, r1 = r1, _trim(rem)
        s0, s1 = s1, _sub_scaled(s0, s1, quot)
        u0, u1 = u1, _sub_scaled(u0, u1, quot)

    if len(r0) != 1:
        return False, None

    # s0*A + u0*B = r0 (a nonzero rational). Clear denominators and the
    # Laurent shifts to land back in Z[t, t^-1].
    c0 = r0[0]
    denom = 1
    for coef in s0 + u0 + [c0]:
        denom = denom * coef.denominator // gcd(denom, coef.denominator)
    f = LaurentPolynomial({i: int(coef * denom) for i, coef in enumerate(s0)})
    g = LaurentPolynomial({i: int(coef * denom) for i, coef in enumerate(u0)})
    c = c0 * denom
    f = f.shift(-sa)
    g = g.shift(-sb)
    assert c.denominator == 1
    c = int(c)
    if c < 0:
        f, g, c = -f, -g, -c

    # Shrink the certificate by the common integer content.
    k = gcd(gcd(f.content(), g.content()), c)
    if k > 1:
        f = LaurentPolynomial({e: v // k for e, v in f.coeffs.items()})
        g = LaurentPolynomial({e: v // k for e, v in g.coeffs.items()})
        c //= k

    check = f * a + g * b
    if check != LaurentPolynomial.const(c):
        raise AssertionError(f"Bezout certificate failed to verify: {check} != {c}")
    return True, (f, g, c)


def resultant(a, b):
    """Resultant of two Laurent polynomials, as the exact Sylvester determinant.

    Each input is first shifted to an ordinary polynomial with nonzero
    constant term (shifting by units changes nothing we use resultants
    for: branched-cover orders only consume the absolute value).
    """
    if a.is_zero() or b.is_zero():
        raise ValueError("resultant of the zero polynomial is undefined")
    A = a.shift(-a.min_exp()).to_int_coeff_list()
    B = b.shift(-b.min_exp()).to_int_coeff_list()
    m, n = len(A) - 1, len(B) - 1
    if m == 0:
        return A[0] ** n
    if n == 0:
        return B[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(A)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(B)):
            row[i + j] = c
        rows.append(row)
    from .intmat import IntegerMatrix

    return IntegerMatrix(rows).det()
