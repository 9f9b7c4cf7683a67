"""Exact real-root isolation for integer polynomials via Sturm chains.

Polynomials are coefficient lists indexed by degree.  All arithmetic is
rational, so isolating intervals are certified: each returned open
interval contains exactly one real root of the squarefree part, and
endpoints are never roots.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_eval(p, x):
    total = Fraction(0)
    for c in reversed(p):
        total = total * x + c
    return total


def poly_derivative(p):
    return [i * c for i, c in enumerate(p)][1:]


def _poly_rem(a, b):
    """Remainder of a modulo b over Q."""
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        coef = a[-1] / b[-1]
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= coef * c
        _trim(a)
    return a


def poly_gcd(a, b):
    a = _trim([Fraction(c) for c in a])
    b = _trim([Fraction(c) for c in b])
    while b:
        a, b = b, _trim(_poly_rem(a, b))
    return a


def squarefree_part(p):
    """Primitive integer squarefree part of an integer polynomial."""
    p = _trim(list(p))
    if len(p) <= 1:
        return p
    g = poly_gcd(p, poly_derivative(p))
    if len(g) <= 1:
        q = [Fraction(c) for c in p]
    else:
        q = []
        rem = [Fraction(c) for c in p]
        # exact division p / g
        gg = g
        q = [Fraction(0)] * (len(p) - len(gg) + 1)
        work = rem[:]
        for i in range(len(work) - 1, len(gg) - 2, -1):
            c = work[i] / gg[-1]
            q[i - (len(gg) - 1)] = c
            if c:
                for j, d in enumerate(gg):
                    work[i - (len(gg) - 1) + j] -= c * d
    denom = 1
    for c in q:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = [int(c * denom) for c in q]
    content = 0
    for c in ints:
        content = gcd(content, abs(c))
    if content > 1:
        ints = [c // content for c in ints]
    if ints and ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def sturm_chain(p):
    chain = [[Fraction(c) for c in p], [Fraction(c) for c in poly_derivative(p)]]
    while _trim(chain[-1]):
        rem = _poly_rem(chain[-2], chain[-1])
        rem = [-c for c in rem]
        if not _trim(rem[:]):
            break
        chain.append(rem)
    return [c for c in chain if _trim(c[:])]


def _sign_changes(chain, x):
    signs = []
    for p in chain:
        v = poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    changes = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    return changes


def count_roots(p, lo, hi, chain=None):
    """Number of distinct real roots of squarefree p in (lo, hi]."""
    if chain is None:
        chain = sturm_chain(p)
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


def isolate_roots(p, lo, hi):
    """Disjoint open isolating intervals for the roots of p in (lo, hi).

    p must be an integer polynomial; isolation happens on its squarefree
    part.  Endpoints of returned intervals are guaranteed non-roots.
    Returns intervals sorted increasingly.
    """
    sf = squarefree_part(p)
    if len(sf) <= 1:
        return []
    lo, hi = Fraction(lo), Fraction(hi)
    # nudge endpoints off roots
    step = Fraction(1, 1 << 10)
    while poly_eval(sf, lo) == 0:
        lo += step
        step /= 2
    step = Fraction(1, 1 << 10)
    while poly_eval(sf, hi) == 0:
        hi -= step
        step /= 2
    chain = sturm_chain(sf)
    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = count_roots(sf, a, b, chain)
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        shrink = Fraction(1, 1 << 10)
        while poly_eval(sf, mid) == 0:
            mid += shrink
            shrink /= 2
        stack.append((a, mid))
        stack.append((mid, b))
    out.sort()
    return out


def refine_root(p, interval, width):
    """Shrink an isolating interval of squarefree p below the given width."""
    sf = squarefree_part(p)
    a, b = Fraction(interval[0]), Fraction(interval[1])
    fa = poly_eval(sf, a)
    fb = poly_eval(sf, b)
    assert fa != 0 and fb != 0 and (fa > 0) != (fb > 0), "not a sign-change bracket"
    while b - a > width:
        mid = (a + b) / 2
        fm = poly_eval(sf, mid)
        if fm == 0:
            eps = (b - a) / 8
            return (mid - eps, mid + eps) if eps < width else (mid - width / 2, mid + width / 2)
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b, fb = mid, fm
    return (a, b)


def rational_root_in(p, interval):
    """The rational root of p inside the open interval, if one exists."""
    sf = squarefree_part(p)
    if not sf:
        return None
    lead, const = sf[-1], sf[0]
    a, b = Fraction(interval[0]), Fraction(interval[1])
    if const == 0:
        if a < 0 < b:
            return Fraction(0)
        sf = sf[1:]
        lead, const = sf[-1], sf[0]
        if const == 0:
            return None
    for q in _divisors(abs(lead)):
        for r in _divisors(abs(const)):
            for sign in (1, -1):
                cand = Fraction(sign * r, q)
                if a < cand < b and poly_eval(sf, cand) == 0:
                    return cand
    return None


def _divisors(n):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)
