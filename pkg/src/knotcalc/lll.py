"""LLL lattice reduction and heuristic integer-relation detection.

The reduction is the textbook Lenstra-Lenstra-Lovasz algorithm run in
exact rational arithmetic (delta defaults to 0.99).  Relation finding
embeds scaled midpoints of certified enclosures into a lattice; a
candidate relation is accepted only if the exact interval evaluation of
sum(v_i * x_i) still meets 0, and a miss is reported as "none found"
together with the precision and bound used, which is a heuristic
statement only, never a proof of independence.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .interval import RealInterval


class PrecisionError(ValueError):
    """Raised when enclosures are too wide for the requested bound."""


def lll_reduce(basis, delta=Fraction(99, 100)):
    """LLL-reduce integer row vectors in place-free exact arithmetic."""
    b = [list(map(int, row)) for row in basis]
    n = len(b)
    if n == 0:
        return []
    dim = len(b[0])
    mu = [[Fraction(0)] * n for _ in range(n)]
    bstar_sq = [Fraction(0)] * n
    bstar = [[Fraction(0)] * dim for _ in range(n)]

    def update_gs(from_index=0):
        for i in range(from_index, n):
            vec = [Fraction(x) for x in b[i]]
            for j in range(i):
                denom = bstar_sq[j]
                if denom == 0:
                    mu[i][j] = Fraction(0)
                    continue
                mu[i][j] = sum(Fraction(x) * y for x, y in zip(b[i], bstar[j])) / denom
                for k in range(dim):
                    vec[k] -= mu[i][j] * bstar[j][k]
            bstar[i] = vec
            bstar_sq[i] = sum(x * x for x in vec)

    update_gs()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                q = round(mu[k][j])
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                update_gs(k)
        if bstar_sq[k] >= (delta - mu[k][k - 1] ** 2) * bstar_sq[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            update_gs(k - 1)
            k = max(k - 1, 1)
    return b


class IntegerRelationResult:
    """Outcome of an integer-relation search (heuristic on 'not found')."""

    __slots__ = ("relation", "bound", "bits", "delta", "residual")

    def __init__(self, relation, bound, bits, delta, residual=None):
        self.relation = relation
        self.bound = bound
        self.bits = bits
        self.delta = delta
        self.residual = residual

    @property
    def found(self):
        return self.relation is not None

    def __repr__(self):
        if self.found:
            return f"IntegerRelationResult(relation={self.relation}, bound={self.bound}, bits={self.bits})"
        return f"IntegerRelationResult(none found, bound={self.bound}, bits={self.bits})"


def integer_relation(values, bound, delta=Fraction(99, 100)):
    """Search for a small integer relation among certified enclosures.

    values: list of RealInterval (exact rationals are fine as width-0
    intervals).  bound: the largest coefficient magnitude searched for.

    Returns an IntegerRelationResult.  A found relation v satisfies
    |v_i| <= bound and the exact interval sum(v_i * values_i) contains 0.
    Raises PrecisionError when the enclosures are too wide to support a
    meaningful search at this bound.
    """
    vals = [v if isinstance(v, RealInterval) else RealInterval.exact(v)
            for v in values]
    n = len(vals)
    if n == 0:
        raise ValueError("empty value list")
    if bound < 1:
        raise ValueError("bound must be >= 1")

    need_bits = math.ceil(n * math.log2(bound)) + 48
    widths = [v.width() for v in vals]
    max_width = max(widths)
    if max_width > 0:
        eff_bits = -math.ceil(math.log2(max_width))
        if eff_bits < need_bits:
            raise PrecisionError(
                f"enclosure width 2^-{eff_bits} too coarse for bound {bound} "
                f"on {n} values (need about {need_bits} bits)")
        scale_bits = eff_bits - 8
    else:
        scale_bits = need_bits + 64
    scale = 1 << scale_bits

    basis = []
    for i, v in enumerate(vals):
        row = [0] * n + [round(v.midpoint() * scale)]
        row[i] = 1
        basis.append(row)
    reduced = lll_reduce(basis, delta)

    candidates = []
    for row in reduced:
        coeffs = row[:n]
        if all(c == 0 for c in coeffs):
            continue
        if max(abs(c) for c in coeffs) > bound:
            continue
        total = RealInterval.exact(0)
        for c, v in zip(coeffs, vals):
            total = total + c * v
        if total.contains(0):
            candidates.append((sum(c * c for c in coeffs), coeffs, total))
    if not candidates:
        return IntegerRelationResult(None, bound, scale_bits, delta)

    candidates.sort(key=lambda item: item[0])
    _, coeffs, total = candidates[0]
    first = next(c for c in coeffs if c != 0)
    if first < 0:
        coeffs = [-c for c in coeffs]
    return IntegerRelationResult(list(coeffs), bound, scale_bits, delta,
                                 residual=total)
