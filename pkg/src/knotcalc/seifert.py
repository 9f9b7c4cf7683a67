"""Seifert matrices and the classical invariants computed from them.

The convention throughout is V[i][j] = lk(a_i^+, a_j) for a basis
a_1, .., a_2g of the Seifert surface, so that

* the Alexander polynomial is det(V - t V^T), normalized to the
  symmetric representative with positive value at 1,
* the Tristram-Levine signature at omega on the unit circle is the
  signature of the Hermitian form (1-omega) V + (1-conj(omega)) V^T,
* the Alexander module over Z[t, t^-1] is coker(V - t V^T).

Signatures are evaluated exactly: sample points on the circle are taken
with rational cosine AND sine (tan-half-angle parametrization), the
Hermitian form A + iB is converted to the real symmetric companion
[[A, -B], [B, A]] of twice the signature, and that matrix is
diagonalized by congruence over Q.  Signature jumps are located by
isolating the real roots of the Chebyshev transform of the Alexander
polynomial, so the resulting step function is exact, not numerical.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .intmat import IntegerMatrix
from .interval import RealInterval, arccos_interval, pi_interval
from .laurent import LaurentPolynomial
from . import realroots


class SeifertMatrix:
    """A square integer matrix V of even size with det(V - V^T) = +-1."""

    __slots__ = ("matrix", "label")

    def __init__(self, matrix, label=""):
        if not isinstance(matrix, IntegerMatrix):
            matrix = IntegerMatrix(matrix)
        if matrix.rows != matrix.cols:
            raise ValueError("Seifert matrix must be square")
        if matrix.rows % 2 != 0:
            raise ValueError("Seifert matrix must have even size")
        d = (matrix - matrix.transpose()).det()
        if d not in (1, -1):
            raise ValueError(f"det(V - V^T) = {d}, expected +-1")
        self.matrix = matrix
        self.label = label

    @property
    def size(self):
        return self.matrix.rows

    @property
    def genus(self):
        return self.size // 2

    def __eq__(self, other):
        return isinstance(other, SeifertMatrix) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"SeifertMatrix({self.matrix.data}, label={self.label!r})"

    def to_json(self):
        return {"label": self.label, "matrix": [row[:] for row in self.matrix.data]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["matrix"], obj.get("label", ""))


def connected_sum(a, b):
    """Block-diagonal sum; Alexander polynomials multiply, signatures add."""
    label = a.label and b.label and f"{a.label} # {b.label}" or (a.label or b.label)
    return SeifertMatrix(a.matrix.block_sum(b.matrix), label)


def mirror_reverse(a):
    """The Seifert matrix -V^T of the mirror image with reversed orientation."""
    return SeifertMatrix(-a.matrix.transpose(),
                         f"-({a.label})" if a.label else "")


def alexander_polynomial(v):
    """det(V - t V^T) as the symmetric normalized Laurent polynomial."""
    V = v.matrix
    n = V.rows
    if n == 0:
        return LaurentPolynomial.one()
    # Evaluate det(V - t V^T) at n+1 integer points and interpolate; the
    # polynomial has degree <= n.
    VT = V.transpose()
    points = []
    values = []
    x = 0
    while len(points) < n + 1:
        points.append(x)
        values.append((V - VT * x).det())
        x = -x if x > 0 else -x + 1
    coeffs = _interpolate_integer_polynomial(points, values)
    poly = LaurentPolynomial({i: c for i, c in enumerate(coeffs)})
    assert abs(poly.evaluate(1)) == 1, "Alexander polynomial must be +-1 at t=1"
    return poly.symmetrized()


def _interpolate_integer_polynomial(xs, ys):
    """Exact Lagrange interpolation returning integer coefficients."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        # the i-th Lagrange basis polynomial, as a coefficient list
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            # multiply basis by (x - xj)
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for k, c in enumerate(basis):
            coeffs[k] += scale * c
    out = []
    for c in coeffs:
        assert c.denominator == 1
        out.append(int(c))
    while out and out[-1] == 0:
        out.pop()
    return out


# -- exact signatures ------------------------------------------------------


def signature_of_symmetric_fractions(rows):
    """(positive, negative, zero) inertia of a rational symmetric matrix."""
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    pos = neg = zero = 0
    k = 0
    while k < n:
        if m[k][k] == 0:
            j_diag = next((j for j in range(k + 1, n) if m[j][j] != 0), None)
            if j_diag is not None:
                j = j_diag
                m[k], m[j] = m[j], m[k]
                for row in m:
                    row[k], row[j] = row[j], row[k]
            else:
                j_off = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if j_off is None:
                    zero += 1
                    k += 1
                    continue
                j = j_off
                # congruence: add row/col j into k; with both diagonal
                # entries zero this makes m[k][k] = 2 m[k][j] != 0
                for col in range(n):
                    m[k][col] += m[j][col]
                for row in m:
                    row[k] += row[j]
        pivot = m[k][k]
        for i in range(k + 1, n):
            if m[i][k] != 0:
                f = m[i][k] / pivot
                for col in range(n):
                    m[i][col] -= f * m[k][col]
                for row in m:
                    row[i] -= f * row[k]
        if pivot > 0:
            pos += 1
        else:
            neg += 1
        k += 1
    return pos, neg, zero


def rational_circle_point(c_lo, c_hi):
    """A point (cos, sin) on the unit circle with both coordinates rational,
    sin > 0, and cos strictly inside (c_lo, c_hi) with -1 <= c_lo < c_hi <= 1.

    Uses the tan-half-angle parametrization cos = (1-u^2)/(1+u^2),
    sin = 2u/(1+u^2), which is a bijection from u > 0 onto the open
    upper semicircle.  A float guess is tried first, then exact bisection.
    """
    c_lo, c_hi = Fraction(c_lo), Fraction(c_hi)
    if not (-1 <= c_lo < c_hi <= 1):
        raise ValueError("need -1 <= c_lo < c_hi <= 1")

    def cos_of(u):
        return (1 - u * u) / (1 + u * u)

    target = (c_lo + c_hi) / 2
    tf = float(target)
    if -1 < tf < 1:
        uf = math.sqrt((1 - tf) / (1 + tf))
        for bits in range(8, 80, 8):
            u = Fraction(uf).limit_denominator(1 << bits)
            if u > 0 and c_lo < cos_of(u) < c_hi:
                return cos_of(u), 2 * u / (1 + u * u)
    # exact bisection on u (cos_of is decreasing for u > 0)
    lo, hi = Fraction(0), Fraction(1)
    while cos_of(hi) > c_lo:
        hi *= 2
    for _ in range(10000):
        u = (lo + hi) / 2
        c = cos_of(u)
        if c >= c_hi:
            lo = u
        elif c <= c_lo:
            hi = u
        else:
            return c, 2 * u / (1 + u * u)
    raise ArithmeticError("no rational circle point found (degenerate interval)")


def signature_at_circle_point(v, cos_value, sin_value):
    """Tristram-Levine signature at omega = cos + i sin (rational, on S^1).

    The Hermitian form (1-omega)V + (1-conj omega)V^T equals A + iB with
    A = (1-cos)(V+V^T) and B = sin*(V^T-V); its signature is half the
    signature of the real symmetric companion [[A, -B], [B, A]].
    """
    c, s = Fraction(cos_value), Fraction(sin_value)
    if c * c + s * s != 1:
        raise ValueError("(cos, sin) must lie exactly on the unit circle")
    V = v.matrix
    n = V.rows
    if n == 0:
        return 0
    S = V + V.transpose()
    T = V.transpose() - V
    big = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            a = (1 - c) * S.data[i][j]
            b = s * T.data[i][j]
            big[i][j] = a
            big[n + i][n + j] = a
            big[i][n + j] = -b
            big[n + i][j] = b
    pos, neg, zero = signature_of_symmetric_fractions(big)
    if zero:
        raise ValueError("signature sampled at a root of the Alexander polynomial")
    sig = pos - neg
    assert sig % 2 == 0
    return sig // 2


def signature_at_minus_one(v):
    """The classical Murasugi signature sign(V + V^T)."""
    if v.size == 0:
        return 0
    S = v.matrix + v.matrix.transpose()
    pos, neg, zero = signature_of_symmetric_fractions(S.data)
    if zero:
        raise ValueError("degenerate symmetrized Seifert form")
    return pos - neg


# -- signature profiles ----------------------------------------------------


class Breakpoint:
    """An angle theta in (0, pi) where the signature function may jump,
    stored through cos(theta): exactly rational, or as an integer
    polynomial with a certified isolating interval."""

    __slots__ = ("cos_value", "minpoly", "interval")

    def __init__(self, cos_value=None, minpoly=None, interval=None):
        if cos_value is not None:
            cos_value = Fraction(cos_value)
            if not (-1 < cos_value < 1):
                raise ValueError("breakpoint cosine must lie in (-1, 1)")
        self.cos_value = cos_value
        self.minpoly = tuple(minpoly) if minpoly else None
        self.interval = (Fraction(interval[0]), Fraction(interval[1])) if interval else None
        if cos_value is None and (self.minpoly is None or self.interval is None):
            raise ValueError("algebraic breakpoint needs minpoly and interval")

    @property
    def is_rational(self):
        return self.cos_value is not None

    def key(self):
        if self.is_rational:
            return ("rational", self.cos_value)
        return ("algebraic", self.minpoly, self.interval)

    def cos_enclosure(self, bits):
        """Certified RealInterval for cos(theta)."""
        if self.is_rational:
            return RealInterval.exact(self.cos_value, bits)
        width = Fraction(1, 1 << (bits + 2))
        # minpoly is in x = 2 cos(theta); halve afterwards
        lo, hi = realroots.refine_root(list(self.minpoly),
                                       (2 * self.interval[0], 2 * self.interval[1]),
                                       width)
        return RealInterval(lo / 2, hi / 2, bits)

    def arccos_enclosure(self, bits):
        if self.is_rational:
            return arccos_interval(self.cos_value, bits)
        enc = self.cos_enclosure(bits + 4)
        lo = arccos_interval(enc.hi, bits + 4)
        hi = arccos_interval(enc.lo, bits + 4)
        return RealInterval(lo.lo, hi.hi, bits)

    def __eq__(self, other):
        if not isinstance(other, Breakpoint):
            return NotImplemented
        if self.is_rational and other.is_rational:
            return self.cos_value == other.cos_value
        if self.is_rational != other.is_rational:
            return False
        if self.minpoly == other.minpoly:
            a, b = self.interval, other.interval
            return not (a[1] <= b[0] or b[1] <= a[0])
        return False

    def __hash__(self):
        # rational and algebraic breakpoints never compare equal here
        return hash(self.cos_value) if self.is_rational else hash(self.minpoly)

    def __repr__(self):
        if self.is_rational:
            return f"Breakpoint(cos={self.cos_value})"
        return f"Breakpoint(minpoly={self.minpoly}, x in {self.interval})"

    def to_json(self):
        if self.is_rational:
            return {"cos": str(self.cos_value)}
        return {"minpoly": list(self.minpoly),
                "interval": [str(self.interval[0]), str(self.interval[1])]}


class SignatureProfile:
    """Exact piecewise-constant description of the signature function on
    (0, pi], open-arc values only, symmetric extension to the circle."""

    __slots__ = ("breakpoints", "values")

    def __init__(self, breakpoints, values):
        if len(values) != len(breakpoints) + 1:
            raise ValueError("need one more arc value than breakpoints")
        if values and values[0] != 0:
            raise ValueError("signature must vanish near omega = 1")
        for v in values:
            if v % 2 != 0:
                raise ValueError("signature values must be even")
        self.breakpoints = list(breakpoints)
        self.values = [int(v) for v in values]

    def value_at_minus_one(self):
        return self.values[-1]

    def __eq__(self, other):
        return (isinstance(other, SignatureProfile)
                and self.values == other.values
                and len(self.breakpoints) == len(other.breakpoints)
                and all(a == b for a, b in zip(self.breakpoints, other.breakpoints)))

    def __repr__(self):
        return f"SignatureProfile(breakpoints={self.breakpoints}, values={self.values})"

    def to_json(self):
        return {"breakpoints": [b.to_json() for b in self.breakpoints],
                "values": self.values}


def signature_profile(v):
    """The exact Tristram-Levine signature step function of V."""
    V = v.matrix
    if V.rows == 0:
        return SignatureProfile([], [0])
    delta = alexander_polynomial(v)
    q = _cheb_transform(delta)
    intervals = realroots.isolate_roots(q, Fraction(-2), Fraction(2))
    breakpoints = []
    for iv in intervals:
        rat = realroots.rational_root_in(q, iv)
        if rat is not None:
            breakpoints.append(Breakpoint(cos_value=rat / 2))
        else:
            sf = realroots.squarefree_part(q)
            breakpoints.append(Breakpoint(minpoly=sf,
                                          interval=(iv[0] / 2, iv[1] / 2)))
    # order arcs by increasing theta = decreasing cosine
    def sort_key(b):
        if b.is_rational:
            return -b.cos_value
        return -(b.interval[0] + b.interval[1]) / 2

    breakpoints.sort(key=sort_key)

    # cosine windows per breakpoint, ordered decreasingly; shrink the
    # algebraic ones until consecutive windows are strictly separated
    refined = []
    for b in breakpoints:
        if b.is_rational:
            refined.append((b.cos_value, b.cos_value))
        else:
            refined.append(b.interval)
    for _ in range(64):
        overlap = next((i for i in range(len(refined) - 1)
                        if refined[i][0] <= refined[i + 1][1]), None)
        if overlap is None:
            break
        shrunk = False
        for j in (overlap, overlap + 1):
            b = breakpoints[j]
            if not b.is_rational:
                width = (refined[j][1] - refined[j][0]) / 2
                lo, hi = realroots.refine_root(
                    list(b.minpoly),
                    (2 * refined[j][0], 2 * refined[j][1]), width)
                refined[j] = (lo / 2, hi / 2)
                shrunk = True
        if not shrunk:
            raise ArithmeticError("coincident breakpoints failed to separate")
    else:
        raise ArithmeticError("breakpoint separation did not converge")

    values = []
    prev_lo = Fraction(1)
    for i in range(len(breakpoints) + 1):
        hi_bound = prev_lo
        lo_bound = refined[i][1] if i < len(breakpoints) else Fraction(-1)
        c, s = rational_circle_point(lo_bound, hi_bound)
        values.append(signature_at_circle_point(v, c, s))
        if i < len(breakpoints):
            prev_lo = refined[i][0]
    # cross-check the final arc against the classical signature at -1
    assert values[-1] == signature_at_minus_one(v)
    for val in values:
        assert abs(val) <= V.rows
    return SignatureProfile(breakpoints, values)


def _disjoint(a, b):
    return a[1] < b[0] or b[1] < a[0]


def _cheb_transform(delta):
    """Coefficients of q(x) with t^g delta(t) = t^g q(t+1/t), exact."""
    sym = delta.symmetrized()
    g = sym.max_exp() if not sym.is_zero() else 0
    q = [0] * (g + 1)
    q[0] = sym[0]
    if g == 0:
        return realroots._trim(q)
    p_prev = [2]          # P_0
    p_cur = [0, 1]        # P_1
    for j in range(1, g + 1):
        coeff = sym[j]
        if coeff:
            for k, c in enumerate(p_cur):
                q[k] += coeff * c
        # P_{j+1} = x * P_j - P_{j-1}
        nxt = [0] + p_cur
        for k, c in enumerate(p_prev):
            nxt[k] -= c
        p_prev, p_cur = p_cur, nxt
    while q and q[-1] == 0:
        q.pop()
    return q


# -- signature integrals ---------------------------------------------------


class SignatureIntegral:
    """The integral of the signature function over the circle, exactly.

    Stored via the mass-2pi normalization, where the value is the
    integer-coefficient combination

        pi_coeff * pi + sum_j coeff_j * arccos(c_j)

    over the breakpoint cosines c_j.  The mass-1 normalization (Haar
    measure of total mass 1) divides this by 2 pi.  Enclosures are
    certified at any requested precision; symbolic zero (all
    coefficients vanish) is exact.
    """

    __slots__ = ("pi_coeff", "terms")

    def __init__(self, pi_coeff, terms):
        self.pi_coeff = Fraction(pi_coeff)
        merged = {}
        keyed = {}
        for bp, coeff in terms:
            k = bp.key()
            merged[k] = merged.get(k, Fraction(0)) + Fraction(coeff)
            keyed[k] = bp
        self.terms = [(keyed[k], merged[k]) for k in sorted(merged, key=repr)
                      if merged[k] != 0]

    def is_symbolically_zero(self):
        return self.pi_coeff == 0 and not self.terms

    def __add__(self, other):
        return SignatureIntegral(self.pi_coeff + other.pi_coeff,
                                 list(self.terms) + list(other.terms))

    def __neg__(self):
        return SignatureIntegral(-self.pi_coeff,
                                 [(bp, -c) for bp, c in self.terms])

    def enclosure(self, bits=212, convention="mass1"):
        total = pi_interval(bits) * self.pi_coeff
        for bp, coeff in self.terms:
            total = total + bp.arccos_enclosure(bits) * coeff
        if convention == "mass2pi":
            return total
        if convention == "mass1":
            return total / (2 * pi_interval(bits))
        raise ValueError(f"unknown convention {convention!r}")

    def exact_mass1_if_rational_multiple_of_pi(self):
        """Fraction value under mass-1 when all arccos terms are absent."""
        if self.terms:
            return None
        return self.pi_coeff / 2

    def __repr__(self):
        parts = []
        if self.pi_coeff:
            parts.append(f"{self.pi_coeff}*pi")
        for bp, c in self.terms:
            parts.append(f"{c}*arccos({bp.cos_value if bp.is_rational else bp})")
        return "SignatureIntegral(" + (" + ".join(parts) if parts else "0") + ")"

    def to_json(self):
        return {
            "pi_coeff": str(self.pi_coeff),
            "terms": [{"breakpoint": bp.to_json(), "coeff": str(c)}
                      for bp, c in self.terms],
        }


def signature_integral(v):
    """Integral of the signature function of V over the unit circle.

    Exact symbolic value; see SignatureIntegral for conventions.
    """
    profile = signature_profile(v)
    values = profile.values
    pi_coeff = Fraction(2 * values[-1])
    terms = []
    for j, bp in enumerate(profile.breakpoints):
        jump = values[j] - values[j + 1]
        if jump:
            terms.append((bp, Fraction(2 * jump)))
    return SignatureIntegral(pi_coeff, terms)


# -- genus-one Alexander module --------------------------------------------


class UnsupportedDecomposition(ValueError):
    """The Alexander module does not split into two coprime cyclic pieces."""


class Genus1Decomposition:
    """coker(V - t V^T) = Z[t^pm]/<f> (+) Z[t^pm]/<g> for the hyperbolic
    genus-one shape V = [[0, b], [a, 0]].

    The first summand is generated by the basis curve e1 and the second
    by e2; for the seed family the dual-curve labels are alpha_J = e1
    and alpha_D = e2, recorded here so downstream case analysis can
    refer to curves by name.
    """

    __slots__ = ("seifert", "f", "g", "labels")

    def __init__(self, seifert, f, g, labels=("alpha_J", "alpha_D")):
        self.seifert = seifert
        self.f = f
        self.g = g
        self.labels = tuple(labels)

    def annihilator(self, label):
        return {self.labels[0]: self.f, self.labels[1]: self.g}[label]

    def generator_index(self, label):
        return {self.labels[0]: 0, self.labels[1]: 1}[label]

    def __repr__(self):
        return (f"Genus1Decomposition({self.labels[0]}: Z[t]/<{self.f}>, "
                f"{self.labels[1]}: Z[t]/<{self.g}>)")


def alexander_module_genus1(v):
    """Split coker(V - t V^T) into two coprime cyclic summands.

    Supported shape: 2x2 Seifert matrix with zero diagonal and
    off-diagonal entries a = V[1][0], b = V[0][1] with 0 < |a| != |b|,
    where the module is visibly Z[t]/<a t - b> (+) Z[t]/<b t - a>.
    Anything else raises UnsupportedDecomposition.
    """
    if v.size != 2:
        raise UnsupportedDecomposition("only genus-one matrices are supported")
    m = v.matrix
    if m.data[0][0] != 0 or m.data[1][1] != 0:
        raise UnsupportedDecomposition(
            "Alexander module does not split: nonzero diagonal Seifert entries")
    a, b = m.data[1][0], m.data[0][1]
    if a == 0 or b == 0 or abs(a) == abs(b):
        raise UnsupportedDecomposition(
            "Alexander polynomial is not a product of two coprime linear factors")
    f = LaurentPolynomial({1: a, 0: -b})
    g = LaurentPolynomial({1: b, 0: -a})
    from .laurent import laurent_gcd_coprime

    coprime, _ = laurent_gcd_coprime(f, g)
    if not coprime:
        raise UnsupportedDecomposition("linear factors are not coprime")
    delta = alexander_polynomial(v)
    assert delta.units_equal(f * g), \
        "factorization does not match the Alexander polynomial"
    return Genus1Decomposition(v, f, g)
