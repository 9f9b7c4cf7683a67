"""Blanchfield pairings on coprime-cyclic Alexander modules, their
metabolizers, and the coprime splitting of metabolizers of connected sums.

Supported modules are direct sums of "hyperbolic genus-one pieces": each
piece is coker(V - t V^T) for V = [[0, b], [a, 0]], which is visibly

    Z[t, 1/t]/<a t - b>  (+)  Z[t, 1/t]/<b t - a>,

and the Blanchfield form B(x, y) = conj(x)^T (t-1) (V - tV^T)^-1 y takes
values in S^-1 Z[t,1/t] / Z[t,1/t].  Writing f = a t - b, the summand
ring Z[t,1/t]/<f> is the subring Z[1/(ab)] of Q, with t acting by b/a;
module elements are therefore stored as tuples of Fractions whose
denominators only involve primes of the relevant a*b.

Key classification used for metabolizer verification (annihilator
computation, certified instance by instance):

* the form is block-anti-diagonal, so orthogonal complements split
  across summands;
* for a nonzero ideal J = d * R_g inside a summand, the annihilator of
  J inside the dual summand R_f is 0: a relation g | d * conj(p) * (t-1)
  over Z[t,1/t] forces g | p over Q (g is linear, primitive, coprime to
  t-1 and to the constant d) and hence p = 0 in R_f by Gauss's lemma;
* the annihilator of the zero ideal is everything.

Consequently P = P-perp holds exactly when P is the direct sum over
pieces of one full summand each, which is what the paper-style case
analysis (P = <alpha_J> or P = <alpha_D>) consumes.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .intmat import in_row_span
from .laurent import LaurentPolynomial, laurent_gcd_coprime


def _strip_factors(n, N):
    """Remove from |n| every prime factor it shares with N."""
    n = abs(n)
    if n == 0:
        return 0
    g = gcd(n, N)
    while g > 1:
        while n % g == 0:
            n //= g
        g = gcd(n, N)
    return n


def laurent_divides_exactly(den, num):
    """True when num/den lies in Z[t, 1/t] (exact division, integer quotient)."""
    if num.is_zero():
        return True
    if den.is_zero():
        raise ZeroDivisionError
    d = den.shift(-den.min_exp()).to_int_coeff_list()
    nmin = num.min_exp()
    n = [Fraction(c) for c in num.shift(-nmin).to_int_coeff_list()]
    dd = len(d) - 1
    if len(n) - 1 < dd:
        return False
    quot = [Fraction(0)] * (len(n) - dd)
    for i in range(len(n) - 1, dd - 1, -1):
        c = n[i] / d[dd]
        quot[i - dd] = c
        if c:
            for j, dc in enumerate(d):
                n[i - dd + j] -= c * dc
    if any(n[:dd]):
        return False
    return all(q.denominator == 1 for q in quot)


class RatFun:
    """A fraction of integer Laurent polynomials, used as a value in
    S^-1 Z[t,1/t]; equality to zero mod Z[t,1/t] is exact division."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = LaurentPolynomial.one()
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def zero(cls):
        return cls(LaurentPolynomial.zero())

    def __add__(self, other):
        return RatFun(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __mul__(self, other):
        if isinstance(other, LaurentPolynomial):
            return RatFun(self.num * other, self.den)
        return RatFun(self.num * other.num, self.den * other.den)

    def conjugate(self):
        return RatFun(self.num.conjugate(), self.den.conjugate())

    def is_integral(self):
        """True when the value is 0 in S^-1 Z[t,1/t] / Z[t,1/t]."""
        return laurent_divides_exactly(self.den, self.num)

    def __repr__(self):
        return f"RatFun(({self.num}) / ({self.den}))"


class CyclicSummand:
    """Z[t,1/t]/<a t - b> = Z[1/(ab)] with t acting by b/a; gcd(a,b)=1."""

    __slots__ = ("a", "b", "N", "label")

    def __init__(self, a, b, label=""):
        if a == 0 or b == 0:
            raise ValueError("annihilator a t - b needs a, b nonzero")
        if gcd(a, b) != 1:
            raise ValueError("annihilator must be primitive")
        if abs(a) == abs(b):
            raise ValueError("|a| = |b| gives a non-coprime-factor module")
        self.a = a
        self.b = b
        self.N = abs(a * b)
        self.label = label

    @property
    def annihilator(self):
        return LaurentPolynomial({1: self.a, 0: -self.b})

    @property
    def t_action(self):
        return Fraction(self.b, self.a)

    def element_valid(self, x):
        x = Fraction(x)
        return _strip_factors(x.denominator, self.N) == 1

    def ideal_generator(self, values):
        """gcd-generator (an integer coprime to N, or 0) of the ideal the
        values generate in Z[1/N]."""
        g = 0
        for x in values:
            x = Fraction(x)
            if x == 0:
                continue
            if not self.element_valid(x):
                raise ValueError(f"{x} is not an element of Z[1/{self.N}]")
            g = gcd(g, _strip_factors(x.numerator, self.N))
        return g

    def lift(self, x):
        """A Laurent polynomial p with p(b/a) = x, i.e. a representative
        of x under Z[t,1/t] ->> Z[t,1/t]/<a t - b>."""
        x = Fraction(x)
        if x == 0:
            return LaurentPolynomial.zero()
        if not self.element_valid(x):
            raise ValueError(f"{x} not in Z[1/{self.N}]")
        # Bezout r*a + s*b = 1 gives 1/a = r + s*t and 1/b = s + r/t there.
        r, s = _bezout(self.a, self.b)
        inv_a = LaurentPolynomial({0: r, 1: s})
        inv_b = LaurentPolynomial({0: s, -1: r})
        den = x.denominator
        da = gcd(den, abs(self.a) ** max(1, den.bit_length()))
        db = den // da
        out = LaurentPolynomial.const(x.numerator)
        # 1/da = (a^j/da) * (1/a)^j with j large enough, same for db
        j = _exponent_bound(da, self.a)
        k = _exponent_bound(db, self.b)
        if da > 1:
            out = out * (self.a ** j // da) * (inv_a ** j)
        if db > 1:
            out = out * (self.b ** k // db) * (inv_b ** k)
        assert out.evaluate(self.t_action) == x
        return out

    def reduce_mod(self, x, c):
        """The image of x in Z[1/N]/cZ[1/N] = Z/c (requires gcd(c, N) = 1)."""
        x = Fraction(x)
        return (x.numerator * pow(x.denominator, -1, c)) % c

    def __repr__(self):
        return f"CyclicSummand({self.a}*t - {self.b}, label={self.label!r})"


def _bezout(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    assert old_r in (1, -1)
    if old_r == -1:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def _exponent_bound(d, base):
    """Smallest j with d | base^j for d supported on primes of base."""
    if d in (1, -1) or d == 0:
        return 0
    j = 0
    power = 1
    while power % d != 0:
        power *= base
        j += 1
        if j > 256:
            raise ArithmeticError("denominator not supported on the base primes")
    return j


class HyperbolicPiece:
    """The Alexander module of one genus-one seed factor, with pairing."""

    __slots__ = ("summands", "name")

    def __init__(self, a, b, labels=("alpha_J", "alpha_D"), name=""):
        # coker(V - tV^T) for V = [[0, b], [a, 0]]:
        # e1 has annihilator a t - b, e2 has annihilator b t - a
        self.summands = (CyclicSummand(a, b, labels[0]),
                         CyclicSummand(b, a, labels[1]))
        self.name = name

    @property
    def a(self):
        return self.summands[0].a

    @property
    def b(self):
        return self.summands[0].b

    def alexander_factor(self):
        return (self.summands[0].annihilator * self.summands[1].annihilator).symmetrized()

    def pairing_entry(self, i, j):
        """B(e_i, e_j) of this piece as a RatFun (0 on the diagonal)."""
        if i == j:
            return RatFun.zero()
        a, b = self.a, self.b
        tm1 = LaurentPolynomial({1: 1, 0: -1})
        if (i, j) == (0, 1):
            return RatFun(tm1, LaurentPolynomial({0: a, 1: -b}))
        return RatFun(tm1, LaurentPolynomial({0: b, 1: -a}))


class CyclicModuleSum:
    """A direct sum of hyperbolic genus-one pieces, with the Blanchfield
    form assembled block-diagonally; elements are Fraction tuples."""

    def __init__(self, pieces):
        self.pieces = list(pieces)
        self.summands = []
        for p in self.pieces:
            self.summands.extend(p.summands)
        roots = [s.t_action for s in self.summands]
        # pairwise-coprime annihilators are required by every algorithm here
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                if roots[i] == roots[j]:
                    raise ValueError("summand annihilators must be pairwise coprime")
        self._squeeze = [self._squeeze_constant(i) for i in range(len(self.summands))]

    @property
    def rank(self):
        return len(self.summands)

    def zero(self):
        return tuple(Fraction(0) for _ in range(self.rank))

    def basis_element(self, i):
        return tuple(Fraction(1 if j == i else 0) for j in range(self.rank))

    def summand_index(self, label):
        for i, s in enumerate(self.summands):
            if s.label == label:
                return i
        raise KeyError(f"no summand labelled {label!r}")

    def element_valid(self, x):
        return len(x) == self.rank and all(
            s.element_valid(c) for s, c in zip(self.summands, x))

    def act_t(self, x, power=1):
        return tuple(Fraction(c) * s.t_action ** power
                     for s, c in zip(self.summands, x))

    def act_polynomial(self, p, x):
        out = self.zero()
        for e, coeff in p.coeffs.items():
            out = tuple(o + coeff * v for o, v in zip(out, self.act_t(x, e)))
        return out

    def _squeeze_constant(self, i):
        """c_i: multiplying by prod_{j != i} h_j scales summand i by a
        unit times c_i and kills the others; c_i is that integer's part
        coprime to N_i."""
        si = self.summands[i]
        u = si.t_action
        value = Fraction(1)
        for j, sj in enumerate(self.summands):
            if j == i:
                continue
            value *= sj.annihilator.evaluate(u)
        c = _strip_factors(value.numerator, si.N)
        assert c != 0
        return c

    def alexander_polynomial(self):
        out = LaurentPolynomial.one()
        for p in self.pieces:
            out = out * p.alexander_factor()
        return out.symmetrized()

    # -- Blanchfield form -------------------------------------------------

    def pairing(self, x, y):
        """B(x, y) as a RatFun; sesquilinear, conjugating the first slot."""
        total = RatFun.zero()
        for p_index, piece in enumerate(self.pieces):
            base = 2 * p_index
            for i in range(2):
                xi = x[base + i]
                if xi == 0:
                    continue
                lift_x = piece.summands[i].lift(xi).conjugate()
                for j in range(2):
                    yj = y[base + j]
                    if yj == 0 or i == j:
                        continue
                    lift_y = piece.summands[j].lift(yj)
                    term = piece.pairing_entry(i, j) * (lift_x * lift_y)
                    total = total + term
        return total

    def pairing_is_zero(self, x, y):
        return self.pairing(x, y).is_integral()


class Submodule:
    """A finitely generated Z[t,1/t]-submodule of a CyclicModuleSum.

    Membership is decided exactly by squeezing between the inner bound
    (+)_i c_i d_i R_i and the outer bound (+)_i d_i R_i, where d_i
    generates the projection ideal; the finite quotient in between is a
    plain abelian-group span computation.
    """

    def __init__(self, module, generators, label=""):
        self.module = module
        gens = []
        for g in generators:
            g = tuple(Fraction(c) for c in g)
            if not module.element_valid(g):
                raise ValueError(f"{g} is not an element of the module")
            if any(g):
                gens.append(g)
        self.generators = gens
        self.label = label
        self._proj = [module.summands[i].ideal_generator(
            [g[i] for g in gens]) for i in range(module.rank)]

    @property
    def projection_ideals(self):
        return list(self._proj)

    def is_zero(self):
        return not self.generators

    def _finite_data(self):
        """(moduli, rows) describing P/C inside Q/C = (+) Z/c_i."""
        mod = self.module
        moduli = []
        for i in range(mod.rank):
            moduli.append(mod._squeeze[i] if self._proj[i] != 0 else 1)
        # t acts on each Z/c_i by b/a mod c_i; its order is finite
        t_units = []
        for s, c in zip(mod.summands, moduli):
            if c == 1:
                t_units.append(1)
            else:
                t_units.append((s.b * pow(s.a, -1, c)) % c)
        order = 1
        for u, c in zip(t_units, moduli):
            if c > 1:
                order = _lcm(order, _mult_order(u, c))
        rows = []
        for g in self.generators:
            x = g
            for _ in range(order):
                rows.append(self._finite_coords(x, moduli))
                x = mod.act_t(x)
        for i, c in enumerate(moduli):
            if c > 1:
                row = [0] * mod.rank
                row[i] = c
                rows.append(row)
        return moduli, rows

    def _finite_coords(self, x, moduli):
        coords = []
        for i, (s, c) in enumerate(zip(self.module.summands, moduli)):
            if c == 1:
                coords.append(0)
                continue
            d = self._proj[i]
            if d == 0:
                if x[i] != 0:
                    raise ValueError("element outside the outer bound")
                coords.append(0)
                continue
            coords.append(s.reduce_mod(Fraction(x[i]) / d, c))
        return coords

    def contains(self, x):
        x = tuple(Fraction(c) for c in x)
        mod = self.module
        if not mod.element_valid(x):
            return False
        # outer bound: projections must lie in d_i R_i
        for i, s in enumerate(mod.summands):
            if self._proj[i] == 0:
                if x[i] != 0:
                    return False
            elif x[i] != 0:
                num = _strip_factors(Fraction(x[i]).numerator, s.N)
                if num % self._proj[i] != 0:
                    return False
        if not self.generators:
            return not any(x)
        moduli, rows = self._finite_data()
        target = self._finite_coords(x, moduli)
        return in_row_span(rows, target)

    def contains_submodule(self, other):
        return all(self.contains(g) for g in other.generators)

    def equals(self, other):
        return self.contains_submodule(other) and other.contains_submodule(self)

    def orthogonal_complement(self):
        """P-perp, via the certified annihilator computation."""
        mod = self.module
        gens = []
        for p_index, piece in enumerate(mod.pieces):
            base = 2 * p_index
            for i in range(2):
                dual = base + (1 - i)
                _certify_annihilator_theorem(piece, 1 - i)
                if self._proj[dual] == 0:
                    gens.append(mod.basis_element(base + i))
        return Submodule(mod, gens, label=f"({self.label})-perp")

    def self_annihilating(self):
        gens = self.generators
        return all(self.module.pairing_is_zero(a, b)
                   for a in gens for b in gens)

    def is_metabolizer(self):
        """P = P-perp for the Blanchfield form, decided exactly."""
        if not self.self_annihilating():
            return False
        return self.equals(self.orthogonal_complement())

    def __repr__(self):
        return f"Submodule({self.label or self.generators})"


def _certify_annihilator_theorem(piece, dual_index):
    """Check the hypotheses that make Ann(d R_dual) = 0 for d != 0:
    the dual annihilator is primitive, nonconstant, and coprime to t-1."""
    h = piece.summands[dual_index].annihilator
    assert h.content() == 1 and h.degree_span() == 1
    tm1 = LaurentPolynomial({1: 1, 0: -1})
    coprime, _ = laurent_gcd_coprime(h, tm1)
    assert coprime, "annihilator shares a factor with t - 1"


def _lcm(a, b):
    return a * b // gcd(a, b)


def _mult_order(u, c):
    order = 1
    acc = u % c
    while acc != 1:
        acc = (acc * u) % c
        order += 1
        if order > 4 * c:
            raise ArithmeticError("multiplicative order runaway")
    return order


# -- module construction and the splitting lemma ----------------------------


def module_of_genus1(decomposition, name=""):
    """CyclicModuleSum for one hyperbolic genus-one Seifert matrix, from
    its Genus1Decomposition (annihilators a t - b and b t - a)."""
    f = decomposition.f
    a, b = f[1], -f[0]
    return CyclicModuleSum([HyperbolicPiece(a, b, decomposition.labels, name)])


def module_sum(*modules):
    pieces = []
    for m in modules:
        pieces.extend(m.pieces)
    return CyclicModuleSum(pieces)


def summand_metabolizers(module):
    """All Blanchfield metabolizers of a sum of hyperbolic pieces.

    By the annihilator classification these are exactly the direct sums
    picking one summand from each piece; each returned Submodule is
    re-verified through is_metabolizer before being returned.
    """
    choices = [[]]
    for p_index in range(len(module.pieces)):
        base = 2 * p_index
        choices = [c + [base + i] for c in choices for i in range(2)]
    out = []
    for choice in choices:
        gens = [module.basis_element(i) for i in choice]
        labels = "+".join(module.summands[i].label for i in choice)
        sub = Submodule(module, gens, label=f"<{labels}>")
        assert sub.is_metabolizer()
        out.append(sub)
    return out


def blanchfield_metabolizers_genus1(v_or_decomposition):
    """The metabolizers of the Blanchfield form of a hyperbolic genus-one
    knot: exactly the two cyclic summands <alpha_J> and <alpha_D>."""
    from .seifert import Genus1Decomposition, alexander_module_genus1, SeifertMatrix

    if isinstance(v_or_decomposition, Genus1Decomposition):
        dec = v_or_decomposition
    else:
        dec = alexander_module_genus1(v_or_decomposition)
    module = module_of_genus1(dec)
    mets = summand_metabolizers(module)
    assert len(mets) == 2
    return mets


class SplitResult:
    __slots__ = ("p_k", "p_j", "k_is_metabolizer", "j_is_metabolizer", "certificate")

    def __init__(self, p_k, p_j, k_is_metabolizer, j_is_metabolizer, certificate):
        self.p_k = p_k
        self.p_j = p_j
        self.k_is_metabolizer = k_is_metabolizer
        self.j_is_metabolizer = j_is_metabolizer
        self.certificate = certificate


def split_metabolizer(module_k, module_j, p_l):
    """Split a metabolizer of the module of K # J into its K and J parts.

    Requires the Alexander polynomials of the two factors to be coprime
    over Q[t,1/t] (checked, with a Bezout certificate).  Returns the two
    intersections P_K = P_L cap M_K and P_J = P_L cap M_J together with
    metabolizer verdicts for each part; verifies P_K (+) P_J = P_L and
    raises if the projections escape P_L (which cannot happen for a
    metabolizer, by the c x = g(t) Delta_J x argument).
    """
    delta_k = module_k.alexander_polynomial()
    delta_j = module_j.alexander_polynomial()
    coprime, certificate = laurent_gcd_coprime(delta_k, delta_j)
    if not coprime:
        raise ValueError("Alexander polynomials of the factors are not coprime")

    module_l = p_l.module
    rk = module_k.rank
    if module_l.rank != rk + module_j.rank:
        raise ValueError("module of K # J must be the direct sum of the factors")

    proj_k_gens = []
    proj_j_gens = []
    for g in p_l.generators:
        gk = tuple(g[:rk]) + tuple(Fraction(0) for _ in range(module_l.rank - rk))
        gj = tuple(Fraction(0) for _ in range(rk)) + tuple(g[rk:])
        if not p_l.contains(gk) or not p_l.contains(gj):
            raise ValueError(
                "projections leave the submodule: input is not a metabolizer "
                "of the connected sum")
        proj_k_gens.append(tuple(g[:rk]))
        proj_j_gens.append(tuple(g[rk:]))

    p_k = Submodule(module_k, proj_k_gens, label=f"{p_l.label} cap K")
    p_j = Submodule(module_j, proj_j_gens, label=f"{p_l.label} cap J")

    # round trip: P_K (+) P_J must reassemble to P_L exactly
    reassembled = Submodule(module_l,
                            [tuple(g) + tuple(module_j.zero()) for g in p_k.generators]
                            + [tuple(module_k.zero()) + tuple(g) for g in p_j.generators],
                            label="reassembled")
    if not (reassembled.contains_submodule(p_l) and p_l.contains_submodule(reassembled)):
        raise AssertionError("P_K (+) P_J != P_L")

    return SplitResult(p_k, p_j, p_k.is_metabolizer(), p_j.is_metabolizer(),
                       certificate)
