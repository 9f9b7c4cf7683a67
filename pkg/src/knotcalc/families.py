"""Constructors for the knot families driving the obstruction pipeline.

The seed knots here are the genus-one pretzel-like knots with Alexander
polynomial (m t - (m+1))((m+1) t - m), their twisted Whitehead-double
companions, and winding-number-zero infections of Seifert surface bands
by companion knots.  A winding-zero infection leaves the Seifert form
unchanged, so every Seifert-level invariant of an InfectedKnot is read
off its base matrix; the companion data is kept structurally for the
metabolizer case analysis.

Curve-label convention for the seed matrix V = [[0, m+1], [m, 0]]:
alpha_J is the curve dual to the first band (basis vector e1, generating
Z[t]/<m t - (m+1)> in coker(V - t V^T)) and alpha_D the second (e2,
generating Z[t]/<(m+1) t - m>).
"""

from __future__ import annotations

from .intmat import IntegerMatrix
from .seifert import (SeifertMatrix, alexander_polynomial, connected_sum,
                      mirror_reverse)

ALPHA_J = "alpha_J"
ALPHA_D = "alpha_D"


def unknot():
    return SeifertMatrix(IntegerMatrix([]), "U")


def trefoil():
    """The right-handed trefoil T(2,3), signature -2."""
    return SeifertMatrix([[-1, 1], [0, -1]], "T(2,3)")


def torus_knot_sum(k):
    """The connected sum of k copies of T(2,3) (mirrored for k < 0)."""
    if k == 0:
        return unknot()
    piece = trefoil() if k > 0 else mirror_reverse(trefoil())
    out = piece
    for _ in range(abs(k) - 1):
        out = connected_sum(out, piece)
    out.label = f"{k}T(2,3)" if abs(k) > 1 else out.label
    return out


class InfectedKnot:
    """A Seifert matrix with companion knots tied into surface bands.

    infections maps a 1-based basis-curve index to a companion
    (InfectedKnot or SeifertMatrix); labels maps the same indices to
    curve names such as "alpha_J".  Since all infections have winding
    number zero, Seifert-form invariants agree with the base.
    """

    __slots__ = ("base", "infections", "labels", "name")

    def __init__(self, base, infections=None, labels=None, name=""):
        if not isinstance(base, SeifertMatrix):
            base = SeifertMatrix(base)
        self.base = base
        self.infections = dict(infections or {})
        self.labels = dict(labels or {})
        self.name = name or base.label
        for site in self.infections:
            if not (1 <= site <= base.size):
                raise ValueError(f"infection site {site} outside 1..{base.size}")
        if len(set(self.infections)) != len(self.infections):
            raise ValueError("duplicate infection sites")

    @property
    def seifert(self):
        return self.base

    @property
    def genus(self):
        return self.base.genus

    def companion_at(self, site_or_label):
        site = site_or_label
        if isinstance(site_or_label, str):
            site = next((s for s, lab in self.labels.items()
                         if lab == site_or_label), None)
            if site is None:
                raise KeyError(f"no curve labelled {site_or_label!r}")
        return self.infections.get(site)

    def label_of(self, site):
        return self.labels.get(site, f"curve_{site}")

    def __repr__(self):
        return f"InfectedKnot({self.name!r})"

    def to_json(self):
        out = {"base": self.base.to_json(), "name": self.name, "infections": []}
        for site in sorted(self.infections):
            comp = self.infections[site]
            entry = {"site": site, "label": self.label_of(site)}
            if isinstance(comp, InfectedKnot):
                entry["companion"] = comp.to_json()
            else:
                entry["companion"] = {"base": comp.to_json(), "name": comp.label,
                                      "infections": []}
            out["infections"].append(entry)
        return out

    @classmethod
    def from_json(cls, obj):
        base = SeifertMatrix.from_json(obj["base"])
        infections = {}
        labels = {}
        for entry in obj.get("infections", []):
            site = int(entry["site"])
            labels[site] = entry.get("label", f"curve_{site}")
            infections[site] = cls.from_json(entry["companion"])
        return cls(base, infections, labels, obj.get("name", ""))


def as_infected(knot):
    if isinstance(knot, InfectedKnot):
        return knot
    return InfectedKnot(knot)


def base_seifert(knot):
    return knot.base if isinstance(knot, InfectedKnot) else knot


def make_Rm(m):
    """The genus-one seed knot with Alexander polynomial
    (m t - (m+1))((m+1) t - m); for m = 1 this is the knot 9_46."""
    if m < 1 or m % 2 == 0:
        raise ValueError("m must be an odd positive integer")
    v = SeifertMatrix([[0, m + 1], [m, 0]], f"R_{m}")
    return InfectedKnot(v, {}, {1: ALPHA_J, 2: ALPHA_D}, name=f"R_{m}")


def lambda_polynomial(m):
    """(m t - (m+1)) ((m+1) t - m), the seed Alexander polynomial."""
    from .laurent import LaurentPolynomial

    f = LaurentPolynomial({1: m, 0: -(m + 1)})
    g = LaurentPolynomial({1: m + 1, 0: -m})
    return (f * g).symmetrized()


def make_twisted_double(clasp, companion, twists):
    """The twists-twisted Whitehead double with the given clasp sign.

    Base Seifert matrix [[-clasp, 1], [0, twists]]; the companion is an
    infection on the twist band (curve index 2).  The Alexander
    polynomial depends only on clasp and twists: for the negative clasp
    it is n t - (2n-1) + n t^-1 with n = twists.
    """
    if clasp not in (1, -1):
        raise ValueError("clasp must be +1 or -1")
    sign = "+" if clasp == 1 else "-"
    comp = base_seifert(companion) if not isinstance(companion, InfectedKnot) else companion
    comp_name = comp.name if isinstance(comp, InfectedKnot) else comp.label
    base = SeifertMatrix([[-clasp, 1], [0, twists]],
                         f"D{sign}({comp_name},{twists})")
    infections = {}
    labels = {2: "twist_band"}
    if not _is_unknot(companion):
        infections[2] = as_infected(companion)
    return InfectedKnot(base, infections, labels, name=base.label)


def _is_unknot(knot):
    return base_seifert(knot).size == 0


def primes_1_mod_4(count):
    """The first `count` primes congruent to 1 mod 4, starting at 5."""
    out = []
    n = 5
    while len(out) < count:
        if n % 4 == 1 and _is_prime(n):
            out.append(n)
        n += 2
    return out


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def family_parameters(i):
    """(p_i, k_i) with p_i the i-th prime = 1 mod 4 from 5 on and
    k_i = (p_i - 1)^2 / 8."""
    if i < 1:
        raise ValueError("index must be >= 1")
    p = primes_1_mod_4(i)[-1]
    k, rem = divmod((p - 1) ** 2, 8)
    assert rem == 0, "p = 1 mod 4 forces (p-1)^2 divisible by 8"
    return p, k


def make_Ji(i):
    """The i-th companion J_i = D_-(k_i T(2,3), 2 k_i)."""
    p, k = family_parameters(i)
    double = make_twisted_double(-1, torus_knot_sum(k), 2 * k)
    double.name = f"J_{i}"
    return double


def infect(knot, site, companion):
    """Tie a companion through the band dual to the given basis curve.

    site may be a 1-based index or a curve label already attached to the
    knot.  Re-infecting an occupied site is an error.
    """
    knot = as_infected(knot)
    if isinstance(site, str):
        idx = next((s for s, lab in knot.labels.items() if lab == site), None)
        if idx is None:
            raise KeyError(f"no curve labelled {site!r}")
        site = idx
    if not (1 <= site <= knot.base.size):
        raise ValueError(f"infection site {site} outside 1..{knot.base.size}")
    if site in knot.infections:
        raise ValueError(f"site {site} is already infected")
    infections = dict(knot.infections)
    if not _is_unknot(companion):
        infections[site] = as_infected(companion)
    comp_name = as_infected(companion).name or "U"
    name = f"{knot.name}({knot.label_of(site)}<-{comp_name})"
    return InfectedKnot(knot.base, infections, dict(knot.labels), name)


def sum_infected(a, b):
    """Connected sum of infected knots: bases block-sum, infection sites
    of the second summand shift past the first."""
    a = as_infected(a)
    b = as_infected(b)
    base = connected_sum(a.base, b.base)
    shift = a.base.size
    infections = dict(a.infections)
    labels = dict(a.labels)
    for site, comp in b.infections.items():
        infections[site + shift] = comp
    for site, lab in b.labels.items():
        labels[site + shift] = lab
    name = f"{a.name} # {b.name}" if a.name and b.name else (a.name or b.name)
    return InfectedKnot(base, infections, labels, name)


def mirror_infected(knot):
    """Mirror image with reversed orientation, companions mirrored too."""
    knot = as_infected(knot)
    base = mirror_reverse(knot.base)
    infections = {site: mirror_infected(comp)
                  for site, comp in knot.infections.items()}
    return InfectedKnot(base, infections, dict(knot.labels),
                        f"-({knot.name})" if knot.name else "")


def make_satellite(m, j_companion, d_companion):
    """R_m with alpha_J and alpha_D infected by the given companions."""
    knot = make_Rm(m)
    knot = infect(knot, ALPHA_J, j_companion)
    knot = infect(knot, ALPHA_D, d_companion)
    jn = as_infected(j_companion).name or "U"
    dn = as_infected(d_companion).name or "U"
    knot.name = f"R_{m}({jn}, {dn})"
    return knot


def standard_D():
    """D = D_+(T(2,3), 0), the untwisted positive-clasped double of the
    trefoil: trivial Alexander polynomial, topologically slice."""
    d = make_twisted_double(+1, trefoil(), 0)
    d.name = "D"
    return d
