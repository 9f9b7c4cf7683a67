"""Cyclic branched-cover homology, linking forms, and metabolizers.

Two presentations of H_1 of the r-fold cyclic branched cover are used:

* the circulant one, substituting the cyclic shift C for t in the
  Alexander-module presentation V - t V^T (so the matrix is
  I (x) V - C (x) V^T on r sheet blocks, with deck action C (x) I);
  this matches the module quotient M/(t^r - 1)M generator by generator
  and is unimodularly equivalent to the block matrix C (x) V - I (x) V^T;

* the symmetric block-tridiagonal one T_r with r-1 diagonal blocks
  V + V^T and off-diagonal blocks -V / -V^T, the intersection form of
  the branched cover of the 4-ball over the pushed-in Seifert surface.
  Its cokernel carries the linking form lambda(x, y) = -x^T T_r^-1 y
  mod 1 and the deck action by the companion matrix of
  1 + t + ... + t^(r-1).

The two are linked by an explicit tracked reduction: in sheet
coordinates (x_0, .., x_(r-1)) the change of basis to
(x_0, x_1 - x_0, .., x_(r-1) - x_(r-2)) turns the circulant matrix into
[[unimodular, *], [0, -T_r]], so dropping the x_0 block is an
isomorphism of cokernels.  That is how pi^r carries Alexander-module
elements into the form-carrying group: a module generator e_i lands on
(-e_i, 0, .., 0) in the T_r coordinates.

Every construction here re-verifies its own consistency (SNF agreement
of the presentations, deck action preserving the image lattice and the
linking form, three-way order cross-checks) and aborts loudly on any
mismatch.
"""

from __future__ import annotations

from fractions import Fraction

from .intmat import IntegerMatrix, in_row_span, smith_normal_form
from .laurent import LaurentPolynomial, resultant
from .seifert import alexander_polynomial


class ConsistencyError(AssertionError):
    """Internal cross-checks between presentations disagreed."""


class EnumerationBudgetError(RuntimeError):
    """Subgroup enumeration exceeded the configured budget."""


def _cyclic_shift(r):
    return IntegerMatrix([[1 if i == (j + 1) % r else 0 for j in range(r)]
                          for i in range(r)])


def circulant_presentation(v, r):
    """I (x) V - C (x) V^T, presenting M/(t^r - 1)M on sheet blocks."""
    V = v.matrix
    C = _cyclic_shift(r)
    eye = IntegerMatrix.identity(r)
    return (IntegerMatrix.kronecker(eye, V)
            - IntegerMatrix.kronecker(C, V.transpose()))


def circulant_presentation_spec_form(v, r):
    """C (x) V - I (x) V^T, the same group in its other standard shape."""
    V = v.matrix
    C = _cyclic_shift(r)
    eye = IntegerMatrix.identity(r)
    return (IntegerMatrix.kronecker(C, V)
            - IntegerMatrix.kronecker(eye, V.transpose()))


def symmetric_presentation_matrix(v, r):
    """Block tridiagonal T_r: diagonal V + V^T, super -V, sub -V^T."""
    V = v.matrix
    S = V + V.transpose()
    n = V.rows
    k = r - 1
    T = IntegerMatrix.zero(n * k, n * k)
    for blk in range(k):
        for i in range(n):
            for j in range(n):
                T.data[blk * n + i][blk * n + j] = S.data[i][j]
                if blk + 1 < k:
                    T.data[blk * n + i][(blk + 1) * n + j] = -V.data[i][j]
                    T.data[(blk + 1) * n + i][blk * n + j] = -V.data[j][i]
    return T


def deck_matrix_symmetric(v, r):
    """Deck transformation on the T_r cokernel: the companion matrix of
    1 + t + .. + t^(r-1), blockwise."""
    n = v.matrix.rows
    k = r - 1
    P = IntegerMatrix.zero(k, k)
    for j in range(k):
        P.data[0][j] = -1
    for i in range(1, k):
        P.data[i][i - 1] += 1
    return IntegerMatrix.kronecker(P, IntegerMatrix.identity(n))


class PresentedGroup:
    """A finite(ly presented) abelian group Z^n / column-span(P), with an
    optional deck action and an optional Q/Z linking form."""

    def __init__(self, presentation, deck=None, linking_inverse=None,
                 description=""):
        self.presentation = presentation
        self.snf = smith_normal_form(presentation)
        self.deck = deck
        self.linking_inverse = linking_inverse
        self.description = description
        self._uinv = None
        if deck is not None:
            self._check_deck_preserves_image()

    # -- structure --------------------------------------------------------

    @property
    def ambient_rank(self):
        return self.presentation.rows

    def torsion(self):
        return self.snf.torsion()

    def free_rank(self):
        return self.snf.free_rank

    def order(self):
        if self.free_rank() > 0:
            return None
        return self.snf.group_order()

    def is_finite(self):
        return self.free_rank() == 0

    def _moduli(self):
        d = list(self.snf.diagonal)
        d += [0] * (self.ambient_rank - len(d))
        return d

    def canonical(self, x):
        """SNF coordinates of the class of x (tuple, entry i mod d_i)."""
        y = self.snf.U.mul_vector(list(x))
        out = []
        for yi, di in zip(y, self._moduli()):
            out.append(yi % di if di else yi)
        return tuple(out)

    def is_zero_class(self, x):
        return not any(self.canonical(x))

    def classes_equal(self, x, y):
        return self.canonical(x) == self.canonical(y)

    def element_order(self, x):
        can = self.canonical(x)
        order = 1
        for yi, di in zip(can, self._moduli()):
            if di == 0:
                if yi != 0:
                    return None
                continue
            if yi:
                from math import gcd
                order = order * (di // gcd(di, yi)) // _gcd_safe(order, di // gcd(di, yi))
        return order

    def ambient_from_canonical(self, coords):
        if self._uinv is None:
            self._uinv = self.snf.U.unimodular_inverse()
        return self._uinv.mul_vector(list(coords))

    def generators(self):
        """One ambient generator per nontrivial SNF factor, with its order."""
        out = []
        for i, d in enumerate(self._moduli()):
            if d == 1:
                continue
            coords = [0] * self.ambient_rank
            coords[i] = 1
            out.append((self.ambient_from_canonical(coords), d))
        return out

    # -- deck action --------------------------------------------------------

    def _check_deck_preserves_image(self):
        # deck * P must have columns inside the column span of P
        prod = self.deck * self.presentation
        for j in range(prod.cols):
            col = [prod.data[i][j] for i in range(prod.rows)]
            if not self._column_span_contains(col):
                raise ConsistencyError("deck action does not preserve the image lattice")

    def _column_span_contains(self, col):
        rows = [[self.presentation.data[i][j] for i in range(self.presentation.rows)]
                for j in range(self.presentation.cols)]
        return in_row_span(rows, col)

    def deck_orbit(self, x, max_steps=None):
        if self.deck is None:
            raise ValueError("group carries no deck action")
        out = [list(x)]
        seen = {self.canonical(x)}
        current = list(x)
        steps = max_steps if max_steps is not None else 4 * self.ambient_rank + 8
        for _ in range(steps):
            current = self.deck.mul_vector(current)
            can = self.canonical(current)
            if can in seen:
                break
            seen.add(can)
            out.append(current)
        return out

    # -- linking form ---------------------------------------------------------

    def linking_value(self, x, y):
        """lambda(x, y) in Q/Z, as a Fraction in [0, 1)."""
        if self.linking_inverse is None:
            raise ValueError("group carries no linking form")
        total = Fraction(0)
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self.linking_inverse[i]
            for j, yj in enumerate(y):
                if yj:
                    total += xi * yj * row[j]
        return total % 1

    def linking_gram_mod1(self):
        gens = self.generators()
        return [[self.linking_value(g, h) for h, _ in gens] for g, _ in gens]

    def check_linking_form(self):
        """Symmetry, nondegeneracy, and deck invariance of the form."""
        gens = self.generators()
        for gi, di in gens:
            for gj, dj in gens:
                if self.linking_value(gi, gj) != self.linking_value(gj, gi):
                    raise ConsistencyError("linking form is not symmetric")
        for gi, di in gens:
            denoms = [self.linking_value(gi, gj).denominator for gj, _ in gens]
            lcm = 1
            for d in denoms:
                lcm = lcm * d // _gcd_safe(lcm, d)
            if lcm != di:
                raise ConsistencyError(
                    f"linking form degenerate on a generator of order {di}")
        if self.deck is not None:
            for gi, _ in gens:
                for gj, _ in gens:
                    ti = self.deck.mul_vector(gi)
                    tj = self.deck.mul_vector(gj)
                    if self.linking_value(ti, tj) != self.linking_value(gi, gj):
                        raise ConsistencyError("linking form is not deck invariant")
        return True

    # -- subgroups ------------------------------------------------------------

    def subgroup_order(self, gens):
        """Order of the subgroup generated by ambient vectors (finite case)."""
        if not self.is_finite():
            raise ValueError("subgroup orders need a finite group")
        moduli = self._moduli()
        rows = [list(self.canonical(g)) for g in gens]
        for i, d in enumerate(moduli):
            row = [0] * self.ambient_rank
            row[i] = d
            rows.append(row)
        stacked = smith_normal_form(IntegerMatrix(rows))
        index = 1
        for d in stacked.nonzero_diagonal:
            index *= d
        if len(stacked.nonzero_diagonal) != self.ambient_rank:
            raise ConsistencyError("subgroup lattice lost full rank")
        return _prod(moduli) // index

    def subgroup_contains(self, gens, x):
        moduli = self._moduli()
        rows = [list(self.canonical(g)) for g in gens]
        for i, d in enumerate(moduli):
            row = [0] * self.ambient_rank
            row[i] = d
            rows.append(row)
        return in_row_span(rows, list(self.canonical(x)))

    def to_json(self):
        out = {
            "torsion": self.torsion(),
            "free_rank": self.free_rank(),
            "description": self.description,
        }
        if self.linking_inverse is not None:
            out["linking_gram_mod1"] = [[str(v) for v in row]
                                        for row in self.linking_gram_mod1()]
        return out


def _gcd_safe(a, b):
    from math import gcd
    return gcd(a, b)


def _prod(values):
    out = 1
    for v in values:
        out *= v
    return out


def branched_cover_homology(v, r):
    """H_1 of the r-fold cyclic branched cover, presented on sheet blocks
    with the deck action, cross-checked against the other circulant shape
    and (when finite) against the resultant order formula."""
    if r < 2:
        raise ValueError("need r >= 2")
    pres = circulant_presentation(v, r)
    spec_shape = circulant_presentation_spec_form(v, r)
    if smith_normal_form(pres).diagonal != smith_normal_form(spec_shape).diagonal:
        raise ConsistencyError("the two circulant shapes disagree")
    deck = IntegerMatrix.kronecker(_cyclic_shift(r),
                                   IntegerMatrix.identity(v.matrix.rows))
    group = PresentedGroup(pres, deck=deck,
                           description=f"H1 of the {r}-fold branched cover")
    order = group.order()
    if order is not None:
        expected = branched_cover_order_by_resultant(v, r)
        if order != expected:
            raise ConsistencyError(
                f"SNF order {order} != resultant order {expected}")
    return group


def branched_cover_order_by_resultant(v, r):
    """|H_1(Sigma_r)| = |Res(1 + t + .. + t^(r-1), Delta)| when finite."""
    delta = alexander_polynomial(v)
    nu = LaurentPolynomial({i: 1 for i in range(r)})
    return abs(resultant(nu, delta))


def symmetric_cover_presentation(v, r):
    """The form-carrying presentation: coker(T_r) with linking
    lambda(x, y) = -x^T T_r^-1 y mod 1 and the companion deck action.

    Raises if the group is infinite or if any cross-check against the
    circulant presentation fails.
    """
    if r < 2:
        raise ValueError("need r >= 2")
    T = symmetric_presentation_matrix(v, r)
    if T.rows and T.det() == 0:
        raise ValueError("branched cover has infinite first homology")
    circ = smith_normal_form(circulant_presentation(v, r))
    sym = smith_normal_form(T)
    if circ.torsion() != sym.torsion() or \
            circ.free_rank + 0 != (T.rows - len(sym.nonzero_diagonal)):
        raise ConsistencyError(
            "symmetric and circulant presentations present different groups")
    inv = None
    if T.rows:
        inv = [[-x for x in row] for row in T.inverse_fractions()]
    deck = deck_matrix_symmetric(v, r) if T.rows else None
    group = PresentedGroup(T, deck=deck, linking_inverse=inv,
                           description=f"H1 of the {r}-fold branched cover "
                                       f"(symmetric presentation)")
    if T.rows:
        group.check_linking_form()
        _check_deck_order(group, r)
    return group


def _check_deck_order(group, r):
    gens = group.generators()
    for g, _ in gens:
        current = list(g)
        for _ in range(r):
            current = group.deck.mul_vector(current)
        if not group.classes_equal(current, g):
            raise ConsistencyError("deck action does not have order dividing r")


def sheet_to_symmetric(v, r, sheet_vector):
    """The tracked reduction: sheet coordinates (x_0, .., x_(r-1)) to T_r
    coordinates (x_1 - x_0, .., x_(r-1) - x_(r-2))."""
    n = v.matrix.rows
    blocks = [sheet_vector[i * n:(i + 1) * n] for i in range(r)]
    out = []
    for j in range(1, r):
        out.extend(a - b for a, b in zip(blocks[j], blocks[j - 1]))
    return out


class Metabolizer:
    """A self-annihilating subgroup of half order, with provenance data."""

    __slots__ = ("generators", "context", "invariant_under_deck", "order", "label")

    def __init__(self, generators, context, invariant_under_deck, order, label=""):
        self.generators = [list(g) for g in generators]
        self.context = context
        self.invariant_under_deck = invariant_under_deck
        self.order = order
        self.label = label

    def verify(self, group):
        """Re-check the defining invariants inside the given group."""
        for g in self.generators:
            for h in self.generators:
                if group.linking_value(g, h) != 0:
                    return False
        if group.subgroup_order(self.generators) != self.order:
            return False
        total = group.order()
        if total is None or self.order * self.order != total:
            return False
        if group.deck is not None:
            inv = all(group.subgroup_contains(self.generators,
                                              group.deck.mul_vector(g))
                      for g in self.generators)
            if inv != self.invariant_under_deck:
                return False
        return True

    def __repr__(self):
        return (f"Metabolizer({self.label or self.generators}, order={self.order}, "
                f"context={self.context})")

    def to_json(self):
        return {"generators": self.generators, "order": self.order,
                "context": self.context, "label": self.label,
                "deck_invariant": self.invariant_under_deck}


def pi_r_projection(decomposition, curve_label, r, cover=None):
    """Image of the cyclic summand generated by the labelled curve under
    pi^r: M -> M/(t^r - 1)M = H_1(Sigma_r), as a subgroup of the
    form-carrying symmetric presentation.

    Returns a Metabolizer candidate; the caller can re-verify it against
    the cover group (and this function asserts the invariants hold).
    """
    v = decomposition.seifert
    if cover is None:
        cover = symmetric_cover_presentation(v, r)
    n = v.matrix.rows
    index = decomposition.generator_index(curve_label)
    sheet = [0] * (n * r)
    sheet[index] = 1
    base = sheet_to_symmetric(v, r, sheet)
    gens = cover.deck_orbit(base, max_steps=r)
    order = cover.subgroup_order(gens)
    deck_invariant = all(cover.subgroup_contains(gens, cover.deck.mul_vector(g))
                         for g in gens)
    met = Metabolizer(gens, context="linking-form",
                      invariant_under_deck=deck_invariant, order=order,
                      label=f"pi^{r}(<{curve_label}>)")
    if not met.verify(cover):
        raise ConsistencyError(
            f"pi^{r} image of <{curve_label}> failed the metabolizer invariants")
    return met


def enumerate_metabolizers(group, require_deck_invariant=False, budget=10 ** 6):
    """All subgroups H with lambda(H, H) = 0 and |H|^2 = |G|, exhaustively.

    Enumerates subgroups through Hermite-normal-form generator matrices
    on the SNF coordinates.  Raises EnumerationBudgetError when |G| or
    the candidate count exceeds the budget.
    """
    if not group.is_finite():
        raise ValueError("metabolizer enumeration needs a finite group")
    total = group.order()
    if total > budget:
        raise EnumerationBudgetError(
            f"group order {total} exceeds the enumeration budget {budget}")
    root = _integer_sqrt_exact(total)
    if root is None:
        return []
    moduli = [d for d in group._moduli() if d > 1]
    positions = [i for i, d in enumerate(group._moduli()) if d > 1]
    k = len(moduli)
    if k == 0:
        return [Metabolizer([], context="linking-form",
                            invariant_under_deck=True, order=1,
                            label="trivial")] if root == 1 else []

    gens_ambient = {}

    def ambient(row):
        key = tuple(row)
        if key not in gens_ambient:
            coords = [0] * group.ambient_rank
            for pos, val in zip(positions, row):
                coords[pos] = val
            gens_ambient[key] = group.ambient_from_canonical(coords)
        return gens_ambient[key]

    # Gram matrix of the linking form on the SNF generators
    basis = [ambient([1 if i == j else 0 for j in range(k)]) for i in range(k)]
    gram = [[group.linking_value(a, b) for b in basis] for a in basis]
    deck_rows = None
    if group.deck is not None:
        deck_rows = []
        for b in basis:
            img = group.deck.mul_vector(b)
            can = group.canonical(img)
            deck_rows.append([can[p] for p in positions])

    found = []
    candidates = 0
    target_det = total // root  # prod h_ii for subgroup order == root

    def rec(i, rows, det_so_far):
        nonlocal candidates
        if det_so_far > target_det:
            return
        if i == k:
            if det_so_far != target_det:
                return
            candidates += 1
            if candidates > budget:
                raise EnumerationBudgetError(
                    f"candidate count exceeded the budget {budget}")
            _consider(rows)
            return
        for h in _divisors(moduli[i]):
            if det_so_far * h > target_det:
                continue
            base = [0] * k
            base[i] = h
            _offdiag(i, rows, base, 0, det_so_far * h)

    def _offdiag(i, rows, current, j, det_next):
        if j == i:
            rec(i + 1, rows + [current], det_next)
            return
        hjj = rows[j][j]
        for val in range(hjj):
            nxt = current[:]
            nxt[j] = val
            _offdiag(i, rows, nxt, j + 1, det_next)

    def _consider(rows):
        # containment of the relation lattice: d_i e_i must be in the span
        lattice = rows
        for i, d in enumerate(moduli):
            probe = [0] * k
            probe[i] = d
            if not in_row_span(lattice, probe):
                return
        # subgroup order
        order = root
        # isotropy
        for a in rows:
            for b in rows:
                val = Fraction(0)
                for i, ai in enumerate(a):
                    if ai == 0:
                        continue
                    for j, bj in enumerate(b):
                        if bj:
                            val += ai * bj * gram[i][j]
                if val % 1 != 0:
                    return
        if deck_rows is not None:
            invariant = True
            for a in rows:
                img = [0] * k
                for i, ai in enumerate(a):
                    if ai:
                        for j in range(k):
                            img[j] += ai * deck_rows[i][j]
                img = [val % d for val, d in zip(img, moduli)]
                if not in_row_span(rows + [_unit_row(k, i, d)
                                           for i, d in enumerate(moduli)], img):
                    invariant = False
                    break
        else:
            invariant = False
        if require_deck_invariant and not invariant:
            return
        gens = [ambient(row) for row in rows if any(x % d for x, d in zip(row, moduli))]
        met = Metabolizer(gens, context="linking-form",
                          invariant_under_deck=invariant, order=order)
        if not met.verify(group):
            raise ConsistencyError("enumerated metabolizer failed verification")
        found.append(met)

    rec(0, [], 1)
    return found


def _unit_row(k, i, d):
    row = [0] * k
    row[i] = d
    return row


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


def _integer_sqrt_exact(n):
    import math
    root = math.isqrt(n)
    return root if root * root == n else None


# -- surgery bookkeeping -----------------------------------------------------


class SurgeryHomology:
    __slots__ = ("group", "is_z2_homology_sphere")

    def __init__(self, group, is_z2_homology_sphere):
        self.group = group
        self.is_z2_homology_sphere = is_z2_homology_sphere

    def to_json(self):
        return {"torsion": self.group.torsion(),
                "free_rank": self.group.free_rank(),
                "z2_homology_sphere": self.is_z2_homology_sphere}


def surgery_homology(linking_matrix):
    """H_1 of surgery on a framed link with the given symmetric linking
    matrix, plus the Z/2-homology-sphere test (odd nonzero determinant)."""
    if not linking_matrix.is_symmetric():
        raise ValueError("surgery linking matrix must be symmetric")
    group = PresentedGroup(linking_matrix, description="surgery first homology")
    det = linking_matrix.det() if linking_matrix.rows else 1
    is_z2 = det != 0 and det % 2 != 0
    return SurgeryHomology(group, is_z2)


def canonical_surgery_bijection(lk_before, lk_after):
    """The identity identification of surgery homologies under an
    untwisted winding-number-w satellite replacement of a component.

    Replacing a component by a satellite with the same framing changes
    neither linking numbers nor framings, so the two surgery
    descriptions share one linking matrix and the bijection on H^2 is
    literally the identity on coker(linking matrix); this raises if the
    matrices differ.
    """
    if lk_before != lk_after:
        raise ValueError("satellite replacement must preserve the linking matrix")
    return IntegerMatrix.identity(lk_before.rows)
