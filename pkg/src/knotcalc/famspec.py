"""Parser and serializer for family spec strings.

The grammar covers every knot the toolkit constructs:

    knot := "unknot" | "U" | "trefoil"
          | "Rm(m=INT [; aJ=knot] [; aD=knot])"
          | "Ji(INT)"
          | "Dplus(knot, INT)" | "Dminus(knot, INT)"
          | "mirror(knot)"
          | "times(INT, knot)"        k-fold connected sum
          | "sum(knot, knot, ...)"    connected sum

Whitespace is free.  Parse errors carry the 0-based position of the
offending character.
"""

from __future__ import annotations

from .families import (InfectedKnot, as_infected, infect, make_Ji, make_Rm,
                       make_twisted_double, mirror_infected, sum_infected,
                       torus_knot_sum, trefoil, unknot)


class FamilySpecError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise FamilySpecError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def ident(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()
                                             or self.text[self.pos] in "_+-"):
            if self.text[self.pos] in "+-" and self.pos > start:
                break
            self.pos += 1
        if self.pos == start:
            self.error("expected a name")
        return self.text[start:self.pos]

    def integer(self):
        self.skip_ws()
        start = self.pos
        if self.peek() in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or not self.text[start:self.pos].lstrip("+-"):
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def parse(self):
        knot = self.knot()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing input")
        return knot

    def knot(self):
        self.skip_ws()
        if self.pos >= len(self.text):
            self.error("expected a knot")
        name = self.ident()
        if name in ("unknot", "U"):
            return as_infected(unknot())
        if name == "trefoil":
            return as_infected(trefoil())
        if name == "Rm":
            return self.rm_args()
        if name == "Ji":
            self.expect("(")
            i = self.integer()
            self.expect(")")
            return make_Ji(i)
        if name in ("Dplus", "Dminus"):
            self.expect("(")
            companion = self.knot()
            self.expect(",")
            twists = self.integer()
            self.expect(")")
            return make_twisted_double(1 if name == "Dplus" else -1,
                                       companion, twists)
        if name == "mirror":
            self.expect("(")
            inner = self.knot()
            self.expect(")")
            return mirror_infected(inner)
        if name == "times":
            self.expect("(")
            k = self.integer()
            self.expect(",")
            inner = self.knot()
            self.expect(")")
            out = as_infected(unknot())
            for _ in range(abs(k)):
                piece = inner if k > 0 else mirror_infected(inner)
                out = sum_infected(out, piece)
            return out
        if name == "sum":
            self.expect("(")
            parts = [self.knot()]
            while self.peek() == ",":
                self.expect(",")
                parts.append(self.knot())
            self.expect(")")
            out = parts[0]
            for p in parts[1:]:
                out = sum_infected(out, p)
            return out
        self.error(f"unknown constructor {name!r}")

    def rm_args(self):
        self.expect("(")
        m = None
        aj = None
        ad = None
        while True:
            key = self.ident()
            self.expect("=")
            if key == "m":
                m = self.integer()
            elif key == "aJ":
                aj = self.knot()
            elif key == "aD":
                ad = self.knot()
            else:
                self.error(f"unknown Rm argument {key!r}")
            if self.peek() == ";":
                self.expect(";")
                continue
            break
        self.expect(")")
        if m is None:
            self.error("Rm needs m=")
        knot = make_Rm(m)
        if aj is not None:
            knot = infect(knot, "alpha_J", aj)
        if ad is not None:
            knot = infect(knot, "alpha_D", ad)
        return knot


def parse_family_spec(text):
    """Parse a family spec string into an InfectedKnot."""
    if not text or not text.strip():
        raise FamilySpecError("empty spec", 0)
    return _Parser(text).parse()


def structural_key(knot):
    """Canonical hashable shape of a knot: base matrix entries plus the
    sorted infection sites with their companions' structural keys.
    Names and labels are ignored, so two constructions of the same
    infected knot compare equal."""
    knot = as_infected(knot)
    base = tuple(tuple(row) for row in knot.base.matrix.data)
    infections = tuple(sorted(
        (site, structural_key(comp)) for site, comp in knot.infections.items()))
    return (base, infections)


def structurally_equal(a, b):
    return structural_key(a) == structural_key(b)
