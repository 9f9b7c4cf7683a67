"""knotcalc: exact-arithmetic knot concordance obstructions.

A library for the abelian and metabelian obstruction toolkit: Seifert
matrices and their classical invariants, cyclic branched-cover homology
with linking forms and metabolizer enumeration, signature-integral
rho-proxies with certified enclosures, and the symmetric band-move
reduction of links in a genus-2 handlebody.
"""

from .laurent import LaurentPolynomial, laurent_gcd_coprime, resultant
from .intmat import IntegerMatrix, SmithDecomposition, smith_normal_form
from .interval import (RealInterval, arccos_interval, cos_interval,
                       pi_interval, sin_interval, sqrt_interval)
from .lll import IntegerRelationResult, PrecisionError, integer_relation, lll_reduce
from .seifert import (Breakpoint, Genus1Decomposition, SeifertMatrix,
                      SignatureIntegral, SignatureProfile,
                      UnsupportedDecomposition, alexander_module_genus1,
                      alexander_polynomial, connected_sum, mirror_reverse,
                      signature_at_circle_point, signature_at_minus_one,
                      signature_integral, signature_profile)
from .families import (ALPHA_D, ALPHA_J, InfectedKnot, family_parameters,
                       infect, make_Ji, make_Rm, make_satellite,
                       make_twisted_double, standard_D, torus_knot_sum,
                       trefoil, unknot)

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]
