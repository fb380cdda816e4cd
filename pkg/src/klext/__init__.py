"""Exact Kazhdan-Lusztig combinatorics for Coxeter systems.

Laurent polynomials, Coxeter groups with ShortLex normal forms and Bruhat
order, the Hecke algebra with its KL basis, the spherical and anti-spherical
parabolic modules, the double parabolic module ``N_J * 1_I`` and Ext tables
for singular blocks of parabolic category O.
"""

__version__ = "0.1.0"

from .coxeter import INF, LEFT, PRESETS, RIGHT, CoxeterSystem, Element
from .double import DoubleModule, check_double_inversion, check_p_identities
from .errors import (
    AmbientNotClosed,
    IndexNotInQuotient,
    InfiniteParabolic,
    InvalidCoxeterMatrix,
    KLError,
    NotMinimalRep,
    NotRegularRep,
    SystemMismatch,
    TableCapExceeded,
    UnknownGenerator,
)
from .ext import AFFINE_NEGATIVE, AFFINE_POSITIVE, FINITE, BlockSpec, ext_poly, ext_table, index_set
from .hecke import HeckeAlgebra, HeckeElt
from .laurent import ONE, V, V_INV, ZERO, LaurentPoly
from .modules import ANTISPHERICAL, SPHERICAL, ParabolicModule, parabolic_module, quotient_ball
from .parabolic import (
    double_min_reps,
    in_quotient,
    is_regular,
    longest_element,
    min_rep,
    quotient,
    regular_double_reps,
)
from .tables import CheckReport, KLTable
