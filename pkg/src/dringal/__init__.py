"""Exact arithmetic for Drinfeld F_q[T]-modules of arbitrary rank.

The package builds division polynomials, torsion modules over the
reductions at primes, and explicit Frobenius matrices in GL_r(A/NA),
and checks the predicted splitting statistics against samples of
primes.
"""

from .apoly import APoly, crt, factor, irreducibles_of_degree, poly_gcd, random_apoly, random_monic
from .chebotarev import ChebotarevReport, ExperimentSpec, run_chebotarev
from .errors import (
    BasisSearchFailed,
    BothZero,
    CharacteristicDividesLevel,
    ConstantInput,
    DivisionByZero,
    DomainMismatch,
    DringalError,
    ExtensionCapExceeded,
    MissingGenerator,
    ModuliNotCoprime,
    NoGoodPrimes,
    NonExactDivision,
    NotADivisor,
    NotAField,
    NotInvertible,
    NotIrreducible,
    NotPrime,
    SizeExceeded,
    SolveFailed,
)
from .extfield import ExtElem, ExtField, canonical_extension, residue_field
from .fields import FqElem, FqField, make_field
from .residue import (
    ResidueElem,
    ResidueMatrix,
    ResidueRing,
    char_poly,
    charpoly_str,
    enumerate_gl,
    g_order,
    gl_order,
    matrix_order,
    reduce_matrix,
    subgroup_order,
    unit_count,
    verify_counting_identity,
)
from .torsion import (
    FrobeniusElement,
    ReducedModule,
    TorsionModule,
    carlitz_reciprocity_check,
    frobenius_matrix,
    linearized_kernel,
    reduce_at,
    torsion,
)
from .twisted import (
    AdditivePoly,
    DrinfeldModule,
    TwistedPoly,
    carlitz,
    generic_module,
    moore_determinant,
    specialize_module,
    to_additive,
)
from .verify import FAMILIES, verify_suite

__version__ = "0.1.0"

__all__ = [
    "APoly",
    "AdditivePoly",
    "BasisSearchFailed",
    "BothZero",
    "ChebotarevReport",
    "CharacteristicDividesLevel",
    "ConstantInput",
    "DivisionByZero",
    "DomainMismatch",
    "DrinfeldModule",
    "DringalError",
    "ExperimentSpec",
    "ExtElem",
    "ExtField",
    "ExtensionCapExceeded",
    "FAMILIES",
    "FqElem",
    "FqField",
    "FrobeniusElement",
    "MissingGenerator",
    "ModuliNotCoprime",
    "NoGoodPrimes",
    "NonExactDivision",
    "NotADivisor",
    "NotAField",
    "NotInvertible",
    "NotIrreducible",
    "NotPrime",
    "ReducedModule",
    "ResidueElem",
    "ResidueMatrix",
    "ResidueRing",
    "SizeExceeded",
    "SolveFailed",
    "TorsionModule",
    "TwistedPoly",
    "canonical_extension",
    "carlitz",
    "carlitz_reciprocity_check",
    "char_poly",
    "charpoly_str",
    "crt",
    "enumerate_gl",
    "factor",
    "frobenius_matrix",
    "g_order",
    "generic_module",
    "gl_order",
    "irreducibles_of_degree",
    "linearized_kernel",
    "make_field",
    "matrix_order",
    "moore_determinant",
    "poly_gcd",
    "random_apoly",
    "random_monic",
    "reduce_at",
    "reduce_matrix",
    "residue_field",
    "run_chebotarev",
    "specialize_module",
    "subgroup_order",
    "to_additive",
    "torsion",
    "unit_count",
    "verify_counting_identity",
    "verify_suite",
]
