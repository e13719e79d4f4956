"""Missing generators of Z_p^*: classification, the unicycle digraph, the
triplet T(p) and the triplet-to-factors reduction."""

from .classify import (
    Tag,
    cardinality_M,
    cardinality_N,
    classify_all,
    exponent_set_A,
    exponent_set_B,
    set_I,
    set_M,
    set_NI,
)
from .digraph import Triplet, build_digraph, build_partition, triplet
from .errors import (
    AssumptionAExhausted,
    InconsistentTriplet,
    InvalidArgument,
    MissgenError,
    NotInvertible,
    PipelineInconsistency,
    StructuralViolation,
    UnsupportedPrimeClass,
)
from .modmath import Factorization, PrimeContext, factorize, is_prime, prime_context
from .tmap import compute_T, factor_semiprime, recover_factors, scan_assumption_a

__version__ = "0.1.0"
