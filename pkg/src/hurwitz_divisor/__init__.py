"""Exact computation of the Hurwitz divisor classes [D_2] and [D_3] on the
moduli space of stable curves of even genus, with combinatorial and
braid-monodromy certificates."""
from .exactcomb import (
    alpha,
    binomial,
    catalan_N,
    harris_pencil_counts,
    moment_A,
    restricted_degree_normalized,
)
from .picard import (
    BoundaryProfile,
    DivisorClass,
    d2_class_pipeline,
    d2_class_theorem,
    d3_class,
    kkz_coefficient,
    pushforward_ledger,
)
from .symcover import HurwitzTuple, Permutation, count_covers, enumerate_xi
from .braid import certify_pure_braid_transitivity, orbits

__version__ = "0.1.0"
