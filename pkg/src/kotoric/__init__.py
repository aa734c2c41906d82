"""KO-theory of torus classifying spaces, Davis-Januszkiewicz spaces and
quasitoric manifolds, computed exactly through truncated KU models."""

from .dj import (
    LimitTuple,
    SimplicialComplex,
    dj_equal,
    ko_restrict,
    limit_tuple,
    minimal_nonfaces,
    sr_reduce_ko,
    sr_reduce_ku,
    tuple_mul,
)
from .ko import (
    ALPHA,
    BETA,
    E,
    G2Symbol,
    KoElement,
    KoScalar,
    complexify,
    g1_class,
    gamma_shift,
    is_g2_normal,
    ko_equal,
    ko_module_action,
    ko_mul,
    normalize_symbol,
    r_of_v_power,
    realify,
    relation_I_sides,
    relation_II_sides,
)
from .ku import KuElement, Truncation, ku_conjugate, ku_monomial, ku_mul, ku_restrict
from .linalg import (
    F2Matrix,
    LatticeQuotient,
    f2_kernel_basis,
    f2_rank,
    hermite_normal_form,
    int_rank,
    smith_normal_form,
)
from .notation import ParseError, parse, render
from .smash import smash_rank_two_ways
from .toric import (
    BBNumbers,
    CharacteristicMatrix,
    FiniteKuAlgebra,
    InvalidCharacteristic,
    Manifold,
    Mod2Cohomology,
    NotSq2Acyclic,
    bb_numbers,
    is_sq2_acyclic,
    manifold_ko_equal,
    manifold_ko_rank,
    manifold_ku,
    mod2_cohomology,
    validate_characteristic,
)

__version__ = "0.1.0"
