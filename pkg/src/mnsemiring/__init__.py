"""Finite (m,n)-semirings and an algebra of fault-tolerant systems."""
from .algebra import (
    DEFAULT_BUDGET,
    DEFAULT_LIMITS,
    Check,
    Limits,
    MNSemiring,
    OpTable,
    PropertyReport,
    Witness,
    WitnessKind,
    analyze,
    check_associativity,
    check_commutativity,
    check_distributivity,
    find_identity,
    identity_elements,
    idempotent_elements,
    is_absorbing,
    is_cancellative,
    is_zero_divisor_free,
    is_zero_sum_free,
    verify_mn_semiring,
)
from .constructions import (
    BinarySemiringSpec,
    boolean_mn_semiring,
    derive_binary_ops,
    from_binary_semiring,
    modular_mn_semiring,
    negative_integers,
    sampled_verify,
)
from .ideals import (
    ideal_generated_by,
    intersect_ideals,
    is_i_ideal,
    is_ideal,
    product_of_subsets,
)
from .morphisms import (
    Congruence,
    Morphism,
    compose_maps,
    enumerate_congruences,
    induced_injection,
    is_congruence,
    is_homomorphism,
    is_isomorphic,
    kernel,
    quotient,
)
from .systems import (
    AtomPoset,
    ReliabilityAssignment,
    Relation,
    check_soundness,
    derive_order,
    failure_probability,
    normalize,
    parse_term,
    semantic_order_sampled,
)

__version__ = "0.1.0"
