"""Exact and sampled statistics of a product of k uniformly random N-cycles."""

from .characters import (
    CycleType,
    HookShape,
    class_character_sum,
    cycle_types,
    frobenius_identity_count,
    hook_character,
    partitions,
    per_permutation_probability,
    product_class_distribution,
)
from .cycles import (
    FormulaMismatch,
    ProductSpec,
    num_cycles_distribution,
    p3_is_cycle,
    p_all_same_length,
    p_cycle_type_k2,
    p_identity,
    p_involution_k2,
    p_is_cycle,
    p_num_cycles,
    p_same_length_2,
    p_same_length_3,
    pgf_k2_closed,
    pgf_num_cycles,
    zagier_prob,
)
from .exact import FormalSeries, Rational, binomial, falling, rising, stirling1
from .montecarlo import McConfig, McResult, estimate, estimate_events, sample_maximal_cycle
from .oracle import OracleRefused, Permutation, event_probability, exact_product_distribution
from .subsets import (
    BlockingSpec,
    OccupancySet,
    OccupancySpec,
    Q_A,
    S_nab,
    SeparationSpec,
    K_coeff,
    blocked_cycle_count,
    p_A1,
    p_A1_k2,
    p_A2,
    p_A2_k2,
    p_blocking,
    p_derangement_k2,
    p_occupancy,
    p_separation,
    p_separation_full,
    p_separation_k2_bernardi,
    p_separation_k2_final,
    p_separation_k2_smallcomp,
    sigma_wz,
)

__version__ = "0.1.0"

__all__ = [
    "binomial",
    "blocked_cycle_count",
    "BlockingSpec",
    "class_character_sum",
    "cycle_types",
    "CycleType",
    "estimate",
    "estimate_events",
    "event_probability",
    "exact_product_distribution",
    "falling",
    "FormalSeries",
    "FormulaMismatch",
    "frobenius_identity_count",
    "hook_character",
    "HookShape",
    "K_coeff",
    "McConfig",
    "McResult",
    "num_cycles_distribution",
    "OccupancySet",
    "OccupancySpec",
    "OracleRefused",
    "p3_is_cycle",
    "p_A1",
    "p_A1_k2",
    "p_A2",
    "p_A2_k2",
    "p_all_same_length",
    "p_blocking",
    "p_cycle_type_k2",
    "p_derangement_k2",
    "p_identity",
    "p_involution_k2",
    "p_is_cycle",
    "p_num_cycles",
    "p_occupancy",
    "p_same_length_2",
    "p_same_length_3",
    "p_separation",
    "p_separation_full",
    "p_separation_k2_bernardi",
    "p_separation_k2_final",
    "p_separation_k2_smallcomp",
    "partitions",
    "per_permutation_probability",
    "Permutation",
    "pgf_k2_closed",
    "pgf_num_cycles",
    "product_class_distribution",
    "ProductSpec",
    "Q_A",
    "Rational",
    "rising",
    "S_nab",
    "sample_maximal_cycle",
    "SeparationSpec",
    "sigma_wz",
    "stirling1",
    "zagier_prob",
]
