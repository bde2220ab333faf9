"""Exact-arithmetic toolkit for net-outdegree voting on preference networks."""

from .rationals import Rational, as_rational, format_rational, parse_rational
from .relations import (
    AlternativeSet,
    DomainTooLargeError,
    NotABijectionError,
    NotAnOrderError,
    Relation,
    RelationClassification,
    UnknownAlternativeError,
    all_permutations,
    cycle_permutation,
    default_alternatives,
    dichotomous_order,
    enumerate_domain,
    full_indifference,
    identity_permutation,
    linear_order,
    parse_domain_tag,
    ranked_prefix_order,
    relation_from_pairs,
    relation_in_domain,
    transposition,
    weak_order,
)
from .networks import (
    Network,
    NetworkClassification,
    NotPseudoSymmetricError,
    NotZeroOneCompleteError,
    arc_network,
    canonical_cycle,
    classify_network,
    complete_network,
    constant_network,
    copeland_scores,
    copeland_solution,
    cycle_decompose,
    cycle_network,
    full_cycle_decomposition,
    is_pseudo_symmetric,
    linear_combine,
    net_outdegree,
    net_outdegree_solution,
    outstar_network,
    zero_network,
)
from .profiles import (
    OverlappingVotersError,
    Profile,
    WitnessCertificate,
    clone_disjoint,
    combine_disjoint,
    dichotomous_singleton,
    network_of_profile,
    network_of_relation,
    profile_scores,
    profile_solution,
    symmetrize,
    witness_outstar,
)
from .rules import (
    DomainViolationError,
    RULES,
    Rule,
    approval_score,
    approval_scores,
    borda_score,
    borda_scores,
    evaluate,
    net_outdegree_scores,
    partial_borda_score,
    partial_borda_scores,
    resolve_rule,
)
from .ballots import ProfileParseError, format_profile, parse_profile

__version__ = "0.1.0"
