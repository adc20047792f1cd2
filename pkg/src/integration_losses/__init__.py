"""Welfare gains and losses when stable-matching communities integrate."""
from .generators import (
    RoleTag,
    family_roles,
    proposition1_instance,
    random_instance,
    replicate,
    worst_case_instance,
)
from .integration import (
    GainsReport,
    agent_gain,
    average_gains,
    gains_report,
    percentile_rank,
    raw_rank,
    total_gains,
    trivial_lower_bound,
    worst_case_value,
)
from .model import (
    AgentId,
    Instance,
    Matching,
    MatchingScheme,
    Population,
    Side,
    ValidationError,
    man,
    restrict,
    validate,
    woman,
)
from .stability import (
    BlockingPair,
    blocking_pairs,
    deferred_acceptance,
    enumerate_stable,
    is_stable,
    is_unique_stable,
    stable_scheme,
)
