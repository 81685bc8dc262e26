"""Topology-aware coded caching on relay networks.

Thin python surface over the C++ core: build a network, place caches, run
the delivery scheme, then inspect exact rational loads or verify
decodability. All rationals cross the boundary as fractions.Fraction.
"""

from ._core import (
    CachePlacement,
    DeliveryPlan,
    LoadReport,
    MulticastMessage,
    RelayNetwork,
    build_combination_network,
    build_general_network,
    closed_form_load_r2,
    cman_place,
    compute_loads,
    decentralized_deliver,
    dman_place,
    hybrid_deliver,
    hybrid_place,
    parse_topology,
    plan_grain,
    rebalance,
    reference_table,
    server_to_relay_loads,
    shared_link_cman_load,
    shared_link_dman_load,
    simulate_concrete,
    srds_deliver,
    verify_decodability,
    verify_plan_dump,
    worst_case_demand,
)

__version__ = "0.1.0"

__all__ = [
    "CachePlacement",
    "DeliveryPlan",
    "LoadReport",
    "MulticastMessage",
    "RelayNetwork",
    "build_combination_network",
    "build_general_network",
    "closed_form_load_r2",
    "cman_place",
    "compute_loads",
    "decentralized_deliver",
    "dman_place",
    "hybrid_deliver",
    "hybrid_place",
    "parse_topology",
    "plan_grain",
    "rebalance",
    "reference_table",
    "server_to_relay_loads",
    "shared_link_cman_load",
    "shared_link_dman_load",
    "simulate_concrete",
    "srds_deliver",
    "verify_decodability",
    "verify_plan_dump",
    "worst_case_demand",
]
