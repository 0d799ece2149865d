"""Per-node cost accounting for peer-to-peer routing geometries.

The package answers one question three ways: what does participating in
an overlay network cost each node, split into service, access, routing
and maintenance?  Closed forms, exact enumeration over every ordered
(source, holder) pair, and seeded Monte Carlo simulation all produce
the same ``CostReport`` shape and are cross-checked in the test suite.
"""

from .closedforms import (
    AllN,
    Candidate,
    DeBruijnBounds,
    EquilibriumSize,
    NoneBesidesTwo,
    StarCosts,
    chord_costs,
    debruijn_bounds,
    debruijn_l_max,
    plaxton_costs,
    plaxton_distance_pmf,
    star_cost_gap,
    star_costs,
    star_equilibrium_size,
    torus_costs,
    torus_loading,
    torus_ring_loading,
)
from .costmodel import (
    CostBreakdown,
    CostParams,
    InvalidParameterError,
    RequestModel,
    ResourceLimitError,
    UnsupportedParameterError,
    maintenance_cost,
    service_cost,
    total_cost,
)
from .engine import (
    Aggregates,
    ComparisonTable,
    ComponentStats,
    CostReport,
    DeviationRow,
    LoadingProfile,
    SimMeta,
    analytic_report,
    compare,
    enumerate_exact,
    node_loading,
    route_census,
    simulate,
    simulate_seeds,
)
from .topologies import (
    ChordRing,
    DeBruijn,
    GeometrySpec,
    PlaxtonTree,
    Route,
    Star,
    Topology,
    Torus,
    bfs_distance,
    build,
    canonical_route,
    degree,
    is_repeated_symbol_node,
    node_label,
)

__version__ = "0.1.0"

__all__ = [
    "AllN",
    "Aggregates",
    "Candidate",
    "ChordRing",
    "ComparisonTable",
    "ComponentStats",
    "CostBreakdown",
    "CostParams",
    "CostReport",
    "DeBruijn",
    "DeBruijnBounds",
    "DeviationRow",
    "EquilibriumSize",
    "GeometrySpec",
    "InvalidParameterError",
    "LoadingProfile",
    "NoneBesidesTwo",
    "PlaxtonTree",
    "RequestModel",
    "ResourceLimitError",
    "Route",
    "SimMeta",
    "Star",
    "StarCosts",
    "Topology",
    "Torus",
    "UnsupportedParameterError",
    "analytic_report",
    "bfs_distance",
    "build",
    "canonical_route",
    "chord_costs",
    "compare",
    "debruijn_bounds",
    "debruijn_l_max",
    "degree",
    "enumerate_exact",
    "is_repeated_symbol_node",
    "maintenance_cost",
    "node_label",
    "node_loading",
    "plaxton_costs",
    "plaxton_distance_pmf",
    "route_census",
    "service_cost",
    "simulate",
    "simulate_seeds",
    "star_cost_gap",
    "star_costs",
    "star_equilibrium_size",
    "torus_costs",
    "torus_loading",
    "torus_ring_loading",
    "total_cost",
]
