"""Exact enumeration, Monte Carlo estimation and report comparison.

The three ways to obtain per-node costs share one vocabulary:

* ``analytic_report`` evaluates the closed forms of ``closedforms``,
* ``enumerate_exact`` walks every ordered (source, holder) pair once,
* ``simulate`` samples pairs uniformly and renormalizes the counters.

All three return a ``CostReport`` so they can be cross-checked with
``compare``.  Enumeration and simulation run on the same vectorized
per-geometry pair kernels; the readable scalar routes in ``topologies``
stay the reference implementation and the test suite pins the kernels
to them.

Simulation normalization.  With ``requests`` sampled pairs (X, J) drawn
independently and uniformly, the unbiased per-node estimators are

    service_i     = s * #{J == i} / requests
    access_i      = a * N * (hops of requests issued by i) / requests
    routing_i     = r * #{requests relayed by i} / requests
    maintenance_i = m * degree(i)            (no sampling involved)

since e.g. E[#{J == i}] / requests = 1/N and the access sum over a
node's own requests estimates (1/N) * (1/N) * sum_j t(i, j) of which
the model wants the N-fold multiple.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from . import closedforms
from .costmodel import (
    CostBreakdown,
    CostParams,
    InvalidParameterError,
    RequestModel,
    ResourceLimitError,
    UnsupportedParameterError,
)
from .topologies import (
    ChordRing,
    DeBruijn,
    GeometrySpec,
    PlaxtonTree,
    Star,
    Topology,
    Torus,
)

#: Enumeration refuses networks above this size unless told otherwise;
#: the walk is quadratic in the node count.
DEFAULT_EXACT_LIMIT = 4096

#: Ordered pairs handled per enumeration block, sized to keep the
#: scratch arrays comfortably in cache-friendly territory.
_PAIR_BLOCK = 1 << 19

COMPONENTS = ("service", "access", "routing", "maintenance", "total")


# ---------------------------------------------------------------------------
# report types


@dataclass(frozen=True)
class ComponentStats:
    mean: float
    min: float
    max: float


@dataclass(frozen=True)
class Aggregates:
    """Network-level summary of one report.

    ``second_min_routing`` is the smallest routing cost strictly above
    the minimum, falling back to the minimum when every node pays the
    same.  It exists because debruijn has a handful of nodes that route
    nothing at all, and the cheapest node that does route is the more
    telling floor.
    """

    service: ComponentStats
    access: ComponentStats
    routing: ComponentStats
    maintenance: ComponentStats
    total: ComponentStats
    second_min_routing: float


@dataclass(frozen=True)
class SimMeta:
    seeds: tuple[int, ...]
    requests: int


@dataclass(frozen=True)
class CostReport:
    """Per-node costs for one geometry obtained by one method."""

    method: str  # "analytic" | "exact" | "simulated"
    geometry: GeometrySpec
    params: CostParams
    per_node: tuple[CostBreakdown, ...]
    aggregates: Aggregates
    sim_meta: Optional[SimMeta] = None

    def component(self, name: str) -> np.ndarray:
        """Per-node values of one component (or "total") as an array."""
        if name not in COMPONENTS:
            raise InvalidParameterError(f"unknown component {name!r}")
        if name == "total":
            return np.array([b.total for b in self.per_node])
        return np.array([getattr(b, name) for b in self.per_node])


@dataclass(frozen=True)
class LoadingProfile:
    """How many ordered pairs each node relays, and the network total."""

    per_node: tuple[int, ...]
    total: int


@dataclass
class RouteCensus:
    """Raw integer counters from a full walk over all N**2 pairs."""

    hop_sums: np.ndarray  # per source: total hops to all destinations
    loading: np.ndarray  # per node: ordered pairs relayed
    pair_count: int


@dataclass(frozen=True)
class DeviationRow:
    component: str
    method_a: str
    method_b: str
    mean_a: float
    mean_b: float
    max_abs_dev: float
    max_rel_dev: float
    within_tol: bool


@dataclass(frozen=True)
class ComparisonTable:
    geometry: GeometrySpec
    rows: tuple[DeviationRow, ...]

    def all_within(self) -> bool:
        return all(row.within_tol for row in self.rows)


# ---------------------------------------------------------------------------
# vectorized pair kernels
#
# Each kernel takes equal-length int64 arrays of sources and
# destinations, returns the canonical hop count per pair, and adds one
# to ``loading[v]`` for every pair whose route crosses v strictly
# between the endpoints.  Semantics match Topology.route exactly.


def _star_pairs(topo, src, dst, loading):
    moving = src != dst
    direct = moving & ((src == 0) | (dst == 0))
    relayed = moving & ~direct
    loading[0] += int(np.count_nonzero(relayed))
    return moving.astype(np.int64) + relayed.astype(np.int64)


def _debruijn_pairs(topo, src, dst, loading):
    delta, d, n = topo.delta, topo.d, topo.node_count
    pw = delta ** np.arange(d + 1, dtype=np.int64)
    overlap = np.zeros(src.shape, dtype=np.int64)
    undecided = src != dst
    # longest suffix-of-source == prefix-of-destination match wins
    for ell in range(d - 1, 0, -1):
        hit = undecided & (src % pw[ell] == dst // pw[d - ell])
        overlap[hit] = ell
        undecided &= ~hit
    hops = np.where(src == dst, 0, d - overlap)
    for step in range(1, d):
        live = hops > step
        if not live.any():
            break
        # word after `step` appends: tail of src, then the symbols of
        # dst consumed so far (skipping the overlapped prefix)
        pending = hops[live] - step
        word = (src[live] % pw[d - step]) * pw[step]
        word += (dst[live] // pw[pending]) % pw[step]
        loading += np.bincount(word, minlength=n)
    return hops


def _torus_pairs(topo, src, dst, loading):
    d, n, total = topo.d, topo.n_side, topo.node_count
    weights = n ** np.arange(d - 1, -1, -1, dtype=np.int64)
    steps = np.empty((d, src.size), dtype=np.int64)
    sign = np.empty((d, src.size), dtype=np.int64)
    for axis in range(d):
        forward = (dst // weights[axis] - src // weights[axis]) % n
        positive = 2 * forward <= n  # shorter arc, ties positive
        steps[axis] = np.where(positive, forward, n - forward)
        sign[axis] = np.where(positive, 1, -1)
    hops = steps.sum(axis=0)
    cur = src.copy()
    walked = np.zeros(src.size, dtype=np.int64)
    for axis in range(d):
        remaining = steps[axis].copy()
        while True:
            active = remaining > 0
            if not active.any():
                break
            digit = (cur[active] // weights[axis]) % n
            moved = (digit + sign[axis][active]) % n
            cur[active] += (moved - digit) * weights[axis]
            remaining[active] -= 1
            walked[active] += 1
            inter = active & (walked < hops)
            loading += np.bincount(cur[inter], minlength=total)
    return hops


def _plaxton_pairs(topo, src, dst, loading):
    delta, d, total = topo.delta, topo.d, topo.node_count
    weights = delta ** np.arange(d - 1, -1, -1, dtype=np.int64)
    hops = np.zeros(src.size, dtype=np.int64)
    for axis in range(d):
        hops += (src // weights[axis] - dst // weights[axis]) % delta != 0
    cur = src.copy()
    fixed = np.zeros(src.size, dtype=np.int64)
    for axis in range(d):
        have = (cur // weights[axis]) % delta
        want = (dst // weights[axis]) % delta
        mismatch = have != want
        cur += np.where(mismatch, (want - have) * weights[axis], 0)
        fixed += mismatch
        inter = mismatch & (fixed < hops)
        loading += np.bincount(cur[inter], minlength=total)
    return hops


def _chord_pairs(topo, src, dst, loading):
    d, total = topo.d, topo.node_count
    gap = (dst - src) % total
    hops = np.zeros(src.size, dtype=np.int64)
    for bit in range(d):
        hops += (gap >> bit) & 1
    cur = src.copy()
    walked = np.zeros(src.size, dtype=np.int64)
    for bit in range(d - 1, -1, -1):
        take = ((gap >> bit) & 1).astype(bool)
        cur = np.where(take, (cur + (1 << bit)) % total, cur)
        walked += take
        inter = take & (walked < hops)
        loading += np.bincount(cur[inter], minlength=total)
    return hops


_KERNELS = {
    Star: _star_pairs,
    DeBruijn: _debruijn_pairs,
    Torus: _torus_pairs,
    PlaxtonTree: _plaxton_pairs,
    ChordRing: _chord_pairs,
}


def pair_kernel(topology: Topology, src, dst, loading) -> np.ndarray:
    """Hop counts for pair arrays, accumulating relays into ``loading``."""
    kernel = _KERNELS.get(type(topology.spec))
    if kernel is None:
        raise InvalidParameterError(f"no kernel for {topology.spec!r}")
    return kernel(topology, np.asarray(src, np.int64), np.asarray(dst, np.int64), loading)


# ---------------------------------------------------------------------------
# exact enumeration


def route_census(topology: Topology, max_nodes: Optional[int] = None) -> RouteCensus:
    """Walk all N**2 ordered pairs and collect the integer counters."""
    n = topology.node_count
    limit = DEFAULT_EXACT_LIMIT if max_nodes is None else max_nodes
    if n > limit:
        raise ResourceLimitError(
            f"exact enumeration over {n}**2 pairs exceeds the limit of {limit} nodes"
        )
    hop_sums = np.zeros(n, dtype=np.int64)
    loading = np.zeros(n, dtype=np.int64)
    everyone = np.arange(n, dtype=np.int64)
    rows_per_block = max(1, _PAIR_BLOCK // n)
    for start in range(0, n, rows_per_block):
        rows = np.arange(start, min(start + rows_per_block, n), dtype=np.int64)
        src = np.repeat(rows, n)
        dst = np.tile(everyone, rows.size)
        hops = pair_kernel(topology, src, dst, loading)
        hop_sums[rows] = hops.reshape(rows.size, n).sum(axis=1)
    return RouteCensus(hop_sums=hop_sums, loading=loading, pair_count=n * n)


def node_loading(topology: Topology, max_nodes: Optional[int] = None) -> LoadingProfile:
    """Exact per-node relay counts over all ordered pairs."""
    census = route_census(topology, max_nodes=max_nodes)
    return LoadingProfile(
        per_node=tuple(int(x) for x in census.loading),
        total=int(census.loading.sum()),
    )


def _degree_array(topology: Topology) -> np.ndarray:
    return np.fromiter(
        (topology.degree(i) for i in topology.nodes()),
        dtype=np.int64,
        count=topology.node_count,
    )


def _assemble_report(method, topology, params, service, access, routing,
                     maintenance, sim_meta=None) -> CostReport:
    per_node = tuple(
        CostBreakdown(
            service=float(service[i]),
            access=float(access[i]),
            routing=float(routing[i]),
            maintenance=float(maintenance[i]),
        )
        for i in range(topology.node_count)
    )
    return CostReport(
        method=method,
        geometry=topology.spec,
        params=params,
        per_node=per_node,
        aggregates=_aggregate(per_node),
        sim_meta=sim_meta,
    )


def _aggregate(per_node) -> Aggregates:
    arrays = {
        name: np.array([getattr(b, name) for b in per_node])
        for name in ("service", "access", "routing", "maintenance")
    }
    arrays["total"] = sum(arrays.values())
    stats = {
        name: ComponentStats(
            mean=float(values.mean()), min=float(values.min()), max=float(values.max())
        )
        for name, values in arrays.items()
    }
    routing = arrays["routing"]
    above_min = routing[routing > routing.min()]
    second = float(above_min.min()) if above_min.size else float(routing.min())
    return Aggregates(second_min_routing=second, **stats)


def enumerate_exact(topology: Topology, params: CostParams,
                    max_nodes: Optional[int] = None) -> CostReport:
    """Exact expected per-node costs from a full walk of all pairs.

    Every counter is an integer until the single final division, so two
    runs agree bit for bit and the conservation law

        sum_i loading_i == sum_ij t(i, j) - (pairs with t >= 1 hop)

    holds in exact integers.
    """
    census = route_census(topology, max_nodes=max_nodes)
    n = topology.node_count
    service = np.full(n, params.s / n)
    access = params.a * census.hop_sums / n
    routing = params.r * census.loading / n**2
    maintenance = params.m * _degree_array(topology)
    return _assemble_report("exact", topology, params, service, access, routing, maintenance)


# ---------------------------------------------------------------------------
# closed forms as a report


def analytic_report(spec: GeometrySpec, params: CostParams) -> CostReport:
    """Closed-form per-node costs where a geometry has them.

    Star networks get the two-role breakdown; torus, plaxton and chord
    are node-transitive so one breakdown is replicated.  The torus
    access entry carries the n_side / 4 ring approximation of its
    closed form.  De Bruijn graphs have no per-node closed form, only
    bounds; ask ``closedforms.debruijn_bounds`` for those.
    """
    n = spec.node_count
    if isinstance(spec, Star):
        if n < 2:
            raise UnsupportedParameterError("star closed forms need n >= 2")
        s, a, r, m = params.s, params.a, params.r, params.m
        center = CostBreakdown(
            service=s / n,
            access=a * (n - 1) / n,
            routing=r * (n - 1) * (n - 2) / n**2,
            maintenance=m * (n - 1),
        )
        spoke = CostBreakdown(
            service=s / n,
            access=a * (2 * n - 3) / n,
            routing=0.0,
            maintenance=m * 1,
        )
        per_node = (center,) + (spoke,) * (n - 1)
    elif isinstance(spec, Torus):
        per_node = (closedforms.torus_costs(params, spec.d, spec.n_side),) * n
    elif isinstance(spec, PlaxtonTree):
        per_node = (closedforms.plaxton_costs(params, spec.delta, spec.d),) * n
    elif isinstance(spec, ChordRing):
        per_node = (closedforms.chord_costs(params, spec.d),) * n
    elif isinstance(spec, DeBruijn):
        raise UnsupportedParameterError(
            "debruijn per-node costs have no closed form; "
            "use closedforms.debruijn_bounds or exact enumeration"
        )
    else:
        raise InvalidParameterError(f"unknown geometry {spec!r}")
    return CostReport(
        method="analytic",
        geometry=spec,
        params=params,
        per_node=per_node,
        aggregates=_aggregate(per_node),
    )


# ---------------------------------------------------------------------------
# simulation


def simulate(topology: Topology, params: CostParams, requests: int,
             seed: int) -> CostReport:
    """Monte Carlo cost estimate from one seeded request stream.

    Draws ``requests`` independent (source, holder) pairs, both ends
    uniform, routes each canonically and renormalizes the counters into
    the unbiased estimators documented in the module docstring.
    """
    if requests < 1:
        raise InvalidParameterError(f"requests must be >= 1, got {requests}")
    n = topology.node_count
    model = RequestModel(n)
    rng = np.random.default_rng(seed)
    src, dst = model.sample_pairs(rng, requests)
    relay_hits = np.zeros(n, dtype=np.int64)
    hops = pair_kernel(topology, src, dst, relay_hits)
    holder_counts = np.bincount(dst, minlength=n)
    issued_hops = np.zeros(n, dtype=np.int64)
    np.add.at(issued_hops, src, hops)
    service = params.s * holder_counts / requests
    access = params.a * n * issued_hops / requests
    routing = params.r * relay_hits / requests
    maintenance = params.m * _degree_array(topology)
    meta = SimMeta(seeds=(seed,), requests=requests)
    return _assemble_report("simulated", topology, params, service, access,
                            routing, maintenance, sim_meta=meta)


def simulate_seeds(topology: Topology, params: CostParams, requests: int,
                   seeds: Sequence[int]) -> CostReport:
    """Average of independent ``simulate`` runs, one per seed."""
    seeds = tuple(int(s) for s in seeds)
    if not seeds:
        raise InvalidParameterError("need at least one seed")
    if len(set(seeds)) != len(seeds):
        raise InvalidParameterError("seeds must be distinct")
    n = topology.node_count
    acc = {name: np.zeros(n) for name in ("service", "access", "routing", "maintenance")}
    for seed in seeds:
        run = simulate(topology, params, requests, seed)
        for name in acc:
            acc[name] += run.component(name)
    for name in acc:
        acc[name] /= len(seeds)
    meta = SimMeta(seeds=seeds, requests=requests)
    return _assemble_report("simulated", topology, params, acc["service"],
                            acc["access"], acc["routing"], acc["maintenance"],
                            sim_meta=meta)


# ---------------------------------------------------------------------------
# comparison


def compare(reports: Sequence[CostReport], rel_tol: float = 1e-9,
            abs_tol: float = 1e-12) -> ComparisonTable:
    """Pairwise per-component deviations between reports.

    All reports must describe the same geometry and prices.  A pair of
    components is within tolerance when every node satisfies
    |x - y| <= abs_tol + rel_tol * max(|x|, |y|), the symmetric isclose
    convention.
    """
    reports = list(reports)
    if len(reports) < 2:
        raise InvalidParameterError("compare needs at least two reports")
    first = reports[0]
    for other in reports[1:]:
        if other.geometry != first.geometry:
            raise InvalidParameterError("reports describe different geometries")
        if other.params != first.params:
            raise InvalidParameterError("reports priced with different params")
    rows = []
    for left, right in combinations(reports, 2):
        for name in COMPONENTS:
            va, vb = left.component(name), right.component(name)
            dev = np.abs(va - vb)
            scale = np.maximum(np.abs(va), np.abs(vb))
            within = bool(np.all(dev <= abs_tol + rel_tol * scale))
            with np.errstate(divide="ignore", invalid="ignore"):
                rel = np.where(dev == 0, 0.0, dev / scale)
            rows.append(
                DeviationRow(
                    component=name,
                    method_a=left.method,
                    method_b=right.method,
                    mean_a=float(va.mean()),
                    mean_b=float(vb.mean()),
                    max_abs_dev=float(dev.max()),
                    max_rel_dev=float(np.max(rel)),
                    within_tol=within,
                )
            )
    return ComparisonTable(geometry=first.geometry, rows=tuple(rows))
