"""Benchmark instance generation.

Given a street network and a penalty table, generation runs in two seeded
stages: a roulette wheel distributes the requested number of deliveries
across streets proportionally to their density-scaled lengths, then each
street receives that many uniform points along its polyline, inserted
into the graph as delivery vertices.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .density import PenaltyTable, density
from .network import DistanceOracle, StreetNetwork, insert_point_on_edge

DEMAND_MODELS = ("unit", "none")


@dataclass(frozen=True)
class GenerationSpec:
    """Knobs for one generated instance."""

    deliveries: int
    seed: int = 0
    fleet_size: int = 1
    max_route_length: float | None = None
    demand_model: str = "unit"

    def __post_init__(self):
        if self.deliveries < 1:
            raise ValueError(f"need at least one delivery, got {self.deliveries}")
        if self.fleet_size < 1:
            raise ValueError(f"need at least one vehicle, got {self.fleet_size}")
        if self.max_route_length is not None and self.max_route_length <= 0:
            raise ValueError("max route length must be positive")
        if self.demand_model not in DEMAND_MODELS:
            raise ValueError(f"unknown demand model {self.demand_model!r}")


@dataclass
class Instance:
    """A ready-to-solve problem: network, depot, customers and fleet.

    Customers are (vertex id, demand) pairs in insertion order. Capacity
    and time window data are optional evaluation inputs; the file format
    stores time windows but capacities exist in memory only. Empty routes
    are forbidden unless allow_empty_routes is set.
    """

    network: StreetNetwork
    depot: int
    customers: list[tuple[int, float]]
    fleet_size: int
    name: str = ""
    max_route_length: float | None = None
    vehicle_capacities: list[float] | None = None
    time_windows: dict[int, tuple[float, float]] | None = None
    allow_empty_routes: bool = False
    seed: int | None = None
    generator_version: str | None = None
    _oracle: DistanceOracle | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not 0 <= self.depot < len(self.network.vertices):
            raise ValueError(f"depot vertex {self.depot} does not exist")
        ids = [vid for vid, _ in self.customers]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate customer vertex")
        if self.depot in ids:
            raise ValueError("the depot cannot also be a customer")
        if self.vehicle_capacities is not None and len(self.vehicle_capacities) != self.fleet_size:
            raise ValueError("need one capacity per vehicle")

    def customer_ids(self) -> list[int]:
        return [vid for vid, _ in self.customers]

    def demand_of(self, vid) -> float:
        for cid, d in self.customers:
            if cid == vid:
                return d
        raise KeyError(vid)

    def oracle(self) -> DistanceOracle:
        if self._oracle is None or self.network.version != self._oracle._version:
            self._oracle = DistanceOracle(self.network)
        return self._oracle


def pick_street(prefix, r) -> int:
    """Index of the street owning draw r under the cumulative weights.

    Street x is chosen when prefix[x-1] < r <= prefix[x], i.e. the draw
    falls inside the street's half-open slice of the wheel. Implemented as
    a binary search over the prefix sums. Draws must lie in (0, total];
    accepting r = 0 would hand mass to a leading zero-weight street.
    """
    if r <= 0.0:
        raise ValueError(f"draw {r} outside the wheel (0, {prefix[-1]}]")
    idx = bisect.bisect_left(prefix, r)
    if idx >= len(prefix):
        raise ValueError(f"draw {r} beyond total weight {prefix[-1]}")
    return idx


def pick_street_linear(prefix, r) -> int:
    """Literal linear scan of the roulette wheel; the reference path.

    Must agree with pick_street for every draw, which both achieve by
    comparing against the identical prefix sums.
    """
    if r <= 0.0:
        raise ValueError(f"draw {r} outside the wheel (0, {prefix[-1]}]")
    prev = 0.0
    for x, cum in enumerate(prefix):
        if prev < r <= cum:
            return x
        prev = cum
    raise ValueError(f"draw {r} beyond total weight {prev}")


def assign_counts(weights, m, rng, method="bisect"):
    """Distribute m deliveries over streets by weighted roulette wheel.

    Each of the m draws picks one street with probability proportional
    to its weight. Draws are uniform on (0, W], which gives zero-weight
    streets literally zero probability mass. Returns an int64 count array
    aligned with `weights`.
    """
    weights = np.asarray(weights, dtype=float)
    if weights.ndim != 1 or weights.size == 0:
        raise ValueError("weights must be a non-empty 1-d array")
    if np.any(weights < 0):
        raise ValueError("weights must be non-negative")
    if not np.any(weights > 0):
        raise ValueError("no street has positive weight; nothing to sample")
    if m < 0:
        raise ValueError(f"negative delivery count {m}")
    prefix = np.cumsum(weights)
    total = prefix[-1]
    draws = (1.0 - rng.random(m)) * total
    if method == "bisect":
        chosen = np.searchsorted(prefix, draws, side="left")
    elif method == "linear":
        plist = prefix.tolist()
        chosen = np.array([pick_street_linear(plist, r) for r in draws], dtype=np.int64)
    else:
        raise ValueError(f"unknown method {method!r}")
    return np.bincount(chosen, minlength=weights.size).astype(np.int64)


class _StreetChain:
    """Tracks one street's edges in polyline order during insertion.

    Entries map [start, end) offset spans along the street to current
    edge ids, with the edge's u end on the start side. Splitting an edge
    replaces its span with the two halves, so later offsets keep landing
    on the right edge.
    """

    def __init__(self, entries):
        # entries: list of [start, end, edge_id]
        self.entries = entries
        self.starts = [e[0] for e in entries]
        self.total = entries[-1][1]

    def insert(self, network, offset):
        pos = bisect.bisect_right(self.starts, offset) - 1
        if pos < 0:
            return None
        start, end, eid = self.entries[pos]
        if not start < offset < end:
            return None  # exact boundary hit, caller redraws
        _, vid = insert_point_on_edge(network, eid, offset - start)
        tail_eid = len(network.edges) - 1
        self.entries[pos] = [start, offset, eid]
        self.entries.insert(pos + 1, [offset, end, tail_eid])
        self.starts.insert(pos + 1, offset)
        return vid


def _build_chains(network, street_ids):
    chains = {}
    spans = {sid: [] for sid in street_ids}
    for eid, e in enumerate(network.edges):
        if e.street_id in spans:
            spans[e.street_id].append((eid, e.weight))
    for sid in street_ids:
        entries = []
        cursor = 0.0
        for eid, w in spans[sid]:
            entries.append([cursor, cursor + w, eid])
            cursor += w
        if entries:
            chains[sid] = _StreetChain(entries)
    return chains


def place_deliveries(network, street_ids, counts, rng) -> list[int]:
    """Insert the per-street delivery counts as uniform points.

    Offsets are uniform along each street's full polyline; a draw that
    lands exactly on a vertex is redrawn, which keeps every insertion
    strictly inside an edge. Streets are processed in the order given and
    draws within a street in draw order, so results are seed-determined.
    Returns the new delivery vertex ids.
    """
    if len(street_ids) != len(counts):
        raise ValueError("counts must align with street_ids")
    chains = _build_chains(network, street_ids)
    placed = []
    for sid, count in zip(street_ids, counts):
        count = int(count)
        if count == 0:
            continue
        chain = chains.get(sid)
        if chain is None:
            raise ValueError(f"street {sid} has no edges in the network")
        for _ in range(count):
            vid = None
            while vid is None:
                offset = rng.random() * chain.total
                vid = chain.insert(network, offset)
            placed.append(vid)
    return placed


def generate(network: StreetNetwork, table: PenaltyTable, spec: GenerationSpec) -> Instance:
    """Generate a seeded instance on a copy of `network`.

    The network must already have a depot. Streets enter the roulette
    wheel in street id order, weighted by density times their total edge
    length; the same seed always yields the byte-identical instance.
    """
    if network.depot is None:
        raise ValueError("network has no depot; call set_depot first")
    if not network.streets:
        raise ValueError("network has no street attribute table")
    net = network.copy()

    street_ids = sorted(net.streets)
    lengths = {sid: 0.0 for sid in street_ids}
    for e in net.edges:
        if e.street_id in lengths:
            lengths[e.street_id] += e.weight
    weights = [density(table, net.streets[sid]) * lengths[sid] for sid in street_ids]

    rng = np.random.Generator(np.random.PCG64(spec.seed))
    counts = assign_counts(weights, spec.deliveries, rng)
    placed = place_deliveries(net, street_ids, counts, rng)

    demand = 1.0 if spec.demand_model == "unit" else 0.0
    customers = [(vid, demand) for vid in placed]
    return Instance(
        network=net,
        depot=net.depot,
        customers=customers,
        fleet_size=spec.fleet_size,
        max_route_length=spec.max_route_length,
        seed=spec.seed,
        generator_version=__version__,
    )
