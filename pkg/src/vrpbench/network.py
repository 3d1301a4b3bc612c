"""Street network graph and the shortest-path distance oracle.

Vertices live at street corners, crossings and delivery points; edges are
the street pieces between them, weighted by Euclidean length in meters.
Everything is undirected: mail carriers walk, so one-way restrictions do
not apply.
"""

from __future__ import annotations

import heapq
import logging
import math
import threading
from dataclasses import dataclass

from .streets import StreetInfo, StreetPolyline

log = logging.getLogger(__name__)

VERTEX_KINDS = ("corner", "delivery", "depot")


@dataclass
class Vertex:
    vid: int
    x: float
    y: float
    kind: str = "corner"


@dataclass
class Edge:
    u: int
    v: int
    weight: float
    street_id: int


class StreetNetwork:
    """Weighted undirected street graph plus the street attribute table.

    Vertex ids are dense, 0..len(vertices)-1. Mutation (adding vertices or
    edges) bumps an internal version counter so distance oracles can tell
    their caches went stale. Mutating while queries run elsewhere is not
    supported; finish building before sharing.
    """

    def __init__(self):
        self.vertices: list[Vertex] = []
        self.edges: list[Edge] = []
        self.streets: dict[int, StreetInfo] = {}
        self.depot: int | None = None
        self._version = 0
        self._adjacency = None

    @property
    def version(self) -> int:
        return self._version

    def add_vertex(self, x, y, kind="corner") -> int:
        if kind not in VERTEX_KINDS:
            raise ValueError(f"unknown vertex kind {kind!r}")
        vid = len(self.vertices)
        self.vertices.append(Vertex(vid, x, y, kind))
        self._touch()
        return vid

    def add_edge(self, u, v, weight, street_id) -> int:
        if not (0 <= u < len(self.vertices) and 0 <= v < len(self.vertices)):
            raise ValueError(f"edge ({u}, {v}) references an unknown vertex")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if weight <= 0:
            raise ValueError(f"edge ({u}, {v}) needs positive weight, got {weight}")
        eid = len(self.edges)
        self.edges.append(Edge(u, v, weight, street_id))
        self._touch()
        return eid

    def set_depot(self, vid):
        if not 0 <= vid < len(self.vertices):
            raise ValueError(f"no vertex {vid}")
        if self.depot is not None:
            self.vertices[self.depot].kind = "corner"
        self.depot = vid
        self.vertices[vid].kind = "depot"
        self._touch()

    def adjacency(self):
        """Neighbour lists as (other vertex, weight, edge id) triples."""
        if self._adjacency is None:
            adj = [[] for _ in self.vertices]
            for eid, e in enumerate(self.edges):
                adj[e.u].append((e.v, e.weight, eid))
                adj[e.v].append((e.u, e.weight, eid))
            self._adjacency = adj
        return self._adjacency

    def component_count(self) -> int:
        n = len(self.vertices)
        if n == 0:
            return 0
        adj = self.adjacency()
        seen = [False] * n
        count = 0
        for start in range(n):
            if seen[start]:
                continue
            count += 1
            stack = [start]
            seen[start] = True
            while stack:
                u = stack.pop()
                for v, _, _ in adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        stack.append(v)
        return count

    def copy(self) -> "StreetNetwork":
        net = StreetNetwork()
        net.vertices = [Vertex(v.vid, v.x, v.y, v.kind) for v in self.vertices]
        net.edges = [Edge(e.u, e.v, e.weight, e.street_id) for e in self.edges]
        net.streets = dict(self.streets)
        net.depot = self.depot
        return net

    def total_weight(self) -> float:
        return sum(e.weight for e in self.edges)

    def _touch(self):
        self._version += 1
        self._adjacency = None


def _street_table(streets):
    table = {}
    for item in streets:
        info = item.info() if isinstance(item, StreetPolyline) else item
        info.validate()
        if info.street_id in table:
            raise ValueError(f"duplicate street id {info.street_id}")
        table[info.street_id] = info
    return table


def build_graph(soup, streets) -> StreetNetwork:
    """Turn a planarised segment soup into a street network.

    `streets` supplies the attribute records (StreetInfo or StreetPolyline)
    for every street id appearing in the soup. Vertex ids are assigned by
    lexicographic coordinate order so identical soups always produce the
    identical graph. The component count is logged; disconnected maps are
    legal but distance queries across components will fail later.
    """
    if not soup.segments:
        raise ValueError("cannot build a graph from an empty soup")
    table = _street_table(streets)
    net = StreetNetwork()
    coords = sorted({(s.ax, s.ay) for s in soup.segments} | {(s.bx, s.by) for s in soup.segments})
    index = {}
    for x, y in coords:
        index[(x, y)] = net.add_vertex(x, y)
    for s in soup.segments:
        if s.street_id not in table:
            raise ValueError(f"segment references unknown street id {s.street_id}")
        w = s.length()
        net.add_edge(index[(s.ax, s.ay)], index[(s.bx, s.by)], w, s.street_id)
    net.streets = table
    log.info(
        "built graph: %d vertices, %d edges, %d component(s)",
        len(net.vertices), len(net.edges), net.component_count(),
    )
    return net


def extract_network(streets, epsilon=None) -> StreetNetwork:
    """Full extraction pipeline: polylines to planar weighted graph."""
    from .intersect import DEFAULT_SNAP_EPS, split_at_intersections
    from .streets import soup_from_streets

    soup = soup_from_streets(streets)
    flat = split_at_intersections(soup, DEFAULT_SNAP_EPS if epsilon is None else epsilon)
    return build_graph(flat, streets)


def generate_grid_network(rows, cols, block, region="central", stype="street",
                          zone="residential") -> StreetNetwork:
    """Synthetic Manhattan grid: `rows` horizontal and `cols` vertical streets.

    Blocks are square with side `block`. Every street carries the same
    attribute triple, which is enough for worked examples and unit fixtures.
    """
    if rows < 2 or cols < 2:
        raise ValueError("grid needs at least 2 rows and 2 cols")
    if block <= 0:
        raise ValueError("block length must be positive")
    net = StreetNetwork()
    for r in range(rows):
        for c in range(cols):
            net.add_vertex(c * block, r * block)
    for r in range(rows):
        sid = r
        net.streets[sid] = StreetInfo(sid, f"H{r}", region, stype, zone)
        for c in range(cols - 1):
            base = r * cols + c
            net.add_edge(base, base + 1, float(block), sid)
    for c in range(cols):
        sid = rows + c
        net.streets[sid] = StreetInfo(sid, f"V{c}", region, stype, zone)
        for r in range(rows - 1):
            base = r * cols + c
            net.add_edge(base, base + cols, float(block), sid)
    return net


def insert_point_on_edge(network, edge_id, offset):
    """Split edge `edge_id` at `offset` meters from its u end.

    The new vertex gets kind "delivery" and interpolated coordinates. The
    original edge shrinks to the u side and a fresh edge covers the v side,
    so existing vertex ids stay valid and all distances between them are
    unchanged. Returns (network, new vertex id).
    """
    if not 0 <= edge_id < len(network.edges):
        raise ValueError(f"no edge {edge_id}")
    e = network.edges[edge_id]
    if not 0.0 < offset < e.weight:
        raise ValueError(
            f"offset {offset} outside the open interval (0, {e.weight}) of edge {edge_id}"
        )
    a = network.vertices[e.u]
    b = network.vertices[e.v]
    frac = offset / e.weight
    vid = network.add_vertex(a.x + frac * (b.x - a.x), a.y + frac * (b.y - a.y), "delivery")
    rest = e.weight - offset
    v = e.v
    e.v = vid
    e.weight = offset
    network.add_edge(vid, v, rest, e.street_id)
    return network, vid


def centroid_vertex(network) -> int:
    """Vertex nearest the coordinate centroid; ties go to the smallest id."""
    if not network.vertices:
        raise ValueError("empty network")
    cx = math.fsum(v.x for v in network.vertices) / len(network.vertices)
    cy = math.fsum(v.y for v in network.vertices) / len(network.vertices)
    best = min(network.vertices, key=lambda v: ((v.x - cx) ** 2 + (v.y - cy) ** 2, v.vid))
    return best.vid


class DistanceOracle:
    """Memoized single-source shortest paths over a street network.

    The first query from a source runs Dijkstra and caches the full
    distance and predecessor vectors; later queries are lookups, so
    repeated calls return bit-identical values. Pair queries are served
    from the smaller endpoint's vector, making them symmetric and
    independent of cache history. A lock keeps the cache safe for
    concurrent readers. If the network mutates, the cache resets.
    """

    def __init__(self, network: StreetNetwork):
        self._net = network
        self._version = network.version
        self._dist: dict[int, list[float]] = {}
        self._pred: dict[int, list[int]] = {}
        self._lock = threading.Lock()

    def _check_version(self):
        if self._net.version != self._version:
            self._dist.clear()
            self._pred.clear()
            self._version = self._net.version

    def distances_from(self, source):
        """Distance vector from `source`; math.inf marks unreachable slots."""
        with self._lock:
            self._check_version()
            cached = self._dist.get(source)
            if cached is not None:
                return cached
            dist, pred = self._dijkstra(source)
            self._dist[source] = dist
            self._pred[source] = pred
            return dist

    def _dijkstra(self, source):
        n = len(self._net.vertices)
        if not 0 <= source < n:
            raise ValueError(f"no vertex {source}")
        adj = self._net.adjacency()
        dist = [math.inf] * n
        pred = [-1] * n
        dist[source] = 0.0
        heap = [(0.0, source)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for v, w, _ in adj[u]:
                nd = d + w
                if nd < dist[v]:
                    dist[v] = nd
                    pred[v] = u
                    heapq.heappush(heap, (nd, v))
        return dist, pred

    def distance(self, u, v) -> float:
        """Shortest-path length between u and v.

        Always answered from the smaller endpoint's distance vector, so
        distance(u, v) and distance(v, u) are the same float and the
        result never depends on what happens to be cached. Raises
        ValueError on a disconnected pair; infinity is reserved for
        infeasible solution costs, never for missing paths.
        """
        if u == v:
            if not 0 <= u < len(self._net.vertices):
                raise ValueError(f"no vertex {u}")
            return 0.0
        source, target = (u, v) if u < v else (v, u)
        with self._lock:
            self._check_version()
            vec = self._dist.get(source)
            if vec is None:
                vec, pred = self._dijkstra(source)
                self._dist[source] = vec
                self._pred[source] = pred
            d = vec[target]
        if math.isinf(d):
            raise ValueError(f"disconnected pair ({u}, {v})")
        return d

    def path(self, u, v) -> list[int]:
        """Vertex sequence of one shortest path from u to v, inclusive."""
        if u == v:
            return [u]
        self.distances_from(u)
        with self._lock:
            pred = self._pred[u]
            if math.isinf(self._dist[u][v]):
                raise ValueError(f"disconnected pair ({u}, {v})")
            out = [v]
            cur = v
            while cur != u:
                cur = pred[cur]
                out.append(cur)
        out.reverse()
        return out


def shortest_distance(oracle: DistanceOracle, u: int, v: int) -> float:
    """Functional wrapper around DistanceOracle.distance."""
    return oracle.distance(u, v)
