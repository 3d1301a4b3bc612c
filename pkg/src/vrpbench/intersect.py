"""Planarise a segment soup: split segments wherever streets meet.

The splitter is a quadratic all-pairs pass wrapped in a small fixed-point
loop. Quadratic is plenty at city scale (hundreds of input segments) and
keeps the geometry auditable; candidate pairs are pre-filtered with
vectorised bounding boxes so the pure-Python pair handling stays cheap.

Three kinds of event produce graph vertices:

* proper crossings (both interiors) split both segments at the crossing,
* an endpoint touching another segment's interior splits the touched one,
* collinear overlapping segments are merged into one covering their union.

Endpoints closer than the snap epsilon are merged to a single coordinate
(the centroid of the cluster). The loop repeats the whole pass until the
soup stops changing, which makes the operation idempotent bit for bit.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from .streets import Segment, SegmentSoup

log = logging.getLogger(__name__)

DEFAULT_SNAP_EPS = 0.5

# Relative guard for "parameter strictly inside (0, 1)" decisions. Values
# closer to an end than this are treated as endpoint touches and left to
# the vertex clustering stage.
_PARAM_EPS = 1e-12

_MAX_PASSES = 12


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        p = self.parent
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def _cluster_points(points, eps):
    """Map each coordinate to its cluster centroid.

    Points within eps of each other (transitively) collapse to one
    representative. A singleton cluster keeps its exact coordinate, so
    re-clustering already-clustered output changes nothing.
    """
    if not points:
        return {}
    uniq = list(dict.fromkeys(points))
    dsu = _DSU(len(uniq))
    cells = {}
    inv = 1.0 / eps
    for i, (x, y) in enumerate(uniq):
        cells.setdefault((math.floor(x * inv), math.floor(y * inv)), []).append(i)
    eps2 = eps * eps
    for (cx, cy), members in cells.items():
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                other = cells.get((cx + dx, cy + dy))
                if other is None:
                    continue
                for i in members:
                    xi, yi = uniq[i]
                    for j in other:
                        if j <= i:
                            continue
                        xj, yj = uniq[j]
                        if (xi - xj) ** 2 + (yi - yj) ** 2 <= eps2:
                            dsu.union(i, j)
    groups = {}
    for i in range(len(uniq)):
        groups.setdefault(dsu.find(i), []).append(i)
    rep = {}
    for members in groups.values():
        if len(members) == 1:
            centroid = uniq[members[0]]
        else:
            xs = [uniq[i][0] for i in members]
            ys = [uniq[i][1] for i in members]
            centroid = (math.fsum(xs) / len(xs), math.fsum(ys) / len(ys))
        for i in members:
            rep[uniq[i]] = centroid
    return rep


def _candidate_pairs(segs, eps):
    """Indices of segment pairs whose eps-inflated bounding boxes overlap."""
    n = len(segs)
    if n < 2:
        return []
    arr = np.array([(s.ax, s.ay, s.bx, s.by) for s in segs])
    lox = np.minimum(arr[:, 0], arr[:, 2]) - eps
    hix = np.maximum(arr[:, 0], arr[:, 2]) + eps
    loy = np.minimum(arr[:, 1], arr[:, 3]) - eps
    hiy = np.maximum(arr[:, 1], arr[:, 3]) + eps
    pairs = []
    # Chunk the row axis so the boolean matrix stays modest on big soups.
    step = max(1, 20_000_000 // max(n, 1))
    for start in range(0, n, step):
        stop = min(start + step, n)
        hit = (
            (lox[start:stop, None] <= hix[None, :])
            & (hix[start:stop, None] >= lox[None, :])
            & (loy[start:stop, None] <= hiy[None, :])
            & (hiy[start:stop, None] >= loy[None, :])
        )
        rows, cols = np.nonzero(hit)
        keep = rows + start < cols
        pairs.extend(zip((rows + start)[keep].tolist(), cols[keep].tolist()))
    return pairs


def _project_param(px, py, s):
    dx, dy = s.bx - s.ax, s.by - s.ay
    d2 = dx * dx + dy * dy
    return ((px - s.ax) * dx + (py - s.ay) * dy) / d2


def _point_segment_distance(px, py, s):
    t = min(1.0, max(0.0, _project_param(px, py, s)))
    qx = s.ax + t * (s.bx - s.ax)
    qy = s.ay + t * (s.by - s.ay)
    return math.hypot(px - qx, py - qy), t


def _perp_distance_to_line(px, py, s):
    dx, dy = s.bx - s.ax, s.by - s.ay
    length = math.hypot(dx, dy)
    return abs((px - s.ax) * dy - (py - s.ay) * dx) / length


def _merge_collinear(segs, eps):
    """Collapse collinear overlapping pairs into union segments.

    Touching at a shared endpoint is not an overlap; the projected
    intervals must intersect with positive length. When the two sources
    differ the union keeps the smaller street id.
    """
    segs = list(segs)
    changed = True
    while changed:
        changed = False
        pairs = _candidate_pairs(segs, eps)
        for i, j in pairs:
            a, b = segs[i], segs[j]
            if a is None or b is None:
                continue
            # Same supporting line, both ways, within the snap tolerance.
            if (
                _perp_distance_to_line(b.ax, b.ay, a) > eps
                or _perp_distance_to_line(b.bx, b.by, a) > eps
                or _perp_distance_to_line(a.ax, a.ay, b) > eps
                or _perp_distance_to_line(a.bx, a.by, b) > eps
            ):
                continue
            base = a if a.length() >= b.length() else b
            pts = [(a.ax, a.ay), (a.bx, a.by), (b.ax, b.ay), (b.bx, b.by)]
            ts = [_project_param(x, y, base) for x, y in pts]
            lo_a, hi_a = sorted(ts[:2])
            lo_b, hi_b = sorted(ts[2:])
            if min(hi_a, hi_b) - max(lo_a, lo_b) <= 0.0:
                continue
            order = sorted(range(4), key=lambda k: ts[k])
            first, last = pts[order[0]], pts[order[-1]]
            sid = a.street_id if a.street_id == b.street_id else min(a.street_id, b.street_id)
            segs[i] = Segment(sid, first[0], first[1], last[0], last[1])
            segs[j] = None
            changed = True
        if changed:
            segs = [s for s in segs if s is not None]
    return segs


def _one_pass(segs, eps):
    """Run snap, merge, intersect and cut once. Returns (segments, dropped)."""
    dropped = 0

    # Endpoint snapping.
    endpoints = []
    for s in segs:
        endpoints.append((s.ax, s.ay))
        endpoints.append((s.bx, s.by))
    rep = _cluster_points(endpoints, eps)
    snapped = []
    seen = set()
    for s in segs:
        a = rep[(s.ax, s.ay)]
        b = rep[(s.bx, s.by)]
        if a == b:
            dropped += 1
            continue
        key = (s.street_id, a, b) if a <= b else (s.street_id, b, a)
        if key in seen:
            dropped += 1
            continue
        seen.add(key)
        snapped.append(Segment(s.street_id, a[0], a[1], b[0], b[1]))

    segs = _merge_collinear(snapped, eps)

    # Split point discovery.
    splits = [[] for _ in segs]
    for i, j in _candidate_pairs(segs, eps):
        a, b = segs[i], segs[j]
        a_ends = ((a.ax, a.ay), (a.bx, a.by))
        b_ends = ((b.ax, b.ay), (b.bx, b.by))
        shared = set(a_ends) & set(b_ends)

        # Endpoint of one resting on the interior of the other.
        for endpoint in a_ends:
            if endpoint in shared:
                continue
            dist, t = _point_segment_distance(endpoint[0], endpoint[1], b)
            if dist <= eps and _PARAM_EPS < t < 1.0 - _PARAM_EPS:
                splits[j].append((b.ax + t * (b.bx - b.ax), b.ay + t * (b.by - b.ay)))
        for endpoint in b_ends:
            if endpoint in shared:
                continue
            dist, t = _point_segment_distance(endpoint[0], endpoint[1], a)
            if dist <= eps and _PARAM_EPS < t < 1.0 - _PARAM_EPS:
                splits[i].append((a.ax + t * (a.bx - a.ax), a.ay + t * (a.by - a.ay)))

        if shared:
            continue
        d1x, d1y = a.bx - a.ax, a.by - a.ay
        d2x, d2y = b.bx - b.ax, b.by - b.ay
        den = d1x * d2y - d1y * d2x
        if abs(den) <= 1e-12 * a.length() * b.length():
            continue
        rx, ry = b.ax - a.ax, b.ay - a.ay
        t = (rx * d2y - ry * d2x) / den
        s = (rx * d1y - ry * d1x) / den
        if _PARAM_EPS < t < 1.0 - _PARAM_EPS and _PARAM_EPS < s < 1.0 - _PARAM_EPS:
            x = a.ax + t * d1x
            y = a.ay + t * d1y
            splits[i].append((x, y))
            splits[j].append((x, y))

    # Merge every vertex-to-be (endpoints and split points) within eps.
    allpts = []
    for s in segs:
        allpts.append((s.ax, s.ay))
        allpts.append((s.bx, s.by))
    for lst in splits:
        allpts.extend(lst)
    rep = _cluster_points(allpts, eps)

    out = []
    for s, pts in zip(segs, splits):
        a = rep[(s.ax, s.ay)]
        b = rep[(s.bx, s.by)]
        if a == b:
            dropped += 1
            continue
        cuts = sorted((_project_param(p[0], p[1], s), rep[p]) for p in pts)
        chain = [a]
        used = {a, b}
        for _, p in cuts:
            if p not in used:
                chain.append(p)
                used.add(p)
        chain.append(b)
        for p, q in zip(chain, chain[1:]):
            out.append(Segment(s.street_id, p[0], p[1], q[0], q[1]))
    return out, dropped


def split_at_intersections(soup: SegmentSoup, epsilon: float = DEFAULT_SNAP_EPS) -> SegmentSoup:
    """Split all segments at mutual intersections, snapping within epsilon.

    The result is planar in the sense that no remaining segment crosses
    another away from a shared endpoint. Degenerate pieces (zero length
    after snapping) are dropped and reported through the module logger.
    Applying the operation to its own output returns it unchanged.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    cur = [s for s in soup.segments if s.length() > 0.0]
    dropped = len(soup.segments) - len(cur)
    for _ in range(_MAX_PASSES):
        nxt, d = _one_pass(cur, epsilon)
        dropped += d
        if nxt == cur:
            break
        cur = nxt
    else:
        raise RuntimeError("intersection splitting did not stabilise")
    if dropped:
        log.warning("dropped %d degenerate segment(s) during splitting", dropped)
    return SegmentSoup(cur)
