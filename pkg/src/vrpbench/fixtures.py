"""Synthetic city fixture at realistic benchmark scale.

Real municipal centerline data cannot ship with the package, so tests and
demos use a generated stand-in: a jittered grid of through streets cut
into named blocks, diagonal avenues, a ring highway and a scatter of side
streets and dead-end alamedas. The default build has 422 streets and
planarises to roughly two thousand vertices and three thousand edges,
the size class the benchmark targets.

Geometry is constructed exactly: street endpoints sit either on other
streets' supporting lines or in the open, never within snapping distance
of unrelated features, so extraction is stable and length-conserving.
"""

from __future__ import annotations

import math

import numpy as np

from .streets import StreetPolyline

GRID_LINES = 32  # horizontal and vertical through lines
PIECES_PER_LINE = 4
FIXED_STREETS = 2 * GRID_LINES * PIECES_PER_LINE + 8 + 4  # grid + diagonals + ring


def synthetic_city(n_streets: int = 422, seed: int = 11) -> list[StreetPolyline]:
    """Deterministic street map with `n_streets` streets."""
    if n_streets < FIXED_STREETS + 1:
        raise ValueError(f"need at least {FIXED_STREETS + 1} streets")
    rng = np.random.Generator(np.random.PCG64(seed))

    xs = [100.0 * i + rng.uniform(-15.0, 15.0) for i in range(GRID_LINES)]
    ys = [100.0 * j + rng.uniform(-15.0, 15.0) for j in range(GRID_LINES)]
    cx = (xs[0] + xs[-1]) / 2.0
    cy = (ys[0] + ys[-1]) / 2.0
    extent = max(xs[-1] - xs[0], ys[-1] - ys[0])

    def region_of(x, y):
        r = math.hypot(x - cx, y - cy)
        if r < 0.18 * extent:
            return "central"
        if r < 0.34 * extent:
            return "peripheral"
        if r < 0.47 * extent:
            return "distant"
        return "isolated"

    def zone_of(x, y):
        r = math.hypot(x - cx, y - cy)
        if r < 0.16 * extent:
            base = "commercial_industrial"
        elif r < 0.36 * extent:
            base = "mixed"
        else:
            base = "residential"
        if rng.random() < 0.1:
            base = ("commercial_industrial", "mixed", "residential")[int(rng.integers(3))]
        return base

    streets = []

    def add(name, points, stype=None, region=None, zone=None):
        mx = sum(p[0] for p in points) / len(points)
        my = sum(p[1] for p in points) / len(points)
        streets.append(StreetPolyline(
            street_id=len(streets),
            name=name,
            region=region or region_of(mx, my),
            stype=stype or "street",
            zone=zone or zone_of(mx, my),
            points=points,
        ))

    central_band = range(GRID_LINES // 2 - 2, GRID_LINES // 2 + 2)

    def line_type(index):
        if index in central_band:
            return "avenue"
        return "alameda" if rng.random() < 0.12 else "street"

    def cut_indices():
        picks = sorted(rng.choice(np.arange(3, GRID_LINES - 3), size=PIECES_PER_LINE - 1,
                                  replace=False).tolist())
        return [0] + picks + [GRID_LINES - 1]

    for j in range(GRID_LINES):
        bounds = cut_indices()
        stype = line_type(j)
        for p in range(PIECES_PER_LINE):
            a, b = bounds[p], bounds[p + 1]
            add(f"H{j}.{p}", [(xs[a], ys[j]), (xs[b], ys[j])], stype=stype)

    for i in range(GRID_LINES):
        bounds = cut_indices()
        stype = line_type(i)
        for p in range(PIECES_PER_LINE):
            a, b = bounds[p], bounds[p + 1]
            points = [(xs[i], ys[a]), (xs[i], ys[b])]
            if rng.random() < 0.12:
                # bend the piece between two crossing rows; the kink stays
                # well clear of every other street
                mid_y = (ys[a] + ys[b]) / 2.0 + rng.uniform(-8.0, 8.0)
                points = [points[0], (xs[i] + rng.uniform(8.0, 12.0), mid_y), points[1]]
            add(f"V{i}.{p}", points, stype=stype)

    for d in range(8):
        theta = math.radians(13.0 + 21.0 * d + (8.0 if d >= 4 else 0.0))
        ox = cx + rng.uniform(-60.0, 60.0)
        oy = cy + rng.uniform(-60.0, 60.0)
        r = 0.40 * extent
        p1 = (ox - r * math.cos(theta), oy - r * math.sin(theta))
        p2 = (ox + r * math.cos(theta), oy + r * math.sin(theta))
        add(f"D{d}", [p1, p2], stype="avenue")

    ring_lo_x = (xs[1] + xs[2]) / 2.0
    ring_hi_x = (xs[-3] + xs[-2]) / 2.0
    ring_lo_y = (ys[1] + ys[2]) / 2.0
    ring_hi_y = (ys[-3] + ys[-2]) / 2.0
    corners = [
        (ring_lo_x, ring_lo_y), (ring_hi_x, ring_lo_y),
        (ring_hi_x, ring_hi_y), (ring_lo_x, ring_hi_y),
    ]
    for s in range(4):
        add(f"Ring {s}", [corners[s], corners[(s + 1) % 4]],
            stype="highway", zone="residential")

    n_short = n_streets - FIXED_STREETS
    cells = [(i, j) for i in range(1, GRID_LINES - 1) for j in range(1, GRID_LINES - 1)]
    chosen = rng.choice(len(cells), size=n_short, replace=False)
    for idx, cell in enumerate(chosen.tolist()):
        i, j = cells[cell]
        x = xs[i] + rng.uniform(0.3, 0.7) * (xs[i + 1] - xs[i])
        if rng.random() < 0.3:
            # dead-end alameda poking into the block
            top = ys[j] + 0.55 * (ys[j + 1] - ys[j])
            add(f"S{idx}", [(x, ys[j]), (x, top)], stype="alameda")
        else:
            add(f"S{idx}", [(x, ys[j]), (x, ys[j + 1])])
    return streets
