"""Deterministic SVG pictures of instances and solutions.

The drawing is plain geometry: street edges in gray, delivery points as
dots, the depot as a filled square, and each route as a colored polyline
that follows actual shortest paths through the network. Identical inputs
produce identical bytes, so renders can be pinned as golden files.
"""

from __future__ import annotations

from dataclasses import dataclass

from .solution import validate_solution

_PALETTE = (
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
    "#ff7f00", "#a65628", "#f781bf", "#17becf",
)


@dataclass(frozen=True)
class RenderStyle:
    padding: float = 20.0
    street_width: float = 1.0
    route_width: float = 2.5
    delivery_radius: float = 2.0
    depot_radius: float = 5.0
    street_color: str = "#b8b8b8"
    delivery_color: str = "#1a1a1a"
    depot_color: str = "#d62728"
    background: str = "#ffffff"
    palette: tuple[str, ...] = _PALETTE


def _f(x: float) -> str:
    return f"{x:.3f}"


def route_path_vertices(instance, route) -> list[int]:
    """Vertex expansion of one route: depot, every shortest-path hop, depot."""
    oracle = instance.oracle()
    stops = [instance.depot] + list(route) + [instance.depot]
    expanded = [instance.depot]
    for a, b in zip(stops, stops[1:]):
        expanded.extend(oracle.path(a, b)[1:])
    return expanded


def render_svg(instance, solution=None, style: RenderStyle | None = None) -> str:
    """Render an instance (and optionally a solution) to an SVG string.

    A structurally invalid solution raises before anything is produced.
    Routes are drawn along shortest paths, one palette color per route,
    cycling when routes outnumber colors. Empty routes draw nothing.
    """
    style = style or RenderStyle()
    routes = None
    if solution is not None:
        routes = validate_solution(instance, solution)

    vs = instance.network.vertices
    if not vs:
        raise ValueError("cannot render an empty network")
    minx = min(v.x for v in vs)
    maxx = max(v.x for v in vs)
    miny = min(v.y for v in vs)
    maxy = max(v.y for v in vs)
    pad = style.padding
    width = (maxx - minx) + 2 * pad
    height = (maxy - miny) + 2 * pad

    def sx(x):
        return x - minx + pad

    def sy(y):
        return maxy - y + pad  # flip: world y grows north, svg y grows down

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="0 0 {_f(width)} {_f(height)}">',
        f'<rect x="0" y="0" width="{_f(width)}" height="{_f(height)}" '
        f'fill="{style.background}"/>',
        '<g id="streets">',
    ]
    for e in instance.network.edges:
        a, b = vs[e.u], vs[e.v]
        lines.append(
            f'<line x1="{_f(sx(a.x))}" y1="{_f(sy(a.y))}" '
            f'x2="{_f(sx(b.x))}" y2="{_f(sy(b.y))}" '
            f'stroke="{style.street_color}" stroke-width="{_f(style.street_width)}"/>'
        )
    lines.append('</g>')

    if routes is not None:
        lines.append('<g id="routes" fill="none">')
        for i, route in enumerate(routes):
            if not route:
                continue
            color = style.palette[i % len(style.palette)]
            pts = " ".join(
                f"{_f(sx(vs[vid].x))},{_f(sy(vs[vid].y))}"
                for vid in route_path_vertices(instance, route)
            )
            lines.append(
                f'<polyline points="{pts}" stroke="{color}" '
                f'stroke-width="{_f(style.route_width)}"/>'
            )
        lines.append('</g>')

    lines.append('<g id="deliveries">')
    for vid, _ in instance.customers:
        v = vs[vid]
        lines.append(
            f'<circle cx="{_f(sx(v.x))}" cy="{_f(sy(v.y))}" '
            f'r="{_f(style.delivery_radius)}" fill="{style.delivery_color}"/>'
        )
    lines.append('</g>')

    d = vs[instance.depot]
    r = style.depot_radius
    lines.append(
        f'<rect id="depot" x="{_f(sx(d.x) - r)}" y="{_f(sy(d.y) - r)}" '
        f'width="{_f(2 * r)}" height="{_f(2 * r)}" fill="{style.depot_color}"/>'
    )
    lines.append('</svg>')
    return "\n".join(lines) + "\n"
