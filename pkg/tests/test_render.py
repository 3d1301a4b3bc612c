import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from vrpbench import (
    Instance,
    RenderStyle,
    Solution,
    generate_grid_network,
    insert_point_on_edge,
    render_svg,
    route_path_vertices,
)
from vrpbench.errors import ValidationError

GOLDEN = Path(__file__).parent / "golden"

SVG_NS = "{http://www.w3.org/2000/svg}"


def routed_instance():
    net = generate_grid_network(2, 2, 100.0)
    net.set_depot(0)
    _, a = insert_point_on_edge(net, 0, 25.0)
    _, b = insert_point_on_edge(net, 3, 50.0)
    inst = Instance(network=net, depot=0, customers=[(a, 1.0), (b, 1.0)],
                    fleet_size=1, name="grid2x2-route")
    return inst, Solution((a, b), depot=0)


def test_golden_svg_bytes():
    inst, sol = routed_instance()
    assert render_svg(inst, sol).encode() == (GOLDEN / "grid2x2.svg").read_bytes()


def test_route_expansion_follows_shortest_paths():
    inst, sol = routed_instance()
    a, b = (vid for vid, _ in inst.customers)
    assert route_path_vertices(inst, (a, b)) == [0, a, 1, b, 1, a, 0]


def test_svg_is_well_formed_with_expected_groups():
    inst, sol = routed_instance()
    root = ET.fromstring(render_svg(inst, sol))
    assert root.tag == f"{SVG_NS}svg"
    groups = {g.get("id") for g in root.iter(f"{SVG_NS}g")}
    assert groups == {"streets", "routes", "deliveries"}
    lines = root.find(f"{SVG_NS}g[@id='streets']").findall(f"{SVG_NS}line")
    assert len(lines) == len(inst.network.edges)
    circles = root.find(f"{SVG_NS}g[@id='deliveries']").findall(f"{SVG_NS}circle")
    assert len(circles) == len(inst.customers)


def test_polyline_point_count_matches_expansion():
    inst, sol = routed_instance()
    root = ET.fromstring(render_svg(inst, sol))
    poly = root.find(f"{SVG_NS}g[@id='routes']/{SVG_NS}polyline")
    points = poly.get("points").split()
    a, b = (vid for vid, _ in inst.customers)
    assert len(points) == len(route_path_vertices(inst, (a, b)))


def test_instance_only_render_has_no_routes_group():
    inst, _ = routed_instance()
    svg = render_svg(inst)
    assert 'id="routes"' not in svg
    assert 'id="streets"' in svg
    assert 'id="depot"' in svg


def test_invalid_solution_raises_before_any_output():
    inst, _ = routed_instance()
    with pytest.raises(ValidationError):
        render_svg(inst, Solution((999,), depot=0))


def test_empty_routes_draw_nothing():
    inst, _ = routed_instance()
    inst.fleet_size = 2
    inst.allow_empty_routes = True
    a, b = (vid for vid, _ in inst.customers)
    svg = render_svg(inst, Solution((a, b, inst.depot), depot=inst.depot))
    root = ET.fromstring(svg)
    polys = root.findall(f"{SVG_NS}g[@id='routes']/{SVG_NS}polyline")
    assert len(polys) == 1


def test_style_overrides_apply():
    inst, sol = routed_instance()
    style = RenderStyle(palette=("#123456",), background="#000000", street_width=3.0)
    svg = render_svg(inst, sol, style)
    assert 'stroke="#123456"' in svg
    assert 'fill="#000000"' in svg
    assert 'stroke-width="3.000"' in svg


def test_render_is_deterministic():
    inst, sol = routed_instance()
    assert render_svg(inst, sol) == render_svg(inst, sol)
