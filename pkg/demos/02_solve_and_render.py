"""Construct, improve and draw a small routing plan.

Builds a grid town, seeds a few dozen deliveries, runs the greedy
construction, lets local search polish it (the improvement trace goes to
stderr), and renders the final tours as an SVG you can open in any
browser.

    python3 demos/02_solve_and_render.py
"""

from pathlib import Path

from vrpbench import (
    GenerationSpec,
    PenaltyTable,
    centroid_vertex,
    evaluate,
    generate,
    generate_grid_network,
    local_search_improve,
    nearest_neighbor_construct,
    render_svg,
    serialize_solution,
)

OUT = Path("demo-output")


def main():
    net = generate_grid_network(6, 6, 100.0)
    net.set_depot(centroid_vertex(net))
    inst = generate(net, PenaltyTable(),
                    GenerationSpec(deliveries=24, seed=7, fleet_size=3))
    inst.name = "grid-tour"
    print(f"instance: {len(inst.customers)} deliveries, "
          f"{inst.fleet_size} vehicles, depot #{inst.depot}")

    start = nearest_neighbor_construct(inst)
    report = evaluate(inst, start)
    print(f"greedy construction: total length {report.total_length:.1f} m")

    best = local_search_improve(inst, start)
    report = evaluate(inst, best)
    print(f"after local search:  total length {report.total_length:.1f} m")

    print("\nfull report:")
    for key, value in report.key_values():
        print(f"  {key} = {value}")

    OUT.mkdir(exist_ok=True)
    sol_path = OUT / "grid-tour.sol"
    sol_path.write_text(serialize_solution(best), encoding="utf-8")
    svg_path = OUT / "grid-tour.svg"
    svg_path.write_text(render_svg(inst, best), encoding="utf-8")
    print(f"\nwrote {sol_path} and {svg_path}")


if __name__ == "__main__":
    main()
