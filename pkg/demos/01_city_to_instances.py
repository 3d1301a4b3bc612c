"""From raw street polylines to a delivery instance.

The whole pipeline in one sitting: take a pile of street polylines,
split them at their crossings, fuse the pieces into a routable network,
weight every street by the density model, and drop seeded deliveries
onto the weighted streets.

Run from the repository root:

    python3 demos/01_city_to_instances.py
"""

from collections import Counter
from pathlib import Path

from vrpbench import (
    GenerationSpec,
    PenaltyTable,
    StreetInfo,
    centroid_vertex,
    density,
    extract_network,
    generate,
    serialize_instance,
    synthetic_city,
    write_instance,
)

OUT = Path("demo-output")


def main():
    streets = synthetic_city()
    print(f"synthetic city: {len(streets)} street polylines")

    net = extract_network(streets)
    print(f"network: {len(net.vertices)} vertices, {len(net.edges)} edges, "
          f"{net.component_count()} component(s)")
    print(f"total street length: {net.total_weight():.0f} m")

    net.set_depot(centroid_vertex(net))
    d = net.vertices[net.depot]
    print(f"depot at the most central vertex: #{net.depot} ({d.x:.0f}, {d.y:.0f})")

    # Density multiplies one penalty per axis. Highways multiply in a zero,
    # which is how they are kept free of deliveries.
    table = PenaltyTable()
    print("\nsample density values (region, type, zone):")
    for info in [
        StreetInfo(0, "?", "central", "avenue", "mixed"),
        StreetInfo(0, "?", "peripheral", "street", "residential"),
        StreetInfo(0, "?", "distant", "alameda", "commercial_industrial"),
        StreetInfo(0, "?", "central", "highway", "commercial_industrial"),
    ]:
        print(f"  {info.region:>10} {info.stype:>8} {info.zone:>21} "
              f"-> {density(table, info):.3f}")

    spec = GenerationSpec(deliveries=2000, seed=42, fleet_size=20)
    inst = generate(net, table, spec)
    print(f"\ngenerated {len(inst.customers)} deliveries with seed {spec.seed}")

    # Where did they land? Walk the edges once to map deliveries to streets.
    street_of = {}
    for e in inst.network.edges:
        for vid in (e.u, e.v):
            if inst.network.vertices[vid].kind == "delivery":
                street_of[vid] = e.street_id
    by_region = Counter()
    by_type = Counter()
    for vid, _ in inst.customers:
        info = inst.network.streets[street_of[vid]]
        by_region[info.region] += 1
        by_type[info.stype] += 1
    print("deliveries by region:", dict(by_region))
    print("deliveries by street type:", dict(by_type))
    print("highways received:", by_type.get("highway", 0))

    again = generate(net, table, spec)
    assert serialize_instance(again) == serialize_instance(inst)
    print("\nsame seed, same bytes: regeneration is exact")

    OUT.mkdir(exist_ok=True)
    inst.name = "city-2000"
    path = OUT / "city-2000.vrpb"
    write_instance(inst, path)
    print(f"wrote {path} ({path.stat().st_size} bytes)")


if __name__ == "__main__":
    main()
