"""Release gate: one test per promised behavior, one printed verdict each.

Every test here drives the public API end to end and prints a single
``[acceptance] <name>: PASS`` or ``FAIL`` line on the real terminal, so a
plain ``pytest tests/test_acceptance.py`` run doubles as a checklist. The
tolerances and time budgets below are contractual; do not loosen them to
make a failing build green.
"""

import hashlib
import itertools
import math
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest
from scipy import stats

import oracles
from conftest import line_instance, rng_of
from test_render import routed_instance
from vrpbench import (
    DistanceOracle,
    Instance,
    PenaltyTable,
    StreetNetwork,
    batch_generate,
    density,
    generate,
    insert_point_on_edge,
    parse_instance,
    read_instance,
    render_svg,
    serialize_instance,
)
from vrpbench.instances import GenerationSpec, assign_counts
from vrpbench.solution import Solution, best_permutation_bruteforce, evaluate, partition
from vrpbench.solvers import local_search_improve, nearest_neighbor_construct
from vrpbench.streets import StreetInfo


@contextmanager
def criterion(capsys, name):
    verdict = "FAIL"
    try:
        yield
        verdict = "PASS"
    finally:
        with capsys.disabled():
            print(f"[acceptance] {name}: {verdict}")


def street_of_customers(instance):
    """Map each delivery vertex to the street its edges belong to."""
    mapping = {}
    for e in instance.network.edges:
        for vid in (e.u, e.v):
            if instance.network.vertices[vid].kind == "delivery":
                mapping[vid] = e.street_id
    return mapping


def two_street_network(weights=(3.0, 1.0), second_kind="street"):
    net = StreetNetwork()
    a = net.add_vertex(0.0, 0.0, kind="depot")
    b = net.add_vertex(weights[0], 0.0)
    c = net.add_vertex(weights[0] + weights[1], 0.0)
    net.add_edge(a, b, weights[0], 0)
    net.add_edge(b, c, weights[1], 1)
    net.streets[0] = StreetInfo(0, "A", "central", "street", "residential")
    net.streets[1] = StreetInfo(1, "B", "central", second_kind, "residential")
    net.set_depot(a)
    return net


def small_routing_instance(seed, n_max=6, k_max=2):
    rng = rng_of(seed)
    net = oracles.random_connected_network(rng, 12, extra_edges=6)
    net.set_depot(0)
    n = int(rng.integers(2, n_max + 1))
    vids = rng.choice(np.arange(1, 12), size=n, replace=False)
    customers = [(int(v), 1.0) for v in vids]
    k = int(rng.integers(1, min(k_max, n) + 1))
    return Instance(network=net, depot=0, customers=customers, fleet_size=k)


def test_density_product_and_highway_exclusion(capsys):
    with criterion(capsys, "density-product"):
        table = PenaltyTable()
        assert density(table, StreetInfo(0, "x", "central", "avenue", "mixed")) == 0.7
        # Highways carry zero mass, so they must never receive a delivery,
        # no matter how many are placed.
        net = StreetNetwork()
        a = net.add_vertex(0.0, 0.0, kind="depot")
        b = net.add_vertex(100.0, 0.0)
        c = net.add_vertex(100.0, 100.0)
        d = net.add_vertex(0.0, -200.0)
        net.add_edge(a, b, 100.0, 0)
        net.add_edge(b, c, 100.0, 1)
        net.add_edge(a, d, 200.0, 2)
        net.streets[0] = StreetInfo(0, "Ave", "central", "avenue", "mixed")
        net.streets[1] = StreetInfo(1, "St", "central", "street", "residential")
        net.streets[2] = StreetInfo(2, "Hwy", "central", "highway", "commercial_industrial")
        net.set_depot(a)
        for m in (1, 100, 5000):
            inst = generate(net, table, GenerationSpec(deliveries=m, seed=5))
            assert len(inst.customers) == m
            streets = street_of_customers(inst)
            kinds = {inst.network.streets[streets[vid]].stype for vid, _ in inst.customers}
            assert "highway" not in kinds


def test_street_share_tracks_weights(capsys):
    # Two streets with weight ratio 3:1. For a fair wheel the heavy street's
    # share of 40000 draws lands in [0.745, 0.755] with probability 0.9794
    # per seed; the 20 seeds below were all verified in band once and stay
    # there forever because the generator is deterministic.
    with criterion(capsys, "street-shares"):
        start = time.perf_counter()
        table = PenaltyTable()
        net = two_street_network()
        m = 40000
        shares = []
        for seed in range(20):
            counts = assign_counts([3.0, 1.0], m, rng_of(seed))
            share = counts[0] / m
            shares.append(share)
            assert 0.745 <= share <= 0.755, f"seed {seed}: share {share}"
        # The generator consumes exactly these counts before drawing any
        # offsets, so instances land where the wheel said. Spot-check both
        # ends of the seed range end to end.
        for seed in (0, 19):
            inst = generate(net, table, GenerationSpec(deliveries=m, seed=seed))
            streets = street_of_customers(inst)
            heavy = sum(1 for vid, _ in inst.customers if streets[vid] == 0)
            assert heavy / m == shares[seed]
        elapsed = time.perf_counter() - start
        assert elapsed < 5.0, f"took {elapsed:.2f}s"


def test_offsets_are_uniform_along_the_street(capsys):
    with criterion(capsys, "offset-uniformity"):
        start = time.perf_counter()
        net = StreetNetwork()
        a = net.add_vertex(0.0, 0.0, kind="depot")
        b = net.add_vertex(1000.0, 0.0)
        net.add_edge(a, b, 1000.0, 0)
        net.streets[0] = StreetInfo(0, "Long", "central", "street", "residential")
        net.set_depot(a)
        inst = generate(net, PenaltyTable(), GenerationSpec(deliveries=10000, seed=0))
        # The street lies on the x axis, so x is the offset.
        xs = np.array([inst.network.vertices[vid].x for vid, _ in inst.customers])
        counts, _ = np.histogram(xs, bins=100, range=(0.0, 1000.0))
        chi2 = float(((counts - 100.0) ** 2 / 100.0).sum())
        threshold = float(stats.chi2.ppf(1.0 - 1e-4, 99))
        elapsed = time.perf_counter() - start
        assert chi2 < threshold, f"chi2 {chi2:.2f} >= {threshold:.2f}"
        assert elapsed < 5.0, f"took {elapsed:.2f}s"


def test_separator_partition_recovers_routes(capsys):
    with criterion(capsys, "route-partition"):
        depot = 0
        seq = (3, 5, 4, 1, 2, depot, 6, 10, 11, 12, depot, 7, 8, 9, 13)
        routes = partition(Solution(seq, depot), k=3)
        assert routes == [
            (3, 5, 4, 1, 2),
            (6, 10, 11, 12),
            (7, 8, 9, 13),
        ]


def test_evaluator_matches_matrix_arithmetic(capsys):
    with criterion(capsys, "evaluator-vs-matrix"):
        start = time.perf_counter()
        for seed in range(200):
            inst = small_routing_instance(seed)
            dmat = oracles.floyd_warshall(inst.network)
            tokens = inst.customer_ids() + [inst.depot] * (inst.fleet_size - 1)
            for seq in set(itertools.permutations(tokens)):
                got = evaluate(inst, Solution(seq, inst.depot)).cost
                want, _ = oracles.matrix_score(
                    oracles.split_tokens(seq, inst.depot), inst, dmat)
                if math.isinf(want):
                    assert math.isinf(got), (seed, seq)
                else:
                    assert got == want, (seed, seq, got, want)
            bf_seq, bf_cost = best_permutation_bruteforce(inst)
            ref_seq, ref_cost = oracles.enumerate_best(inst, dmat)
            assert bf_cost == ref_cost, (seed, bf_cost, ref_cost)
            assert bf_seq.sequence == ref_seq, (seed, bf_seq, ref_seq)
        elapsed = time.perf_counter() - start
        assert elapsed < 60.0, f"took {elapsed:.1f}s"


def test_distance_oracle_matches_dense_recomputation(capsys):
    with criterion(capsys, "oracle-vs-dense"):
        start = time.perf_counter()
        for case in range(100):
            rng = rng_of(1000 + case)
            nv = int(rng.integers(5, 51))
            net = oracles.random_connected_network(rng, nv,
                                                   extra_edges=int(rng.integers(0, nv)))
            fw = oracles.floyd_warshall(net)
            oracle = DistanceOracle(net)
            for s in range(nv):
                assert np.allclose(oracle.distances_from(s), fw[s], rtol=1e-9, atol=0.0)
            for a, b, c in rng.integers(0, nv, size=(20, 3)):
                assert oracle.distance(int(a), int(c)) <= (
                    oracle.distance(int(a), int(b)) + oracle.distance(int(b), int(c)) + 1e-9)
            # Splitting an edge is a pure refinement: distances between the
            # vertices that already existed must not move.
            split = net.copy()
            eid = int(rng.integers(0, len(split.edges)))
            w = split.edges[eid].weight
            if w >= 2.0:
                insert_point_on_edge(split, eid, w / 2.0)
                after = DistanceOracle(split)
                for s in range(nv):
                    assert np.allclose(after.distances_from(s)[:nv], fw[s],
                                       rtol=1e-9, atol=0.0)
        elapsed = time.perf_counter() - start
        assert elapsed < 30.0, f"took {elapsed:.1f}s"


def test_heuristics_respect_the_optimum(capsys):
    with criterion(capsys, "heuristic-vs-bruteforce"):
        start = time.perf_counter()
        matched = 0
        for seed in range(100):
            inst = small_routing_instance(seed)
            constructed = nearest_neighbor_construct(inst)
            capsys.readouterr()
            improved = local_search_improve(inst, constructed)
            trace = capsys.readouterr().err
            values = [float(line.rsplit("value=", 1)[1])
                      for line in trace.splitlines() if line.startswith("iter=")]
            assert all(a > b for a, b in zip(values, values[1:])), (seed, values)
            cost = evaluate(inst, improved).cost
            _, best = best_permutation_bruteforce(inst)
            assert cost >= best, f"seed {seed}: {cost} beat the optimum {best}"
            if cost == best:
                matched += 1
        elapsed = time.perf_counter() - start
        assert matched >= 60, f"only {matched}/100 matched the optimum"
        assert elapsed < 60.0, f"took {elapsed:.1f}s"


def test_benchmark_set_regenerates_byte_identical(capsys, tmp_path, city_network,
                                                  default_table):
    with criterion(capsys, "batch-determinism"):
        start = time.perf_counter()
        digests = []
        for run in ("first", "second"):
            out_dir = tmp_path / run
            written = batch_generate(city_network, default_table, out_dir,
                                     preset="paper", base_seed=7)
            assert len(written) == 100
            sizes = sorted({int(p.name.split("-")[1]) for p in written})
            assert sizes == list(range(1000, 10001, 1000))
            digest = hashlib.sha256()
            for path in sorted(written):
                digest.update(path.name.encode())
                digest.update(path.read_bytes())
            digests.append(digest.hexdigest())
        elapsed = time.perf_counter() - start
        assert digests[0] == digests[1]
        assert elapsed < 600.0, f"took {elapsed:.1f}s"


def test_constraint_violations_raise_the_infinity_sentinel(capsys):
    with criterion(capsys, "violation-sentinels"):
        cases = []
        # Route 2 is empty: every customer crammed into route 1.
        inst = line_instance([2.0, 3.0], k=2)
        cases.append((inst, Solution((1, 2, 0), 0), "empty_route"))
        # One vehicle with capacity below the total demand of 2.
        inst = line_instance([2.0, 3.0], k=1, vehicle_capacities=[1.5])
        cases.append((inst, Solution((1, 2), 0), "capacity"))
        # Round trip to vertex 2 is 10, one longer than allowed.
        inst = line_instance([2.0, 3.0], k=1, max_route_length=9.0)
        cases.append((inst, Solution((1, 2), 0), "max_route_length"))
        # Vertex 1 is reached at time 2, after its window closed.
        inst = line_instance([2.0, 3.0], k=1, time_windows={1: (0.0, 1.0)})
        cases.append((inst, Solution((1, 2), 0), "time_window"))
        for inst, sol, expected in cases:
            report = evaluate(inst, sol)
            assert math.isinf(report.cost), expected
            flags = report.violations
            assert flags[expected], expected
            assert sum(flags.values()) == 1, (expected, flags)


def test_files_round_trip_and_match_goldens(capsys, tmp_path):
    with criterion(capsys, "file-round-trip"):
        golden = Path(__file__).parent / "golden"
        committed = (golden / "grid2x2.vrpb").read_bytes()
        instance = parse_instance(committed.decode("utf-8"))
        assert serialize_instance(instance).encode("utf-8") == committed
        # A generated instance survives write -> read -> write untouched.
        net = two_street_network()
        inst = generate(net, PenaltyTable(), GenerationSpec(deliveries=9, seed=4))
        inst.name = "roundtrip"
        path = tmp_path / "roundtrip.vrpb"
        path.write_text(serialize_instance(inst), encoding="utf-8")
        again = read_instance(path)
        assert serialize_instance(again) == serialize_instance(inst)
        committed_svg = (golden / "grid2x2.svg").read_bytes()
        inst2, sol2 = routed_instance()
        assert render_svg(inst2, sol2).encode("utf-8") == committed_svg
