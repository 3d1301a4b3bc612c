import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import line_instance, rng_of
from vrpbench import Instance, generate_grid_network
from vrpbench.errors import ParseError, ValidationError
from vrpbench.solution import (
    INFEASIBLE,
    Solution,
    best_permutation_bruteforce,
    concatenate,
    evaluate,
    parse_solution,
    partition,
    route_length,
    serialize_solution,
    validate_solution,
)


def test_partition_splits_on_depot_separators():
    sol = Solution((3, 5, 4, 1, 2, 0, 6, 10, 11, 12, 0, 7, 8, 9, 13), depot=0)
    assert sol.fleet_size == 3
    assert partition(sol, 3) == [
        (3, 5, 4, 1, 2),
        (6, 10, 11, 12),
        (7, 8, 9, 13),
    ]


def test_partition_allows_trailing_empty_route():
    sol = Solution((1, 0), depot=0)
    assert partition(sol, 2) == [(1,), ()]


def test_partition_rejects_wrong_separator_count():
    sol = Solution((1, 0, 2), depot=0)
    with pytest.raises(ValidationError, match="separators"):
        partition(sol, 3)


def test_partition_rejects_duplicate_customers():
    sol = Solution((1, 2, 0, 1), depot=0)
    with pytest.raises(ValidationError, match="duplicated customers"):
        partition(sol, 2)


ids = st.integers(min_value=1, max_value=50)


@given(
    routes=st.lists(st.lists(ids, max_size=5), min_size=1, max_size=4).filter(
        lambda rs: len({c for r in rs for c in r}) == sum(len(r) for r in rs)
    )
)
@settings(max_examples=150, deadline=None)
def test_partition_inverts_concatenate(routes):
    sol = concatenate(routes, depot=0)
    assert partition(sol, len(routes)) == [tuple(r) for r in routes]


def test_validate_solution_reports_what_is_wrong():
    inst = line_instance([2.0, 3.0], k=1)
    with pytest.raises(ValidationError, match="missing customers: \\[2\\]"):
        validate_solution(inst, Solution((1,), depot=0))
    with pytest.raises(ValidationError, match="unknown customers: \\[9\\]"):
        validate_solution(inst, Solution((1, 2, 9), depot=0))
    with pytest.raises(ValidationError, match="depot"):
        validate_solution(inst, Solution((1, 2), depot=1))


def test_route_length_on_a_path_graph():
    inst = line_instance([2.0, 3.0], k=1)
    oracle = inst.oracle()
    assert route_length((), 0, oracle) == 0.0
    assert route_length((1,), 0, oracle) == 4.0
    assert route_length((1, 2), 0, oracle) == 2.0 + 3.0 + 5.0
    # A bare callable works in place of the oracle object.
    assert route_length((1, 2), 0, lambda a, b: 1.0) == 3.0


def test_route_length_matches_matrix_on_random_graphs():
    for seed in range(3):
        net = oracles.random_connected_network(rng_of(seed), 20, extra_edges=10)
        net.set_depot(0)
        dmat = oracles.floyd_warshall(net)
        inst = Instance(network=net, depot=0,
                        customers=[(v, 1.0) for v in (3, 7, 11, 15)], fleet_size=1)
        oracle = inst.oracle()
        route = (7, 15, 3, 11)
        assert route_length(route, 0, oracle) == oracles.matrix_route_length(route, 0, dmat)


def test_route_reversal_does_not_change_length():
    for seed in range(5):
        net = oracles.random_connected_network(rng_of(seed), 25, extra_edges=12)
        oracle_inst = Instance(network=net, depot=0,
                               customers=[(v, 1.0) for v in (2, 5, 9, 14, 20)], fleet_size=1)
        oracle = oracle_inst.oracle()
        route = (5, 20, 2, 14, 9)
        # Integer weights make both sums exact, so equality is bitwise.
        assert route_length(route, 0, oracle) == route_length(route[::-1], 0, oracle)


def test_evaluate_total_length_on_a_path():
    inst = line_instance([2.0, 3.0], k=1)
    report = evaluate(inst, Solution((1, 2), depot=0))
    assert report.feasible
    assert report.total_length == 10.0
    assert report.cost == 10.0
    assert report.f1 == 10.0
    assert report.f2 == 1
    assert report.fairness_variance == 0.0


def test_equal_routes_have_zero_variance():
    net = generate_grid_network(3, 3, 50.0)
    net.set_depot(4)
    inst = Instance(network=net, depot=4, customers=[(1, 1.0), (7, 1.0)], fleet_size=2)
    report = evaluate(inst, Solution((1, 4, 7), depot=4), objective="fairness_variance")
    assert report.routes[0].length == report.routes[1].length == 100.0
    assert report.fairness_variance == 0.0
    assert report.cost == 0.0
    assert report.mean_route_length == 100.0


def test_variance_is_population_not_sample():
    inst = line_instance([2.0, 3.0], k=2)
    report = evaluate(inst, Solution((1, 0, 2), depot=0))
    # Route lengths 4 and 10: mean 7, population variance (9 + 9) / 2 = 9.
    assert report.routes[0].length == 4.0
    assert report.routes[1].length == 10.0
    assert report.fairness_variance == 9.0


def test_lexicographic_cost_orders_total_first():
    inst = line_instance([1.0, 1.0, 1.0, 1.0], k=2)
    balanced = evaluate(inst, Solution((1, 2, 0, 3, 4), depot=0), "lexicographic")
    assert balanced.cost == (balanced.total_length, balanced.fairness_variance)
    lopsided = evaluate(inst, Solution((1, 2, 3, 0, 4), depot=0), "lexicographic")
    assert isinstance(lopsided.cost, tuple)
    if balanced.cost[0] == lopsided.cost[0]:
        assert balanced.cost < lopsided.cost


def test_evaluate_rejects_unknown_objective():
    inst = line_instance([2.0], k=1)
    with pytest.raises(ValueError, match="unknown objective"):
        evaluate(inst, Solution((1,), depot=0), "makespan")


def test_empty_route_is_infeasible_by_default():
    inst = line_instance([2.0, 3.0], k=2)
    report = evaluate(inst, Solution((1, 2, 0), depot=0))
    assert report.cost == INFEASIBLE
    assert math.isinf(report.cost)
    assert report.violations == {
        "empty_route": True, "capacity": False,
        "max_route_length": False, "time_window": False,
    }


def test_empty_route_allowed_when_opted_in():
    inst = line_instance([2.0, 3.0], k=2, allow_empty_routes=True)
    report = evaluate(inst, Solution((1, 2, 0), depot=0))
    assert report.feasible
    assert report.cost == 10.0


def test_capacity_violation_flags_and_infinity():
    inst = line_instance([2.0, 3.0], k=1, vehicle_capacities=[1.5])
    report = evaluate(inst, Solution((1, 2), depot=0))
    assert report.cost == INFEASIBLE
    assert report.violations["capacity"] is True
    assert report.violations["empty_route"] is False
    assert report.routes[0].over_capacity


def test_max_route_length_violation():
    inst = line_instance([2.0, 3.0], k=1, max_route_length=9.0)
    report = evaluate(inst, Solution((1, 2), depot=0))
    assert report.cost == INFEASIBLE
    assert report.violations["max_route_length"] is True
    loose = line_instance([2.0, 3.0], k=1, max_route_length=10.0)
    assert evaluate(loose, Solution((1, 2), depot=0)).feasible


def test_time_window_violations_both_directions():
    # Arrival at customer 1 is exactly 2 (unit speed, leave at t=0).
    late = line_instance([2.0, 3.0], k=1, time_windows={1: (0.0, 1.0)})
    report = evaluate(late, Solution((1, 2), depot=0))
    assert report.cost == INFEASIBLE
    assert report.violations["time_window"] is True
    early = line_instance([2.0, 3.0], k=1, time_windows={1: (5.0, 9.0)})
    report = evaluate(early, Solution((1, 2), depot=0))
    assert report.violations["time_window"] is True
    ontime = line_instance([2.0, 3.0], k=1, time_windows={1: (2.0, 2.0), 2: (5.0, 5.0)})
    assert evaluate(ontime, Solution((1, 2), depot=0)).feasible


def test_lexicographic_infeasible_is_a_double_infinity():
    inst = line_instance([2.0, 3.0], k=2)
    report = evaluate(inst, Solution((1, 2, 0), depot=0), "lexicographic")
    assert report.cost == (INFEASIBLE, INFEASIBLE)


def test_key_values_spell_infinity_as_inf():
    inst = line_instance([2.0, 3.0], k=2)
    report = evaluate(inst, Solution((1, 2, 0), depot=0))
    pairs = dict(report.key_values())
    assert pairs["cost"] == "inf"
    assert pairs["feasible"] == "no"
    assert pairs["violation_empty_route"] == "yes"


def test_bruteforce_finds_the_optimum_and_breaks_ties_low():
    inst = line_instance([1.0, 1.0, 1.0], k=1)
    sol, cost = best_permutation_bruteforce(inst)
    # (1,2,3) and (3,2,1) both cost 6; ties go to the smaller sequence.
    assert cost == 6.0
    assert sol.sequence == (1, 2, 3)


def test_bruteforce_refuses_large_instances():
    inst = line_instance([1.0] * 10, k=2)  # 11 tokens
    with pytest.raises(ValueError, match="limit 10"):
        best_permutation_bruteforce(inst)


def test_bruteforce_rejects_empty_instances():
    net = generate_grid_network(2, 2, 10.0)
    net.set_depot(0)
    inst = Instance(network=net, depot=0, customers=[], fleet_size=1)
    with pytest.raises(ValueError, match="no customers"):
        best_permutation_bruteforce(inst)


def test_bruteforce_agrees_with_raw_enumeration():
    for seed in range(5):
        rng = rng_of(seed)
        net = oracles.random_connected_network(rng, 12, extra_edges=6)
        net.set_depot(0)
        n = int(rng.integers(2, 5))
        customers = [(int(v), 1.0) for v in rng.choice(np.arange(1, 12), size=n, replace=False)]
        inst = Instance(network=net, depot=0, customers=customers,
                        fleet_size=int(rng.integers(1, 3)))
        dmat = oracles.floyd_warshall(net)
        sol, cost = best_permutation_bruteforce(inst)
        ref_seq, ref_cost = oracles.enumerate_best(inst, dmat)
        assert cost == ref_cost
        assert sol.sequence == ref_seq


def test_solution_file_round_trip():
    sol = Solution((1, 2, 0, 3, 0), depot=0)
    text = serialize_solution(sol)
    assert text == "K: 3\nROUTE 1: 1 2\nROUTE 2: 3\nROUTE 3:\n"
    back = parse_solution(text, depot=0)
    assert back == sol
    assert serialize_solution(back) == text


def test_parse_solution_error_cases():
    with pytest.raises(ParseError, match="empty solution"):
        parse_solution("", depot=0)
    with pytest.raises(ParseError, match="expected 'K"):
        parse_solution("ROUTES: 2\n", depot=0)
    with pytest.raises(ParseError, match="bad route count"):
        parse_solution("K: two\n", depot=0)
    with pytest.raises(ParseError, match="positive"):
        parse_solution("K: 0\n", depot=0)
    with pytest.raises(ParseError, match="out of order"):
        parse_solution("K: 2\nROUTE 2: 1\nROUTE 1: 2\n", depot=0)
    with pytest.raises(ParseError, match="expected 'ROUTE"):
        parse_solution("K: 1\nROUTE 1_0: 1\n", depot=0)
    with pytest.raises(ParseError, match="bad customer id"):
        parse_solution("K: 1\nROUTE 1: 1 x 3\n", depot=0)
    with pytest.raises(ParseError, match="header says 2"):
        parse_solution("K: 2\nROUTE 1: 1\n", depot=0)


def test_parse_solution_line_numbers():
    try:
        parse_solution("K: 1\nROUTE one: 1\n", depot=0)
    except ParseError as exc:
        assert exc.line == 2
        assert "line 2" in str(exc)
    else:
        pytest.fail("expected ParseError")
