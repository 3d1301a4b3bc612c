"""Baseline heuristics: greedy construction and first-improvement descent.

These are sanity-floor solvers, not contenders. The construction deals
customers to vehicles round-robin, always extending with the nearest
unvisited customer. The improver scans 2-opt, relocate and swap moves in
a fixed order and applies the first strict improvement, so runs are
deterministic without any randomness.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass

from .solution import (
    OBJECTIVES,
    Solution,
    _fmt_cost,
    concatenate,
    evaluate,
    validate_solution,
)


@dataclass
class SolverConfig:
    objective: str = "total_length"
    max_iterations: int = 100_000
    time_budget: float | None = None
    neighbor_count: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.objective not in OBJECTIVES:
            raise ValueError(f"unknown objective {self.objective!r}")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be non-negative")
        if self.neighbor_count < 1:
            raise ValueError("neighbor_count must be positive")


def nearest_neighbor_construct(instance, config: SolverConfig | None = None) -> Solution:
    """Round-robin greedy construction.

    Vehicles take turns appending the nearest unvisited customer to their
    current end (starting at the depot), ties broken by smallest id. With
    k <= n every route ends up non-empty.
    """
    del config  # deterministic; accepted for interface symmetry
    customers = sorted(instance.customer_ids())
    k = instance.fleet_size
    if k > len(customers):
        raise ValueError(f"{k} vehicles but only {len(customers)} customers")
    dist = instance.oracle().distance
    routes = [[] for _ in range(k)]
    ends = [instance.depot] * k
    unvisited = set(customers)
    vehicle = 0
    while unvisited:
        here = ends[vehicle]
        best = min(unvisited, key=lambda c: (dist(here, c), c))
        routes[vehicle].append(best)
        ends[vehicle] = best
        unvisited.discard(best)
        vehicle = (vehicle + 1) % k
    return concatenate(routes, instance.depot)


def _nearest_neighbors(instance, count):
    dist = instance.oracle().distance
    ids = sorted(instance.customer_ids())
    out = {}
    for c in ids:
        ranked = sorted((d for d in ids if d != c), key=lambda d: (dist(c, d), d))
        out[c] = ranked[:count]
    return out


class _State:
    """Mutable search state: routes, their lengths, and feasibility data."""

    def __init__(self, instance, routes, objective):
        self.instance = instance
        self.dist = instance.oracle().distance
        self.routes = [list(r) for r in routes]
        self.objective = objective
        self.demands = dict(instance.customers)
        self.lengths = [self.route_length(r) for r in self.routes]

    def route_length(self, route):
        if not route:
            return 0.0
        depot = self.instance.depot
        total = self.dist(depot, route[0])
        for a, b in zip(route, route[1:]):
            total += self.dist(a, b)
        total += self.dist(route[-1], depot)
        return total

    def route_feasible(self, route, vehicle, length):
        inst = self.instance
        if not route:
            return inst.allow_empty_routes
        if inst.vehicle_capacities is not None:
            if sum(self.demands[c] for c in route) > inst.vehicle_capacities[vehicle]:
                return False
        if inst.max_route_length is not None and length > inst.max_route_length:
            return False
        if inst.time_windows:
            clock = self.dist(inst.depot, route[0])
            if self._early_or_late(route[0], clock):
                return False
            for a, b in zip(route, route[1:]):
                clock += self.dist(a, b)
                if self._early_or_late(b, clock):
                    return False
        return True

    def _early_or_late(self, customer, arrival):
        window = self.instance.time_windows.get(customer)
        if window is None:
            return False
        return arrival < window[0] or arrival > window[1]

    def objective_value(self, lengths):
        total = sum(lengths)
        if self.objective == "total_length":
            return total
        k = len(lengths)
        mean = total / k
        var = sum((x - mean) ** 2 for x in lengths) / k
        if self.objective == "fairness_variance":
            return var
        return (total, var)

    def current(self):
        return self.objective_value(self.lengths)

    def try_routes(self, replacements):
        """Objective after swapping in candidate routes, or None if infeasible.

        replacements maps route index -> new customer list.
        """
        new_lengths = list(self.lengths)
        computed = {}
        for idx, route in replacements.items():
            length = self.route_length(route)
            if not self.route_feasible(route, idx, length):
                return None, None
            new_lengths[idx] = length
            computed[idx] = length
        return self.objective_value(new_lengths), computed

    def apply(self, replacements, computed):
        for idx, route in replacements.items():
            self.routes[idx] = list(route)
            self.lengths[idx] = computed[idx]


def _scan_two_opt(state):
    for ri, route in enumerate(state.routes):
        for i in range(len(route) - 1):
            for j in range(i + 1, len(route)):
                cand = route[:i] + route[i:j + 1][::-1] + route[j + 1:]
                yield {ri: cand}


def _scan_relocate(state, neighbors):
    where = {}
    for ri, route in enumerate(state.routes):
        for pi, c in enumerate(route):
            where[c] = (ri, pi)
    for ra, route in enumerate(state.routes):
        for pa, c in enumerate(route):
            seen = set()
            for d in neighbors[c]:
                rb, pb = where[d]
                for pos in (pb, pb + 1):
                    if (rb, pos) in seen:
                        continue
                    seen.add((rb, pos))
                    if rb == ra:
                        removed = route[:pa] + route[pa + 1:]
                        adj = pos - 1 if pos > pa else pos
                        if adj < 0 or adj > len(removed):
                            continue
                        cand = removed[:adj] + [c] + removed[adj:]
                        if cand == route:
                            continue
                        yield {ra: cand}
                    else:
                        src = route[:pa] + route[pa + 1:]
                        dst = state.routes[rb]
                        cand = dst[:pos] + [c] + dst[pos:]
                        yield {ra: src, rb: cand}


def _scan_swap(state, neighbors):
    where = {}
    for ri, route in enumerate(state.routes):
        for pi, c in enumerate(route):
            where[c] = (ri, pi)
    for ra, route in enumerate(state.routes):
        for pa, c in enumerate(route):
            for d in neighbors[c]:
                rb, pb = where[d]
                if (rb, pb) <= (ra, pa):
                    continue
                if rb == ra:
                    cand = list(route)
                    cand[pa], cand[pb] = cand[pb], cand[pa]
                    yield {ra: cand}
                else:
                    cand_a = list(route)
                    cand_b = list(state.routes[rb])
                    cand_a[pa], cand_b[pb] = d, c
                    yield {ra: cand_a, rb: cand_b}


def local_search_improve(instance, start: Solution, config: SolverConfig | None = None) -> Solution:
    """First-improvement descent from a feasible starting solution.

    Scans 2-opt, then relocate, then swap; applies the first move that
    strictly lowers the configured objective and restarts the scan. Each
    accepted move logs one `iter=<n> value=<v>` line to stderr, giving a
    strictly decreasing trace. Stops when a full scan finds nothing, or
    the iteration or time budget runs out.
    """
    cfg = config or SolverConfig()
    report = evaluate(instance, start, cfg.objective)
    if not report.feasible:
        raise ValueError("local search needs a feasible starting solution")
    routes = validate_solution(instance, start)
    state = _State(instance, routes, cfg.objective)
    neighbors = _nearest_neighbors(instance, cfg.neighbor_count)

    deadline = None if cfg.time_budget is None else time.monotonic() + cfg.time_budget
    iteration = 0
    current = state.current()
    improved = True
    while improved and iteration < cfg.max_iterations:
        if deadline is not None and time.monotonic() > deadline:
            break
        improved = False
        scans = (
            _scan_two_opt(state),
            _scan_relocate(state, neighbors),
            _scan_swap(state, neighbors),
        )
        for scan in scans:
            for replacements in scan:
                value, computed = state.try_routes(replacements)
                if value is None or not value < current:
                    continue
                state.apply(replacements, computed)
                current = value
                iteration += 1
                print(f"iter={iteration} value={_fmt_cost(value)}", file=sys.stderr)
                improved = True
                break
            if improved:
                break
    return concatenate(state.routes, instance.depot)
