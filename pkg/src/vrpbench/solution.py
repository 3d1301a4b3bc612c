"""Solutions, route evaluation and the exhaustive reference optimizer.

A solution is one flat token sequence: customer vertex ids separated into
k routes by k-1 copies of the depot id. Splitting on the separators gives
the per-vehicle routes; every vehicle implicitly starts and ends at the
depot. Infeasible solutions evaluate to an infinite cost rather than an
error, so searches can rank them below every feasible candidate, while
structurally broken sequences raise ValidationError instead.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass

from .errors import ParseError, ValidationError

OBJECTIVES = ("total_length", "fairness_variance", "lexicographic")

INFEASIBLE = math.inf


@dataclass(frozen=True)
class Solution:
    """Flat route encoding: customer ids with the depot id as separator."""

    sequence: tuple[int, ...]
    depot: int

    @property
    def fleet_size(self) -> int:
        return self.sequence.count(self.depot) + 1


def concatenate(routes, depot) -> Solution:
    """Inverse of partition: join routes with depot separators."""
    seq = []
    for i, route in enumerate(routes):
        if i:
            seq.append(depot)
        seq.extend(route)
    return Solution(tuple(seq), depot)


def partition(solution: Solution, k: int) -> list[tuple[int, ...]]:
    """Split the token sequence into its k routes, in order.

    Raises ValidationError when the separator count does not match k or a
    customer id repeats.
    """
    seps = solution.sequence.count(solution.depot)
    if seps != k - 1:
        raise ValidationError(f"expected {k - 1} separators for {k} routes, found {seps}")
    routes = []
    current = []
    for token in solution.sequence:
        if token == solution.depot:
            routes.append(tuple(current))
            current = []
        else:
            current.append(token)
    routes.append(tuple(current))
    counts = Counter(t for t in solution.sequence if t != solution.depot)
    dupes = sorted(c for c, times in counts.items() if times > 1)
    if dupes:
        raise ValidationError(f"duplicated customers: {dupes}")
    return routes


def validate_solution(instance, solution: Solution):
    """Check a solution is structurally sound for this instance."""
    if solution.depot != instance.depot:
        raise ValidationError(
            f"solution depot {solution.depot} does not match instance depot {instance.depot}"
        )
    routes = partition(solution, instance.fleet_size)
    expected = set(instance.customer_ids())
    got = {c for route in routes for c in route}
    missing = sorted(expected - got)
    unknown = sorted(got - expected)
    if missing:
        raise ValidationError(f"missing customers: {missing}")
    if unknown:
        raise ValidationError(f"unknown customers: {unknown}")
    return routes


def _dist_callable(oracle):
    return oracle.distance if hasattr(oracle, "distance") else oracle


def route_length(route, depot, oracle) -> float:
    """Closed walk length: depot to first stop, along the stops, and back."""
    dist = _dist_callable(oracle)
    if not route:
        return 0.0
    total = dist(depot, route[0])
    for a, b in zip(route, route[1:]):
        total += dist(a, b)
    total += dist(route[-1], depot)
    return total


@dataclass
class RouteStats:
    """Per-route measurements and violation flags."""

    length: float
    load: float
    empty: bool = False
    over_capacity: bool = False
    over_length: bool = False
    time_window: bool = False

    def violated(self) -> bool:
        return self.empty or self.over_capacity or self.over_length or self.time_window


@dataclass
class RouteReport:
    """Everything the evaluator learned about one solution."""

    objective: str
    routes: list[RouteStats]
    total_length: float
    mean_route_length: float
    fairness_variance: float
    fleet_size: int

    @property
    def f1(self) -> float:
        return self.total_length

    @property
    def f2(self) -> int:
        return self.fleet_size

    @property
    def feasible(self) -> bool:
        return not any(r.violated() for r in self.routes)

    @property
    def violations(self) -> dict[str, bool]:
        return {
            "empty_route": any(r.empty for r in self.routes),
            "capacity": any(r.over_capacity for r in self.routes),
            "max_route_length": any(r.over_length for r in self.routes),
            "time_window": any(r.time_window for r in self.routes),
        }

    @property
    def cost(self):
        """Objective value; the infinity sentinel when any flag is raised."""
        if self.objective == "lexicographic":
            if not self.feasible:
                return (INFEASIBLE, INFEASIBLE)
            return (self.total_length, self.fairness_variance)
        if not self.feasible:
            return INFEASIBLE
        if self.objective == "fairness_variance":
            return self.fairness_variance
        return self.total_length

    def key_values(self) -> list[tuple[str, str]]:
        pairs = [
            ("feasible", "yes" if self.feasible else "no"),
            ("objective", self.objective),
            ("cost", _fmt_cost(self.cost)),
            ("total_length", f"{self.total_length:.9g}"),
            ("mean_route_length", f"{self.mean_route_length:.9g}"),
            ("fairness_variance", f"{self.fairness_variance:.9g}"),
            ("routes", str(self.fleet_size)),
        ]
        for name, flag in self.violations.items():
            pairs.append((f"violation_{name}", "yes" if flag else "no"))
        for i, r in enumerate(self.routes, start=1):
            pairs.append((f"route_{i}_length", f"{r.length:.9g}"))
            pairs.append((f"route_{i}_load", f"{r.load:.9g}"))
        return pairs


def _fmt_cost(cost):
    if isinstance(cost, tuple):
        return ",".join(_fmt_cost(c) for c in cost)
    if math.isinf(cost):
        return "inf"
    return f"{cost:.9g}"


def _score_routes(routes, instance, dist, objective) -> RouteReport:
    demands = dict(instance.customers)
    windows = instance.time_windows or {}
    caps = instance.vehicle_capacities
    stats = []
    for vehicle, route in enumerate(routes):
        if not route:
            stats.append(RouteStats(0.0, 0.0, empty=not instance.allow_empty_routes))
            continue
        length = dist(instance.depot, route[0])
        clock = length
        tw_bad = _window_violated(windows, route[0], clock)
        for a, b in zip(route, route[1:]):
            step = dist(a, b)
            length += step
            clock += step
            tw_bad = tw_bad or _window_violated(windows, b, clock)
        length += dist(route[-1], instance.depot)
        load = sum(demands[c] for c in route)
        st = RouteStats(length, load, time_window=tw_bad)
        if caps is not None and load > caps[vehicle]:
            st.over_capacity = True
        if instance.max_route_length is not None and length > instance.max_route_length:
            st.over_length = True
        stats.append(st)
    total = sum(r.length for r in stats)
    k = instance.fleet_size
    mean = total / k
    variance = sum((r.length - mean) ** 2 for r in stats) / k
    return RouteReport(objective, stats, total, mean, variance, k)


def _window_violated(windows, customer, arrival):
    # Unit speed, no service time, no waiting: arriving early violates
    # the window just as arriving late does.
    window = windows.get(customer)
    if window is None:
        return False
    earliest, latest = window
    return arrival < earliest or arrival > latest


def evaluate(instance, solution: Solution, objective: str = "total_length") -> RouteReport:
    """Score a solution against an instance.

    Validates structure first (raising ValidationError), then measures
    every route with shortest-path distances. Any constraint violation
    turns the reported cost into the infinity sentinel; the per-route
    flags say which constraint broke.
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    routes = validate_solution(instance, solution)
    dist = instance.oracle().distance
    return _score_routes(routes, instance, dist, objective)


def best_permutation_bruteforce(instance, objective: str = "total_length"):
    """Exact optimum by enumerating every distinct token sequence.

    Guarded to n + k - 1 <= 10 tokens. Ties on cost break toward the
    lexicographically smallest sequence, so the argmin is unique and
    reproducible. Returns (Solution, cost).
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    customers = sorted(instance.customer_ids())
    n = len(customers)
    k = instance.fleet_size
    tokens = n + k - 1
    if tokens > 10:
        raise ValueError(f"brute force refuses {tokens} tokens (limit 10)")
    if n == 0:
        raise ValueError("instance has no customers")

    oracle = instance.oracle()
    pts = [instance.depot] + customers
    dmat = {}
    for a in pts:
        for b in pts:
            dmat[(a, b)] = oracle.distance(a, b)
    dist = lambda a, b: dmat[(a, b)]

    best = None
    for perm in itertools.permutations(customers):
        for seps in itertools.combinations(range(tokens), k - 1):
            routes = []
            current = []
            it = iter(perm)
            sep_set = set(seps)
            for slot in range(tokens):
                if slot in sep_set:
                    routes.append(tuple(current))
                    current = []
                else:
                    current.append(next(it))
            routes.append(tuple(current))
            report = _score_routes(routes, instance, dist, objective)
            seq = concatenate(routes, instance.depot).sequence
            cand = (report.cost, seq)
            if best is None or cand < best:
                best = cand
    cost, seq = best
    return Solution(seq, instance.depot), cost


def serialize_solution(solution: Solution) -> str:
    """Route-per-line text form; round-trips byte-exactly."""
    routes = partition(solution, solution.fleet_size)
    lines = [f"K: {len(routes)}"]
    for i, route in enumerate(routes, start=1):
        body = " ".join(str(c) for c in route)
        lines.append(f"ROUTE {i}: {body}".rstrip())
    return "\n".join(lines) + "\n"


def parse_solution(text: str, depot: int) -> Solution:
    """Parse the solution file format back into a Solution."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty solution file", 1)
    head = lines[0].split(":")
    if len(head) != 2 or head[0].strip() != "K":
        raise ParseError(f"expected 'K: <count>', got {lines[0]!r}", 1)
    try:
        k = int(head[1])
    except ValueError:
        raise ParseError(f"bad route count {head[1].strip()!r}", 1) from None
    if k < 1:
        raise ParseError(f"route count must be positive, got {k}", 1)
    routes = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        label, _, body = line.partition(":")
        parts = label.split()
        if len(parts) != 2 or parts[0] != "ROUTE" or "_" in parts[1]:
            raise ParseError(f"expected 'ROUTE <i>: ...', got {line!r}", lineno)
        try:
            idx = int(parts[1])
        except ValueError:
            raise ParseError(f"bad route index {parts[1]!r}", lineno) from None
        if idx != len(routes) + 1:
            raise ParseError(f"route {idx} out of order", lineno)
        try:
            routes.append(tuple(int(tok) for tok in body.split()))
        except ValueError:
            raise ParseError(f"bad customer id in {body.strip()!r}", lineno) from None
    if len(routes) != k:
        raise ParseError(f"header says {k} routes, file has {len(routes)}")
    return concatenate(routes, depot)
