"""Command line front end.

Exit codes: 0 success (and feasible where that applies), 1 infeasible
solution, 2 structural error (unparsable file, broken references,
disconnected queries), 3 usage error. The VRPBENCH_SEED environment
variable supplies the default seed wherever --seed is omitted.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .density import PenaltyTable, load_penalty_overrides
from .errors import VRPBenchError
from .fileio import batch_generate, read_instance, write_instance
from .instances import GenerationSpec, Instance, generate
from .network import centroid_vertex, extract_network, generate_grid_network
from .render import render_svg
from .solution import evaluate, parse_solution, serialize_solution
from .solvers import SolverConfig, local_search_improve, nearest_neighbor_construct
from .streets import read_street_file

OK, INFEASIBLE, STRUCTURAL, USAGE = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _default_seed():
    return int(os.environ.get("VRPBENCH_SEED", "0"))


def _seed_of(args):
    return _default_seed() if args.seed is None else args.seed


def _network_summary(net):
    print(f"vertices={len(net.vertices)}")
    print(f"edges={len(net.edges)}")
    print(f"streets={len(net.streets)}")
    print(f"components={net.component_count()}")


def _write_network_file(net, out):
    skeleton = Instance(
        network=net, depot=net.depot, customers=[], fleet_size=1,
        name=Path(out).stem, generator_version=__version__,
    )
    write_instance(skeleton, out)


def _cmd_extract(args):
    streets = read_street_file(args.streets)
    net = extract_network(streets, args.epsilon)
    net.set_depot(centroid_vertex(net))
    _write_network_file(net, args.out)
    _network_summary(net)
    return OK


def _cmd_grid(args):
    net = generate_grid_network(args.rows, args.cols, args.block,
                                region=args.region, stype=args.type, zone=args.zone)
    net.set_depot(centroid_vertex(net))
    _write_network_file(net, args.out)
    _network_summary(net)
    return OK


def _load_penalties(args):
    if getattr(args, "penalties", None):
        return load_penalty_overrides(args.penalties)
    return PenaltyTable()


def _cmd_gen(args):
    base = read_instance(args.network)
    spec = GenerationSpec(
        deliveries=args.deliveries,
        seed=_seed_of(args),
        fleet_size=args.k,
        max_route_length=args.max_route_length,
        demand_model=args.demand_model,
    )
    instance = generate(base.network, _load_penalties(args), spec)
    instance.name = Path(args.out).stem
    write_instance(instance, args.out)
    print(f"instance={args.out}")
    print(f"customers={len(instance.customers)}")
    return OK


def _cmd_batch(args):
    base = read_instance(args.network)
    sizes = None
    if args.sizes:
        sizes = tuple(int(s) for s in args.sizes.split(","))
    written = batch_generate(
        base.network, _load_penalties(args), args.out_dir,
        preset=args.preset, base_seed=_seed_of(args), fleet_size=args.k,
        sizes=sizes, per_size=args.per_size, prefix=args.prefix,
    )
    print(f"written={len(written)}")
    print(f"out_dir={args.out_dir}")
    return OK


def _load_pair(args):
    instance = read_instance(args.instance)
    text = Path(args.solution).read_text(encoding="utf-8")
    solution = parse_solution(text, instance.depot)
    return instance, solution


def _print_report(report):
    for key, value in report.key_values():
        print(f"{key}={value}")


def _cmd_validate(args):
    instance, solution = _load_pair(args)
    report = evaluate(instance, solution, args.objective)
    _print_report(report)
    return OK if report.feasible else INFEASIBLE


def _cmd_eval(args):
    return _cmd_validate(args)


def _cmd_solve(args):
    instance = read_instance(args.instance)
    config = SolverConfig(
        objective=args.objective,
        max_iterations=args.max_iterations,
        time_budget=args.time_budget,
        neighbor_count=args.neighbors,
        seed=_seed_of(args),
    )
    solution = nearest_neighbor_construct(instance, config)
    if args.algorithm == "local_search":
        solution = local_search_improve(instance, solution, config)
    text = serialize_solution(solution)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    report = evaluate(instance, solution, args.objective)
    _print_report(report)
    return OK if report.feasible else INFEASIBLE


def _cmd_render(args):
    instance = read_instance(args.instance)
    solution = None
    if args.solution:
        text = Path(args.solution).read_text(encoding="utf-8")
        solution = parse_solution(text, instance.depot)
    svg = render_svg(instance, solution)
    Path(args.out).write_bytes(svg.encode("utf-8"))
    print(f"svg={args.out}")
    return OK


def _add_objective(parser):
    parser.add_argument("--objective", default="total_length",
                        choices=("total_length", "fairness_variance", "lexicographic"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vrpbench", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("extract", help="street file to network file")
    p.add_argument("streets")
    p.add_argument("--epsilon", type=float, default=None, help="snap tolerance in meters")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("grid", help="synthetic Manhattan network")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--block", type=float, default=100.0)
    p.add_argument("--region", default="central")
    p.add_argument("--type", default="street")
    p.add_argument("--zone", default="residential")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_grid)

    p = sub.add_parser("gen", help="generate one instance from a network file")
    p.add_argument("network")
    p.add_argument("--deliveries", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--k", type=int, default=1, help="fleet size")
    p.add_argument("--max-route-length", type=float, default=None)
    p.add_argument("--demand-model", default="unit", choices=("unit", "none"))
    p.add_argument("--penalties", default=None, help="penalty override file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("batch", help="generate a benchmark set")
    p.add_argument("network")
    p.add_argument("--preset", default="paper", choices=("paper", "custom"))
    p.add_argument("--seed", type=int, default=None, help="base seed")
    p.add_argument("--k", type=int, default=20, help="fleet size")
    p.add_argument("--sizes", default=None, help="comma-separated sizes (custom preset)")
    p.add_argument("--per-size", type=int, default=None)
    p.add_argument("--prefix", default="an")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_batch)

    p = sub.add_parser("validate", help="check a solution against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    _add_objective(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("eval", help="score a solution")
    p.add_argument("instance")
    p.add_argument("solution")
    _add_objective(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("solve", help="run a baseline solver")
    p.add_argument("instance")
    p.add_argument("--algorithm", default="local_search",
                   choices=("nearest_neighbor", "local_search"))
    _add_objective(p)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-iterations", type=int, default=100_000)
    p.add_argument("--time-budget", type=float, default=None)
    p.add_argument("--neighbors", type=int, default=20)
    p.add_argument("--out", default=None, help="solution file (stdout when omitted)")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("render", help="draw an instance (and optional solution) as SVG")
    p.add_argument("instance")
    p.add_argument("--solution", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_render)

    return parser


def cli_dispatch(argv=None) -> int:
    """Parse arguments and run one subcommand, mapping failures to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        print(parser.format_usage(), file=sys.stderr, end="")
        return USAGE
    try:
        return args.func(args)
    except (VRPBenchError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return STRUCTURAL


def main():
    sys.exit(cli_dispatch())
