"""Command-line entry point: ``netevo <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import io, knapsack, model, netgen, sim
from .graph import clean

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def cmd_generate(args: argparse.Namespace) -> None:
    spec = netgen.GenSpec(args.model, args.nodes, args.param, args.seed)
    g = netgen.generate(spec)
    io.write_edgelist(io.graph_to_records(g), args.out)


def cmd_ingest(args: argparse.Namespace) -> None:
    if args.format == "mitab":
        records = io.dedupe_undirected(io.parse_mitab(args.input))
    else:
        records = io.parse_edgelist(args.input)
    g, ids = io.ids_to_graph(records)
    names = sorted(ids, key=ids.get)
    cleaned, index_map = clean(g, args.min_component_size)
    if args.randomize_signs:
        cleaned = netgen.randomize_signs_directions(cleaned, args.seed)
    new_names = [""] * cleaned.node_count
    for old, new in index_map.items():
        new_names[new] = names[old]
    io.write_edgelist(io.graph_to_records(cleaned, new_names), args.out)
    print(
        f"{g.node_count} nodes / {g.edge_count} edges -> "
        f"{cleaned.node_count} nodes / {cleaned.edge_count} edges"
    )


def cmd_reduce(args: argparse.Namespace) -> None:
    data = json.loads(Path(args.input).read_text(encoding="utf-8"))
    if args.direction == "kp-to-ne":
        ne = model.kp_to_ne(knapsack.KnapsackInstance.from_dict(data), args.mode)
        payload = ne.to_dict()
    else:
        reduced = model.ne_to_kp(model.NEInstance.from_dict(data))
        inst = reduced.instance
        payload = {
            "values": list(inst.values),
            "weights": list(inst.weights),
            "capacity": inst.capacity,
            "nodes": list(reduced.nodes),
        }
    Path(args.out).write_text(json.dumps(payload) + "\n", encoding="utf-8")


def cmd_solve_kp(args: argparse.Namespace) -> None:
    inst = knapsack.KnapsackInstance.load(args.input)
    sol = knapsack.SOLVERS[args.solver](inst)
    print(json.dumps({
        "selection": list(sol.selection),
        "total_value": sol.total_value,
        "total_weight": sol.total_weight,
        "optimal": sol.optimal,
    }))


def cmd_simulate(args: argparse.Namespace) -> None:
    g = io.load_network(args.network)
    cfg = sim.SweepConfig(args.pressures, args.tolerances, args.rounds, args.seed, args.workers)
    name = args.name or Path(args.network).stem
    result = sim.run_sweep(g, cfg, network=name)
    sim.write_csv([result], args.out)
    for msg in result.warnings:
        print(f"warning: {msg}", file=sys.stderr)


def cmd_report(args: argparse.Namespace) -> None:
    results = []
    for path in args.input:
        results.extend(sim.read_csv(path))
    for msg in io.emit_figure(results, args.out):
        print(f"warning: {msg}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="netevo", description="Network evolution as 0/1 knapsack.")
    parser.add_argument("--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="generate a synthetic signed network")
    p.add_argument("--model", required=True, choices=["ba", "er", "scalefree", "complete"])
    p.add_argument("--nodes", required=True, type=int)
    p.add_argument("--param", type=float, default=None,
                   help="BA: m; ER: edge probability; scalefree: beta")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("ingest", help="clean an edge list or MITAB file into a network")
    p.add_argument("--format", required=True, choices=["edgelist", "mitab"])
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--min-component-size", type=int, default=None,
                   help="default keeps only the largest component")
    p.add_argument("--randomize-signs", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("reduce", help="convert between knapsack and NE JSON")
    p.add_argument("--direction", required=True, choices=["kp-to-ne", "ne-to-kp"])
    p.add_argument("--mode", choices=["paper", "corrected"], default="corrected")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve-kp", help="solve a knapsack JSON instance")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--solver", choices=sorted(knapsack.SOLVERS), default="dp")
    p.set_defaults(func=cmd_solve_kp)

    p = sub.add_parser("simulate", help="run a pressure/tolerance sweep")
    p.add_argument("--network", required=True)
    p.add_argument("--name", default=None, help="network label (default: file stem)")
    p.add_argument("--pressures", type=_ints, default=list(sim.DEFAULT_PRESSURES))
    p.add_argument("--tolerances", type=_floats, default=list(sim.DEFAULT_TOLERANCES))
    p.add_argument("--rounds", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("report", help="draw the max-pressure ratio chart as SVG")
    p.add_argument("--in", dest="input", required=True, nargs="+")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        args.func(args)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
