"""Command-line surface.

Subcommands: validate, eval, chain, enumerate, stats, gen. Exit codes:
0 success, 1 domain error (validation failures, no chain found), 2 usage
error. ``--format=json`` emits byte-stable reports with sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .document import load_fixture, parse_document, serialize_graph
from .errors import AdapterChainError, GraphSyntaxError, InvalidParams
from .generator import GenParams, random_instance
from .model import BOT, AdapterGraph, AvailabilityVector, Interface, normalize_vector
from .search import (
    WeightMap,
    chain_pipeline,
    enumerate_chains,
    greedy_chain,
    oracle_optimal,
)
from .semantics import apply_pipeline, function_sizes


def _load_graph(spec: str) -> AdapterGraph:
    path = Path(spec)
    if path.exists():
        return parse_document(path.read_bytes())
    if "/" not in spec and "\\" not in spec and not spec.endswith(".json"):
        return load_fixture(spec)
    raise GraphSyntaxError(f"graph file {spec!r} not found")


def _parse_vector(interface: Interface, text: str) -> AvailabilityVector:
    """Parse "method:V1,V2;method2:V3"; unlisted methods get only bot."""
    sets: dict[str, set[str]] = {m.name: set() for m in interface.methods}
    for part in filter(None, (p.strip() for p in text.split(";"))):
        name, _, values = part.partition(":")
        name = name.strip()
        if name not in sets:
            raise InvalidParams(
                f"interface {interface.id!r} has no method {name!r}"
            )
        sets[name] |= {v.strip() for v in values.split(",") if v.strip()}
    return normalize_vector(
        interface, [sets[m.name] for m in interface.methods]
    )


def _parse_weights(path: str) -> WeightMap:
    """Weight files: one `interface.method.value = weight` per line;
    blank lines and #-comments ignored."""
    weights: dict[tuple[str, str, str], float] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        parts = key.strip().split(".")
        if not sep or len(parts) != 3:
            raise InvalidParams(
                f"{path}:{lineno}: expected 'interface.method.value = weight'"
            )
        try:
            weight = float(value.strip())
        except ValueError:
            raise InvalidParams(
                f"{path}:{lineno}: weight {value.strip()!r} is not a number"
            ) from None
        weights[tuple(parts)] = weight
    return WeightMap(weights)


def _format_set(component: frozenset[str]) -> str:
    return "{" + ",".join((BOT, *sorted(component - {BOT}))) + "}"


def _format_vector(interface: Interface, v: AvailabilityVector) -> str:
    return " ".join(
        f"{m.name}:{_format_set(c)}" for m, c in zip(interface.methods, v.components)
    )


def _vector_json(interface: Interface, v: AvailabilityVector) -> dict:
    return {
        m.name: [BOT, *sorted(c - {BOT})]
        for m, c in zip(interface.methods, v.components)
    }


def _emit(report: dict, text: str, fmt: str, out) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=2), file=out)
    else:
        print(text, file=out)


def _cmd_validate(args, out) -> int:
    graph = _load_graph(args.graph)
    report = {
        "interfaces": len(graph.interfaces),
        "adapters": len(graph.adapters),
        "valid": True,
    }
    _emit(
        report,
        f"OK: {len(graph.interfaces)} interfaces, {len(graph.adapters)} adapters",
        args.format,
        out,
    )
    return 0


def _cmd_eval(args, out) -> int:
    graph = _load_graph(args.graph)
    chain = [a for a in args.chain.split(",") if a]
    if not chain:
        raise InvalidParams("--chain must list at least one adapter id")
    for adapter_id in chain:
        if adapter_id not in graph.adapters:
            raise InvalidParams(f"graph has no adapter {adapter_id!r}")
    source = graph.adapters[chain[0]].source
    pipeline = chain_pipeline(graph, chain, source.id)
    p = _parse_vector(source, args.vector)
    q = apply_pipeline(pipeline, p)
    target = pipeline.target
    _emit(
        {
            "chain": chain,
            "source": source.id,
            "target": target.id,
            "input": _vector_json(source, p),
            "output": _vector_json(target, q),
        },
        _format_vector(target, q),
        args.format,
        out,
    )
    return 0


def _cmd_chain(args, out) -> int:
    graph = _load_graph(args.graph)
    if args.sources:
        sources = [s for s in args.sources.split(",") if s]
    elif args.source:
        sources = [args.source]
    else:
        raise InvalidParams("one of --source or --sources is required")
    weights = _parse_weights(args.weights) if args.weights else WeightMap()
    search = oracle_optimal if args.oracle else greedy_chain
    result = search(graph, sources, args.target, weights)
    target = graph.interfaces[result.target]
    text = "\n".join(
        [
            "chain: " + (" -> ".join(result.chain) if result.chain else "(identity)"),
            f"source: {result.source}",
            f"target: {result.target}",
            "final: " + _format_vector(target, result.final_vector),
            f"score: {result.score}",
        ]
    )
    _emit(
        {
            "chain": list(result.chain),
            "source": result.source,
            "target": result.target,
            "final": _vector_json(target, result.final_vector),
            "score": result.score,
            "method": "oracle" if args.oracle else "greedy",
        },
        text,
        args.format,
        out,
    )
    return 0


def _cmd_enumerate(args, out) -> int:
    graph = _load_graph(args.graph)
    chains = enumerate_chains(graph, args.source, args.target)
    text = "\n".join(
        " -> ".join(c) if c else "(identity)" for c in chains
    ) or "(no chains)"
    _emit(
        {
            "source": args.source,
            "target": args.target,
            "chains": [list(c) for c in chains],
        },
        text,
        args.format,
        out,
    )
    return 0


def _cmd_stats(args, out) -> int:
    graph = _load_graph(args.graph)
    rows = []
    for adapter_id in sorted(graph.adapters):
        dep, adap = function_sizes(graph.adapters[adapter_id])
        rows.append((adapter_id, dep, adap))
    width = max((len(r[0]) for r in rows), default=7)
    lines = [f"{'adapter':<{width}}  dependency_size  adaptation_size"]
    for adapter_id, dep, adap in rows:
        lines.append(f"{adapter_id:<{width}}  {dep:>15}  {adap:>15}")
    _emit(
        {
            "adapters": [
                {"id": r[0], "dependency_size": r[1], "adaptation_size": r[2]}
                for r in rows
            ]
        },
        "\n".join(lines),
        args.format,
        out,
    )
    return 0


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise InvalidParams(f"range {text!r} must be N or LO:HI") from None


def _cmd_gen(args, out) -> int:
    params = GenParams(
        interface_count=args.interfaces,
        methods_per_interface=_parse_range(args.methods),
        values_per_method=_parse_range(args.values),
        adapter_count=args.adapters,
        entry_density=args.density,
        seed=args.seed,
    )
    graph, source, target = random_instance(params)
    text = serialize_graph(graph)
    if args.output:
        Path(args.output).write_text(text)
        print(f"wrote {args.output} (source {source}, target {target})", file=out)
    else:
        out.write(text)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adaptchain",
        description="Analyze loss in lossy interface adapter chains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, graph: bool = True) -> None:
        if graph:
            p.add_argument(
                "--graph", required=True,
                help="graph document path or bundled fixture name",
            )
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("validate", help="parse and validate a graph document")
    common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("eval", help="apply an adapter chain to a vector")
    common(p)
    p.add_argument("--chain", required=True, help="comma-separated adapter ids")
    p.add_argument(
        "--vector", required=True,
        help='availability vector, e.g. "playVideo:MOV,MKV;playAudio:MP3"',
    )
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("chain", help="find the loss-optimal chain")
    common(p)
    p.add_argument("--source", help="single source interface id")
    p.add_argument("--sources", help="comma-separated source interface ids")
    p.add_argument("--target", required=True)
    p.add_argument("--oracle", action="store_true",
                   help="brute-force search instead of greedy")
    p.add_argument("--weights", help="weight file (interface.method.value = w)")
    p.set_defaults(func=_cmd_chain)

    p = sub.add_parser("enumerate", help="list all acyclic chains")
    common(p)
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("stats", help="per-adapter function sizes")
    common(p)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("gen", help="generate a seeded random instance")
    common(p, graph=False)
    p.add_argument("--interfaces", type=int, required=True)
    p.add_argument("--methods", default="1:2", help="methods per interface (LO:HI)")
    p.add_argument("--values", default="1:2", help="non-bot values per method (LO:HI)")
    p.add_argument("--adapters", type=int, required=True)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="write the graph document here")
    p.set_defaults(func=_cmd_gen)

    return parser


def run_cli(argv: list[str], out=None, err=None) -> int:
    """Dispatch a command line; returns the process exit status."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args, out)
    except AdapterChainError as exc:
        print(f"error: {exc}", file=err)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=err)
        return 1


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
