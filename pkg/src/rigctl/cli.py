"""``rigctl`` command-line interface.

Exit codes: 0 success, 1 property violation or a failed sparsity assertion,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from collections.abc import Sequence

from . import bounds, covers, rigidity, sparsity, suite
from .errors import CapabilityError, GraphInputError, InconsistencyError, PropertyViolation
from .graph import GENERATORS, Graph, canonical, complete_graph, parse_graph, random_graph, serialize_graph
from .rng import Xoshiro256
from .sparsity import SparsityParams, params_for

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, dim: bool = True, graph_input: bool = True) -> None:
    if dim:
        p.add_argument("--dim", "-d", type=int, default=3, help="dimension d (1..8)")
    if graph_input:
        p.add_argument("--input", "-i", default="-", help="graph file (edge list or JSON); '-' for stdin")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=rigidity.DEFAULT_TRIALS)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--backend", choices=["flow", "brute", "both"], default="flow")
    p.add_argument("--format", choices=["json", "text", "dot"], default="json")
    p.add_argument("--threads", type=int, default=int(os.environ.get("RIGCTL_THREADS", "1")))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rigctl", description="d-sparse subgraphs and generic rigidity ranks")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="emit an example graph")
    p.add_argument("name", choices=sorted(GENERATORS) + ["complete", "random"])
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--density", type=float, default=0.5)
    _common(p, dim=False, graph_input=False)

    p = sub.add_parser("sparse", help="d-sparsity verdict (exit 1 when not sparse)")
    _common(p)

    p = sub.add_parser("maximal", help="greedy maximal d-sparse subgraph")
    p.add_argument("--order", choices=["given", "random"], default="random")
    _common(p)

    p = sub.add_parser("components", help="d-critical components of a d-sparse graph")
    p.add_argument("--of-maximal", action="store_true", help="use a greedy maximal subgraph of the input")
    p.add_argument("--order", choices=["given", "random"], default="random")
    _common(p)

    p = sub.add_parser("cover", help="H-critical cover, hinges, aggregates and cover checks")
    p.add_argument("--order", choices=["given", "random"], default="random")
    _common(p)

    p = sub.add_parser("rank", help="generic rigidity-matrix rank")
    _common(p)

    p = sub.add_parser("independent", help="independence of an edge subset in the rigidity matroid")
    p.add_argument("--edges", required=True, help="edge subset, e.g. '0-1,1-2'")
    _common(p)

    p = sub.add_parser("sd", help="estimate or compute s_d")
    p.add_argument("--mode", choices=["heuristic", "exhaustive"], default="heuristic")
    _common(p)

    p = sub.add_parser("sdstar", help="search small supergraphs for s_d*")
    p.add_argument("--budget", type=int, default=1)
    _common(p)

    p = sub.add_parser("verify", help="property checks")
    p.add_argument("what", choices=["theorem4", "lemmas", "maxwell", "laman", "flower", "hunt", "all"])
    p.add_argument("--n-max", type=int, default=12, help="largest graph for 'hunt'")
    p.add_argument("--order", choices=["given", "random"], default="random")
    p.add_argument("--criteria", default="", help="comma-separated criterion ids for 'all'")
    _common(p)
    return parser


def _read_graph(path: str) -> Graph:
    if path == "-":
        data = sys.stdin.buffer.read()
    else:
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise GraphInputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(data)


def _parse_edge_arg(text: str) -> list[tuple[int, int]]:
    out = []
    for tok in filter(None, (t.strip() for t in text.split(","))):
        parts = tok.replace(":", "-").split("-")
        if len(parts) != 2:
            raise GraphInputError(f"--edges: cannot parse {tok!r}, expected 'u-v'")
        try:
            out.append(canonical(int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphInputError(f"--edges: cannot parse {tok!r}, expected 'u-v'") from None
    return out


def _render(obj: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, separators=(",", ":"))
    if fmt == "text":
        return "\n".join(f"{k}: {json.dumps(v, separators=(',', ':'))}" for k, v in obj.items())
    raise GraphInputError("dot output is only available for 'gen'")


def _edges_json(edges) -> list[list[int]]:
    return [list(e) for e in edges]


def _cmd_gen(args) -> tuple[bytes, int]:
    if args.name == "complete":
        g = complete_graph(args.n)
    elif args.name == "random":
        g = random_graph(args.n, args.density, args.seed)
    else:
        g = GENERATORS[args.name]()
    fmt = {"json": "json", "text": "edge-list", "dot": "dot"}[args.format]
    return serialize_graph(g, fmt), EXIT_OK


def _lemmas(g: Graph, p: SparsityParams, args) -> dict:
    res = sparsity.maximal_sparse_subgraph(g, p, args.order, args.seed)
    h = res.subgraph()
    comps = sparsity.critical_components(h, p, args.backend if args.backend != "both" else "flow")
    g_cover = covers.critical_cover(g, h, p, comps)
    h_cover = covers.critical_cover(h, h, p, comps)
    reports = [
        sparsity.check_component_intersections(comps, h, p),
        covers.check_cover_structure(g_cover, p),
        covers.check_prefixedhinge(h, p, h_cover),
        covers.check_fixedhinge(h, p, h_cover),
        covers.check_boundedhinges(h, p, h_cover),
    ]
    return {"seed": args.seed, "kept": res.size, "reports": reports, "pass": all(r["pass"] for r in reports)}


def _maxwell(g: Graph, p: SparsityParams, args) -> dict:
    rng = Xoshiro256(args.seed)
    results = []
    for i in range(args.samples or 20):
        edges = list(g.edges)
        rng.shuffle(edges)
        subset = edges[: rng.below(len(edges) + 1)]
        rep = rigidity.maxwell_check(g, subset, p, args.trials, args.seed + i)
        results.append({"edges": _edges_json(sorted(subset)), **{k: rep[k] for k in ("independent", "sparse", "pass")}})
    return {"seed": args.seed, "results": results, "pass": all(r["pass"] for r in results)}


def _laman(g: Graph, args) -> dict:
    p = SparsityParams(2)
    rank = rigidity.generic_rank(g, p, args.trials, args.seed).rank
    sizes = [
        sparsity.maximal_sparse_subgraph(g, p, "random", args.seed + i).size for i in range(args.samples or 10)
    ]
    return {"seed": args.seed, "rank": rank, "samples": sizes, "pass": all(s == rank for s in sizes)}


def _cmd_verify(args) -> tuple[dict, int]:
    if args.what == "all":
        only = [int(x) for x in args.criteria.split(",") if x.strip()] or None
        payload, timings = suite.run_suite(args.seed, only)
        for cid, secs in timings.items():
            print(f"criterion {cid}: {secs:.2f}s", file=sys.stderr)
        return payload, EXIT_OK if payload["pass"] else EXIT_VIOLATION
    if args.what == "hunt":
        if not 6 <= args.dim <= 8:
            raise GraphInputError("hunt explores d in 6..8")
        params_for(args.dim)
        rep = bounds.counterexample_hunt(args.dim, args.n_max, args.samples or 100, args.seed)
        return rep, EXIT_OK
    if args.what == "flower":
        rep = bounds.flower_rank_growth_check(SparsityParams(3), args.samples or 5, args.seed, trials=args.trials)
        return rep, EXIT_OK if rep["pass"] else EXIT_VIOLATION
    g = _read_graph(args.input)
    if args.what == "laman":
        rep = _laman(g, args)
        return rep, EXIT_OK if rep["pass"] else EXIT_VIOLATION
    p = params_for(args.dim)
    if args.what == "theorem4":
        report = bounds.upper_bound_check(g, p, args.samples or 5, args.seed, args.trials)
        out = {**report.to_json(), "seed": args.seed}
        return out, EXIT_VIOLATION if report.violations else EXIT_OK
    rep = _lemmas(g, p, args) if args.what == "lemmas" else _maxwell(g, p, args)
    return rep, EXIT_OK if rep["pass"] else EXIT_VIOLATION


def _dispatch(args) -> tuple[bytes | dict, int]:
    if args.threads < 1:
        raise GraphInputError("--threads must be at least 1")
    if args.trials < 1:
        raise GraphInputError("--trials must be at least 1")
    if args.command == "gen":
        return _cmd_gen(args)
    if args.command == "verify":
        return _cmd_verify(args)
    g = _read_graph(args.input)
    p = params_for(args.dim)
    if args.command == "sparse":
        v = sparsity.is_d_sparse(g, p, args.backend)
        return v.to_json(), EXIT_OK if v.is_sparse else EXIT_VIOLATION
    if args.command == "maximal":
        res = sparsity.maximal_sparse_subgraph(g, p, args.order, args.seed)
        return {
            "size": res.size,
            "kept": _edges_json(res.kept_edges),
            "rejected": _edges_json(res.rejected_edges),
            "seed": res.seed,
        }, EXIT_OK
    if args.command == "components":
        h = sparsity.maximal_sparse_subgraph(g, p, args.order, args.seed).subgraph() if args.of_maximal else g
        backend = "flow" if args.backend == "both" else args.backend
        comps = sparsity.critical_components(h, p, backend)
        return {"components": [c.to_json() for c in comps]}, EXIT_OK
    if args.command == "cover":
        res = sparsity.maximal_sparse_subgraph(g, p, args.order, args.seed)
        c = covers.critical_cover(g, res, p)
        rep = covers.cover_report(c, p)
        return rep, EXIT_OK if all(x["pass"] for x in rep["checks"]) else EXIT_VIOLATION
    if args.command == "rank":
        return rigidity.generic_rank(g, p, args.trials, args.seed).to_json(), EXIT_OK
    if args.command == "independent":
        f = _parse_edge_arg(args.edges)
        ok = rigidity.is_independent(g, f, p, args.trials, args.seed)
        return {"independent": ok, "edges": _edges_json(f)}, EXIT_OK
    if args.command == "sd":
        value, witness = bounds.s_d_estimate(g, p, args.mode, args.samples or bounds.DEFAULT_SAMPLES, args.seed)
        return {"value": value, "mode": args.mode, "witness": _edges_json(sorted(witness.kept_edges)), "seed": args.seed}, EXIT_OK
    if args.command == "sdstar":
        value, added = bounds.s_d_star_search(g, p, args.budget, args.samples or 20, args.seed, args.trials)
        return {"value": value, "added": _edges_json(added), "seed": args.seed}, EXIT_OK
    raise GraphInputError(f"unknown command {args.command!r}")


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    out = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "dot" and args.command != "gen":
        print("rigctl: error: --format dot is only available for 'gen'", file=sys.stderr)
        return EXIT_USAGE
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = lambda msg, *a, **k: print(f"rigctl: warning: {msg}", file=sys.stderr)
            payload, code = _dispatch(args)
    except (GraphInputError, CapabilityError) as exc:
        print(f"rigctl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistencyError as exc:
        print(f"rigctl: internal inconsistency: {exc}", file=sys.stderr)
        dump = {"error": "inconsistency", "command": args.command, "dim": getattr(args, "dim", None), "detail": str(exc)}
        print(json.dumps(dump, separators=(",", ":")), file=out)
        return EXIT_VIOLATION
    except PropertyViolation as exc:
        print(f"rigctl: property violation: {exc}", file=sys.stderr)
        if exc.report:
            print(json.dumps(exc.report, separators=(",", ":")), file=out)
        return EXIT_VIOLATION
    if isinstance(payload, bytes):
        out.write(payload.decode())
    else:
        out.write(_render(payload, args.format) + "\n")
    out.flush()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
