"""Command-line entry point.

Every command validates its inputs before computing.  Exit codes: 0 on
success, 1 when the mathematics rejects a well-formed request (not
tilting, no complement in the window, unreachable), 2 on usage errors.
Machine mode (--json) emits exactly one JSON document on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from . import dynkin as dk
from . import graph as gr
from . import lattice as lat
from . import rigid as rg
from . import seeds as sd
from . import sheaves as sh
from . import verify as vf


class UsageError(Exception):
    """Malformed request: bad literal, missing flag, unknown name."""


class DomainError(Exception):
    """Well-formed request rejected by the mathematics."""


_DOMAIN = (
    rg.NotTilting,
    rg.MixedBackend,
    rg.ComplementNotInWindow,
    gr.NotReachable,
    gr.NotFoundWithinBudget,
    dk.NotFiniteType,
    lat.WeightMismatch,
)


def _backend(args: argparse.Namespace) -> rg.Backend:
    weights = getattr(args, "weights", None)
    quiver = getattr(args, "quiver", None)
    if bool(weights) == bool(quiver):
        raise UsageError("give exactly one of --weights or --quiver")
    if weights:
        return rg.CohBackend(lat.WeightType.parse(weights))
    return rg.DynkinBackend(dk.parse_quiver(quiver))


def _window(args: argparse.Namespace) -> rg.SearchWindow | None:
    text = getattr(args, "window", None)
    return rg.SearchWindow.parse(text) if text else None


def _start_set(backend: rg.Backend, text: str) -> rg.RigidSet:
    if text.strip() == "canonical":
        return rg.canonical_tilting(backend)
    return rg.parse_rigid_set(backend, text)


def _emit(args: argparse.Namespace, doc: dict, human: str) -> None:
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(human)


def _cmd_classify(args: argparse.Namespace) -> int:
    w = lat.WeightType.parse(args.weights)
    g = lat.genus(w)
    rank = lat.rank_g0(w)
    _emit(
        args,
        {"weights": str(w), "kind": g.kind, "genus": str(g.value), "rank_g0": rank},
        f"{g.kind}, g={g.value}, rank G0 = {rank}",
    )
    return 0


def _cmd_hom(args: argparse.Namespace) -> int:
    backend = _backend(args)
    if not isinstance(backend, rg.CohBackend):
        raise UsageError("hom is defined for --weights backends only")
    dim = sh.hom_dim(backend.parse(args.a), backend.parse(args.b))
    _emit(args, {"dim": dim}, str(dim))
    return 0


def _cmd_ext(args: argparse.Namespace) -> int:
    backend = _backend(args)
    if isinstance(backend, rg.CohBackend):
        dim = sh.ext1_dim(backend.parse(args.a), backend.parse(args.b))
    else:
        dim = dk.ext1_c(backend.quiver, backend.parse(args.a), backend.parse(args.b))
    _emit(args, {"dim": dim}, str(dim))
    return 0


def _cmd_tilt_check(args: argparse.Namespace) -> int:
    backend = _backend(args)
    s = _start_set(backend, args.set)
    rigid = s.is_rigid_set()
    tilting = s.is_tilting()
    verdict = "tilting" if tilting else ("rigid, not tilting" if rigid else "not rigid")
    _emit(
        args,
        {"size": len(s.elements), "rank": backend.rank, "rigid": rigid, "tilting": tilting},
        f"{verdict} ({len(s.elements)} of {backend.rank} summands)",
    )
    return 0


def _cmd_mutate(args: argparse.Namespace) -> int:
    backend = _backend(args)
    s = _start_set(backend, args.set)
    if not 0 <= args.index < len(s.elements):
        raise UsageError(f"index {args.index} out of range for {len(s.elements)} summands")
    out = str(s.elements[args.index])
    result = rg.mutate(s, args.index, window=_window(args))
    into = next(str(e) for e in result.elements if e not in s.elements)
    _emit(
        args,
        {"key": result.key, "index": args.index, "out": out, "into": into},
        f"mutated index {args.index}: {out} -> {into}\n{result.key}",
    )
    return 0


def _graph_output(args: argparse.Namespace, g: gr.ExchangeGraph) -> int:
    fmt = getattr(args, "format", None)
    if fmt == "json":
        print(g.to_json())
    elif fmt == "dot":
        print(g.to_dot())
    else:
        _emit(
            args,
            {"nodes": len(g.nodes), "edges": len(g.edges), "frontier": len(g.frontier)},
            f"{len(g.nodes)} nodes, {len(g.edges)} edges, frontier {len(g.frontier)}",
        )
    return 0


def _cmd_explore(args: argparse.Namespace) -> int:
    backend = _backend(args)
    start = _start_set(backend, args.start)
    g = gr.explore(start, budget=args.budget, window=_window(args), max_depth=args.depth)
    return _graph_output(args, g)


def _cmd_path(args: argparse.Namespace) -> int:
    backend = _backend(args)
    a = _start_set(backend, args.a)
    b = _start_set(backend, args.b)
    steps = gr.find_path(a, b, window=_window(args), budget=args.budget)
    lines = [f"{len(steps)} steps"]
    lines += [f"  [{s.index}] {s.out} -> {s.into}" for s in steps]
    _emit(
        args,
        {"steps": [{"index": s.index, "out": s.out, "into": s.into} for s in steps]},
        "\n".join(lines),
    )
    return 0


def _cmd_restrict(args: argparse.Namespace) -> int:
    backend = _backend(args)
    start = _start_set(backend, args.start)
    g = gr.explore(start, budget=args.budget, window=_window(args))
    try:
        h = gr.restrict(g, backend.parse(args.pinned))
    except ValueError as exc:  # pinned element exists but is not exceptional
        raise DomainError(str(exc)) from exc
    return _graph_output(args, h)


def _cmd_reach(args: argparse.Namespace) -> int:
    backend = _backend(args)
    try:
        cert = gr.reach(
            backend,
            backend.parse(args.m),
            backend.parse(args.n),
            window=_window(args),
            budget=args.budget,
        )
    except ValueError as exc:  # endpoint is not exceptional
        raise DomainError(str(exc)) from exc
    if args.json:
        print(cert.to_json())
    else:
        print(" -> ".join(str(e) for e in cert.chain))
    return 0


def _cmd_seeds(args: argparse.Namespace) -> int:
    if bool(args.quiver) == bool(args.matrix):
        raise UsageError("give exactly one of --quiver or --matrix")
    if args.quiver:
        matrix = sd.ExchangeMatrix.from_quiver(dk.parse_quiver(args.quiver))
    else:
        matrix = sd.ExchangeMatrix.parse(args.matrix)
    g = sd.seed_explore(sd.initial_seed(matrix), budget=args.budget)
    variables = sorted(str(v) for v in sd.cluster_variables(g))
    _emit(
        args,
        {
            "seeds": len(g.nodes),
            "edges": len(g.edges),
            "frontier": len(g.frontier),
            "variables": variables,
        },
        f"{len(g.nodes)} seeds, {len(g.edges)} edges, "
        f"{len(variables)} cluster variables, frontier {len(g.frontier)}",
    )
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    names = list(vf.SUITE_NAMES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in vf.SUITE_NAMES:
            raise UsageError(f"unknown suite {name!r}; choose from "
                             + ", ".join(vf.SUITE_NAMES) + ", all")
    results = []
    for name in names:
        r = vf.run_suite(name, seed=args.seed)
        results.append(r)
        if not args.json:
            print(r.line(), flush=True)
    if args.json:
        doc = {
            "ok": all(r.ok for r in results),
            "results": [
                {"name": r.name, "ok": r.ok, "detail": r.detail} for r in results
            ],
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    return 0 if all(r.ok for r in results) else 1


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def _add_backend_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--weights", help='weight type literal, e.g. "(2,3,5)"')
    p.add_argument("--quiver", help='quiver literal or preset, e.g. "A3" or "3; 1->2; 2->3"')


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit one JSON document on stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tiltkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="genus class and rank of a weight type")
    p.add_argument("weights", help='weight type literal, e.g. "(2,3,6)"')
    _add_common(p)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("hom", help="dim Hom(a, b) over a weighted projective line")
    p.add_argument("a")
    p.add_argument("b")
    _add_backend_flags(p)
    _add_common(p)
    p.set_defaults(fn=_cmd_hom)

    p = sub.add_parser("ext", help="dim Ext1(a, b) over either backend")
    p.add_argument("a")
    p.add_argument("b")
    _add_backend_flags(p)
    _add_common(p)
    p.set_defaults(fn=_cmd_ext)

    p = sub.add_parser("tilt-check", help="is the set rigid / tilting")
    p.add_argument("set", help='element literals joined by " | ", or "canonical"')
    _add_backend_flags(p)
    _add_common(p)
    p.set_defaults(fn=_cmd_tilt_check)

    p = sub.add_parser("mutate", help="exchange one summand for the unique other one")
    p.add_argument("set", help='set literal or "canonical"')
    p.add_argument("index", type=int, help="0-based summand position")
    _add_backend_flags(p)
    p.add_argument("--window", help='line-bundle degree window "lo:hi" (use --window=-4:6)')
    _add_common(p)
    p.set_defaults(fn=_cmd_mutate)

    p = sub.add_parser("explore", help="breadth-first ball of the exchange graph")
    p.add_argument("start", help='set literal or "canonical"')
    _add_backend_flags(p)
    p.add_argument("--budget", type=int, default=10000, help="stored-node cap")
    p.add_argument("--depth", type=int, default=None, help="maximum mutation depth")
    p.add_argument("--window", help='degree window "lo:hi"')
    p.add_argument("--format", choices=("dot", "json"), help="full graph export")
    _add_common(p)
    p.set_defaults(fn=_cmd_explore)

    p = sub.add_parser("path", help="mutation path between two tilting sets")
    p.add_argument("a", help='set literal or "canonical"')
    p.add_argument("b", help='set literal or "canonical"')
    _add_backend_flags(p)
    p.add_argument("--budget", type=int, default=50000, help="expansion cap")
    p.add_argument("--window", help='degree window "lo:hi"')
    _add_common(p)
    p.set_defaults(fn=_cmd_path)

    p = sub.add_parser("restrict", help="subgraph of sets containing a pinned summand")
    p.add_argument("pinned", help="element literal to pin")
    p.add_argument("--start", default="canonical", help='set literal (default "canonical")')
    _add_backend_flags(p)
    p.add_argument("--budget", type=int, default=10000)
    p.add_argument("--window", help='degree window "lo:hi"')
    p.add_argument("--format", choices=("dot", "json"), help="full graph export")
    _add_common(p)
    p.set_defaults(fn=_cmd_restrict)

    p = sub.add_parser("reach", help="rigidity chain certificate between exceptionals")
    p.add_argument("m")
    p.add_argument("n")
    _add_backend_flags(p)
    p.add_argument("--budget", type=int, default=10000)
    p.add_argument("--window", help='degree window "lo:hi"')
    _add_common(p)
    p.set_defaults(fn=_cmd_reach)

    p = sub.add_parser("seeds", help="seed mutation closure and cluster variables")
    p.add_argument("--quiver", help="quiver literal or preset")
    p.add_argument("--matrix", help='skew-symmetric rows, e.g. "0,1;-1,0"')
    p.add_argument("--budget", type=int, default=10000)
    _add_common(p)
    p.set_defaults(fn=_cmd_seeds)

    p = sub.add_parser("verify", help="run one named verification suite, or all")
    p.add_argument("--suite", required=True, help='suite name or "all"')
    p.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    _add_common(p)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP API (and UI when built)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fn: Callable[[argparse.Namespace], int] = args.fn
    try:
        return fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except _DOMAIN as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:  # malformed literals surface as usage errors
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
