"""Command-line front end.

Subcommands: compile (offline phase), count and facets (online phase on a
compiled artifact), oracle (brute-force reference), serve (HTTP facade).
Exit codes: 0 success, 1 usage, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .artifact import (ArtifactError, compile_program, load_artifact,
                       save_artifact)
from .compiler import DEFAULT_NODE_CAP
from .depgraph import DEFAULT_CYCLE_CAP, CycleBudgetError, export_catalog
from .inclexcl import DEFAULT_TERM_CAP, RefinementBudgetError
from .navigation import count_query, facet_report, trace_json
from .nnf import NnfFormatError, ResourceBudgetError
from .oracle import SizeGuardError, count_under
from .program import ParseError, parse_assumption_names, parse_program

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="anscount",
                     description="Count answer sets under assumptions on "
                                 "compressed counting graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_compile = sub.add_parser("compile", help="compile a program into a "
                                               ".ccg artifact")
    p_compile.add_argument("program", help="ground normal program (.lp)")
    p_compile.add_argument("-o", "--output", help="artifact path "
                                                  "(default: <program>.ccg)")
    p_compile.add_argument("--cycles", choices=("simple", "exhaustive"),
                           default="simple")
    p_compile.add_argument("--normalize", choices=("full", "minimal"),
                           default="full",
                           help="support-rule splitting: full guarantees "
                                "exact refinement, minimal splits only "
                                "multi-literal bodies")
    p_compile.add_argument("--compiler", default="internal",
                           help="'internal' or 'nnf-file=<path>' with "
                                "pre-compiled output in the nnf exchange format")
    p_compile.add_argument("--var-order", choices=("index", "mindeg"),
                           default="index")
    p_compile.add_argument("--budget-nodes", type=int, default=DEFAULT_NODE_CAP)
    p_compile.add_argument("--budget-cycles", type=int, default=DEFAULT_CYCLE_CAP)
    p_compile.add_argument("--emit-cnf", metavar="PATH",
                           help="also write the completion as DIMACS CNF "
                                "plus a .map variable sidecar")
    p_compile.add_argument("--json", action="store_true")

    for name, helptext in (("count", "count under assumptions"),
                           ("facets", "per-atom counts for navigation")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("artifact", help="compiled .ccg artifact")
        p.add_argument("--assume", default="",
                       help="comma list of atom names, '-' prefix for negative")
        p.add_argument("--depth", type=int, default=None,
                       help="alternation depth (default: full)")
        p.add_argument("--program", help="verify the artifact against this "
                                         "program text")
        p.add_argument("--budget-terms", type=int, default=DEFAULT_TERM_CAP)
        p.add_argument("--json", action="store_true")

    p_oracle = sub.add_parser("oracle", help="brute-force reference count")
    p_oracle.add_argument("program")
    p_oracle.add_argument("--assume", default="")
    p_oracle.add_argument("--semantics", choices=("answer", "supported"),
                          default="answer")
    p_oracle.add_argument("--json", action="store_true")

    p_serve = sub.add_parser("serve", help="run the navigation HTTP service")
    p_serve.add_argument("--host", default=None)
    p_serve.add_argument("--port", type=int, default=None)
    return parser


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _cmd_compile(args) -> int:
    text = _read(args.program)
    external = None
    if args.compiler != "internal":
        if not args.compiler.startswith("nnf-file="):
            print("--compiler must be 'internal' or 'nnf-file=<path>'",
                  file=sys.stderr)
            return EXIT_USAGE
        external = _read(args.compiler.split("=", 1)[1])
    if args.emit_cnf:
        from .completion import build_completion, to_dimacs, to_varmap
        from .depgraph import normalize_supports

        normalized, _ = normalize_supports(parse_program(text), args.normalize)
        cnf = build_completion(normalized)
        with open(args.emit_cnf, "w", encoding="utf-8") as handle:
            handle.write(to_dimacs(cnf))
        with open(args.emit_cnf + ".map", "w", encoding="utf-8") as handle:
            handle.write(to_varmap(cnf, normalized))
    artifact = compile_program(
        text, cycle_mode=args.cycles, normalization=args.normalize,
        order=args.var_order, node_cap=args.budget_nodes,
        cycle_cap=args.budget_cycles, external_nnf=external)
    output = args.output or (args.program.rsplit(".", 1)[0] + ".ccg")
    save_artifact(artifact, output)

    stats = {
        "artifact": output,
        "digest": artifact.digest,
        "atoms": artifact.original_atom_count,
        "rules": artifact.original_rule_count,
        "normalization_added": len(artifact.normalization_added),
        "tight": artifact.tight,
        "cycle_mode": artifact.catalog.mode,
        "cycles": len(artifact.catalog),
        "nnf_nodes": artifact.nnf_size.node_count,
        "nnf_edges": artifact.nnf_size.edge_count,
        "ccg_nodes": artifact.compressed_size.node_count,
        "ccg_edges": artifact.compressed_size.edge_count,
        "supported_count": str(artifact.supported_count),
        "timings": {k: round(v, 6) for k, v in artifact.timings.items()},
    }
    if args.json:
        print(json.dumps(stats))
    else:
        for key, value in stats.items():
            print(f"{key}: {value}")
        print(export_catalog(artifact.catalog, artifact.program), end="")
    return EXIT_OK


def _cmd_count(args) -> int:
    artifact = load_artifact(args.artifact,
                             _read(args.program) if args.program else None)
    assumptions = artifact.parse_assumptions(args.assume)
    trace = count_query(artifact, assumptions, args.depth,
                        term_cap=args.budget_terms)
    payload = trace_json(trace)
    payload["timings"] = artifact.timings
    if args.json:
        print(json.dumps(payload))
    else:
        print(f"{trace.count} ({trace.bound_kind})")
        print(trace.export(), end="")
    return EXIT_OK


def _cmd_facets(args) -> int:
    artifact = load_artifact(args.artifact,
                             _read(args.program) if args.program else None)
    assumptions = artifact.parse_assumptions(args.assume)
    report = facet_report(artifact, assumptions, args.depth,
                          term_cap=args.budget_terms)
    if args.json:
        print(json.dumps({
            "depth": report.depth,
            "facets": [{
                "atom": e.atom,
                "count_true": str(e.count_true),
                "count_false": str(e.count_false),
                "bound_true": e.bound_true,
                "bound_false": e.bound_false,
                "ratio_true": e.ratio_true,
            } for e in report.entries],
        }))
    else:
        for e in report.entries:
            ratio = e.ratio_true if e.ratio_true is not None else "-"
            print(f"{e.atom}: true={e.count_true} ({e.bound_true}) "
                  f"false={e.count_false} ({e.bound_false}) ratio={ratio}")
    return EXIT_OK


def _cmd_oracle(args) -> int:
    program = parse_program(_read(args.program))
    assumptions = parse_assumption_names(args.assume, program) \
        if args.assume else None
    from .program import AssumptionSet

    count = count_under(program, assumptions or AssumptionSet(),
                        args.semantics)
    if args.json:
        print(json.dumps({"count": str(count), "semantics": args.semantics}))
    else:
        print(count)
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app, service_settings

    settings = service_settings()
    host = args.host or settings["host"]
    port = args.port if args.port is not None else settings["port"]
    uvicorn.run(create_app(), host=host, port=port)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    handlers = {
        "compile": _cmd_compile,
        "count": _cmd_count,
        "facets": _cmd_facets,
        "oracle": _cmd_oracle,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except (CycleBudgetError, ResourceBudgetError, RefinementBudgetError) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, NnfFormatError, ArtifactError, SizeGuardError,
            KeyError, FileNotFoundError, ValueError) as exc:
        message = exc.args[0] if exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
