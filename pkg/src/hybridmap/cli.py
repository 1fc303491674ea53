"""Command-line interface: ``hybridmap {map,analyze,sweep,route,verify}``.

Exit codes: 0 success, 1 invalid input, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bench, mappings, routing, verify
from .errors import HybridMapError
from .lattice import LatticeSpec, build_layout

EXIT_OK, EXIT_INVALID, EXIT_FAILED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: cli: {message}\n")


class UsageError(HybridMapError, ValueError):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _single(values: list[int] | None, flag: str) -> int | None:
    if values is None:
        return None
    if len(values) != 1:
        raise UsageError(f"cli: {flag} takes a single value for this command")
    return values[0]


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"cli: {flag} is required for this command")
    return value


def _spec(args) -> tuple[str, int, int | None]:
    kind = _single(args.mapping, "--mapping") if isinstance(args.mapping, list) else args.mapping
    N = _need(_single(args.N, "--N"), "--N")
    n = _single(args.n, "--n")
    if kind in ("hybrid", "hybridplus"):
        _need(n, "--n")
    return kind, N, n


# commands ---------------------------------------------------------------


def _pairs(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.split(","):
        try:
            i, j = (int(v) for v in item.split("-"))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected pairs like 6-27,0-1, got {text!r}")
        out.append((i, j))
    return out


def cmd_map(args) -> int:
    kind, N, n = _spec(args)
    enc = mappings.make_encoder(kind, N, n)
    if args.pairs:
        terms = [((i, j), enc.hopping(i, j)) for i, j in args.pairs]
    else:
        terms = enc.hamiltonian()
    if args.format == "json":
        data = [
            {"edge": list(e),
             "terms": [{"coeff": [c.real, c.imag], "string": ps.to_text()} for c, ps in op]}
            for e, op in terms
        ]
        _emit(json.dumps({"mapping": kind, "N": N, "n": enc.spec.n,
                          "n_qubits": enc.n_qubits, "edges": data}, indent=2) + "\n", args.out)
    else:
        _emit(mappings.dump_operators(terms), args.out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    kind, N, n = _spec(args)
    row = bench.compute_row(kind, N, n, args.connectivity, args.exact_limit)
    if args.format == "csv":
        _emit(bench.rows_to_csv([row]), args.out)
    elif args.format == "json":
        _emit(bench.rows_to_json([row], indent=2) + "\n", args.out)
    else:
        lines = [f"mapping: {row.mapping}", f"N: {row.N}", f"n: {row.n}",
                 f"connectivity: {args.connectivity}",
                 f"avg_weight: {row.avg_weight:.6g}", f"max_weight: {row.max_weight}",
                 f"max_string_weight: {row.max_string_weight}",
                 f"avg_iqc: {row.avg_iqc:.6g}", f"max_iqc: {row.max_iqc}",
                 f"exact_fraction: {row.exact_fraction:.6g}"]
        ratio = f"qubit_ratio: {row.qubit_ratio:.6g}"
        if kind == "hybridplus":
            ratio += f" (1 + 1/n^2 with n={row.n})"
        lines.append(ratio)
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = bench.SweepConfig(
        mappings=args.mapping,
        N_values=_need(args.N, "--N"),
        n_values=args.n or [1],
        connectivity=args.connectivity,
        exact_limit=args.exact_limit,
        jobs=args.jobs,
    )
    _, skipped = cfg.points()
    for s in skipped:
        print(f"skipped {s['mapping']} N={s['N']} n={s['n']}: {s['reason']}", file=sys.stderr)
    rows = bench.run_sweep(cfg)
    if args.format == "json":
        _emit(bench.rows_to_json(rows, indent=2) + "\n", args.out)
    else:
        _emit(bench.rows_to_csv(rows), args.out)
    return EXIT_OK


def cmd_route(args) -> int:
    qubits = _need(args.qubits, "--qubits")
    N = _need(_single(args.N, "--N"), "--N")
    kind = args.mapping
    if isinstance(kind, list):
        kind = _single(kind, "--mapping")
    n = _single(args.n, "--n")
    if kind in ("hybrid", "hybridplus"):
        _need(n, "--n")
    layout = build_layout(mappings.canonical_spec(kind, N, n))
    g = routing.architecture_for(layout, args.connectivity)
    res = routing.steiner_tree(g, qubits, args.exact_limit)
    if args.format == "json":
        _emit(json.dumps({"terminals": sorted(set(qubits)), "vertex_count": res.vertex_count,
                          "edge_count": res.edge_count, "method": res.method,
                          "edges": [list(e) for e in res.edges]}, indent=2) + "\n", args.out)
    else:
        edges = " ".join(f"{a}-{b}" for a, b in res.edges)
        _emit(f"vertex_count: {res.vertex_count}\nedge_count: {res.edge_count}\n"
              f"method: {res.method}\nedges: {edges}\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    kind, N, n = _spec(args)
    enc = mappings.make_encoder(kind, N, n)
    suites = []
    if kind != "hybridplus" and enc.layout.n_modes <= 16:
        suites.append(verify.car_suite(enc))
    if N <= 8:
        suites.append(verify.degenerate_suite(N))
    if kind == "hybridplus":
        suites.append(verify.stabilizer_suite(enc))
    report = None
    if enc.n_qubits <= verify.MAX_QUBITS:
        if enc.layout.n_modes <= 4:
            per_edge = None
        else:
            per_edge = args.states or (20 if kind == "hybridplus" else 50)
        report = verify.check_encoding_equivalence(
            kind, LatticeSpec(N, enc.spec.n), states_per_edge=per_edge, seed=args.seed
        )
    passed = all(s["passed"] for s in suites) and (report is None or report.passed)
    out = {"mapping": kind, "N": N, "n": enc.spec.n, "seed": args.seed, "passed": passed,
           "suites": suites, "equivalence": report.to_dict() if report else None}
    _emit(json.dumps(out, indent=2) + "\n", args.out)
    return EXIT_OK if passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=_int_list, help="lattice side (comma list for sweep)")
    common.add_argument("--n", type=_int_list, help="cell side (comma list for sweep)")
    common.add_argument("--connectivity", choices=["all", "lattice"], default="all")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--exact-limit", type=int, default=routing.EXACT_LIMIT)
    common.add_argument("--jobs", type=int, default=1)

    parser = _Parser(prog="hybridmap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    kinds = list(mappings.KINDS)

    p = sub.add_parser("map", parents=[common], help="print encoded hopping operators")
    p.add_argument("--mapping", choices=kinds, default="jw")
    p.add_argument("--pairs", type=_pairs, help="mode pairs to encode instead of all lattice edges")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("analyze", parents=[common], help="weight and routing statistics")
    p.add_argument("--mapping", choices=kinds, default="jw")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", parents=[common], help="statistics over several lattices (CSV)")
    p.add_argument("--mapping", type=lambda s: s.split(","), default=["jw"])
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("route", parents=[common], help="Steiner tree over a qubit set")
    p.add_argument("--mapping", choices=kinds, default="jw")
    p.add_argument("--qubits", type=_int_list)
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("verify", parents=[common], help="run the algebraic and statevector checks")
    p.add_argument("--mapping", choices=kinds, default="jw")
    p.add_argument("--states", type=int, help="random basis states per edge")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "format", None) == "csv" and args.command not in ("analyze", "sweep"):
        print("hybridmap: error: cli: --format csv is only available for analyze and sweep",
              file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except (HybridMapError, ValueError, IndexError) as exc:
        print(f"hybridmap: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
