"""Command-line front end.  Subcommands: dist, graph, interval, diagram,
stratify, sample, verify.  All reports are deterministic given --seed."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import diagrams, exactgeom, qbgraph, suites, tiltedorder
from .errors import QbgError, SamplingError
from .permcore import (
    Perm,
    format_permutation,
    identity,
    longest_element,
    parse_permutation,
)


class UsageError(QbgError):
    pass


def _resolve_perm(text: str, n_hint: int | None) -> Perm:
    alias = text.strip().lower()
    if alias in ("id", "w0", "w_0"):
        if n_hint is None:
            raise UsageError(
                f"{text!r} needs the size; give the other permutation explicitly or pass --n"
            )
        return identity(n_hint) if alias == "id" else longest_element(n_hint)
    return parse_permutation(text)


def _perm_pair(u_text: str, v_text: str, n_flag: int | None) -> tuple[Perm, Perm]:
    hint = n_flag
    for text in (u_text, v_text):
        if text.strip().lower() not in ("id", "w0", "w_0"):
            hint = len(parse_permutation(text))
    u = _resolve_perm(u_text, hint)
    v = _resolve_perm(v_text, hint)
    if len(u) != len(v):
        raise UsageError(f"permutations have different sizes {len(u)} and {len(v)}")
    return u, v


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_dist(args: argparse.Namespace) -> int:
    u, v = _perm_pair(args.u, args.v, None)
    if args.mode in ("formula", "both"):
        ell = qbgraph.graph_distance(u, v)
        weight = qbgraph.formula_weight(u, v)
    if args.mode in ("oracle", "both"):
        g = qbgraph.build_graph(len(u))
        ell_o, weight_o = qbgraph.oracle_distance(g, u, v)
        if args.mode == "oracle":
            ell, weight = ell_o, weight_o
    line = f"ell={ell} weight={qbgraph.monomial_str(weight)}"
    if args.mode == "both":
        agree = "yes" if (ell, weight) == (ell_o, weight_o) else "no"
        line += f" agree={agree}"
    print(line)
    return 0


def cmd_graph(args: argparse.Namespace) -> int:
    g = qbgraph.build_graph(args.n)
    _emit(qbgraph.export_graph(g, args.format), args.out)
    return 0


def cmd_interval(args: argparse.Namespace) -> int:
    u, v = _perm_pair(args.u, args.v, args.n)
    g = qbgraph.build_graph(len(u))
    ti = tiltedorder.interval(u, v, g)
    if args.hasse:
        _emit(tiltedorder.hasse_export(ti, args.format), args.out)
        return 0
    lines = [f"ell={ti.length} members={len(ti.members)}"]
    for w in sorted(ti.members, key=lambda w: (ti.rank[w], w)):
        lines.append(f"{ti.rank[w]} {format_permutation(w)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_diagram(args: argparse.Namespace) -> int:
    u, v = _perm_pair(args.u, args.v, args.n)
    n = len(u)
    if args.a == "auto":
        a = diagrams.find_flat(u, v)
    else:
        try:
            a = tuple(int(tok) for tok in args.a.split(","))
        except ValueError as exc:
            raise UsageError(f"bad shift sequence {args.a!r}: {exc}") from exc
    lines = [
        f"u={format_permutation(u)} v={format_permutation(v)} a={','.join(map(str, a))}",
        "",
        diagrams.render_diagram(u, a, "down"),
        "",
        diagrams.render_diagram(v, a, "up"),
        "",
    ]
    if args.x is None:
        eqset = diagrams.equations(u, v, a)
    else:
        x = _resolve_perm(args.x, n)
        eqset = diagrams.equations_with_x(u, v, a, x)
        lines.append(f"x={format_permutation(x)}")
    if args.json:
        _emit(diagrams.equations_to_json(eqset), args.out)
        return 0
    for eq in eqset.equations:
        lines.append(f"col {eq.column} cell ({eq.cell[0]},{eq.cell[1]}) [{eq.origin}]: "
                     f"{diagrams.equation_str(eq)}")
    ell = qbgraph.graph_distance(u, v)
    expected = n * (n - 1) // 2 - ell
    flat = diagrams.is_flat(u, v, a)
    lines.append(
        f"count={len(eqset)} flat={'yes' if flat else 'no'} "
        f"C(n,2)-ell={expected} ell={ell}"
    )
    if flat and len(eqset) != expected:
        lines.append("WARNING: flat ledger size does not match C(n,2)-ell")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_stratify(args: argparse.Namespace) -> int:
    u, v = _perm_pair(args.u, args.v, args.n)
    matrix = exactgeom.parse_matrix(Path(args.matrix).read_text(encoding="utf-8"))
    F = exactgeom.flag_from_matrix(matrix)
    if not exactgeom.member_T_plucker(u, v, F, open_cell=False):
        print(
            f"flag is not a member of the tilted Richardson variety of "
            f"({format_permutation(u)}, {format_permutation(v)})"
        )
        return 1
    label = exactgeom.stratum(u, v, F)
    open_ok = exactgeom.member_T_plucker(label.x, label.y, F, open_cell=True)
    print(f"x={format_permutation(label.x)} y={format_permutation(label.y)}")
    print(f"open-membership={'yes' if open_ok else 'no'}")
    return 0 if open_ok else 1


def cmd_sample(args: argparse.Namespace) -> int:
    u, v = _perm_pair(args.u, args.v, args.n)
    try:
        F = exactgeom.sample_in_open_stratum(u, v, args.seed)
    except SamplingError as exc:
        print(f"error: {exc} (failing column {exc.column})", file=sys.stderr)
        return 1
    _emit(exactgeom.format_matrix(F.matrix), args.out)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    result = suites.run_suite(args.suite, args.n, args.seed, args.samples)
    print(result.report())
    return 0 if result.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbg",
        description="Quantum Bruhat graph computations and tilted Richardson geometry",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="minimal path length and weight between two permutations")
    p.add_argument("u")
    p.add_argument("v")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--formula", dest="mode", action="store_const", const="formula")
    mode.add_argument("--oracle", dest="mode", action="store_const", const="oracle")
    mode.add_argument("--both", dest="mode", action="store_const", const="both")
    p.set_defaults(mode="formula", func=cmd_dist)

    p = sub.add_parser("graph", help="export the full graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--out")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("interval", help="members of a tilted Bruhat interval")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--n", type=int, help="size when using the id/w0 shorthands")
    p.add_argument("--hasse", action="store_true")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--out")
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("diagram", help="tilted Rothe diagrams and their equations")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--n", type=int, help="size when using the id/w0 shorthands")
    p.add_argument("--a", default="auto", help="shift sequence k1,k2,... or auto")
    p.add_argument("--x", help="interval coatom for the rewritten ledger")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("stratify", help="locate the stratum containing a flag")
    p.add_argument("--matrix", required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--n", type=int, help="size when using the id/w0 shorthands")
    p.set_defaults(func=cmd_stratify)

    p = sub.add_parser("sample", help="sample a flag in an open stratum")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--n", type=int, help="size when using the id/w0 shorthands")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="run a named invariant suite")
    p.add_argument("--suite", required=True, choices=sorted(suites.SUITES))
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=5)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except QbgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
