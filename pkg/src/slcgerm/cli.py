"""Command-line entry point: ``slcgerm <subcommand> ...``.

Exit codes: 0 success, 1 domain error, 2 verification disagreement, 64 usage error.
"""
from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from . import report as rep
from .catalog.graphs import resolution_graph
from .catalog.types import legal_roles, t1_presentation
from .errors import DomainError, GermParseError
from .germ import CONVENTIONS, THEOREM, degree_L, errors_of, require_valid, validate, verdict
from .germfile import TYPE_PARAMS, make_type, parse_germ_file
from .sweep import run_sweep

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_DISAGREEMENT = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_germ_file(text)
    except GermParseError as exc:
        raise DomainError(f"{path}: {exc}") from None


def _type_from_args(kind: str, params: list[str]):
    if kind not in TYPE_PARAMS:
        raise UsageError(f"unknown type {kind!r}; expected one of {', '.join(TYPE_PARAMS)}")
    names = TYPE_PARAMS[kind]
    values = {}
    positional = []
    for tok in params:
        if "=" in tok:
            key, _, value = tok.partition("=")
            values[key] = value
        else:
            positional.append(tok)
    for name, value in zip([n for n in names if n not in values], positional):
        values[name] = value
    if len(values) != len(names) or len(positional) > len(names):
        raise UsageError(f"type {kind} takes parameters {' '.join(names) or '(none)'}")
    return make_type(kind, values)


# -- subcommands -------------------------------------------------------------


def cmd_check(args, out) -> int:
    g = _load(args.file)
    diags = validate(g)
    out.write(rep.check_report(g, diags).text())
    return EXIT_DOMAIN if errors_of(diags) else EXIT_OK


def cmd_degree(args, out) -> int:
    g = _load(args.file)
    require_valid(g)
    cids = [args.component] if args.component else g.component_ids()
    if args.component and args.component not in g.component_ids():
        raise DomainError(f"no component {args.component!r}")
    reports = [degree_L(g, cid) for cid in cids]
    out.write(rep.degree_report(g, reports, args.convention).text())
    return EXIT_OK


def cmd_verdict(args, out) -> int:
    g = _load(args.file)
    out.write(rep.verdict_report(g, verdict(g, args.convention)).text())
    return EXIT_OK


def cmd_graph(args, out) -> int:
    g = _load(args.file)
    gids = [args.graph] if args.graph else list(g.graphs)
    for gid in gids:
        if gid not in g.graphs:
            raise DomainError(f"no graph {gid!r}")
        if args.dot:
            out.write(g.graphs[gid].to_dot(gid))
        else:
            out.write(rep.graph_report(gid, g.graphs[gid], args.pullback or []).text())
    return EXIT_OK


def cmd_hj(args, out) -> int:
    out.write(rep.hj_report(args.n, args.a).text())
    return EXIT_OK


def cmd_cusp_graph(args, out) -> int:
    t = _type_from_args(args.type, args.params)
    role = args.role
    if role is None and legal_roles(t):
        raise UsageError(f"--role is required; legal roles: {', '.join(sorted(legal_roles(t)))}")
    rg = resolution_graph(t, role)
    if args.dot:
        out.write(rg.graph.to_dot(rg.case))
    else:
        out.write(rep.cusp_graph_report(t, role, rg).text())
    return EXIT_OK


def cmd_t1(args, out) -> int:
    t = _type_from_args(args.type, args.params)
    out.write(rep.t1_report(t, t1_presentation(t)).text())
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if min(args.pmax, args.qmax, args.rmax) < 3 or args.jobs < 1:
        raise UsageError("--pmax/--qmax/--rmax must be at least 3 and --jobs at least 1")
    result = run_sweep(args.pmax, args.qmax, args.rmax, jobs=args.jobs)
    out.write(rep.sweep_report(result).text())
    bad = result.disagreements or not result.known_typo_confirmed
    return EXIT_DISAGREEMENT if bad else EXIT_OK


def corpus_files() -> dict[str, str]:
    root = resources.files("slcgerm") / "corpus"
    return {
        entry.name: entry.read_text(encoding="utf-8")
        for entry in sorted(root.iterdir(), key=lambda e: e.name)
        if entry.name.endswith(".germ")
    }


def cmd_examples(args, out) -> int:
    target = Path(args.out)
    target.mkdir(parents=True, exist_ok=True)
    for name, text in corpus_files().items():
        (target / name).write_text(text, encoding="utf-8")
        out.write(f"wrote {target / name}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="slcgerm", description="Q-Gorenstein invariants of nonnormal surface germs")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check", help="validate a germ file")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    for name, func, helptext in (
        ("degree", cmd_degree, "deg L_C for each component"),
        ("verdict", cmd_verdict, "global smoothability verdict"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("file")
        s.add_argument("--convention", choices=CONVENTIONS, default=THEOREM)
        if name == "degree":
            s.add_argument("--component")
        s.set_defaults(func=func)

    s = sub.add_parser("graph", help="intersection matrices and pullbacks of a germ's graphs")
    s.add_argument("file")
    s.add_argument("--graph")
    s.add_argument("--pullback", action="append", metavar="CURVE")
    s.add_argument("--dot", action="store_true")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("hj", help="Hirzebruch-Jung data of 1/n(1,a)")
    s.add_argument("n", type=int)
    s.add_argument("a", type=int)
    s.set_defaults(func=cmd_hj)

    s = sub.add_parser("cusp-graph", help="extended dual graph of a catalogued point")
    s.add_argument("type")
    s.add_argument("params", nargs="*")
    s.add_argument("--role")
    s.add_argument("--dot", action="store_true")
    s.set_defaults(func=cmd_cusp_graph)

    s = sub.add_parser("t1", help="presentation of the local T^1")
    s.add_argument("type")
    s.add_argument("params", nargs="*")
    s.set_defaults(func=cmd_t1)

    s = sub.add_parser("verify", help="sweep the graph oracle against the closed forms")
    s.add_argument("--pmax", type=int, required=True)
    s.add_argument("--qmax", type=int, required=True)
    s.add_argument("--rmax", type=int, required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("examples", help="write the bundled germ files")
    s.add_argument("--out", default=".")
    s.set_defaults(func=cmd_examples)
    return p


def run_command(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except DomainError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
