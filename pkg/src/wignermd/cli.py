"""Command line entry point: ``wignermd verify|wigner|report``.

Exit status is 0 when every selected assertion passes, 1 when one fails
(the failing invariant is printed) and 2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .harness import RUNNERS, SUITES, RunConfig, md_sum, named_signal
from .hermite import CoeffVector, hermite_family, random_orthonormal_family
from .reports import (
    build_report,
    cases_csv,
    dumps_report,
    field_to_text,
    heatmap_svg,
    read_signal,
    rows_csv,
    validate_report,
    write_heatmap,
    write_report,
)
from .wigner import cross_wigner

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

#: CLI flag -> RunConfig field
CONFIG_FLAGS = {
    "N": "N", "L": "L", "K": "K", "n": "n", "seed": "seed", "seeds": "seeds",
    "family": "family", "signal": "signal", "kernel": "kernel", "matrix": "matrix",
    "output_dir": "output_dir",
}


class UsageError(Exception):
    pass


def _add_config_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON file mirroring RunConfig")
    p.add_argument("--N", type=int, help="grid size (power of two)")
    p.add_argument("--L", type=float, help="grid half width")
    p.add_argument("--K", type=int, help="Hermite truncation")
    p.add_argument("--n", type=int, help="largest family index summed")
    p.add_argument("--seed", type=int, help="first seed")
    p.add_argument("--seeds", type=int, help="number of seeded random draws")
    p.add_argument("--output-dir", dest="output_dir", help="where reports are written")
    p.add_argument("--heatmap", action="store_true", help="also write a PPM heatmap")
    p.add_argument("--tol", action="append", default=[], metavar="KEY=VALUE",
                   help="override a tolerance (grid, spectral, bound, equality, hermite_sum)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wignermd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a verification suite")
    vsub = verify.add_subparsers(dest="suite", required=True)
    for name in SUITES:
        p = vsub.add_parser(name)
        _add_config_flags(p)
        if name == "mean-dispersion":
            p.add_argument("--family", choices=("hermite", "random"))
        if name == "identities":
            p.add_argument("--signal", help="h<k>, mixed, shifted, modulated or all")
        if name == "cohen":
            p.add_argument("--kernel", help="real polynomial in xi, eta, e.g. '0.5*xi*eta'")
        if name == "riesz":
            p.add_argument("--matrix", help="identity, diag:a,b, shift:w, random:cond=c,seed=s or a CSV path")

    wig = sub.add_parser("wigner", help="Wigner transform of signal files")
    wsub = wig.add_subparsers(dest="action", required=True)
    comp = wsub.add_parser("compute")
    comp.add_argument("--input", required=True, help="signal file (header '# N= L=', then 're im' rows)")
    comp.add_argument("--partner", help="second signal file for the cross transform")
    comp.add_argument("--output", help="field text output ('-' for stdout)")
    comp.add_argument("--heatmap", help="PPM output path")
    comp.add_argument("--svg", help="SVG output path")

    rep = sub.add_parser("report", help="print a report as JSON or CSV")
    rep.add_argument("--format", choices=("json", "csv"), default="json")
    rep.add_argument("--from", dest="source", help="existing JSON report to convert")
    rep.add_argument("--suite", choices=SUITES, default="mean-dispersion")
    rep.add_argument("--family", choices=("hermite", "random"))
    _add_config_flags(rep)
    return parser


def load_config(args) -> RunConfig:
    data = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError("config file must hold a JSON object")
    for flag, key in CONFIG_FLAGS.items():
        value = getattr(args, flag, None)
        if value is not None:
            data[key] = value
    tolerances = dict(data.get("tolerances", {}))
    for item in getattr(args, "tol", []):
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--tol expects KEY=VALUE, got {item!r}")
        try:
            tolerances[key] = float(value)
        except ValueError:
            raise UsageError(f"tolerance {key} is not a number") from None
    if tolerances:
        data["tolerances"] = tolerances
    if getattr(args, "heatmap", False) is True:
        data["heatmap"] = True
    suite = getattr(args, "suite", None)
    if suite:
        data["suites"] = [suite]
    try:
        return RunConfig.from_dict(data)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid configuration: {exc}") from None


def _run_suite(cfg: RunConfig, suite: str):
    try:
        result = RUNNERS[suite](cfg)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return result, build_report(cfg, result)


def _write_heatmap(cfg, suite, out_dir):
    grid = cfg.grid
    name = cfg.signal if cfg.signal != "all" else "h0"
    f = named_signal(name, grid)
    path = os.path.join(out_dir, f"{suite}_wigner.ppm")
    write_heatmap(path, cross_wigner(f, f))
    return path


def cmd_verify(args, out) -> int:
    cfg = load_config(args)
    result, report = _run_suite(cfg, args.suite)
    out_dir = cfg.resolved_output_dir()
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"{args.suite}.json")
    write_report(path, report)
    if cfg.heatmap:
        print(f"heatmap: {_write_heatmap(cfg, args.suite, out_dir)}", file=out)
    total, failed = len(result.cases), result.failures()
    status = "PASS" if not failed else "FAIL"
    print(f"{status} {args.suite}: {total - len(failed)}/{total} cases, report {path}", file=out)
    for c in failed:
        print(f"FAIL invariant '{c.name}': lhs={c.lhs!r} rhs={c.rhs!r} "
              f"margin={c.margin!r} tolerance={c.tolerance!r}", file=out)
    return EXIT_OK if not failed else EXIT_FAIL


def cmd_wigner(args, out) -> int:
    try:
        f = read_signal(args.input)
        g = read_signal(args.partner) if args.partner else f
        W = cross_wigner(f, g)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if args.output == "-" or not (args.output or args.heatmap or args.svg):
        out.write(field_to_text(W))
    elif args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(field_to_text(W))
    if args.heatmap:
        write_heatmap(args.heatmap, W)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(heatmap_svg(W))
    return EXIT_OK


def _md_rows(cfg: RunConfig):
    fam = hermite_family(cfg.K) if cfg.family == "hermite" else random_orthonormal_family(cfg.K, cfg.n + 1, cfg.seed)
    return md_sum(CoeffVector.basis(0, cfg.K), fam, cfg.n, "spectral").rows()


def cmd_report(args, out) -> int:
    if args.source:
        try:
            with open(args.source, encoding="utf-8") as fh:
                report = json.load(fh)
            validate_report(report)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot use report {args.source}: {exc}") from None
        if args.format == "json":
            out.write(dumps_report(report))
        else:
            out.write(cases_csv(report["cases"]))
        return EXIT_OK if all(c["pass"] for c in report["cases"]) else EXIT_FAIL
    cfg = load_config(args)
    if args.format == "csv" and args.suite == "mean-dispersion":
        out.write(rows_csv(_md_rows(cfg)))
        return EXIT_OK
    result, report = _run_suite(cfg, args.suite)
    out.write(dumps_report(report) if args.format == "json" else cases_csv(result.cases))
    return EXIT_OK if result.passed else EXIT_FAIL


COMMANDS = {"verify": cmd_verify, "wigner": cmd_wigner, "report": cmd_report}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"wignermd: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


cli_main = main

if __name__ == "__main__":
    sys.exit(main())
