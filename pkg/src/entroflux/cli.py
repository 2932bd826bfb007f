"""Command-line interface.

    entroflux run <preset-or-config> [--csv F] [--svg F] [--plot F]
                  [--columns LIST] [--strict] [--oracle]
    entroflux report [PRESET ...|all] --outdir DIR [--format png|pdf]
    entroflux presets

Exit codes: 0 success, 1 configuration error (including bad usage),
2 instability under --strict, 3 numerical or I/O failure.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from .errors import ConfigError, EntrofluxError, Unstable
from .presets import get_preset, preset_description, preset_names
from .sweep import emit_csv, emit_svg, parse_config, run_sweep


class _Parser(argparse.ArgumentParser):
    """argparse maps usage errors to exit code 2; this CLI reserves 2 for
    strict-mode instability, so usage errors become config errors (1)."""

    def error(self, message):
        raise ConfigError(message)


def _build_parser():
    parser = _Parser(prog="entroflux",
                     description="Steady states, entropy production and "
                                 "correlations of coherent-feedback oscillator pairs.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evaluate one sweep scenario")
    run.add_argument("source", help="preset name or path to a config file")
    run.add_argument("--csv", metavar="FILE", help="write CSV here (default: stdout)")
    run.add_argument("--svg", metavar="FILE", help="write a deterministic SVG chart")
    run.add_argument("--plot", metavar="FILE", help="render a matplotlib figure")
    run.add_argument("--columns", metavar="LIST",
                     help="comma/space separated output columns (default: all)")
    run.add_argument("--strict", action="store_true",
                     help="fail (exit 2) on the first unstable grid point")
    run.add_argument("--oracle", action="store_true",
                     help="re-derive every stable point by time integration")
    run.set_defaults(func=_cmd_run)

    report = sub.add_parser("report", help="CSV plus rendered figures for presets")
    report.add_argument("presets", nargs="*", default=["all"],
                        help="preset names, or 'all' (default)")
    report.add_argument("--outdir", default="report", metavar="DIR",
                        help="output directory (default: ./report)")
    report.add_argument("--format", default="png", choices=("png", "pdf", "svg"),
                        help="figure format (default: png)")
    report.set_defaults(func=_cmd_report)

    presets = sub.add_parser("presets", help="list the named scenarios")
    presets.set_defaults(func=_cmd_presets)
    return parser


def _load_scenario(source):
    if source in preset_names():
        return get_preset(source)
    if os.path.exists(source):
        with open(source, "r", encoding="utf-8") as fh:
            return parse_config(fh.read())
    raise ConfigError(f"{source!r} is neither a preset ({', '.join(preset_names())}) "
                      f"nor an existing config file")


def _numeric_columns(scenario):
    cols = [c for c in scenario.outputs if c not in ("stable", "physical")]
    return cols or list(scenario.outputs)


def _cmd_run(args):
    scenario = _load_scenario(args.source)
    if args.columns:
        requested = tuple(args.columns.replace(",", " ").split())
        scenario = replace(scenario, outputs=requested)
    rows = run_sweep(scenario, strict=args.strict, oracle=args.oracle)
    stable = sum(1 for r in rows if r.stable)
    wrote = []
    if args.csv:
        emit_csv(rows, args.csv)
        wrote.append(args.csv)
    if args.svg:
        emit_svg(rows, args.svg, columns=_numeric_columns(scenario),
                 title=scenario.name)
        wrote.append(args.svg)
    if args.plot:
        from .plotting import render_figure
        render_figure(rows, args.plot, columns=_numeric_columns(scenario),
                      title=scenario.name)
        wrote.append(args.plot)
    if not wrote:
        emit_csv(rows, sys.stdout.buffer)
        sys.stdout.buffer.flush()
    else:
        for path in wrote:
            print(f"{scenario.name}: wrote {path} ({len(rows)} rows, {stable} stable)")
    return 0


_REPORT_PANELS = (
    ("", ("pi_s", "mu_a", "mu_c")),
    ("_info", ("mutual_info", "log_neg", "nu_minus")),
)


def _cmd_report(args):
    from .plotting import render_figure

    names = list(args.presets)
    if not names or "all" in names:
        names = list(preset_names())
    for name in names:
        if name not in preset_names():
            raise ConfigError(f"unknown preset {name!r}; known: {', '.join(preset_names())}")
    os.makedirs(args.outdir, exist_ok=True)
    for name in names:
        scenario = get_preset(name)
        rows = run_sweep(scenario)
        base = os.path.join(args.outdir, name)
        emit_csv(rows, base + ".csv")
        written = [base + ".csv"]
        for suffix, cols in _REPORT_PANELS:
            cols = [c for c in cols if c in scenario.outputs]
            if not cols:
                continue
            path = f"{base}{suffix}.{args.format}"
            render_figure(rows, path, columns=cols,
                          title=f"{name}: {preset_description(name)}")
            written.append(path)
        print(f"{name}: wrote {', '.join(written)} ({len(rows)} rows)")
    return 0


def _cmd_presets(args):
    width = max(len(n) for n in preset_names())
    for name in preset_names():
        print(f"{name:<{width}}  {preset_description(name)}")
    return 0


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Unstable as exc:
        print(f"unstable: {exc}", file=sys.stderr)
        return 2
    except EntrofluxError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
