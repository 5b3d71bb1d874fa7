"""Batch command-line front-end.

Exit codes: 0 when every row succeeded, 2 when any row failed, 1 on usage
or configuration errors.
"""
from __future__ import annotations

import argparse
import sys

from . import scenario as _scenario
from .modesolver import DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE
from .stacks import (H1G_FILM_THICKNESS_M, H2G_FILM_THICKNESS_M,
                     HIM_PERMITTIVITY, LIM_PERMITTIVITY)
from .sweep import (ConfigError, SweepSpec, UnknownColumnError, emit_csv,
                    emit_plotdata, parse_config, run_sweep)


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; this tool reserves 2 for
    # "sweep ran but rows failed"
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_common(parser):
    parser.add_argument("--out", help="output file path (default: stdout)")
    parser.add_argument("--format", choices=("csv", "plot"), default=None,
                        help="output format (default csv)")
    parser.add_argument("--plot-x", help="x column for plot output")
    parser.add_argument("--plot-y", help="comma-separated y columns for plot output")
    parser.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE,
                        help="relative root-finder tolerance")
    parser.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITERATIONS,
                        help="root-finder iteration cap")
    parser.add_argument("--quiet", action="store_true",
                        help="suppress the summary line on stderr")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="thzplasmon",
                     description="Graphene plasmonic terahertz antenna toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a sweep from a config file")
    sweep.add_argument("--config", required=True, help="configuration file path")
    _add_common(sweep)

    cond = sub.add_parser("conductivity", help="sheet conductivity sweep")
    cond.add_argument("--variable", default="frequency_thz",
                      choices=("chemical_potential_ev", "relaxation_time_ps",
                               "frequency_thz", "temperature_k"))
    cond.add_argument("--grid", required=True,
                      help="grid values, 'a b c' or start:stop:count")
    cond.add_argument("--chemical-potential-ev", type=float)
    cond.add_argument("--relaxation-time-ps", type=float)
    cond.add_argument("--frequency-thz", type=float)
    cond.add_argument("--temperature-k", type=float)
    _add_common(cond)

    disp = sub.add_parser("dispersion", help="mode trace over frequency")
    disp.add_argument("--grid", required=True, help="frequency grid in THz")
    disp.add_argument("--preset", choices=("G", "H1G", "H2G"))
    disp.add_argument("--substrate-permittivity", type=float)
    disp.add_argument("--superstrate-permittivity", type=float)
    disp.add_argument("--chemical-potential-ev", type=float, required=True)
    disp.add_argument("--relaxation-time-ps", type=float, required=True)
    disp.add_argument("--temperature-k", type=float)
    _add_common(disp)

    stack = sub.add_parser("stack", help="stack metrics over chemical potential")
    stack.add_argument("--grid", required=True, help="chemical potential grid in eV")
    stack.add_argument("--preset", required=True, choices=("G", "H1G", "H2G"))
    stack.add_argument("--frequency-thz", type=float, required=True)
    stack.add_argument("--relaxation-time-ps", type=float, required=True)
    stack.add_argument("--temperature-k", type=float)
    _add_common(stack)

    ant = sub.add_parser("antenna", help="dipole resonance sweep")
    ant.add_argument("--variable", default="length_um",
                     choices=("length_um", "chemical_potential_ev",
                              "relaxation_time_ps"))
    ant.add_argument("--grid", required=True)
    ant.add_argument("--length-um", type=float)
    ant.add_argument("--width-um", type=float, required=True)
    ant.add_argument("--gap-um", type=float, required=True)
    ant.add_argument("--substrate-permittivity", type=float, required=True)
    ant.add_argument("--chemical-potential-ev", type=float)
    ant.add_argument("--relaxation-time-ps", type=float)
    ant.add_argument("--temperature-k", type=float)
    ant.add_argument("--end-correction", type=float)
    _add_common(ant)

    scen = sub.add_parser("scenario", help="footprint feasibility sweep")
    scen.add_argument("--grid", required=True, help="resonant length grid in um")
    scen.add_argument("--scenario", required=True, help="WNSN, SDM or WNoC")
    scen.add_argument("--width-um", type=float, required=True)
    scen.add_argument("--budget-fraction", type=float)
    _add_common(scen)

    presets = sub.add_parser("presets",
                             help="print stack presets and scenario constants")
    presets.add_argument("--csv", help="also write the scenario table as CSV")
    presets.add_argument("--quiet", action="store_true")

    return parser


_FLAG_TO_KEY = {
    "chemical_potential_ev": "chemical_potential_ev",
    "relaxation_time_ps": "relaxation_time_ps",
    "frequency_thz": "frequency_thz",
    "temperature_k": "temperature_k",
    "preset": "preset",
    "substrate_permittivity": "substrate_permittivity",
    "superstrate_permittivity": "superstrate_permittivity",
    "length_um": "length_um",
    "width_um": "width_um",
    "gap_um": "gap_um",
    "end_correction": "end_correction",
    "scenario": "scenario",
    "budget_fraction": "budget_fraction",
}


def _spec_from_args(args) -> SweepSpec:
    # route direct subcommands through the same config text validator so
    # CLI and config files cannot drift apart
    lines = ["[sweep]", f"target = {args.command}"]
    variable = getattr(args, "variable", None)
    if variable is None:
        variable = {"dispersion": "frequency_thz", "stack": "chemical_potential_ev",
                    "scenario": "length_um"}[args.command]
    lines.append(f"variable = {variable}")
    lines.append(f"grid = {args.grid}")
    lines.append("[fixed]")
    for attr, key in _FLAG_TO_KEY.items():
        value = getattr(args, attr, None)
        if value is not None:
            lines.append(f"{key} = {value}")
    lines.append("[output]")
    if args.out:
        lines.append(f"path = {args.out}")
    if args.format:
        lines.append(f"format = {args.format}")
    if args.plot_x:
        lines.append(f"plot_x = {args.plot_x}")
    if args.plot_y:
        lines.append(f"plot_y = {args.plot_y}")
    return parse_config("\n".join(lines) + "\n")


def _emit(spec: SweepSpec, table, args) -> None:
    fmt = args.format or spec.output_format
    path = args.out or spec.output_path
    if fmt == "plot":
        x = args.plot_x or spec.plot_x or table.columns[0].name
        if args.plot_y:
            ys = tuple(args.plot_y.replace(",", " ").split())
        elif spec.plot_y:
            ys = spec.plot_y
        else:
            ys = tuple(col.name for col in table.columns[1:])
        text = emit_plotdata(table, x, ys, path)
    else:
        text = emit_csv(table, path)
    if path is None:
        sys.stdout.write(text)


def _print_presets(args) -> int:
    out = sys.stdout
    out.write("Radiating-element stack presets (top cladding first):\n")
    out.write(f"  G   : vacuum | sheet | LIM eps_r={LIM_PERMITTIVITY} (semi-infinite)\n")
    out.write(f"  H1G : vacuum | sheet | HIM eps_r={HIM_PERMITTIVITY} "
              f"({H1G_FILM_THICKNESS_M * 1e6:g} um) | LIM eps_r={LIM_PERMITTIVITY}\n")
    out.write(f"  H2G : vacuum | HIM ({H2G_FILM_THICKNESS_M * 1e6:g} um) | sheet | "
              f"HIM ({H2G_FILM_THICKNESS_M * 1e6:g} um) | LIM eps_r={LIM_PERMITTIVITY}\n")
    out.write("Dimensions and permittivities are configuration defaults, "
              "overridable via the API.\n\n")
    out.write("Area-constrained application envelopes:\n")
    for s in _scenario.builtin_scenarios():
        out.write(f"  {s.name:4s}: node size {s.node_size_m2[0]:g}-{s.node_size_m2[1]:g} m2, "
                  f"tx range {s.tx_range_m[0]:g}-{s.tx_range_m[1]:g} m, "
                  f"data rate {s.data_rate_bps[0]:g}-{s.data_rate_bps[1]:g} bit/s\n")
    if args.csv:
        _scenario.write_scenarios_csv(args.csv)
        if not args.quiet:
            sys.stderr.write(f"scenario table written to {args.csv}\n")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1

    if args.command == "presets":
        return _print_presets(args)

    try:
        if args.command == "sweep":
            try:
                with open(args.config, "r", encoding="utf-8") as handle:
                    text = handle.read()
            except OSError as err:
                sys.stderr.write(f"thzplasmon: cannot read config: {err}\n")
                return 1
            spec = parse_config(text)
        else:
            spec = _spec_from_args(args)
    except ConfigError as err:
        sys.stderr.write(f"thzplasmon: config error: {err}\n")
        return 1

    table = run_sweep(spec, tolerance=args.tolerance, max_iterations=args.max_iter)
    try:
        _emit(spec, table, args)
    except UnknownColumnError as err:
        sys.stderr.write(f"thzplasmon: unknown column: {err}\n")
        return 1
    except OSError as err:
        sys.stderr.write(f"thzplasmon: {err}\n")
        return 1

    failed = sum(1 for status in table.statuses if status != "ok")
    if not args.quiet:
        sys.stderr.write(f"{len(table.rows)} rows, {failed} failed\n")
    return 2 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
