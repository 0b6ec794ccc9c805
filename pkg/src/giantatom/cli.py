"""Command-line entry point.

    giantatom simulate CONFIG [--csv PATH] [--svg PATH] [--quiet]
    giantatom sweep CONFIG [--csv PATH] [--svg PATH] [--quiet]
    giantatom --print-schema
    giantatom --version

Exit codes: 0 success, 2 parse/validation error, 3 numerical error
(grid, stability, boundary leak), 4 I/O error.  Failures print one JSON
line on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .analysis import detect_plateau, run_sweep
from .config import RunSpec, parse_config, schema_text
from .continuum import integrate
from .errors import GiantAtomError, ParseError, ValidationError
from .lattice import integrate_lattice
from .output import continuum_csv, lattice_csv, sweep_csv, write_text
from .svgplot import LinePlot

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

_ANGLE_AXES = ("theta", "phi")


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, (ParseError, ValidationError)):
        return EXIT_INPUT
    if isinstance(exc, GiantAtomError):
        return EXIT_NUMERIC
    if isinstance(exc, OSError):
        return EXIT_IO
    raise exc


def _emit(path, text, quiet):
    if path is None:
        if not quiet:
            sys.stdout.write(text)
        return
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    write_text(path, text)


def _run_single(spec: RunSpec):
    if spec.kind == "continuum":
        traj = integrate(spec.params, spec.horizon, spec.steps_per_tau)
        plot = LinePlot(title="continuum waveguide", xlabel="Gamma0 t", ylabel="|c_e|^2")
        plot.add(traj.times, traj.populations, label="|c_e|^2")
        summary = {"final_population": float(traj.populations[-1]), "step": traj.step}
        rep = detect_plateau(traj)
        summary.update(plateau=rep.value, plateau_converged=rep.converged)
        return continuum_csv(traj, spec.params), plot, summary
    result = integrate_lattice(spec.params)
    traj = result.trajectory
    plot = LinePlot(title="resonator chain", xlabel="g0 t", ylabel="|c_e|^2")
    plot.add(traj.times, traj.populations, label="|c_e|^2")
    summary = {
        "final_population": float(traj.populations[-1]),
        "step": traj.step,
        "chain_len": spec.params.chain_len,
        "max_norm_error": float(abs(result.norms - 1).max()),
    }
    return lattice_csv(result), plot, summary


def _run_sweep(spec: RunSpec):
    sw = spec.sweep
    values = [v * math.pi if sw.axis in _ANGLE_AXES else v for v in sw.values]
    table = run_sweep(
        spec.params,
        sw.axis,
        values,
        reducer=sw.reducer,
        at=sw.at,
        horizon=spec.horizon,
        steps_per_tau=spec.steps_per_tau,
        tail_fraction=sw.tail_fraction,
        tol=sw.tol,
        workers=sw.workers,
    )
    label = sw.reducer if sw.at is None else f"{sw.reducer}@{sw.at:g}"
    # report axis values in config units (angles over pi)
    table_out = type(table)(axis=table.axis, values=sw.values, reducer=table.reducer, cells=table.cells)
    plot = LinePlot(title=f"sweep over {sw.axis}", xlabel=sw.axis, ylabel=label)
    plot.add(sw.values, table.metrics, label=label, markers=True)
    errors = [c.error for c in table.cells if c.error]
    summary = {"cells": len(table.cells), "failed_cells": len(errors)}
    return sweep_csv(table_out, label), plot, summary


def run(spec: RunSpec, csv: str | None = None, svg: str | None = None, quiet: bool = False) -> int:
    """Execute ``spec`` and write its outputs; returns the process exit code."""
    try:
        if spec.mode == "sweep":
            text, plot, summary = _run_sweep(spec)
        else:
            text, plot, summary = _run_single(spec)
        csv_path = csv or spec.csv
        _emit(csv_path, text, quiet)
        svg_path = svg or spec.svg
        if svg_path:
            Path(svg_path).parent.mkdir(parents=True, exist_ok=True)
            plot.save(svg_path)
        if not quiet and csv_path is not None:
            print(json.dumps(summary, sort_keys=True), file=sys.stderr)
        return EXIT_OK
    except (GiantAtomError, OSError) as exc:
        return _fail(exc)


def _fail(exc: BaseException) -> int:
    code = exit_code(exc)
    line = {"error": type(exc).__name__, "exit_code": code, "message": str(exc)}
    print(json.dumps(line), file=sys.stderr)
    return code


def _load(path: str, mode: str) -> RunSpec:
    text = Path(path).read_text(encoding="utf-8")
    spec = parse_config(text)
    if mode == "sweep" and spec.mode != "sweep":
        raise ValidationError("config has no [sweep] section; use 'simulate'")
    if mode == "simulate" and spec.mode == "sweep":
        raise ValidationError("config has a [sweep] section; use 'sweep'")
    return spec


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="giantatom",
        description="Giant-atom decay dynamics with time-dependent couplings.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("--print-schema", action="store_true", help="print the config schema and exit")
    sub = ap.add_subparsers(dest="command")
    for name, helptext in (
        ("simulate", "run a single continuum or lattice simulation"),
        ("sweep", "run a parameter sweep"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("config", help="TOML config file")
        p.add_argument("--csv", help="CSV output path (overrides [output] csv; default stdout)")
        p.add_argument("--svg", help="SVG plot path (overrides [output] svg)")
        p.add_argument("--quiet", action="store_true", help="suppress stdout/stderr chatter")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.print_schema:
        sys.stdout.write(schema_text())
        return EXIT_OK
    if args.command is None:
        ap.print_usage(sys.stderr)
        return EXIT_INPUT
    try:
        spec = _load(args.config, args.command)
    except (GiantAtomError, OSError) as exc:
        return _fail(exc)
    return run(spec, csv=args.csv, svg=args.svg, quiet=args.quiet)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
