"""Command-line interface: ``qbath {eval,invert,sweep,audit,figure}``.

Exit codes:
    0   success (audit: inequality holds everywhere)
    1   audit found a violation (or, with --asymptotic, a gap ratio off its envelope)
    2   quadrature tolerance not met, or ``--check`` discrepancy too large
    3   invalid physical parameters (including degenerate poles)
    64  usage error
    74  I/O error
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from .errors import InvalidParameters, NearDegenerateDenominator, ToleranceNotMet
from .model import (
    OscillatorSpec,
    PoleDecomposition,
    cubic_residuals,
    to_physical_parameters,
    to_pole_parameters,
)
from .quadrature import QuadratureConfig
from .report import CLOSED_FORM, OBSERVABLES, QUADRATURE, evaluate
from .verify import (
    MODES,
    SweepGrid,
    asymptotic_audit,
    fig1_grid,
    fig2_grid,
    second_law_audit,
    standard_grid,
    sweep,
    write_csv,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_TOLERANCE = 2
EXIT_INVALID = 3
EXIT_USAGE = 64
EXIT_IO = 74

TOL_ENV = "QBATH_TOL"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _float_list(text, sep=","):
    try:
        return [float(v) for v in text.split(sep) if v.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse number list {text!r}") from exc


def _key_values(text):
    out = {}
    for item in text.split(","):
        if not item.strip():
            continue
        key, eq, value = item.partition("=")
        if not eq:
            raise UsageError(f"expected key=value, got {item!r}")
        try:
            out[key.strip()] = float(value)
        except ValueError as exc:
            raise UsageError(f"bad value in {item!r}") from exc
    return out


def _units(args):
    """Return ``(hbar, mass)``; reduced units pin both to 1."""
    if args.units == "reduced":
        if args.hbar is not None or args.mass is not None:
            raise UsageError("--hbar/--mass require --units physical")
        return 1.0, None
    return (1.0 if args.hbar is None else args.hbar), args.mass


def _parse_params(args):
    """Build ``(spec, poles)`` from the mutually exclusive --poles / --physical flags."""
    hbar, mass = _units(args)
    if args.poles is not None:
        vals = _float_list(args.poles)
        if len(vals) != 3:
            raise UsageError("--poles takes Omega,omega0,gamma")
        m = 1.0 if mass is None else mass
        poles = PoleDecomposition(m=m, Omega=vals[0], omega0=vals[1], gamma=vals[2])
        return to_physical_parameters(poles), poles, hbar
    kv = _key_values(args.physical)
    unknown = set(kv) - {"K", "zeta", "tau", "m"}
    if unknown or not {"K", "zeta", "tau"} <= set(kv):
        raise UsageError("--physical takes K=..,zeta=..,tau=..[,m=..]")
    m = kv.get("m", 1.0 if mass is None else mass)
    if mass is not None and m != mass:
        raise UsageError("conflicting masses in --mass and --physical")
    if args.units == "reduced" and m != 1.0:
        raise UsageError("reduced units fix m=1; use --units physical")
    spec = OscillatorSpec(m=m, K=kv["K"], zeta=kv["zeta"], tau=kv["tau"])
    return spec, to_pole_parameters(spec), hbar


def _config(args):
    rtol = args.rtol
    if rtol is None:
        env = os.environ.get(TOL_ENV)
        if env:
            try:
                rtol = float(env)
            except ValueError as exc:
                raise UsageError(f"{TOL_ENV}={env!r} is not a number") from exc
    if rtol is None:
        return QuadratureConfig()
    if not rtol > 0:
        raise UsageError("tolerance must be positive")
    return QuadratureConfig(rtol=rtol)


def _fmt(x):
    return format(x, ".17g") if isinstance(x, float) else str(x)


def _emit(table, header, args, out):
    if args.format == "csv":
        out.write(",".join(header) + "\n")
        for row in table:
            out.write(",".join(_fmt(v) for v in row) + "\n")
        return
    cells = [list(header)] + [[_fmt(v) for v in row] for row in table]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    for r in cells:
        out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def _with_output(cmd):
    def run(args, out):
        if getattr(args, "out", None):
            with open(args.out, "w", newline="") as fh:
                return cmd(args, fh)
        return cmd(args, out)

    run.__name__ = cmd.__name__
    run.__doc__ = cmd.__doc__
    return run


@_with_output
def cmd_eval(args, out):
    spec, poles, hbar = _parse_params(args)
    cfg = _config(args)
    kT = args.T
    primary_method = QUADRATURE if (kT > 0 or args.method == QUADRATURE) else CLOSED_FORM
    try:
        primary = evaluate(poles, kT, primary_method, cfg, hbar)
    except NearDegenerateDenominator:
        primary = evaluate(poles, kT, QUADRATURE, cfg, hbar)
    E0 = primary.ground_energy
    rows = []
    if args.check:
        other = None
        if kT == 0:
            other_method = QUADRATURE if primary.methods["mean_energy"] == CLOSED_FORM else CLOSED_FORM
            try:
                other = evaluate(poles, kT, other_method, cfg, hbar)
            except NearDegenerateDenominator:
                other = None
        closed = primary if primary.methods["mean_energy"] == CLOSED_FORM else other
        quad = primary if primary.methods["mean_energy"] == QUADRATURE else other
        nan = float("nan")
        worst = 0.0
        for name in OBSERVABLES:
            c = getattr(closed, name) if closed else nan
            q = getattr(quad, name) if quad else nan
            if name == "ground_energy":
                # exact expression only; there is no quadrature route for E0
                c, q = primary.ground_energy, nan
            disc = abs(c - q) / abs(q) if not (math.isnan(c) or math.isnan(q)) else nan
            if not math.isnan(disc):
                worst = max(worst, disc)
            rows.append((name, c, q, disc))
        header = ("observable", "closed_form", "quadrature", "rel_discrepancy")
    else:
        for name in OBSERVABLES:
            rows.append((name, getattr(primary, name), primary.methods[name]))
        header = ("observable", "value", "method")
    rows.append(("H_over_E0", primary.mean_energy / E0) + ("",) * (len(header) - 2))
    rows.append(("F_over_E0", primary.free_energy / E0) + ("",) * (len(header) - 2))
    if args.format != "csv":
        out.write(
            f"Omega={poles.Omega:.17g} omega0={poles.omega0:.17g} gamma={poles.gamma:.17g} "
            f"m={poles.m:.17g} hbar={hbar:g} kT={kT:g} ({poles.regime})\n"
        )
    _emit(rows, header, args, out)
    if args.check and worst > args.check_tol:
        print(f"check failed: discrepancy {worst:.3e} > {args.check_tol:.1e}", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


@_with_output
def cmd_invert(args, out):
    spec, poles, _ = _parse_params(args)
    res = cubic_residuals(spec, poles)
    rows = [
        ("m", spec.m),
        ("K", spec.K),
        ("zeta", spec.zeta),
        ("tau", spec.tau),
        ("Omega", poles.Omega),
        ("omega0", poles.omega0),
        ("gamma", poles.gamma),
        ("regime", poles.regime),
        ("physical_regime", str(spec.in_physical_regime).lower()),
        ("residual_Omega", res[0]),
        ("residual_z1", res[1]),
        ("residual_z2", res[2]),
    ]
    _emit(rows, ("parameter", "value"), args, out)
    return EXIT_OK


def _parse_grid(text):
    """``g=0.1,0.5;omega=5,10[;T=0,0.1]`` -> SweepGrid."""
    fields = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        key, eq, values = part.partition("=")
        if not eq:
            raise UsageError(f"bad grid component {part!r}")
        key = key.strip()
        alias = {"g": "g", "gamma": "g", "omega": "omega", "W": "omega", "T": "T", "kT": "T"}
        if key not in alias:
            raise UsageError(f"unknown grid key {key!r}")
        fields[alias[key]] = sorted(set(_float_list(values)))
    if "g" not in fields or "omega" not in fields:
        raise UsageError("grid needs both g=... and omega=...")
    return SweepGrid(fields["g"], fields["omega"], tuple(fields.get("T", [0.0])))


def _grid_from_args(args):
    chosen = [x for x in ("fig1", "fig2", "default_grid") if getattr(args, x, False)]
    if args.grid:
        chosen.append("grid")
    if len(chosen) != 1:
        raise UsageError("give exactly one of --grid, --fig1, --fig2, --default-grid")
    which = chosen[0]
    if which == "fig1":
        return fig1_grid()
    if which == "fig2":
        return fig2_grid()
    if which == "default_grid":
        return standard_grid()
    return _parse_grid(args.grid)


def _write_rows(rows, args, out):
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, out)


def cmd_sweep(args, out):
    grid = _grid_from_args(args)
    rows = sweep(grid, _config(args), args.mode, args.workers)
    _write_rows(rows, args, out)
    if args.mode == "both":
        discs = [r.discrepancy for r in rows if r.discrepancy is not None]
        if discs:
            print(f"max closed-form/quadrature discrepancy: {max(discs):.3e}", file=sys.stderr)
    if any(r.failed for r in rows):
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_audit(args, out):
    grid = _grid_from_args(args)
    report = second_law_audit(grid, _config(args), args.mode, args.workers)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(report.rows, fh)
    out.write(report.summary() + "\n")
    passed = report.passed
    if args.asymptotic is not None:
        for g in grid.gamma_over_w0:
            asym = asymptotic_audit(g, _float_list(args.asymptotic), _config(args))
            out.write(asym.summary() + "\n")
            passed = passed and asym.passed
    return EXIT_OK if passed else EXIT_VIOLATION


def cmd_figure(args, out):
    if args.fig1 == args.fig2:
        raise UsageError("give exactly one of --fig1, --fig2")
    grid = fig1_grid() if args.fig1 else fig2_grid()
    rows = sweep(grid, _config(args), args.mode)
    _write_rows(rows, args, out)
    return EXIT_OK


def _add_param_flags(p):
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--poles", metavar="OMEGA,OMEGA0,GAMMA", help="pole parameters")
    group.add_argument("--physical", metavar="K=..,zeta=..,tau=..[,m=..]", help="physical parameters")
    _add_unit_flags(p)


def _add_unit_flags(p):
    p.add_argument("--units", choices=("reduced", "physical"), default="reduced")
    p.add_argument("--hbar", type=float, help="Planck constant (physical units)")
    p.add_argument("--mass", type=float, help="oscillator mass (physical units)")


def _add_output_flags(p, formats=True):
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--rtol", type=float, help=f"quadrature relative tolerance (env {TOL_ENV})")
    if formats:
        p.add_argument("--format", choices=("table", "csv"), default="table")


def _add_grid_flags(p):
    p.add_argument("--grid", help="e.g. 'g=0.1,1;omega=5,50;T=0'")
    p.add_argument("--fig1", action="store_true", help="40x40 surface grid over gamma and Omega")
    p.add_argument("--fig2", action="store_true", help="80-point coupling scan at Omega = 5 omega0")
    p.add_argument("--default-grid", action="store_true", help="30-point standard grid")
    p.add_argument("--mode", choices=MODES, default=CLOSED_FORM)
    p.add_argument("--workers", type=int, default=1)


def build_parser():
    parser = _Parser(prog="qbath", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate all observables at one point")
    _add_param_flags(p)
    p.add_argument("--T", type=float, default=0.0, help="bath temperature kT (energy units)")
    p.add_argument("--method", choices=(CLOSED_FORM, QUADRATURE), default=CLOSED_FORM)
    p.add_argument("--check", action="store_true", help="show both methods and their discrepancy")
    p.add_argument("--check-tol", type=float, default=1e-8)
    _add_output_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("invert", help="convert between physical and pole parameters")
    _add_param_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("sweep", help="CSV sweep over a parameter grid")
    _add_grid_flags(p)
    _add_output_flags(p, formats=False)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("audit", help="second-law audit; exit 1 on any violation")
    _add_grid_flags(p)
    p.add_argument("--asymptotic", metavar="OMEGAS", help="also run the large-Omega gap audit")
    _add_output_flags(p, formats=False)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("figure", help="figure data as CSV")
    p.add_argument("--fig1", action="store_true")
    p.add_argument("--fig2", action="store_true")
    p.add_argument("--mode", choices=MODES, default=CLOSED_FORM)
    _add_output_flags(p, formats=False)
    p.set_defaults(func=cmd_figure)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "T", 0.0) < 0 or (getattr(args, "workers", 1) or 1) < 1:
        print("qbath: error: --T must be >= 0 and --workers >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"qbath: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidParameters as exc:
        print(f"qbath: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ToleranceNotMet as exc:
        print(f"qbath: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except OSError as exc:
        print(f"qbath: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
