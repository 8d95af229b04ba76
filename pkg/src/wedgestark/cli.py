"""Command-line interface.

Units everywhere: lengths in effective Bohr radii a*, energies in effective
Rydbergs R*, fields in F0 = e/(2 eps a*^2), angles in radians.
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import os
import sys
import tempfile

from . import __version__
from .energy import ground_state
from .errors import NumericalError, PartialSweep, ValidationError, WedgeStarkError
from .model import FieldSpec, unit_scales, validate_geometry
from .oracle import DEFAULT_GRID, PolarGrid, fd_ground_energy
from .quadrature import DEFAULT_NODES
from .sweep import AXES, WORKERS_ENV, SweepSpec, run_sweep
from .variational import DEFAULT_TOL, stark_shift

CSV_HEADER = "axis_value,delta_e_ry,beta_star,e_min_ry,e0_ry,evals,oracle_delta_e_ry"
EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 1, 2

log = logging.getLogger("wedgestark")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    # 17 significant digits always round-trip a double
    return f"{x:.16e}"


def _float_list(text: str):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _grid(text: str):
    try:
        nr, nt = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like NRxNT, e.g. 96x96, got {text!r}") from None
    return nr, nt


def rerun_command(spec: SweepSpec, out: str) -> str:
    parts = ["wedgestark", "sweep", "--axis", spec.axis, "--values", ",".join(repr(v) for v in spec.values)]
    for flag, key in (("--d", "d"), ("--theta0", "theta0"), ("--field", "F"), ("--L", "L")):
        if key in spec.fixed():
            parts += [flag, repr(spec.fixed()[key])]
    parts += ["--nr", str(spec.nr), "--nt", str(spec.nt), "--tol", repr(spec.tol)]
    if spec.with_oracle:
        parts += ["--oracle", "--grid", "x".join(str(n) for n in spec.oracle_grid)]
    parts += ["--out", out]
    return " ".join(parts)


def write_csv(table, path, command: str | None = None) -> None:
    """Write a sweep table atomically: temp file in the target directory, then rename."""
    meta = table.metadata
    lines = [
        f"# wedgestark {meta.get('version', __version__)}",
        f"# axis: {table.axis}",
        "# parameters: " + " ".join(f"{k}={meta[k]!r}" for k in sorted(meta) if k != "version"),
        "# units: lengths a*, energies R*, field F0, angles rad",
    ]
    if command:
        lines.append(f"# command: {command}")
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".wedgestark-", suffix=".csv.tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            for line in lines:
                fh.write(line + "\n")
            fh.write(CSV_HEADER + "\n")
            for r in table.records:
                oracle = "" if r.oracle_delta_e is None else _fmt(r.oracle_delta_e)
                row = [_fmt(r.axis_value), _fmt(r.delta_e), _fmt(r.beta_star), _fmt(r.e_min), _fmt(r.e0),
                       str(r.evaluations), oracle]
                fh.write(",".join(row) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_csv(path):
    """Parse a file written by :func:`write_csv` into (comments, header, rows)."""
    comments, body = [], []
    with open(path, encoding="utf-8", newline="") as fh:
        for line in fh:
            (comments if line.startswith("#") else body).append(line.rstrip("\n"))
    reader = csv.reader(body)
    header = next(reader)
    rows = [dict(zip(header, row)) for row in reader]
    return comments, ",".join(header), rows


def _add_geometry(p, L=True, field=False, d_default=None, theta_default=None):
    p.add_argument("--d", type=float, required=d_default is None, default=d_default,
                   help="slice radius in effective Bohr radii a*")
    p.add_argument("--theta0", type=float, required=theta_default is None, default=theta_default,
                   help="angular aperture in radians (0 < theta0 <= 2*pi)")
    if L:
        p.add_argument("--L", type=float, default=1.0, help="thickness in a* (default 1)")
    if field:
        p.add_argument("--field", type=float, required=True, help="field magnitude in units of F0 (>= 0, along +x)")


def _add_quadrature(p):
    p.add_argument("--nr", type=int, default=DEFAULT_NODES, help="radial Gauss-Legendre nodes (default %(default)s)")
    p.add_argument("--nt", type=int, default=DEFAULT_NODES, help="angular Gauss-Legendre nodes (default %(default)s)")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                   help="relative bracket width for the beta search (default %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="wedgestark",
        description="Ground state and variational Stark shift of an electron in a wedge-shaped quantum box. "
                    "Lengths in a*, energies in R*, fields in F0, angles in radians.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ground-state", help="field-free order m0, first Bessel zero and energy E0 (R*)",
                       description="Print m0 = pi/theta0, the first zero of J_m0 and E0 = (alpha/d)^2 + (pi/L)^2 "
                                   "in R*. d and L in a*, theta0 in radians.")
    _add_geometry(p)

    p = sub.add_parser("shift", help="variational Stark shift for one geometry and field",
                       description="Minimise the trial energy over beta (1/a*) and print the Stark shift in R*. "
                                   "d, L in a*; theta0 in radians; field in F0.")
    _add_geometry(p, field=True)
    _add_quadrature(p)

    p = sub.add_parser("sweep", help="scan the Stark shift along one axis and write CSV",
                       description="Scan radius (a*), field (F0) or aperture (radians) and write a CSV with energies "
                                   f"in R*. Worker count defaults to ${WORKERS_ENV} or 1.")
    p.add_argument("--axis", choices=AXES, required=True, help="parameter to sweep")
    p.add_argument("--values", type=_float_list, required=True,
                   help="comma-separated, strictly increasing values of the swept parameter")
    _add_geometry(p, d_default=10.0, theta_default=math.pi / 20)
    p.add_argument("--field", type=float, default=1.0, help="field in F0 when not swept (default 1)")
    _add_quadrature(p)
    p.add_argument("--oracle", action="store_true", help="also compute the finite-difference Stark shift")
    p.add_argument("--grid", type=_grid, default=DEFAULT_GRID, help="oracle grid NRxNT (default 96x96)")
    p.add_argument("--workers", type=int, default=None, help=f"parallel points (default ${WORKERS_ENV} or 1)")
    p.add_argument("--out", required=True, help="output CSV path (written atomically)")

    p = sub.add_parser("oracle", help="finite-difference ground energy and Stark shift",
                       description="Solve the planar problem on a cell-centred polar grid. Energies in R* "
                                   "(planar part, without (pi/L)^2); d in a*, theta0 in radians, field in F0.")
    _add_geometry(p, L=False, field=True)
    p.add_argument("--grid", type=_grid, default=DEFAULT_GRID, help="grid NRxNT (default 96x96)")

    p = sub.add_parser("units", help="physical size of a*, R* and F0 for a material",
                       description="Print a* (nm), R* (meV) and F0 (kV/cm) for the given m*/m_e and dielectric "
                                   "constant.")
    p.add_argument("--mass-ratio", type=float, required=True, help="effective mass m*/m_e")
    p.add_argument("--epsilon", type=float, default=1.0, help="relative dielectric constant (default 1)")
    return parser


def _print_fields(pairs, out):
    for key, value in pairs:
        if isinstance(value, float):
            value = repr(value)
        print(f"{key} = {value}", file=out)


def _cmd_ground_state(args, out):
    gs = ground_state(validate_geometry(args.d, args.theta0, args.L))
    _print_fields([("m0", gs.m0), ("alpha", gs.alpha), ("E0_ry", gs.E0), ("planar_E_ry", gs.planar_energy)], out)


def _cmd_shift(args, out):
    g = validate_geometry(args.d, args.theta0, args.L)
    res = stark_shift(g, FieldSpec(args.field), args.nr, args.nt, args.tol)
    _print_fields([
        ("beta_star", res.beta_star),
        ("energy_ry", res.energy),
        ("stark_shift_ry", res.stark_shift),
        ("E0_ry", res.E0),
        ("evaluations", res.evaluations),
        ("converged", res.converged),
        ("boundary_minimum", res.boundary),
        ("bracket", " ".join(repr(v) for v in res.bracket)),
        ("multimodal_warning", res.multimodal),
    ], out)


def _cmd_sweep(args, out):
    spec = SweepSpec(axis=args.axis, values=args.values, d=args.d, theta0=args.theta0, F=args.field, L=args.L,
                     nr=args.nr, nt=args.nt, tol=args.tol, with_oracle=args.oracle, oracle_grid=args.grid)
    table = run_sweep(spec, workers=args.workers)
    write_csv(table, args.out, command=rerun_command(spec, args.out))
    print(f"wrote {len(table.records)} rows to {args.out}", file=out)


def _cmd_oracle(args, out):
    g = validate_geometry(args.d, args.theta0, 1.0)
    grid = PolarGrid(*args.grid, g)
    field = FieldSpec(args.field)
    with_field = fd_ground_energy(g, field, grid)
    without = fd_ground_energy(g, 0.0, grid) if field.F else with_field
    _print_fields([
        ("grid", f"{grid.nr}x{grid.nt}"),
        ("E_fd_planar_ry", with_field.energy),
        ("E_fd_planar_zero_field_ry", without.energy),
        ("delta_e_fd_ry", with_field.energy - without.energy),
        ("residual", with_field.residual),
    ], out)


def _cmd_units(args, out):
    u = unit_scales(args.mass_ratio, args.epsilon)
    _print_fields([
        ("mass_ratio", u.effective_mass_ratio),
        ("epsilon", u.epsilon),
        ("bohr_star_nm", u.bohr_star),
        ("rydberg_star_meV", u.rydberg_star),
        ("field_unit_kV_per_cm", u.field_unit),
    ], out)


COMMANDS = {
    "ground-state": _cmd_ground_state,
    "shift": _cmd_shift,
    "sweep": _cmd_sweep,
    "oracle": _cmd_oracle,
    "units": _cmd_units,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args, out)
    except PartialSweep as exc:
        print(f"error: {exc} ({len(exc.records)} points completed; no file written)", file=sys.stderr)
        return EXIT_VALIDATION if isinstance(exc.cause, ValidationError) else EXIT_NUMERICAL
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (NumericalError, WedgeStarkError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
