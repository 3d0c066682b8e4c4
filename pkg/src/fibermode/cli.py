"""Command-line front end: ``fibermode solve|radial|azimuthal|map|figures``.

Exit codes: 0 success, 2 invalid input, 3 solver failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import ExportError, FiberModeError, NoRootError, SingularityError
from .field_model import Sense
from .mode_solver import FiberSpec, Normalization, Polarization, TRAP_QA_MAX, solve_fundamental
from .profiles import (
    COLUMNS,
    ModeConfig,
    export,
    format_csv,
    format_json,
    merge_maps,
    sample_azimuthal,
    sample_grid2d,
    sample_radial,
)

EXIT_USAGE = 2
EXIT_SOLVER = 3
EXIT_IO = 4

NANOFIBER = dict(radius_um=0.2, wavelength_um=1.3, n1=1.4469, n2=1.0)
CONVENTIONAL_FIBER = dict(radius_um=4.0, wavelength_um=1.3, n1=1.4469, n2=1.4419)
FIGURE_RADII = (0.5, 1.5, 2.0)


def _fiber_args(p):
    g = p.add_argument_group("fiber")
    g.add_argument("--radius-um", type=float, default=NANOFIBER["radius_um"], help="core radius a [um]")
    g.add_argument("--wavelength-um", type=float, default=NANOFIBER["wavelength_um"], help="vacuum wavelength [um]")
    g.add_argument("--n1", type=float, default=NANOFIBER["n1"], help="core index")
    g.add_argument("--n2", type=float, default=NANOFIBER["n2"], help="cladding index")


def _mode_args(p):
    g = p.add_argument_group("mode")
    g.add_argument("--polarization", choices=[e.value for e in Polarization], default="quasilinear")
    g.add_argument("--phi0", type=float, default=0.0, help="polarization axis angle [rad] (quasi-linear)")
    g.add_argument("--sense", choices=[e.value for e in Sense], default="clockwise", help="circulation (rotating)")
    g.add_argument("--normalization", choices=[e.value for e in Normalization], default="unit_amplitude")


def _output_args(p):
    p.add_argument("--columns", help=f"comma-separated subset of {','.join(COLUMNS)}")
    p.add_argument("--format", choices=["csv", "json"], help="output format (default: from --out suffix, else csv)")
    p.add_argument("--out", help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibermode",
        description="Exact HE11 mode of a step-index fiber: solve, sample and export field profiles.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve the eigenvalue equation and print mode parameters")
    _fiber_args(p)
    p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("radial", help="radial profile along a fixed azimuth")
    _fiber_args(p)
    _mode_args(p)
    p.add_argument("--direction", default="x", help="x, y, diagonal, or an angle in radians")
    p.add_argument("--r-max", type=float, default=3.0, help="largest r/a")
    p.add_argument("--count", type=int, default=301)
    _output_args(p)

    p = sub.add_parser("azimuthal", help="azimuthal profile at fixed r/a")
    _fiber_args(p)
    _mode_args(p)
    p.add_argument("--r", type=float, default=1.5, help="r/a")
    p.add_argument("--count", type=int, default=360)
    _output_args(p)

    p = sub.add_parser("map", help="cross-section map on a Cartesian grid")
    _fiber_args(p)
    _mode_args(p)
    p.add_argument("--extent", type=float, default=3.0, help="half-width in units of a")
    p.add_argument("--resolution", type=int, default=201)
    _output_args(p)

    p = sub.add_parser("figures", help="write the data behind every figure into a directory")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    return parser


def _spec(args) -> FiberSpec:
    return FiberSpec(args.radius_um, args.wavelength_um, args.n1, args.n2)


def _mode(args) -> ModeConfig:
    return ModeConfig(_spec(args), args.polarization, args.phi0, args.sense, args.normalization)


def _columns(args):
    if args.columns is None:
        return None
    return [c.strip() for c in args.columns.split(",") if c.strip()]


def _emit(fmap, args):
    fmt = args.format
    if fmt is None:
        fmt = "json" if args.out and args.out.endswith(".json") else "csv"
    if args.out:
        export(fmap, fmt, args.out)
    else:
        sys.stdout.write(format_json(fmap) if fmt == "json" else format_csv(fmap))


def _cmd_solve(args):
    spec = _spec(args)
    sol = solve_fundamental(spec)
    payload = {"fiber": spec.as_dict(), "solution": sol.scalars()}
    if args.json:
        print(json.dumps(payload, indent=2))
        return
    sc = sol.scalars()
    print(f"fiber: a = {spec.core_radius_a} um, lambda = {spec.wavelength_lambda} um, "
          f"n1 = {spec.n1}, n2 = {spec.n2}")
    for key in ("ha", "qa", "beta_a", "s", "V", "penetration_length_over_a"):
        print(f"  {key:28s} {sc[key]:.10g}")
    for key in ("beta_per_um", "h_per_um", "q_per_um", "penetration_length_um", "residual"):
        print(f"  {key:28s} {sc[key]:.10g}")
    print(f"  single_mode (V < 2.405)      {sol.single_mode}")
    print(f"  trap_condition (qa < {TRAP_QA_MAX})  {sol.trap_condition}")


def _preset_mode(polarization, fiber=NANOFIBER):
    spec = FiberSpec(fiber["radius_um"], fiber["wavelength_um"], fiber["n1"], fiber["n2"])
    return ModeConfig(spec, polarization)


def figure_maps():
    """(name, FieldMap) for each of the eleven figures, in order."""
    ql, rot = _preset_mode("quasilinear"), _preset_mode("rotating")
    conv = _preset_mode("quasilinear", CONVENTIONAL_FIBER)
    comp = ["Ex2", "Ey2", "Ez2"]

    def at_radii(mode, columns):
        return merge_maps([(f"_r{r:g}", sample_azimuthal(mode, r, 360, columns)) for r in FIGURE_RADII])

    return [
        ("fig01_conventional_radial_x", sample_radial(conv, "x", 2.0, 401, ["E2", "Ex2", "Ey2", "Ez2"])),
        ("fig02_quasilinear_total_map", sample_grid2d(ql, 3.0, 201, ["E2"])),
        ("fig03_quasilinear_radial_xy", merge_maps([
            ("_x", sample_radial(ql, "x", 3.0, 601, ["E2", "E2_LP"])),
            ("_y", sample_radial(ql, "y", 3.0, 601, ["E2", "E2_LP"])),
        ])),
        ("fig04_quasilinear_component_maps", sample_grid2d(ql, 3.0, 201, comp)),
        ("fig05_quasilinear_azimuthal", at_radii(ql, comp)),
        ("fig06_quasilinear_orientation", at_radii(ql, ["theta"])),
        ("fig07_rotating_total_map", sample_grid2d(rot, 3.0, 201, ["E2"])),
        ("fig08_rotating_radial", sample_radial(rot, "x", 5.0, 501, ["E2", "E2_LP"])),
        ("fig09_rotating_cylindrical_components", sample_radial(rot, "x", 3.0, 601, ["Er2", "Ephi2", "Ez2"])),
        ("fig10_rotating_component_maps", sample_grid2d(rot, 3.0, 201, comp)),
        ("fig11_rotating_azimuthal", at_radii(rot, comp + ["epsilon"])),
    ]


def _cmd_figures(args):
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ExportError(f"cannot create {out}: {exc.strerror or exc}") from exc
    for name, fmap in figure_maps():
        path = out / f"{name}.{args.format}"
        export(fmap, args.format, path)
        print(path)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "solve":
            _cmd_solve(args)
        elif args.command == "radial":
            _emit(sample_radial(_mode(args), args.direction, args.r_max, args.count, _columns(args)), args)
        elif args.command == "azimuthal":
            _emit(sample_azimuthal(_mode(args), args.r, args.count, _columns(args)), args)
        elif args.command == "map":
            _emit(sample_grid2d(_mode(args), args.extent, args.resolution, _columns(args)), args)
        elif args.command == "figures":
            _cmd_figures(args)
    except (NoRootError, SingularityError) as exc:
        print(f"fibermode: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except ExportError as exc:
        print(f"fibermode: {exc}", file=sys.stderr)
        return EXIT_IO
    except FiberModeError as exc:
        print(f"fibermode: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
