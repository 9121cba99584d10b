"""Command-line front end.

Lengths carry explicit units: ``nm``, ``um`` or ``lp`` (multiples of the
plasma wavelength of the relevant material). Walls are written
``perfect``, ``local:Au`` (Drude), ``plasma:Au``, ``nonlocal:Au`` or
``fixed:R`` / ``fixed:RS,RP``.

Exit status: 0 on success, 2 if some table rows failed, 1 on error.
"""

from __future__ import annotations

import argparse
import math
import re
import sys

import numpy as np

from . import __version__
from .emit import Table, emit, force_table, material_provenance, sweep_table
from .errors import CasimirError
from .force import (
    DEFAULT_ETA_L,
    ForceConfig,
    Route,
    compute_force,
    gap_grid,
    percent_difference,
    sweep,
)
from .materials import CONSTANTS, ComplexFrequency, Material, material_table
from .response import ModePoint, Polarization, WallSpec, wall_reflection
from .spectrum import density_of_states

_LENGTH = re.compile(r"^\s*([-+0-9.eE]+)\s*(nm|um|µm|lp)\s*$")
_ROUTES = {"imag": Route.IMAGINARY, "imaginary-axis": Route.IMAGINARY, "real": Route.REAL, "real-contour": Route.REAL}


class UsageError(CasimirError):
    pass


def parse_length(text: str, material: Material | None = None) -> float:
    """Length in metres from ``"100nm"``, ``"1um"`` or ``"0.5lp"``."""
    m = _LENGTH.match(text)
    if not m:
        raise UsageError(f"cannot parse length {text!r}; give a unit, e.g. 100nm, 1um or 0.5lp")
    value, unit = float(m.group(1)), m.group(2)
    if unit == "nm":
        return value * 1e-9
    if unit in ("um", "µm"):
        return value * 1e-6
    if material is None:
        raise UsageError(f"{text!r}: 'lp' units need a material wall")
    return value * material.lambda_p


def _lookup(name: str, table: dict[str, Material]) -> Material:
    try:
        return table[name]
    except KeyError:
        raise UsageError(f"unknown material {name!r}; available: {', '.join(sorted(table))}") from None


def parse_wall(text: str, table: dict[str, Material]) -> WallSpec:
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    if kind in ("perfect", "mirror"):
        return WallSpec.perfect()
    if kind == "fixed":
        parts = [complex(p.replace(" ", "")) for p in arg.split(",") if p]
        if len(parts) not in (1, 2):
            raise UsageError(f"fixed wall needs one or two amplitudes, got {text!r}")
        return WallSpec.fixed(*parts)
    builders = {"local": WallSpec.local, "drude": WallSpec.local, "plasma": WallSpec.plasma,
                "nonlocal": WallSpec.nonlocal_, "hydrodynamic": WallSpec.nonlocal_}
    if kind not in builders:
        raise UsageError(f"unknown wall kind {kind!r}; use perfect, local, plasma, nonlocal or fixed")
    return builders[kind](_lookup(arg.strip(), table))


def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")
    p.add_argument("--materials-file", help="material database (default: bundled, or $CASIMIR_MATERIALS)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casimir-impedance",
        description="Casimir pressure between planar walls from surface impedances.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("force", help="pressure for one pair of walls")
    p.add_argument("--wall1", required=True)
    p.add_argument("--wall2", required=True)
    p.add_argument("--gap", required=True, help="e.g. 1um, 100nm, 0.5lp")
    p.add_argument("--route", choices=sorted(_ROUTES), default="imag")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--eta", type=float, nargs="+", help="regulator eta*L for the real route")
    _common(p)

    p = sub.add_parser("sweep", help="pressure against gap for one material")
    p.add_argument("--material", required=True)
    p.add_argument("--model", choices=("local", "nonlocal", "both"), default="both")
    p.add_argument("--gap-min", required=True)
    p.add_argument("--gap-max", required=True)
    p.add_argument("--points", type=int, default=25)
    p.add_argument("--scale", choices=("log", "linear"), default="log")
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--figure", help="also render a PNG/PDF figure to this path")
    _common(p)

    p = sub.add_parser("compare", help="local/nonlocal percent difference for several metals")
    p.add_argument("--materials", default="K,Au,Al")
    p.add_argument("--gap-min", default="0.1lp")
    p.add_argument("--gap-max", default="10lp")
    p.add_argument("--points", type=int, default=25)
    p.add_argument("--scale", choices=("log", "linear"), default="log")
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--figure", help="also render a PNG/PDF figure to this path")
    _common(p)

    p = sub.add_parser("dos", help="cavity mode density per unit k^2")
    p.add_argument("--wall1", required=True)
    p.add_argument("--wall2", required=True)
    p.add_argument("--gap", required=True)
    p.add_argument("--q-par", type=float, default=0.0, help="parallel wavevector Q*L")
    p.add_argument("--k-min", type=float, default=0.1, help="normal wavevector k*L")
    p.add_argument("--k-max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--eta", type=float, default=1e-3, help="regulator Im(k)*L")
    _common(p)

    p = sub.add_parser("reflect", help="reflection amplitude of one wall")
    p.add_argument("--material", required=True)
    p.add_argument("--model", choices=("local", "plasma", "nonlocal"), default="local")
    p.add_argument("--pol", choices=("s", "p"), required=True)
    p.add_argument("--axis", choices=("real", "imag"), default="imag")
    p.add_argument("--freq-min", type=float, default=0.05, help="omega/omega_p")
    p.add_argument("--freq-max", type=float, default=3.0)
    p.add_argument("--points", type=int, default=60)
    p.add_argument("--q-par", type=float, default=1.0, help="parallel wavevector Q*lambda_p")
    _common(p)
    return parser


def _single_material_route(walls):
    mats = [w.material for w in walls if w.material is not None]
    return mats[0] if mats else None


def _cmd_force(args, table):
    w1 = parse_wall(args.wall1, table)
    w2 = parse_wall(args.wall2, table)
    L = parse_length(args.gap, _single_material_route((w1, w2)))
    route = _ROUTES[args.route]
    eta = None
    if args.eta:
        eta = tuple(e / L for e in args.eta) if len(args.eta) > 1 else args.eta[0] / L
    cfg = ForceConfig(w1, w2, L, route, args.tol, eta)
    res = compute_force(cfg)
    meta = {
        "walls": f"{w1.describe()} | {w2.describe()}",
        "route": route.value,
        "tol": f"{args.tol:g}",
        "eta_L": " ".join(f"{e:g}" for e in (args.eta or DEFAULT_ETA_L)) if route is Route.REAL else "n/a",
    }
    for w in (w1, w2):
        if w.material is not None:
            meta[f"material_{w.material.name}"] = material_provenance(w.material)
    return force_table([res], meta), 0


def _cmd_sweep(args, table):
    m = _lookup(args.material, table)
    L_min, L_max = parse_length(args.gap_min, m), parse_length(args.gap_max, m)
    if args.model == "both":
        sw = sweep(m, L_min, L_max, args.points, args.scale, args.tol, workers=args.workers)
        return sweep_table(sw), 2 if sw.failed else 0
    wall = WallSpec.local(m) if args.model == "local" else WallSpec.nonlocal_(m)
    rows, failed = [], []
    for L in gap_grid(L_min, L_max, args.points, args.scale):
        try:
            r = compute_force(ForceConfig(wall, wall, float(L), Route.IMAGINARY, args.tol))
            rows.append([L / m.lambda_p, L, r.pressure, r.abs_error, r.eta_casimir])
        except CasimirError as exc:
            failed.append(f"L={L:.3e}: {exc}")
            rows.append([L / m.lambda_p, L] + [float("nan")] * 3)
    meta = {"material": material_provenance(m), "model": args.model, "route": Route.IMAGINARY.value,
            "tol": f"{args.tol:g}"}
    if failed:
        meta["failed_rows"] = "; ".join(failed)
    cols = ["L_over_lambda_p", "L_m", "pressure_Pa", "abs_error_Pa", "eta_casimir"]
    return Table(cols, rows, meta), 2 if failed else 0


def _lp_value(text):
    m = _LENGTH.match(text)
    if not m or m.group(2) != "lp":
        raise UsageError(f"compare needs gaps in lp units (multiples of lambda_p), got {text!r}")
    return float(m.group(1))


def _cmd_compare(args, table):
    names = [n.strip() for n in args.materials.split(",") if n.strip()]
    mats = [_lookup(n, table) for n in names]
    x = gap_grid(_lp_value(args.gap_min), _lp_value(args.gap_max), args.points, args.scale)
    cols = ["L_over_lambda_p"] + [f"delta_percent_{n}" for n in names]
    data = np.full((x.size, len(mats)), np.nan)
    failed = []
    for j, m in enumerate(mats):
        sw = sweep(m, x[0] * m.lambda_p, x[-1] * m.lambda_p, x.size, args.scale, args.tol, workers=args.workers)
        for i, row in enumerate(sw.rows):
            data[i, j] = row.delta_percent
        failed += [f"{m.name} L={r.L:.3e}: {r.error}" for r in sw.failed]
    rows = [[float(xi)] + [float(v) for v in data[i]] for i, xi in enumerate(x)]
    meta = {"route": Route.IMAGINARY.value, "tol": f"{args.tol:g}", "eta_L": "n/a"}
    for m in mats:
        meta[f"material_{m.name}"] = material_provenance(m)
    if failed:
        meta["failed_rows"] = "; ".join(failed)
    return Table(cols, rows, meta), 2 if failed else 0


def _cmd_dos(args, table):
    w1 = parse_wall(args.wall1, table)
    w2 = parse_wall(args.wall2, table)
    L = parse_length(args.gap, _single_material_route((w1, w2)))
    k = (np.linspace(args.k_min, args.k_max, args.points) + 1j * args.eta) / L
    Q = np.full(k.shape, args.q_par / L)
    omega = ComplexFrequency.real(CONSTANTS.c * np.sqrt(k**2 + Q**2 + 0j))
    mp = ModePoint(Q, omega, omega.value / CONSTANTS.c, k)
    amps = {pol: (wall_reflection(w1, pol, mp), wall_reflection(w2, pol, mp)) for pol in Polarization}
    dos = density_of_states(*amps[Polarization.S], *amps[Polarization.P], k, L, Q)
    rows = [[float(Q[i]), float(k[i].real), float(dos.rho_s[i]), float(dos.rho_p[i]), float(dos.total[i])]
            for i in range(k.size)]
    meta = {"walls": f"{w1.describe()} | {w2.describe()}", "gap_m": f"{L:.8e}", "eta_L": f"{args.eta:g}",
            "units": "Q, k in 1/m; rho per unit k^2 in m"}
    return Table(["Q", "k", "rho_s", "rho_p", "rho_total"], rows, meta), 0


def _cmd_reflect(args, table):
    m = _lookup(args.material, table)
    wall = {"local": WallSpec.local, "plasma": WallSpec.plasma, "nonlocal": WallSpec.nonlocal_}[args.model](m)
    pol = Polarization(args.pol)
    f = np.linspace(args.freq_min, args.freq_max, args.points)
    if args.axis == "imag":
        w = ComplexFrequency.imaginary(f * m.omega_p)
    else:
        w = ComplexFrequency.real(f * m.omega_p)
    Q = np.full(f.shape, args.q_par / m.lambda_p)
    r = np.asarray(wall_reflection(wall, pol, ModePoint.at(Q, w)))
    rows = [[float(f[i]), args.q_par, float(r[i].real), float(r[i].imag)] for i in range(f.size)]
    meta = {"material": material_provenance(m), "model": args.model, "pol": args.pol,
            "axis": "imaginary-axis" if args.axis == "imag" else "real-axis"}
    freq_col = "xi_over_omega_p" if args.axis == "imag" else "omega_over_omega_p"
    return Table([freq_col, "Q_times_lambda_p", "r_re", "r_im"], rows, meta), 0


_COMMANDS = {"force": _cmd_force, "sweep": _cmd_sweep, "compare": _cmd_compare, "dos": _cmd_dos,
             "reflect": _cmd_reflect}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 1
    try:
        table = material_table(args.materials_file)
        out, status = _COMMANDS[args.command](args, table)
        emit(out, args.format, args.output, stream=stdout)
        if getattr(args, "figure", None):
            from . import report

            plot = report.plot_compare if args.command == "compare" else report.plot_sweep
            plot(out, args.figure)
    except (CasimirError, OSError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    if status:
        stderr.write("warning: some rows failed, see the failed_rows metadata\n")
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
