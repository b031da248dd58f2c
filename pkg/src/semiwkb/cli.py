"""Command-line interface: ``semiwkb <subcommand> [options]``.

Exit status is 0 on success, 1 on a usage error and 2 on a numerical failure.
Hydrogen-mode output (``table1``) is in eV bindings; everything else is in
the natural units of the supplied mass and string tension (GeV for hadrons).
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import io
import json
import logging
import math
import os
import sys
from typing import Callable, Dict, Iterable, List, Sequence

import numpy as np

from . import closed, regge
from .errors import (
    DomainError,
    InvalidQuantumNumbers,
    NonNormalizableError,
    SemiWkbError,
    SupercriticalCouplingError,
    UsageError,
)
from .model import Coupling, Family, PotentialSpec, QuantumNumbers
from .oracle import ode_eigenvalue_kg
from .phase import contour_phase_linear
from .quantize import DEFAULT_TOLERANCE, closed_form_eigenvalue, solve_radial_eigenvalue
from .wavefn import wkb_radial_wavefunction, wkb_wavefunction, sample_radii

logger = logging.getLogger("semiwkb")

SIGNIFICANT_DIGITS = 9
USAGE_ERRORS = (
    UsageError,
    DomainError,
    InvalidQuantumNumbers,
    NonNormalizableError,
    SupercriticalCouplingError,
)

Record = Dict[str, object]


class CliUsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliUsageError(f"{self.prog}: error: {message}")


# ---------------------------------------------------------------- formatting


def _format_value(value):
    if isinstance(value, (bool, np.bool_)):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            return None
        return float(f"{value:.{SIGNIFICANT_DIGITS}g}")
    return value


def _text(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.{SIGNIFICANT_DIGITS}g}"
    return str(value)


def render(records: Sequence[Record], fmt: str) -> str:
    rows = [{k: _format_value(v) for k, v in rec.items()} for rec in records]
    if fmt == "json":
        return "".join(json.dumps(row) + "\n" for row in rows)
    fields: List[str] = []
    for row in rows:
        fields.extend(k for k in row if k not in fields)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            writer.writerow([_text(row.get(k)) for k in fields])
        return buf.getvalue()
    cells = [fields] + [[_text(row.get(k)) for k in fields] for row in rows]
    widths = [max(len(line[i]) for line in cells) for i in range(len(fields))]
    return "".join(
        "  ".join(cell.rjust(width) for cell, width in zip(line, widths)).rstrip() + "\n"
        for line in cells
    )


def parse_csv_output(text: str) -> List[Record]:
    """Inverse of the CSV writer, used to check JSON/CSV round-trips."""
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        rec = {}
        for key, raw in row.items():
            if raw == "":
                rec[key] = None
                continue
            try:
                rec[key] = int(raw)
            except ValueError:
                try:
                    rec[key] = float(raw)
                except ValueError:
                    rec[key] = {"True": True, "False": False}.get(raw, raw)
        out.append(rec)
    return out


# ---------------------------------------------------------------- helpers


def _threads() -> int:
    raw = os.environ.get("SEMIWKB_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise CliUsageError(f"SEMIWKB_THREADS must be an integer, got {raw!r}")
    return n if n > 0 else (os.cpu_count() or 1)


def _parallel_map(fn: Callable, items: Iterable) -> list:
    items = list(items)
    workers = min(_threads(), max(len(items), 1))
    if workers == 1:
        return [fn(item) for item in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _spec_from_args(args) -> PotentialSpec:
    family = Family(args.family)
    if family is Family.COULOMB:
        if args.alpha is None:
            raise CliUsageError("--alpha is required for the Coulomb family")
        if args.kappa is not None or args.alpha_s is not None:
            raise CliUsageError("--kappa/--alpha-s do not apply to the Coulomb family")
        return PotentialSpec(family, args.coupling, mass=args.mass, alpha=args.alpha, two_body=args.two_body)
    if args.kappa is None:
        raise CliUsageError(f"--kappa is required for the {family.value} family")
    if args.alpha is not None:
        raise CliUsageError("use --alpha-s for the funnel coupling")
    alpha = 0.0
    if family is Family.FUNNEL:
        alpha = args.alpha_s if args.alpha_s is not None else 0.0
    elif args.alpha_s is not None:
        raise CliUsageError("--alpha-s applies to the funnel family only")
    return PotentialSpec(family, args.coupling, mass=args.mass, alpha=alpha, kappa=args.kappa, two_body=args.two_body)


def _qn_range(args) -> List[QuantumNumbers]:
    if args.nr_max < 0 or args.l_max < 0:
        raise CliUsageError("--nr-max and --l-max must be non-negative")
    return [QuantumNumbers(n_r, l) for n_r in range(args.nr_max + 1) for l in range(args.l_max + 1)]


def _energy_record(spec: PotentialSpec, result) -> Record:
    rec: Record = {
        "family": spec.family.value,
        "coupling": spec.coupling.value,
        "n_r": result.qn.n_r,
        "l": result.qn.l,
        "n": result.qn.n,
        "method": result.method.value,
        "energy": result.energy,
        "energy_sq": result.energy_sq,
    }
    if spec.family is Family.COULOMB:
        rec["binding"] = result.energy - spec.mass
    rec["residual"] = result.residual
    return rec


def _ode_available(spec: PotentialSpec) -> bool:
    return spec.family is Family.COULOMB and spec.coupling is Coupling.VECTOR and not spec.two_body


# ---------------------------------------------------------------- subcommands


def cmd_spectrum(args) -> List[Record]:
    spec = _spec_from_args(args)
    methods = ["closed", "wkb", "ode"] if args.method == "all" else [args.method]
    if args.method == "ode" and not _ode_available(spec):
        raise CliUsageError("--method ode needs --family coulomb --coupling vector (Klein-Gordon oracle)")
    if "ode" in methods and not _ode_available(spec):
        methods.remove("ode")
    qns = _qn_range(args)
    for qn in qns:
        spec.check_solvable(qn.l)

    def solve(qn):
        rows = []
        for method in methods:
            if method == "closed":
                result = closed_form_eigenvalue(qn, spec)
            elif method == "wkb":
                result = solve_radial_eigenvalue(qn, spec, tolerance=args.tolerance)
            else:
                result = ode_eigenvalue_kg(qn, spec.mass, spec.alpha)
            rows.append(_energy_record(spec, result))
        return rows

    return [row for rows in _parallel_map(solve, qns) for row in rows]


def cmd_compare(args) -> List[Record]:
    spec = _spec_from_args(args)
    qns = _qn_range(args)
    for qn in qns:
        spec.check_solvable(qn.l)

    def compare(qn):
        ref = closed_form_eigenvalue(qn, spec).energy
        wkb = solve_radial_eigenvalue(qn, spec, tolerance=args.tolerance).energy
        rec: Record = {
            "n_r": qn.n_r,
            "l": qn.l,
            "closed": ref,
            "wkb": wkb,
            "wkb_rel_diff": (wkb - ref) / ref,
        }
        if _ode_available(spec):
            ode = ode_eigenvalue_kg(qn, spec.mass, spec.alpha).energy
            rec["ode"] = ode
            rec["ode_rel_diff"] = (ode - ref) / ref
        if spec.family is Family.LINEAR and spec.coupling is Coupling.SCALAR:
            report = contour_phase_linear(ref, spec, qn)
            rec["contour_residue"] = report.value
            rec["contour_cuts"] = sum(report.cut_contributions)
            rec["contour_discrepancy"] = report.cut_discrepancy
        return rec

    return _parallel_map(compare, qns)


def cmd_table1(args) -> List[Record]:
    if not args.calibrate_nr > 0 or not args.inv_alpha > 0:
        raise CliUsageError("--calibrate-nr and --inv-alpha must be positive")
    mass, alpha = closed.hydrogen_calibration(args.calibrate_nr, args.inv_alpha)
    records = []
    worst = 0.0
    for row, ref in zip(closed.table1(mass, alpha), closed.REFERENCE_HYDROGEN_TABLE):
        devs = [row.e_nr - ref[2], row.e_kg - ref[3], row.e_sc - ref[4]]
        worst = max(worst, *map(abs, devs))
        records.append(
            {
                "l": row.qn.l,
                "n_r": row.qn.n_r,
                "e_nr_ev": row.e_nr,
                "e_kg_ev": row.e_kg,
                "e_sc_ev": row.e_sc,
                "ref_nr_ev": ref[2],
                "ref_kg_ev": ref[3],
                "ref_sc_ev": ref[4],
                "dev_nr_ev": devs[0],
                "dev_kg_ev": devs[1],
                "dev_sc_ev": devs[2],
            }
        )
    if not args.quiet:
        print(
            f"# calibration m*alpha^2/2 = {args.calibrate_nr} eV, 1/alpha = {args.inv_alpha}; "
            f"largest deviation from the published table {worst:.2e} eV "
            "(ground-state KG ~3.6e-6 eV: the original constants are not recoverable)",
            file=args.stderr,
        )
    return records


def cmd_wavefunction(args) -> List[Record]:
    spec = _spec_from_args(args)
    qn = QuantumNumbers(args.nr, args.l)
    wf = wkb_wavefunction(qn, spec, tolerance=args.tolerance)
    if args.samples < 10:
        raise CliUsageError("--samples must be at least 10")
    radii = sample_radii(wf, args.samples)
    values = wkb_radial_wavefunction(radii, wf)
    r_in, r_out = wf.turning_points.inner, wf.turning_points.outer
    return [
        {
            "r": float(r),
            "r_tilde": float(v),
            "radial": float(v / r),
            "region": "allowed" if r_in <= r <= r_out else "forbidden",
        }
        for r, v in zip(radii, values)
    ]


def cmd_regge(args) -> List[Record]:
    if args.fit:
        try:
            records = regge.read_records(args.fit)
        except OSError as exc:
            raise CliUsageError(f"cannot read {args.fit}: {exc.strerror}")
    elif args.noise:
        if args.kappa is None:
            raise CliUsageError("--noise needs --kappa (and optionally --alpha-s)")
        rng = np.random.default_rng(args.seed)
        states = [(n_r, l) for n_r in range(args.nr + 1) for l in range(args.l_max + 1)]
        records = regge.synthetic_records(args.kappa, args.alpha_s or 0.0, states, args.noise, rng)
    else:
        if args.kappa is None:
            raise CliUsageError("regge needs --fit <csv> or --kappa")
        points = regge.regge_trajectory(args.nr, args.l_max, args.kappa, args.alpha_s or 0.0)
        out = []
        for i, (l, e_sq) in enumerate(points):
            rec: Record = {"n_r": args.nr, "l": l, "energy_sq": e_sq, "energy": math.sqrt(e_sq)}
            rec["slope"] = e_sq - points[i - 1][1] if i else None
            out.append(rec)
        return out
    fit = regge.fit_regge(records)
    rows: List[Record] = [
        {
            "name": rec.name,
            "l": rec.l,
            "n_r": rec.n_r,
            "mass_gev": rec.mass,
            "residual_gev2": res,
        }
        for rec, res in zip(records, fit.per_point_residuals)
    ]
    rows.append(
        {
            "name": "fit",
            "kappa": fit.kappa,
            "alpha_s": fit.alpha_s,
            "c_sq": fit.c_sq,
            "rms_residual_gev2": fit.rms_residual,
        }
    )
    return rows


# ---------------------------------------------------------------- parser


def _add_globals(parser, suppress: bool):
    default = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    parser.add_argument("--format", choices=("json", "csv", "table"), default=default("table"))
    parser.add_argument("--tolerance", type=float, default=default(DEFAULT_TOLERANCE),
                        help="quantization residual tolerance (phase units)")
    parser.add_argument("--seed", type=int, default=default(0), help="RNG seed for noise studies")
    parser.add_argument("--quiet", action="store_true", default=default(False))


def _add_potential(parser, need_range: bool):
    parser.add_argument("--family", choices=[f.value for f in Family], required=True)
    parser.add_argument("--coupling", choices=[c.value for c in Coupling], default="scalar")
    parser.add_argument("--mass", type=float, default=0.0)
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--kappa", type=float)
    parser.add_argument("--alpha-s", dest="alpha_s", type=float)
    parser.add_argument("--two-body", action="store_true")
    if need_range:
        parser.add_argument("--nr-max", type=int, default=0)
        parser.add_argument("--l-max", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="semiwkb", description="Relativistic semiclassical bound-state solver.")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("spectrum", help="energy eigenvalues for a range of quantum numbers")
    _add_potential(p, need_range=True)
    p.add_argument("--method", choices=("closed", "wkb", "ode", "all"), default="wkb")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("compare", help="closed form vs WKB vs ODE cross-differences")
    _add_potential(p, need_range=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("table1", help="hydrogen levels: Schrodinger, Klein-Gordon, scalar")
    p.add_argument("--calibrate-nr", type=float, default=closed.RYDBERG_EV,
                   help="m alpha^2 / 2 in eV (default %(default)s)")
    p.add_argument("--inv-alpha", type=float, default=closed.INV_ALPHA)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("wavefunction", help="sample a WKB eigenfunction")
    _add_potential(p, need_range=False)
    p.add_argument("--nr", type=int, default=0)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--samples", type=int, default=400)
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("regge", help="Regge trajectory generation or fit")
    p.add_argument("--fit", metavar="CSV", help="fit name,mass_gev,l,n_r[,weight] records")
    p.add_argument("--kappa", type=float)
    p.add_argument("--alpha-s", dest="alpha_s", type=float)
    p.add_argument("--nr", type=int, default=0)
    p.add_argument("--l-max", type=int, default=5)
    p.add_argument("--noise", type=float, default=0.0,
                   help="fit a synthetic trajectory with this relative mass noise")
    p.set_defaults(func=cmd_regge)

    for name, subparser in sub.choices.items():
        _add_globals(subparser, suppress=True)
    return parser


def run(argv: Sequence[str] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        args.stderr = stderr
        logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, stream=stderr)
        records = args.func(args)
    except CliUsageError as exc:
        print(str(exc), file=stderr)
        return 1
    except USAGE_ERRORS as exc:
        print(f"semiwkb: error: {exc}", file=stderr)
        return 1
    except SemiWkbError as exc:
        print(f"semiwkb: numerical failure: {exc}", file=stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    stdout.write(render(records, args.format))
    return 0


def main() -> None:
    sys.exit(run())
