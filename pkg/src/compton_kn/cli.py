"""Command-line entry point: ``compton-kn <command> [options]``.

Only the requested artifact goes to stdout; diagnostics go to stderr.
Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import replace
from pathlib import Path

from . import checks, report
from .constants import CODATA
from .cross_section import KnVariant
from .kinematics import DomainError
from .matching import Reference
from .normalization import MinRule

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2

_ANGLE = re.compile(r"^(?:(?P<num>[0-9]*\.?[0-9]+)\*?)?pi(?:/(?P<den>[0-9]*\.?[0-9]+))?$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_angle(text: str, degrees: bool = False) -> float:
    """Accept ``pi``, ``pi/2``, ``3pi/4``, ``2*pi/3`` or a plain number."""
    s = str(text).strip().lower().replace(" ", "")
    m = _ANGLE.match(s)
    if m:
        num = float(m.group("num") or 1.0)
        den = float(m.group("den") or 1.0)
        return num * math.pi / den
    try:
        v = float(s)
    except ValueError:
        raise UsageError(f"--angle: cannot parse {text!r}") from None
    return math.radians(v) if degrees else v


def parse_energies(text: str) -> tuple[float, ...]:
    try:
        out = tuple(float(t) for t in str(text).split(",") if t.strip())
    except ValueError:
        raise UsageError(f"--energies: cannot parse {text!r}") from None
    if not out:
        raise UsageError("--energies: empty list")
    for e in out:
        if not (e > 0 and math.isfinite(e)):
            raise UsageError(f"--energies: energies must be finite and > 0 MeV, got {e!r}")
    return out


def read_config_file(path: str) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment. Keys mirror the long flags."""
    out = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise UsageError(f"--config: {exc}") from None
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"--config: line {n} is not 'key = value': {raw!r}")
        k, v = (t.strip() for t in line.split("=", 1))
        out[k.replace("_", "-").lstrip("-")] = v
    return out


_DEFAULTS = {
    "energies": None,
    "grid-points": "2000",
    "variant": "full",
    "format": "csv",
    "out": None,
    "precision": "4",
    "fig3-min-rule": "own",
    "reference": "pi",
    "degrees": "false",
    "jobs": "1",
}


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("shared options")
    g.add_argument("--energies", help="comma-separated incident energies in MeV")
    g.add_argument("--grid-points", help="angle grid size (default 2000)")
    g.add_argument("--variant", choices=["full", "no-sin2"], help="Klein-Nishina form (default full)")
    g.add_argument("--format", choices=["csv", "json"], help="output format (default csv)")
    g.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")
    g.add_argument("--precision", help="decimal places in rounded columns (default 4)")
    g.add_argument("--fig3-min-rule", choices=["own", "full"], help="variant whose KN minimum sets the sub-MeV reference angle")
    g.add_argument("--reference", choices=["pi", "kn-min"], help="kinematic reference angle for figures 2/3 and tables S2/S3 (default pi)")
    g.add_argument("--degrees", action="store_const", const="true", help="read --angle in degrees and print angles in degrees")
    g.add_argument("--jobs", help="worker threads for independent energies (default 1)")
    g.add_argument("--config", metavar="PATH", help="file of 'key = value' lines; flags override it")
    g.add_argument("--rest-energy", type=float, help=argparse.SUPPRESS)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="compton-kn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    k = sub.add_parser("kinematics", parents=[common], help="scattered photon and recoil electron at one angle")
    k.add_argument("--energy", required=True, help="incident photon energy in MeV")
    k.add_argument("--angle", required=True, help="scattering angle: radians, pi, pi/2, ... (degrees with --degrees)")

    kn = sub.add_parser("kn", parents=[common], help="differential cross section and its minimum")
    kn.add_argument("--energy", help="single energy in MeV (alternative to --energies)")
    kn.add_argument("--angle", default="pi", help="scattering angle (default pi)")

    c = sub.add_parser("curves", parents=[common], help="figure curves as CSV/JSON")
    c.add_argument("--figure", required=True, help=f"one of {', '.join(report.FIGURES)}")

    t = sub.add_parser("table", parents=[common], help="reproduce a supplementary table")
    t.add_argument("name", help=f"one of {', '.join(report.TABLES)}")

    sub.add_parser("total-xs", parents=[common], help="total Klein-Nishina cross section by quadrature")
    sub.add_parser("verify", parents=[common], help="run the invariant and acceptance checks")
    return parser


def make_config(args: argparse.Namespace) -> report.RunConfig:
    values = dict(_DEFAULTS)
    if args.config:
        values.update(read_config_file(args.config))
    for key in _DEFAULTS:
        v = getattr(args, key.replace("-", "_"), None)
        if v is not None:
            values[key] = v
    try:
        grid_points = int(values["grid-points"])
        precision = int(values["precision"])
        jobs = int(values["jobs"])
    except ValueError as exc:
        raise UsageError(f"invalid integer option: {exc}") from None
    if grid_points < 2:
        raise UsageError("--grid-points: must be >= 2")
    if precision < 0:
        raise UsageError("--precision: must be >= 0")
    if jobs < 1:
        raise UsageError("--jobs: must be >= 1")
    try:
        variant = KnVariant.parse(values["variant"])
        min_rule = MinRule(values["fig3-min-rule"])
        ref = Reference(values["reference"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if values["format"] not in ("csv", "json"):
        raise UsageError(f"--format: unknown format {values['format']!r}")
    constants = CODATA
    if getattr(args, "rest_energy", None) is not None:
        constants = replace(CODATA, electron_rest_energy=args.rest_energy)
    return report.RunConfig(
        energies=parse_energies(values["energies"]) if values["energies"] else None,
        grid_points=grid_points,
        variant=variant,
        output_format=values["format"],
        output_path=values["out"],
        precision=precision,
        fig3_min_rule=min_rule,
        reference=ref,
        degrees=str(values["degrees"]).lower() in ("1", "true", "yes", "on"),
        jobs=jobs,
        constants=constants,
    )


def _emit(text: str, config: report.RunConfig) -> None:
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def _emit_table(table: report.Table, config: report.RunConfig) -> None:
    _emit(report.render(table, config), config)
    if config.output_format == "csv":
        for k, v in table.summary.items():
            print(f"{k}: {'yes' if v is True else 'no' if v is False else v}", file=sys.stderr)


def _run(args: argparse.Namespace) -> int:
    config = make_config(args)
    cmd = args.command

    if cmd == "kinematics":
        try:
            hnu = float(args.energy)
        except ValueError:
            raise UsageError(f"--energy: cannot parse {args.energy!r}") from None
        phi = parse_angle(args.angle, config.degrees)
        _emit_table(report.kinematics_table(hnu, phi, config), config)
    elif cmd == "kn":
        energies = parse_energies(args.energy) if args.energy else config.energies_or([1.0])
        _emit_table(report.kn_table(energies, parse_angle(args.angle, config.degrees), config), config)
    elif cmd == "curves":
        if args.figure not in report.FIGURES:
            raise UsageError(f"--figure: unknown figure {args.figure!r}; choose from {', '.join(report.FIGURES)}")
        _emit_table(report.curves(config, args.figure), config)
    elif cmd == "table":
        if args.name not in report.TABLES:
            raise UsageError(f"table: unknown table {args.name!r}; choose from {', '.join(report.TABLES)}")
        _emit_table(report.table(config, args.name), config)
    elif cmd == "total-xs":
        _emit_table(report.total_xs_table(config), config)
    elif cmd == "verify":
        results = checks.run_all(config)
        if config.output_format == "json":
            doc = [{"check": r.name, "passed": r.passed, "detail": r.detail} for r in results]
            _emit(json.dumps(doc, indent=1) + "\n", config)
        else:
            passed = sum(r.passed for r in results)
            lines = [r.line() for r in results] + [f"{passed}/{len(results)} checks passed"]
            _emit("\n".join(lines) + "\n", config)
        return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except DomainError as exc:
        flag = {"energy": "--energy", "angle": "--angle", "kinetic": "--energy"}.get(exc.parameter, exc.parameter)
        print(f"compton-kn: error: {flag}: {str(exc).split(': ', 1)[-1]}", file=sys.stderr)
    except UsageError as exc:
        print(f"compton-kn: error: {exc}", file=sys.stderr)
    except ValueError as exc:
        print(f"compton-kn: error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
