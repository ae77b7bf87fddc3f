"""Tables and curve bundles assembled for output, plus their serialization."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import reference as ref
from .constants import CODATA, MILLIBARN, BARN, PhysicalConstants
from .cross_section import KnVariant, kn_differential, kn_minimum, kn_total_cross_section
from .kinematics import scatter
from .matching import MatchKind, Reference, amplitude_chi2, chi2_sweep, match_curve
from .normalization import (
    AmplitudeRow,
    AngleGrid,
    MinRule,
    amplitude_table,
    electron_kinetic_normalized,
    electron_momentum_normalized,
    kn_global_normalized,
    scatter_fraction,
)

FIGURES = ("1a", "1b", "1c", "1d", "1e", "1f", "1g", "1h", "2", "3")
TABLES = ("s1", "s2", "s3", "amplitude-chi2")
S1_COLUMNS = ("kn_amplitude", "scatter_drop", "momentum_ratio", "transfer_fraction")
CHI2_COLUMNS = ("chi2_scattered", "chi2_momentum", "chi2_kinetic")
# cell flagged in the published table as out of line with its neighbours
S1_EXEMPT = {(1e-4, "momentum_ratio")}


@dataclass(frozen=True)
class RunConfig:
    energies: tuple[float, ...] | None = None
    grid_points: int = 2000
    variant: KnVariant = KnVariant.FULL
    output_format: str = "csv"
    output_path: str | None = None
    precision: int = 4
    fig3_min_rule: MinRule = MinRule.OWN
    reference: Reference = Reference.PI
    degrees: bool = False
    jobs: int = 1
    constants: PhysicalConstants = CODATA

    def __post_init__(self):
        if self.grid_points < 2:
            raise ValueError("grid_points must be >= 2")
        if self.energies is not None:
            if not self.energies:
                raise ValueError("energies must be non-empty")
            if any(not (e > 0 and math.isfinite(e)) for e in self.energies):
                raise ValueError("energies must all be finite and > 0")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")

    def energies_or(self, default) -> tuple[float, ...]:
        return tuple(self.energies) if self.energies is not None else tuple(default)

    def describe(self) -> dict:
        return {
            "energies": list(self.energies) if self.energies is not None else None,
            "grid_points": self.grid_points,
            "variant": self.variant.value,
            "precision": self.precision,
            "fig3_min_rule": self.fig3_min_rule.value,
            "reference": self.reference.value,
            "degrees": self.degrees,
            "electron_rest_energy": self.constants.electron_rest_energy,
        }


@dataclass
class Table:
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [r[i] for r in self.rows]


def full(x: float) -> str:
    return format(float(x), ".17g")


def rounded(x: float, precision: int = 4) -> str:
    """Table-style rounding: fixed decimals, scientific below 1e-3."""
    x = float(x)
    if x != 0.0 and abs(x) < 1e-3:
        return f"{x:.{precision}e}"
    return f"{x:.{precision}f}"


def _cell(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return full(v)
    return str(v)


def to_csv(table: Table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _json_value(v):
    if isinstance(v, (np.floating,)):
        v = float(v)
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def to_json(table: Table, config: RunConfig) -> str:
    doc = {
        "config": config.describe(),
        "columns": table.columns,
        "rows": [[_json_value(v) for v in row] for row in table.rows],
    }
    if table.summary:
        doc["summary"] = table.summary
    return json.dumps(doc, indent=1) + "\n"


def render(table: Table, config: RunConfig) -> str:
    return to_json(table, config) if config.output_format == "json" else to_csv(table)


def _map(config: RunConfig, fn, items):
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _angle_header(config: RunConfig) -> str:
    return "angle_deg" if config.degrees else "angle_rad"


def _angle_out(config: RunConfig, a: float) -> float:
    return math.degrees(a) if config.degrees else float(a)


def _label(e: float) -> str:
    return f"{e:g}MeV"


# --- kinematics / kn -------------------------------------------------------


def kinematics_table(hnu: float, phi: float, config: RunConfig) -> Table:
    s = scatter(hnu, phi, config.constants)
    t = Table(["quantity", "unit", "value", "rounded"])
    for name, unit, v in (
        ("incident_energy", "MeV", s.incident_energy),
        ("angle", "deg" if config.degrees else "rad", _angle_out(config, s.angle)),
        ("scattered_energy", "MeV", s.scattered_energy),
        ("electron_momentum", "MeV/c", s.electron_momentum),
        ("electron_kinetic", "MeV", s.electron_kinetic),
        ("electron_total", "MeV", s.electron_total),
    ):
        t.rows.append([name, unit, float(v), rounded(v, config.precision)])
    return t


def kn_table(energies, phi: float, config: RunConfig) -> Table:
    c = config.constants
    t = Table(["energy_mev", "variant", "angle_rad", "kn_re2_per_sr", "kn_mb_per_sr", "min_angle_rad", "min_kn_re2_per_sr"])

    def row(e):
        v = kn_differential(e, phi, config.variant, c)
        m = kn_minimum(e, config.variant, c)
        return [float(e), config.variant.value, float(phi), v, v * c.re2 / MILLIBARN, m.angle, m.value]

    t.rows = _map(config, row, energies)
    return t


# --- tables ----------------------------------------------------------------


def s1_table(config: RunConfig) -> Table:
    energies = config.energies_or(ref.TABLE_S1_ENERGIES)
    printed = ref.table_s1()
    rows = amplitude_table(energies, config.variant, config.fig3_min_rule, config.constants)
    t = Table(["energy_mev", "column", "computed", "computed_rounded", "printed", "abs_delta", "rel_delta", "within_last_digit"])
    for r in rows:
        p = ref.printed_row(printed, r.energy)
        for col in S1_COLUMNS:
            v = getattr(r, col)
            if p is None:
                t.rows.append([r.energy, col, v, rounded(v, config.precision), None, None, None, None])
                continue
            pv = p[col]
            t.rows.append([r.energy, col, v, rounded(v, config.precision), pv.text, v - pv.value, (v - pv.value) / pv.value, pv.agrees(v)])
    return t


def chi2_table(config: RunConfig, which: str) -> Table:
    variant = KnVariant.NO_SIN2 if which == "s3" else config.variant
    printed = ref.table_s3() if which == "s3" else ref.table_s2()
    energies = config.energies_or(ref.TABLE_S1_ENERGIES)
    grid = AngleGrid.midpoints(config.grid_points)
    sweep = chi2_sweep(energies, grid, variant, config.reference, config.fig3_min_rule, config.constants, jobs=config.jobs)
    t = Table(["energy_mev", "column", "chi2", "chi2_rounded", "dof", "critical_value", "below_critical", "printed", "ratio"])
    for row in sweep:
        p = ref.printed_row(printed, row.energy)
        for col, rep in zip(CHI2_COLUMNS, (row.scattered, row.momentum, row.kinetic)):
            cell = p[col] if p is not None else None
            t.rows.append(
                [
                    row.energy,
                    col,
                    rep.chi2,
                    rounded(rep.chi2, config.precision),
                    rep.dof,
                    rep.critical_value,
                    rep.below_critical,
                    cell.text if cell else None,
                    rep.chi2 / cell.value if cell else None,
                ]
            )
    for col in CHI2_COLUMNS:
        vals = [v for c, v in zip(t.column("column"), t.column("chi2")) if c == col]
        t.summary[f"{col}_decreasing"] = all(b < a for a, b in zip(vals, vals[1:]))
    return t


def printed_amplitude_rows(min_energy: float = 1.0) -> list[AmplitudeRow]:
    out = []
    for p in ref.table_s1():
        e = p["energy_mev"].value
        if e >= min_energy:
            out.append(
                AmplitudeRow(
                    energy=e,
                    kn_amplitude=p["kn_amplitude"].value,
                    scatter_drop=p["scatter_drop"].value,
                    momentum_ratio=p["momentum_ratio"].value,
                    transfer_fraction=p["transfer_fraction"].value,
                    reference_angle=math.nan,
                )
            )
    return out


def amplitude_chi2_table(config: RunConfig) -> Table:
    energies = [e for e in ref.TABLE_S1_ENERGIES if e >= 1.0]
    computed = amplitude_chi2(amplitude_table(energies, config.variant, config.fig3_min_rule, config.constants), ref.AMPLITUDE_CRITICAL_VALUE)
    printed = amplitude_chi2(printed_amplitude_rows(), ref.AMPLITUDE_CRITICAL_VALUE)
    t = Table(["report", "source", "chi2", "dof", "critical_value", "below_critical", "quoted", "ratio"])
    for name, quoted in (("transfer", ref.QUOTED_AMPLITUDE_CHI2_TRANSFER), ("momentum", ref.QUOTED_AMPLITUDE_CHI2_MOMENTUM)):
        for source, result in (("computed", computed), ("printed_rows", printed)):
            rep = getattr(result, name)
            t.rows.append([name, source, rep.chi2, rep.dof, rep.critical_value, rep.below_critical, quoted, rep.chi2 / quoted])
    return t


def table(config: RunConfig, which: str) -> Table:
    if which == "s1":
        return s1_table(config)
    if which in ("s2", "s3"):
        return chi2_table(config, which)
    if which == "amplitude-chi2":
        return amplitude_chi2_table(config)
    raise ValueError(f"unknown table {which!r}; choose from {', '.join(TABLES)}")


# --- curves ----------------------------------------------------------------


def _fig1_curve(fig: str, e: float, grid: AngleGrid, config: RunConfig) -> np.ndarray:
    c = config.constants
    if fig == "1a":
        return kn_global_normalized(e, grid, c).values
    if fig == "1c":
        return scatter_fraction(e, grid, c).values
    if fig == "1e":
        return electron_momentum_normalized(e, grid, config.variant, True, config.fig3_min_rule, c).values
    return electron_kinetic_normalized(e, grid, config.variant, True, config.fig3_min_rule, c).values


_FIG1_QUANTITY = {"1a": "kn_global_norm", "1c": "scatter_fraction", "1e": "momentum_scaled_norm", "1g": "energy_transfer_fraction"}
_AMPLITUDE_PANEL = {"1b": "kn_amplitude", "1d": "scatter_drop", "1f": "momentum_ratio", "1h": "transfer_fraction"}


def curves(config: RunConfig, figure: str) -> Table:
    if figure not in FIGURES:
        raise ValueError(f"unknown figure {figure!r}; choose from {', '.join(FIGURES)}")

    if figure in _AMPLITUDE_PANEL:
        col = _AMPLITUDE_PANEL[figure]
        energies = config.energies_or(ref.TABLE_S1_ENERGIES)
        rows = _map(config, lambda e: amplitude_table([e], config.variant, config.fig3_min_rule, config.constants)[0], energies)
        t = Table(["energy_mev", col, "reference_angle_rad"])
        t.rows = [[r.energy, getattr(r, col), r.reference_angle] for r in rows]
        return t

    if figure in _FIG1_QUANTITY:
        energies = config.energies_or(ref.FIG1_ENERGIES)
        grid = AngleGrid.inclusive(config.grid_points)
        cols = _map(config, lambda e: _fig1_curve(figure, e, grid, config), energies)
        q = _FIG1_QUANTITY[figure]
        t = Table([_angle_header(config)] + [f"{q}@{_label(e)}" for e in energies])
    else:
        variant = KnVariant.NO_SIN2 if figure == "3" else config.variant
        energies = config.energies_or(ref.FIG2_ENERGIES)
        grid = AngleGrid.midpoints(config.grid_points)
        pairs = [(e, k) for e in energies for k in MatchKind]
        cols = _map(
            config,
            lambda ek: match_curve(ek[0], grid, ek[1], variant, config.reference, config.fig3_min_rule, config.constants).values,
            pairs,
        )
        t = Table([_angle_header(config)] + [f"{k.value}@{_label(e)}" for e, k in pairs])

    for i, a in enumerate(grid.angles):
        t.rows.append([_angle_out(config, a)] + [float(col[i]) for col in cols])
    return t


# --- total cross section ---------------------------------------------------


def total_xs_table(config: RunConfig) -> Table:
    c = config.constants
    energies = config.energies_or(ref.TABLE_S1_ENERGIES)

    def row(e):
        s = kn_total_cross_section(e, c)
        s2 = kn_total_cross_section(2.0 * e, c)
        return [float(e), s, s * c.re2 / BARN, s2 / s]

    t = Table(["energy_mev", "sigma_re2", "sigma_barn", "ratio_2e"])
    t.rows = _map(config, row, energies)
    sig = t.column("sigma_re2")
    t.summary["decreasing"] = all(b < a for a, b in zip(sig, sig[1:]))
    return t
