"""Self-verification: module invariants and reference-table checks.

Each check returns a ``CheckResult``. ``run_all`` drives the ``verify``
command and the acceptance tests use the same functions.

Grid-dependent invariants use the configured grid size. Comparisons against
published chi-square tables always use the 2000-point grid those tables were
computed on.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import reference as ref
from .constants import CODATA, PhysicalConstants
from .cross_section import KnVariant, kn_differential, kn_minimum, kn_total_cross_section, kn_total_trapezoid
from .kinematics import (
    compton_shift,
    electron_kinetic_energy,
    electron_momentum,
    electron_total_energy,
    momentum_from_kinetic,
    photon_wavelength,
    scattered_photon_energy,
)
from .matching import amplitude_chi2, chi2_sweep
from .normalization import (
    AngleGrid,
    amplitude_table,
    electron_kinetic_normalized,
    kn_normalized,
    reference_angle,
    scattered_energy_normalized,
)
from .report import S1_COLUMNS, S1_EXEMPT, RunConfig, printed_amplitude_rows


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail} [{self.seconds:.3f}s]"


def _timed(name, fn, *args, budget: float | None = None) -> CheckResult:
    t0 = time.perf_counter()
    passed, detail = fn(*args)
    dt = time.perf_counter() - t0
    if budget is not None and dt >= budget:
        passed, detail = False, f"{detail}; runtime {dt:.2f}s exceeds {budget}s"
    return CheckResult(name, bool(passed), detail, dt)


# --- 1. Table S1 -----------------------------------------------------------


def s1_deltas(constants: PhysicalConstants = CODATA):
    """(energy, column, computed, printed, within_last_digit, exempt) for every S1 cell."""
    rows = amplitude_table(ref.TABLE_S1_ENERGIES, constants=constants)
    printed = ref.table_s1()
    out = []
    for r in rows:
        p = ref.printed_row(printed, r.energy)
        for col in S1_COLUMNS:
            v = getattr(r, col)
            out.append((r.energy, col, v, p[col].text, p[col].agrees(v), (r.energy, col) in S1_EXEMPT))
    return out


def check_table_s1(constants: PhysicalConstants = CODATA):
    cells = s1_deltas(constants)
    bad = [c for c in cells if not c[4] and not c[5]]
    if not bad:
        return True, f"{len(cells)} cells within one unit of the last printed digit"
    listing = ", ".join(f"{e:g} MeV {col} {v:.6g} vs {p}" for e, col, v, p, _, _ in bad)
    return False, f"{len(bad)}/{len(cells)} cells off by more than one last-digit unit: {listing}"


def check_table_s1_high_energy(constants: PhysicalConstants = CODATA):
    cells = [c for c in s1_deltas(constants) if c[0] >= 1.0]
    bad = [c for c in cells if not c[4]]
    return not bad, f"{len(cells) - len(bad)}/{len(cells)} cells at >= 1 MeV within one last-digit unit"


# --- 2. Thomson anchors ----------------------------------------------------


def check_thomson(constants: PhysicalConstants = CODATA):
    energies = np.logspace(-7, 4, 45)
    worst = max(abs(kn_differential(e, 0.0, constants=constants) - 1.0) for e in energies)
    sigma = kn_total_cross_section(1e-6, constants)
    rel = abs(sigma / (8 * math.pi / 3) - 1.0)
    ok = worst <= 1e-14 and rel < 1e-3
    return ok, f"max |KN(0) - 1| = {worst:.1e}; sigma(1e-6 MeV) = {sigma:.6f} r_e^2 (rel. dev. {rel:.1e} from 8pi/3)"


# --- 3. kinematic identities -----------------------------------------------


def check_kinematic_identities(n: int = 100_000, seed: int = 20130101, constants: PhysicalConstants = CODATA):
    rng = np.random.default_rng(seed)
    h = rng.uniform(1e-5, 1e3, n)
    phi = rng.uniform(0.0, math.pi, n)
    m = constants.electron_rest_energy

    q = scattered_photon_energy(h, phi, constants)
    total = electron_total_energy(h, phi, constants)
    e_err = np.max(np.abs((h + m) - (q + total)) / (h + m))

    p3 = electron_momentum(h, phi, constants)
    ps1 = momentum_from_kinetic(electron_kinetic_energy(h, phi, constants), constants)
    nz = p3 > 0
    p_err = np.max(np.abs(p3[nz] - ps1[nz]) / p3[nz]) if nz.any() else 0.0

    # lambda' = lambda + lambda_C (1 - cos phi), relative to lambda'. Taken relative to
    # the shift itself the subtraction is ill-conditioned when the shift is a
    # tiny fraction of the wavelength; that figure is reported but not gated.
    lam_out = photon_wavelength(q, constants)
    lam_in = photon_wavelength(h, constants)
    shift = compton_shift(phi, constants)
    w_err = np.max(np.abs(lam_out - (lam_in + shift)) / lam_out)
    nz = shift > 0
    w_shift = np.max(np.abs((lam_out - lam_in)[nz] - shift[nz]) / shift[nz]) if nz.any() else 0.0

    ok = e_err <= 1e-12 and p_err <= 1e-10 and w_err <= 1e-10
    return ok, (
        f"n={n}: energy {e_err:.1e} (<=1e-12), momentum {p_err:.1e} (<=1e-10), "
        f"wavelength {w_err:.1e} (<=1e-10; relative to the shift alone {w_shift:.1e})"
    )


# --- 4/5. chi-square sweeps ------------------------------------------------


def sweep_vs_printed(variant: KnVariant, constants: PhysicalConstants = CODATA, jobs: int = 1):
    grid = AngleGrid.midpoints(ref.SWEEP_GRID_POINTS)
    rows = chi2_sweep(ref.TABLE_S1_ENERGIES, grid, variant, constants=constants, jobs=jobs)
    printed = ref.table_s3() if variant is KnVariant.NO_SIN2 else ref.table_s2()
    out = []
    for r in rows:
        p = ref.printed_row(printed, r.energy)
        want = (p["chi2_scattered"].value, p["chi2_momentum"].value, p["chi2_kinetic"].value)
        out.append((r, want))
    return out


def _ratio_table(pairs) -> str:
    return "; ".join(f"{r.energy:g}:" + "/".join(f"{c / p:.3f}" for c, p in zip(r.values(), printed)) for r, printed in pairs)


def check_table_s2(constants: PhysicalConstants = CODATA):
    pairs = sweep_vs_printed(KnVariant.FULL, constants)
    rows = [r for r, _ in pairs]
    identical = all(r.scattered.chi2 == r.kinetic.chi2 for r in rows)
    below = all(v < ref.SWEEP_CRITICAL_VALUE for r in rows for v in r.values())
    decreasing = all(
        all(b < a for a, b in zip(col, col[1:])) for col in zip(*[r.values() for r in rows])
    )
    within = all(0.5 <= c / p <= 2.0 for r, printed in pairs for c, p in zip(r.values(), printed))
    ok = identical and below and decreasing and within
    return ok, (
        f"cols 1/3 bit-identical={identical}, all<{ref.SWEEP_CRITICAL_VALUE}={below}, "
        f"decreasing={decreasing}, within x2={within}; ratios {_ratio_table(pairs)}"
    )


def check_table_s3(constants: PhysicalConstants = CODATA):
    pairs = sweep_vs_printed(KnVariant.NO_SIN2, constants)
    col1 = [(r.energy, r.scattered.chi2) for r, _ in pairs]
    low = all(v < 1e-3 for e, v in col1 if e <= 1e-3)
    peak_e = max(col1, key=lambda ev: ev[1])[0]
    i = [e for e, _ in col1].index(peak_e)
    vals = [v for _, v in col1]
    rise_fall = all(b > a for a, b in zip(vals[: i + 1], vals[1 : i + 1])) and all(
        b < a for a, b in zip(vals[i:], vals[i + 1 :])
    )
    peak_ok = 0.5 <= peak_e <= 5.0
    within = all(0.5 <= c / p <= 2.0 for r, printed in pairs if r.energy >= 10 for c, p in zip(r.values(), printed))
    ok = low and rise_fall and peak_ok and within
    return ok, (
        f"col1<1e-3 at <=0.001 MeV={low} (1e-5 MeV: {col1[0][1]:.4e}), rise-then-fall={rise_fall}, "
        f"peak at {peak_e:g} MeV in [0.5, 5]={peak_ok}, within x2 for >=10 MeV={within}"
    )


# --- 6. amplitude chi-squares ----------------------------------------------


def check_amplitude_chi2(constants: PhysicalConstants = CODATA):
    energies = [e for e in ref.TABLE_S1_ENERGIES if e >= 1.0]
    computed = amplitude_chi2(amplitude_table(energies, constants=constants), ref.AMPLITUDE_CRITICAL_VALUE)
    printed = amplitude_chi2(printed_amplitude_rows(), ref.AMPLITUDE_CRITICAL_VALUE)
    reps = (computed.transfer, computed.momentum, printed.transfer, printed.momentum)
    below = all(r.below_critical for r in reps)
    a_ok = 0.010 <= printed.transfer.chi2 <= 0.013
    ok = below and a_ok and all(r.dof == 7 for r in reps)
    return ok, (
        f"A computed {computed.transfer.chi2:.5f} / printed-rows {printed.transfer.chi2:.5f} "
        f"(quoted {ref.QUOTED_AMPLITUDE_CHI2_TRANSFER}); B computed {computed.momentum.chi2:.5f} / "
        f"printed-rows {printed.momentum.chi2:.5f} (quoted {ref.QUOTED_AMPLITUDE_CHI2_MOMENTUM}); "
        f"all below {ref.AMPLITUDE_CRITICAL_VALUE}={below}"
    )


# --- 7. high-energy scaling -------------------------------------------------


def check_high_energy_scaling(constants: PhysicalConstants = CODATA):
    ratios = {e: kn_total_cross_section(2 * e, constants) / kn_total_cross_section(e, constants) for e in (100.0, 250.0, 500.0)}
    r_ok = all(0.50 < r < 0.62 for r in ratios.values())
    quad = {}
    for e in (1e-3, 1.0, 1000.0):
        a, b = kn_total_cross_section(e, constants), kn_total_trapezoid(e, constants)
        quad[e] = abs(a - b) / abs(b)
    q_ok = all(v <= 1e-7 for v in quad.values())
    return r_ok and q_ok, (
        "sigma(2E)/sigma(E): " + ", ".join(f"{e:g}: {r:.4f}" for e, r in ratios.items())
        + "; quadrature vs trapezoid: " + ", ".join(f"{e:g}: {v:.1e}" for e, v in quad.items())
    )


# --- 8. endpoint contracts -------------------------------------------------


def endpoint_errors(energies, grid_points: int, constants: PhysicalConstants = CODATA) -> dict[str, float]:
    worst = {"kn(0)=1": 0.0, "kn(min)=0": 0.0, "hnu'(ref)=0": 0.0, "K(ref)=1": 0.0, "hnu'+K=1": 0.0}
    for e in energies:
        star = reference_angle(e, constants=constants)
        phi_min = kn_minimum(e, constants=constants).angle
        base = AngleGrid.inclusive(grid_points).angles
        grid = AngleGrid.of(np.unique(np.concatenate([base, [star, phi_min]])))
        a = grid.angles
        kn = kn_normalized(e, grid, constants=constants).values
        q = scattered_energy_normalized(e, grid, constants=constants).values
        k = electron_kinetic_normalized(e, grid, constants=constants).values
        i0, imin, istar = 0, int(np.flatnonzero(a == phi_min)[0]), int(np.flatnonzero(a == star)[0])
        worst["kn(0)=1"] = max(worst["kn(0)=1"], abs(kn[i0] - 1.0))
        worst["kn(min)=0"] = max(worst["kn(min)=0"], abs(kn[imin]))
        worst["hnu'(ref)=0"] = max(worst["hnu'(ref)=0"], abs(q[istar]))
        worst["K(ref)=1"] = max(worst["K(ref)=1"], abs(k[istar] - 1.0))
        worst["hnu'+K=1"] = max(worst["hnu'+K=1"], float(np.max(np.abs(q + k - 1.0))))
    return worst


def check_endpoints(grid_points: int = 2001, constants: PhysicalConstants = CODATA):
    worst = endpoint_errors(ref.TABLE_S1_ENERGIES, grid_points, constants)
    ok = all(v <= 1e-12 for v in worst.values())
    return ok, ", ".join(f"{k}: {v:.1e}" for k, v in worst.items()) + " (all <= 1e-12)"


# --- 9. determinism --------------------------------------------------------


def check_determinism(grid_points: int = 2000, constants: PhysicalConstants = CODATA):
    from .report import curves, render

    outs = []
    for jobs in (1, 4, 1):
        cfg = RunConfig(energies=ref.FIG2_ENERGIES, grid_points=grid_points, jobs=jobs, constants=constants)
        outs.append(render(curves(cfg, "2"), cfg).encode())
    same = all(o == outs[0] for o in outs)
    return same, f"3 runs of figure 2 ({len(outs[0])} bytes, jobs 1/4/1) byte-identical={same}"


# --- extra invariants ------------------------------------------------------


def check_minimum_oracle(constants: PhysicalConstants = CODATA):
    dense = np.linspace(0.0, math.pi, 100_001)
    worst = -math.inf
    for variant in KnVariant:
        for e in ref.TABLE_S1_ENERGIES:
            m = kn_minimum(e, variant, constants)
            worst = max(worst, m.value - float(np.min(kn_differential(e, dense, variant, constants))))
    return worst <= 0.0, f"max(minimum - dense grid min) = {worst:.2e} (<= 0)"


def check_variant_ordering(grid_points: int, constants: PhysicalConstants = CODATA):
    a = AngleGrid.inclusive(grid_points).angles
    ok = all(
        np.all(kn_differential(e, a, KnVariant.FULL, constants) <= kn_differential(e, a, KnVariant.NO_SIN2, constants))
        for e in ref.TABLE_S1_ENERGIES
    )
    return ok, f"full <= no-sin2 at all {grid_points} angles for every energy"


def check_column_identity(grid_points: int, constants: PhysicalConstants = CODATA):
    grid = AngleGrid.midpoints(grid_points)
    rows = chi2_sweep(ref.TABLE_S1_ENERGIES, grid, KnVariant.FULL, constants=constants)
    same = all(r.scattered.chi2 == r.kinetic.chi2 for r in rows)
    return same, f"chi-square columns 1 and 3 bit-identical on a {grid_points}-point grid"


def run_all(config: RunConfig | None = None) -> list[CheckResult]:
    config = config or RunConfig()
    c = config.constants
    n = config.grid_points
    return [
        _timed("1 table S1 reproduction", check_table_s1, c, budget=1.0),
        _timed("2 Thomson anchors", check_thomson, c, budget=1.0),
        _timed("3 kinematic identities", check_kinematic_identities, 100_000, 20130101, c, budget=5.0),
        _timed("4 table S2 trend and tolerance", check_table_s2, c),
        _timed("5 table S3 shape", check_table_s3, c),
        _timed("6 amplitude chi-squares", check_amplitude_chi2, c),
        _timed("7 high-energy scaling", check_high_energy_scaling, c),
        _timed("8 normalization endpoints", check_endpoints, n, c),
        _timed("9 determinism", check_determinism, n, c),
        _timed("minimum vs dense grid", check_minimum_oracle, c),
        _timed("variant ordering", check_variant_ordering, n, c),
        _timed("column identity", check_column_identity, n, c),
    ]
