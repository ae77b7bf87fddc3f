import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from compton_kn.constants import CODATA
from compton_kn.cross_section import KnVariant
from compton_kn.normalization import (
    AngleGrid,
    MinRule,
    amplitude_row,
    amplitude_table,
    electron_kinetic_normalized,
    electron_momentum_normalized,
    energy_drop_normalized,
    kn_amplitude,
    kn_global_normalized,
    kn_normalized,
    reference_angle,
    scatter_fraction,
    scattered_energy_normalized,
)
from compton_kn.reference import TABLE_S1_ENERGIES

M = CODATA.electron_rest_energy
ENDS = AngleGrid.inclusive(2001)


def eq2(hnu, phi):
    return hnu / (1 + hnu / M * (1 - math.cos(phi)))


def kn_min_angle_oracle(hnu):
    """Minimizer of the full cross section by scipy's bounded Brent search, seeded from a scan."""

    def kn(phi):
        r = eq2(hnu, phi) / hnu
        return 0.5 * r * r * (r + 1 / r - math.sin(phi) ** 2)

    scan = np.linspace(0, math.pi, 2001)
    i = int(np.argmin([kn(p) for p in scan]))
    lo, hi = scan[max(i - 1, 0)], scan[min(i + 1, 2000)]
    return minimize_scalar(kn, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12}).x


def test_grids():
    g = AngleGrid.midpoints(4)
    np.testing.assert_allclose(g.angles, [math.pi / 8, 3 * math.pi / 8, 5 * math.pi / 8, 7 * math.pi / 8])
    assert ENDS.angles[0] == 0.0 and ENDS.angles[-1] == math.pi
    with pytest.raises(ValueError):
        AngleGrid.midpoints(1)


@given(st.integers(min_value=2, max_value=5000))
def test_midpoint_grid_is_interior_and_increasing(n):
    a = AngleGrid.midpoints(n).angles
    assert len(a) == n
    assert np.all(np.diff(a) > 0)
    assert a[0] > 0 and a[-1] < math.pi


def test_reference_angle_rule():
    assert reference_angle(1000.0) == math.pi
    assert reference_angle(1.0) == math.pi
    assert reference_angle(1e-5) == pytest.approx(math.pi / 2, abs=1e-3)
    r = reference_angle(0.5)
    assert math.pi / 2 < r <= math.pi
    assert r == pytest.approx(kn_min_angle_oracle(0.5), abs=1e-7)


def test_reference_angle_min_rule():
    assert reference_angle(0.1, KnVariant.NO_SIN2) == math.pi
    full = reference_angle(0.1, KnVariant.FULL)
    assert reference_angle(0.1, KnVariant.NO_SIN2, MinRule.FULL) == full
    assert full < math.pi


# --- KN ---------------------------------------------------------------------


def test_kn_normalized_forward_limit():
    v = kn_normalized(1e-5, AngleGrid.midpoints(2000)).values
    assert 1 - 1e-4 < v[0] <= 1.0


def test_kn_normalized_endpoints():
    v = kn_normalized(1.0, ENDS).values
    assert v[0] == 1.0
    assert v[-1] == 0.0


@pytest.mark.parametrize("hnu, hi", [(1e-3, math.pi / 2), (1e-5, math.pi)])
def test_kn_normalized_thomson_shape(hnu, hi):
    # (1 + cos^2)/2 rescaled between its max 1 and min 1/2; recoil tilts the
    # backward hemisphere by about 2 hnu/m, so 1 keV is only checked forward
    g = AngleGrid.of(np.linspace(0.0, hi, 361))
    v = kn_normalized(hnu, g).values
    np.testing.assert_allclose(v, np.cos(g.angles) ** 2, atol=1e-3)


def test_kn_global_normalized_anchors():
    g = AngleGrid.of([0.0])
    assert kn_global_normalized(1000.0, g).values[0] == 1.0
    assert kn_global_normalized(1.0, g).values[0] == pytest.approx(0.8941, abs=1e-4)
    assert kn_global_normalized(0.1, g).values[0] == pytest.approx(0.6457, abs=1e-4)


def test_kn_amplitude_ladder():
    amps = [kn_amplitude(e) for e in TABLE_S1_ENERGIES]
    assert all(b > a for a, b in zip(amps, amps[1:]))
    assert amps[-1] == 1.0
    assert kn_amplitude(1e-9) == pytest.approx(0.5 / (1 - 0.0001277171132), rel=1e-6)


# --- kinematic curves --------------------------------------------------------


@pytest.mark.parametrize("hnu", [1e-4, 0.1, 0.5, 1.0, 100.0])
def test_scattered_energy_endpoints(hnu):
    star = reference_angle(hnu)
    g = AngleGrid.of([0.0, star])
    v = scattered_energy_normalized(hnu, g).values
    assert v[0] == 1.0
    assert v[1] == 0.0


def test_scattered_energy_at_right_angle_1mev():
    q_half, q_pi = eq2(1.0, math.pi / 2), eq2(1.0, math.pi)
    assert q_half == pytest.approx(0.33817, abs=1e-4)
    want = (q_half - q_pi) / (1.0 - q_pi)
    got = scattered_energy_normalized(1.0, AngleGrid.of([math.pi / 2])).values[0]
    assert got == pytest.approx(want, rel=1e-12)
    assert got == pytest.approx(0.16908, abs=5e-5)


def test_scatter_fraction_backscatter():
    assert scatter_fraction(1.0, AngleGrid.of([math.pi])).values[0] == pytest.approx(0.2035, abs=1e-4)


@pytest.mark.parametrize("hnu", [1e-3, 0.3, 1.0, 1000.0])
def test_momentum_endpoints(hnu):
    star = reference_angle(hnu)
    v = electron_momentum_normalized(hnu, AngleGrid.of([0.0, star])).values
    assert v[0] == 0.0
    assert v[1] == 1.0


def test_momentum_scaled_1mev():
    v = electron_momentum_normalized(1.0, AngleGrid.of([math.pi]), scaled=True).values[0]
    assert v == pytest.approx(0.8309, abs=1e-4)


def test_kinetic_forms():
    g = AngleGrid.of([0.0, math.pi])
    frac = electron_kinetic_normalized(1.0, g, as_fraction=True).values
    assert frac[0] == 0.0
    assert frac[1] == pytest.approx(0.7965, abs=1e-4)
    star = reference_angle(0.01)
    assert electron_kinetic_normalized(0.01, AngleGrid.of([star]), as_fraction=True).values[0] == pytest.approx(
        0.0195, abs=1e-4
    )
    assert electron_kinetic_normalized(0.01, AngleGrid.of([0.0, star])).values.tolist() == [0.0, 1.0]


@pytest.mark.parametrize("hnu", [1e-5, 1e-3, 0.1, 0.5, 1.0, 10.0, 1000.0])
def test_energy_complements(hnu):
    g = AngleGrid.inclusive(2001)
    q = scattered_energy_normalized(hnu, g).values
    k = electron_kinetic_normalized(hnu, g).values
    drop = energy_drop_normalized(hnu, g).values
    assert np.max(np.abs(q + k - 1.0)) <= 1e-12
    assert np.array_equal(drop, k)


@pytest.mark.parametrize("hnu", [1e-4, 0.05, 0.5, 2.0, 500.0])
def test_curves_in_unit_interval_up_to_reference(hnu):
    star = reference_angle(hnu)
    g = AngleGrid.of(np.linspace(0.0, star, 501))
    for curve in (
        kn_normalized(hnu, g),
        scattered_energy_normalized(hnu, g),
        electron_momentum_normalized(hnu, g),
        electron_kinetic_normalized(hnu, g),
    ):
        v = curve.values
        assert v.min() >= -1e-15 and v.max() <= 1 + 1e-15


def test_explicit_reference_override():
    g = AngleGrid.of([math.pi])
    assert scattered_energy_normalized(0.01, g, ref_angle=math.pi).values[0] == 0.0
    assert electron_kinetic_normalized(0.01, g, ref_angle=math.pi).values[0] == 1.0


# --- amplitude table ---------------------------------------------------------


def test_amplitude_rows_high_energy():
    r1, r1000 = amplitude_table([1.0, 1000.0])
    assert (round(r1.kn_amplitude, 4), round(r1.scatter_drop, 4), round(r1.momentum_ratio, 4), round(r1.transfer_fraction, 4)) == (
        0.8941,
        0.7965,
        0.8309,
        0.7965,
    )
    assert r1000.kn_amplitude == 1.0
    assert round(r1000.scatter_drop, 4) == round(r1000.momentum_ratio, 4) == 0.9997


def test_amplitude_row_lowest_energy_from_first_principles():
    row = amplitude_row(1e-5)
    assert row.kn_amplitude == pytest.approx(0.5001, abs=1e-4)
    star = kn_min_angle_oracle(1e-5)
    drop = 1 - eq2(1e-5, star) / 1e-5
    assert row.scatter_drop == pytest.approx(drop, rel=1e-6)
    # the printed 1.9495e-5 and 0.7084 imply a reference angle about 0.2 degrees
    # short of the true minimum; first principles give 1.9570e-5 and 0.7071
    assert round(row.scatter_drop, 9) == pytest.approx(1.9570e-5, abs=5e-10)
    assert row.momentum_ratio == pytest.approx(0.7071, abs=1e-4)


def test_amplitude_invariants():
    rows = amplitude_table(TABLE_S1_ENERGIES)
    for r in rows:
        assert r.scatter_drop == r.transfer_fraction
        for v in (r.kn_amplitude, r.scatter_drop, r.momentum_ratio, r.transfer_fraction):
            assert 0.0 < v <= 1.0
    gaps = [abs(r.kn_amplitude - r.transfer_fraction) for r in rows if r.energy >= 1.0]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
