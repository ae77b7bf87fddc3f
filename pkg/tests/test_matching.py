import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from compton_kn.cross_section import KnVariant
from compton_kn.matching import (
    MatchKind,
    Reference,
    amplitude_chi2,
    chi2_row,
    chi2_sweep,
    match_curve,
    pearson_chi_square,
)
from compton_kn.normalization import AmplitudeRow, AngleGrid
from compton_kn.reference import TABLE_S1_ENERGIES, printed_row, table_s2, table_s3

GRID = AngleGrid.midpoints(2000)

finite_pos = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False)


def test_pearson_examples():
    assert pearson_chi_square([1, 2, 3], [1, 2, 3]).chi2 == 0.0
    r = pearson_chi_square([1, 2], [2, 1])
    assert r.chi2 == pytest.approx(1.5)
    assert r.dof == 1


def test_pearson_critical_lookup():
    r = pearson_chi_square(np.ones(2000), np.ones(2000))
    assert r.dof == 1999 and r.critical_value == 1740.7049 and r.below_critical
    assert pearson_chi_square([1, 2, 3], [1, 2, 3]).below_critical is None
    assert pearson_chi_square([1, 2, 3], [1, 2, 3], critical_value=1.0).below_critical is True


def test_pearson_rejects_bad_expected():
    with pytest.raises(ValueError, match="index 1"):
        pearson_chi_square([1, 1], [1, 0])
    with pytest.raises(ValueError):
        pearson_chi_square([1, 1], [1, -2])
    with pytest.raises(ValueError):
        pearson_chi_square([1, 2, 3], [1, 2])
    with pytest.raises(ValueError):
        pearson_chi_square([1], [1])


@given(st.lists(st.tuples(finite_pos, finite_pos), min_size=2, max_size=50), st.integers(min_value=-6, max_value=6))
def test_pearson_scaling(pairs, k):
    # powers of two scale exactly, so doubling O and E doubles chi2 bit for bit
    c = 2.0**k
    o, e = (np.array(v) for v in zip(*pairs))
    base = pearson_chi_square(o, e).chi2
    assert base >= 0
    assert pearson_chi_square(c * o, c * e).chi2 == c * base


def test_pearson_doubling_example():
    o, e = np.array([0.3, 1.7, 2.2]), np.array([0.5, 1.5, 2.0])
    assert pearson_chi_square(2 * o, 2 * e).chi2 == 2 * pearson_chi_square(o, e).chi2


def test_keep_terms():
    r = pearson_chi_square([1, 3], [2, 2], keep_terms=True)
    np.testing.assert_allclose(r.terms, [0.5, 0.5])
    assert pearson_chi_square([1, 3], [2, 2]).terms is None


def test_match_curve_forward_limit():
    c = match_curve(1.0, GRID, MatchKind.DIFF_SCATTERED_ENERGY)
    assert abs(c.values[0]) < 1e-4
    c = match_curve(1.0, GRID, "sum_kinetic")
    assert c.values[0] == pytest.approx(1.0, abs=1e-4)


def test_match_curve_backscatter():
    c = match_curve(10.0, AngleGrid.inclusive(11), MatchKind.SUM_KINETIC)
    assert c.values[-1] == 1.0
    c = match_curve(10.0, AngleGrid.inclusive(11), MatchKind.SUM_MOMENTUM)
    assert c.values[-1] == 1.0


def test_kn_min_reference_changes_sub_mev_only():
    a = chi2_row(0.1, GRID, reference=Reference.PI).values()
    b = chi2_row(0.1, GRID, reference="kn-min").values()
    assert a != b
    assert chi2_row(5.0, GRID).values() == chi2_row(5.0, GRID, reference="kn-min").values()


def test_sweep_columns_and_order():
    rows = chi2_sweep(TABLE_S1_ENERGIES, GRID)
    assert [r.energy for r in rows] == list(TABLE_S1_ENERGIES)
    for r in rows:
        assert r.scattered.chi2 == r.kinetic.chi2
        assert all(0 < v < 1740.7049 for v in r.values())
    for col in zip(*(r.values() for r in rows)):
        assert all(b < a for a, b in zip(col, col[1:]))


def test_sweep_parallel_matches_serial():
    e = (0.001, 0.5, 1.0, 1000.0)
    assert [r.values() for r in chi2_sweep(e, GRID, jobs=3)] == [r.values() for r in chi2_sweep(e, GRID)]


@pytest.mark.parametrize("energy", [0.001, 1.0, 1000.0])
def test_table_s2_spot_values(energy):
    got = chi2_row(energy, GRID).values()
    want = printed_row(table_s2(), energy)
    for g, key in zip(got, ("chi2_scattered", "chi2_momentum", "chi2_kinetic")):
        assert g == pytest.approx(want[key].value, rel=2e-3)


@pytest.mark.parametrize("energy", [1e-5, 1.0, 1000.0])
def test_table_s3_spot_values(energy):
    got = chi2_row(energy, GRID, KnVariant.NO_SIN2).values()
    want = printed_row(table_s3(), energy)
    for g, key in zip(got, ("chi2_scattered", "chi2_momentum", "chi2_kinetic")):
        assert g == pytest.approx(want[key].value, rel=2e-3)


def test_table_s3_rise_then_fall():
    col = [r.scattered.chi2 for r in chi2_sweep(TABLE_S1_ENERGIES, GRID, KnVariant.NO_SIN2)]
    peak = int(np.argmax(col))
    assert TABLE_S1_ENERGIES[peak] == 1.0
    assert all(b > a for a, b in zip(col[: peak + 1], col[1 : peak + 1]))
    assert all(b < a for a, b in zip(col[peak:], col[peak + 1 :]))


def test_amplitude_chi2():
    rows = [AmplitudeRow(e, 0.5 + 0.05 * i, 0.5 + 0.05 * i, 0.5 + 0.05 * i, 0.5 + 0.05 * i, math.pi) for i, e in enumerate(range(1, 9))]
    out = amplitude_chi2(rows, 0.1528)
    assert out.transfer.chi2 == 0.0 and out.momentum.chi2 == 0.0
    assert out.transfer.dof == 7 and out.transfer.below_critical
    with pytest.raises(ValueError):
        amplitude_chi2([])
