"""Agreement between normalized KN curves and normalized kinematic curves.

The comparison curves are built the same way for every energy: the KN curve
is normalized between its forward value and its own minimum, while the
kinematic curves are normalized against their value at ``reference``
(``"pi"`` by default, or ``"kn-min"`` for the sub-MeV minimum rule used by
the amplitude table). The default is what reproduces the published
chi-square tables.

Every chi-square in the sweep compares a curve whose ideal value is the
constant 1 against E = 1. For the scattered-energy comparison the observed
curve is ``KN_norm + (1 - hnu'_norm)``; since ``1 - hnu'_norm`` is the
normalized recoil energy, that column coincides with the kinetic one.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .constants import CODATA, CRITICAL_VALUES, PhysicalConstants
from .cross_section import KnVariant
from .normalization import (
    AmplitudeRow,
    AngleGrid,
    MinRule,
    electron_kinetic_normalized,
    electron_momentum_normalized,
    energy_drop_normalized,
    kn_normalized,
    reference_angle,
    scattered_energy_normalized,
)


class MatchKind(enum.Enum):
    DIFF_SCATTERED_ENERGY = "diff_scattered_energy"
    SUM_MOMENTUM = "sum_momentum"
    SUM_KINETIC = "sum_kinetic"


class Reference(enum.Enum):
    PI = "pi"
    KN_MIN = "kn-min"


@dataclass(frozen=True)
class MatchCurve:
    energy: float
    kind: MatchKind
    variant: KnVariant
    angles: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class ChiSquareReport:
    chi2: float
    dof: int
    critical_value: float | None
    below_critical: bool | None
    terms: np.ndarray | None = field(default=None, repr=False)


def pearson_chi_square(observed, expected, critical_value: float | None = None, keep_terms: bool = False) -> ChiSquareReport:
    """Pearson's statistic sum((O - E)^2 / E) with n - 1 degrees of freedom.

    Without an explicit ``critical_value`` one is looked up by degrees of
    freedom; if none is tabulated, ``below_critical`` is None.
    """
    o = np.asarray(observed, dtype=float)
    e = np.asarray(expected, dtype=float)
    if o.shape != e.shape or o.ndim != 1:
        raise ValueError(f"observed and expected must be 1-D and equal length, got {o.shape} and {e.shape}")
    if len(o) < 2:
        raise ValueError("need at least two points")
    if np.any(~(e > 0)):
        bad = int(np.flatnonzero(~(e > 0))[0])
        raise ValueError(f"expected value at index {bad} is {e[bad]!r}; all expected values must be > 0")
    terms = (o - e) ** 2 / e
    chi2 = float(terms.sum())
    dof = len(o) - 1
    if critical_value is None:
        critical_value = CRITICAL_VALUES.get(dof)
    below = None if critical_value is None else chi2 < critical_value
    return ChiSquareReport(chi2, dof, critical_value, below, terms if keep_terms else None)


def _kinematic_reference(reference, hnu, variant, min_rule, constants):
    if Reference(reference) is Reference.PI:
        return math.pi
    return reference_angle(hnu, variant, min_rule, constants)


def match_curve(
    hnu: float,
    grid: AngleGrid,
    kind: MatchKind | str,
    variant=KnVariant.FULL,
    reference: Reference | str = Reference.PI,
    min_rule=MinRule.OWN,
    constants: PhysicalConstants = CODATA,
) -> MatchCurve:
    """One Fig.-2 style panel: KN_norm - hnu'_norm, KN_norm + p_norm, or KN_norm + K_norm."""
    kind = MatchKind(kind)
    variant = KnVariant.parse(variant)
    ref = _kinematic_reference(reference, hnu, variant, min_rule, constants)
    kn = kn_normalized(hnu, grid, variant, constants).values
    if kind is MatchKind.DIFF_SCATTERED_ENERGY:
        other = scattered_energy_normalized(hnu, grid, variant, min_rule, constants, ref).values
        values = kn - other
    elif kind is MatchKind.SUM_MOMENTUM:
        values = kn + electron_momentum_normalized(hnu, grid, variant, False, min_rule, constants, ref).values
    else:
        values = kn + electron_kinetic_normalized(hnu, grid, variant, False, min_rule, constants, ref).values
    return MatchCurve(float(hnu), kind, variant, grid.angles, values)


@dataclass(frozen=True)
class SweepRow:
    energy: float
    scattered: ChiSquareReport
    momentum: ChiSquareReport
    kinetic: ChiSquareReport

    def values(self) -> tuple[float, float, float]:
        return self.scattered.chi2, self.momentum.chi2, self.kinetic.chi2


def chi2_row(
    hnu: float,
    grid: AngleGrid,
    variant=KnVariant.FULL,
    reference: Reference | str = Reference.PI,
    min_rule=MinRule.OWN,
    constants: PhysicalConstants = CODATA,
    keep_terms: bool = False,
) -> SweepRow:
    variant = KnVariant.parse(variant)
    ref = _kinematic_reference(reference, hnu, variant, min_rule, constants)
    kn = kn_normalized(hnu, grid, variant, constants).values
    drop = energy_drop_normalized(hnu, grid, variant, min_rule, constants, ref).values
    mom = electron_momentum_normalized(hnu, grid, variant, False, min_rule, constants, ref).values
    kin = electron_kinetic_normalized(hnu, grid, variant, False, min_rule, constants, ref).values
    ones = np.ones_like(kn)
    return SweepRow(
        energy=float(hnu),
        scattered=pearson_chi_square(kn + drop, ones, keep_terms=keep_terms),
        momentum=pearson_chi_square(kn + mom, ones, keep_terms=keep_terms),
        kinetic=pearson_chi_square(kn + kin, ones, keep_terms=keep_terms),
    )


def chi2_sweep(
    energies,
    grid: AngleGrid,
    variant=KnVariant.FULL,
    reference: Reference | str = Reference.PI,
    min_rule=MinRule.OWN,
    constants: PhysicalConstants = CODATA,
    keep_terms: bool = False,
    jobs: int = 1,
) -> list[SweepRow]:
    """Three chi-square reports per energy, in input order."""

    def one(e):
        return chi2_row(e, grid, variant, reference, min_rule, constants, keep_terms)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, energies))
    return [one(e) for e in energies]


@dataclass(frozen=True)
class AmplitudeChi2:
    transfer: ChiSquareReport
    momentum: ChiSquareReport


def amplitude_chi2(rows: list[AmplitudeRow], critical_value: float | None = None) -> AmplitudeChi2:
    """Pearson chi-square of the amplitude columns against the KN amplitude.

    Meant for the eight rows at and above 1 MeV (7 degrees of freedom).
    """
    if not rows:
        raise ValueError("no amplitude rows")
    expected = [r.kn_amplitude for r in rows]
    return AmplitudeChi2(
        transfer=pearson_chi_square([r.transfer_fraction for r in rows], expected, critical_value),
        momentum=pearson_chi_square([r.momentum_ratio for r in rows], expected, critical_value),
    )
