"""Normalized angular curves and the amplitude table.

Each per-energy curve is rescaled against a reference angle: pi for
hnu >= 1 MeV, and the angle of the Klein-Nishina minimum below that.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .constants import CODATA, PhysicalConstants
from .cross_section import KnVariant, kn_differential, kn_minimum
from .kinematics import check_energy, electron_kinetic_energy, electron_momentum, scattered_photon_energy

REFERENCE_ENERGY = 1000.0  # MeV, anchor of the global KN amplitude
PI_THRESHOLD = 1.0  # MeV; at and above this the reference angle is pi
DEGENERATE = 1e-300


class Quantity(enum.Enum):
    KN_NORM = "kn_norm"
    KN_GLOBAL_NORM = "kn_global_norm"
    SCATTERED_ENERGY_NORM = "scattered_energy_norm"
    SCATTER_FRACTION = "scatter_fraction"
    ENERGY_DROP_NORM = "energy_drop_norm"
    ELECTRON_MOMENTUM_NORM = "electron_momentum_norm"
    MOMENTUM_SCALED_NORM = "momentum_scaled_norm"
    ELECTRON_KINETIC_NORM = "electron_kinetic_norm"
    ENERGY_TRANSFER_FRACTION = "energy_transfer_fraction"


class MinRule(enum.Enum):
    """Which variant's KN minimum sets the sub-MeV reference angle."""

    OWN = "own"
    FULL = "full"


@dataclass(frozen=True)
class AngleGrid:
    angles: np.ndarray = field(repr=False)

    @property
    def count(self) -> int:
        return len(self.angles)

    @classmethod
    def midpoints(cls, n: int) -> "AngleGrid":
        """Cell centres (i - 1/2) pi / n, i = 1..n; never touches 0 or pi."""
        if n < 2:
            raise ValueError(f"grid needs at least 2 points, got {n}")
        return cls((np.arange(1, n + 1) - 0.5) * (math.pi / n))

    @classmethod
    def inclusive(cls, n: int) -> "AngleGrid":
        """Endpoint-inclusive uniform grid on [0, pi] for boundary diagnostics."""
        if n < 2:
            raise ValueError(f"grid needs at least 2 points, got {n}")
        a = np.linspace(0.0, math.pi, n)
        a[-1] = math.pi
        return cls(a)

    @classmethod
    def of(cls, angles) -> "AngleGrid":
        return cls(np.asarray(angles, dtype=float))


@dataclass(frozen=True)
class Curve:
    energy: float
    quantity: Quantity
    variant: KnVariant
    angles: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    reference_angle: float | None = None

    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.angles.tolist(), self.values.tolist()))


def _ratio(num, den, what: str):
    if abs(den) < DEGENERATE:
        raise ArithmeticError(f"degenerate normalization denominator for {what}")
    return num / den


def reference_angle(
    hnu: float,
    variant: KnVariant | str = KnVariant.FULL,
    min_rule: MinRule | str = MinRule.OWN,
    constants: PhysicalConstants = CODATA,
) -> float:
    """pi at and above 1 MeV, otherwise the angle minimizing KN.

    With ``min_rule="full"`` the sub-MeV minimum always comes from the full
    cross section, whichever variant is being normalized.
    """
    hnu = float(check_energy(hnu))
    if hnu >= PI_THRESHOLD:
        return math.pi
    variant = KnVariant.parse(variant)
    if MinRule(min_rule) is MinRule.FULL:
        variant = KnVariant.FULL
    return kn_minimum(hnu, variant, constants).angle


def _kn_span(hnu, variant, constants):
    kmin = kn_minimum(hnu, variant, constants)
    k0 = kn_differential(hnu, 0.0, variant, constants)
    return kmin, k0 - kmin.value


def kn_normalized(hnu, grid: AngleGrid, variant=KnVariant.FULL, constants: PhysicalConstants = CODATA) -> Curve:
    """(KN - KN_min) / (KN(0) - KN_min): 1 forward, 0 at the minimum."""
    variant = KnVariant.parse(variant)
    kmin, span = _kn_span(hnu, variant, constants)
    k = np.asarray(kn_differential(hnu, grid.angles, variant, constants))
    values = _ratio(k - kmin.value, span, "KN")
    return Curve(float(hnu), Quantity.KN_NORM, variant, grid.angles, values, kmin.angle)


def kn_amplitude(hnu, variant=KnVariant.FULL, constants: PhysicalConstants = CODATA) -> float:
    """KN(0) - KN_min relative to its value at 1000 MeV."""
    variant = KnVariant.parse(variant)
    _, span = _kn_span(hnu, variant, constants)
    _, ref = _kn_span(REFERENCE_ENERGY, variant, constants)
    return _ratio(span, ref, "KN amplitude")


def kn_global_normalized(hnu, grid: AngleGrid, constants: PhysicalConstants = CODATA) -> Curve:
    """(KN - KN_min) scaled by the 1000 MeV span, full variant."""
    kmin, _ = _kn_span(hnu, KnVariant.FULL, constants)
    _, ref = _kn_span(REFERENCE_ENERGY, KnVariant.FULL, constants)
    k = np.asarray(kn_differential(hnu, grid.angles, KnVariant.FULL, constants))
    values = _ratio(k - kmin.value, ref, "KN global")
    return Curve(float(hnu), Quantity.KN_GLOBAL_NORM, KnVariant.FULL, grid.angles, values, kmin.angle)


def _resolve_reference(hnu, variant, min_rule, constants, ref_angle):
    if ref_angle is None:
        return reference_angle(hnu, variant, min_rule, constants)
    return float(ref_angle)


def scattered_energy_normalized(
    hnu,
    grid: AngleGrid,
    variant=KnVariant.FULL,
    min_rule=MinRule.OWN,
    constants: PhysicalConstants = CODATA,
    ref_angle: float | None = None,
) -> Curve:
    """(hnu'(phi) - hnu'(ref)) / (hnu - hnu'(ref)).

    ``ref_angle`` overrides the default reference angle rule.
    """
    variant = KnVariant.parse(variant)
    ref = _resolve_reference(hnu, variant, min_rule, constants, ref_angle)
    # hnu'(phi) - hnu'(ref) = K(ref) - K(phi), which avoids cancellation at low energy
    k = np.asarray(electron_kinetic_energy(hnu, grid.angles, constants))
    k_ref = electron_kinetic_energy(hnu, ref, constants)
    values = _ratio(k_ref - k, k_ref, "scattered energy")
    return Curve(float(hnu), Quantity.SCATTERED_ENERGY_NORM, variant, grid.angles, values, ref)


def energy_drop_normalized(
    hnu,
    grid: AngleGrid,
    variant=KnVariant.FULL,
    min_rule=MinRule.OWN,
    constants: PhysicalConstants = CODATA,
    ref_angle: float | None = None,
) -> Curve:
    """(hnu - hnu'(phi)) / (hnu - hnu'(ref)), the complement of the normalized scattered energy.

    By energy conservation this is the same arithmetic as the normalized recoil
    kinetic energy, and it is computed that way so the two agree bit for bit.
    """
    curve = electron_kinetic_normalized(hnu, grid, variant, False, min_rule, constants, ref_angle)
    return Curve(curve.energy, Quantity.ENERGY_DROP_NORM, curve.variant, curve.angles, curve.values, curve.reference_angle)


def scatter_fraction(hnu, grid: AngleGrid, constants: PhysicalConstants = CODATA) -> Curve:
    """hnu'(phi) / hnu."""
    values = np.asarray(scattered_photon_energy(hnu, grid.angles, constants)) / float(hnu)
    return Curve(float(hnu), Quantity.SCATTER_FRACTION, KnVariant.FULL, grid.angles, values)


def electron_momentum_normalized(
    hnu,
    grid: AngleGrid,
    variant=KnVariant.FULL,
    scaled: bool = False,
    min_rule=MinRule.OWN,
    constants: PhysicalConstants = CODATA,
    ref_angle: float | None = None,
) -> Curve:
    variant = KnVariant.parse(variant)
    ref = _resolve_reference(hnu, variant, min_rule, constants, ref_angle)
    p = np.asarray(electron_momentum(hnu, grid.angles, constants))
    p_ref = electron_momentum(hnu, ref, constants)
    values = _ratio(p, p_ref, "electron momentum")
    quantity = Quantity.ELECTRON_MOMENTUM_NORM
    if scaled:
        values = values * (float(hnu) / p_ref)
        quantity = Quantity.MOMENTUM_SCALED_NORM
    return Curve(float(hnu), quantity, variant, grid.angles, values, ref)


def electron_kinetic_normalized(
    hnu,
    grid: AngleGrid,
    variant=KnVariant.FULL,
    as_fraction: bool = False,
    min_rule=MinRule.OWN,
    constants: PhysicalConstants = CODATA,
    ref_angle: float | None = None,
) -> Curve:
    """K_e'(phi) / K_e'(ref), or K_e'(phi) / hnu with ``as_fraction``."""
    variant = KnVariant.parse(variant)
    k = np.asarray(electron_kinetic_energy(hnu, grid.angles, constants))
    if as_fraction:
        return Curve(float(hnu), Quantity.ENERGY_TRANSFER_FRACTION, variant, grid.angles, k / float(hnu))
    ref = _resolve_reference(hnu, variant, min_rule, constants, ref_angle)
    values = _ratio(k, electron_kinetic_energy(hnu, ref, constants), "electron kinetic energy")
    return Curve(float(hnu), Quantity.ELECTRON_KINETIC_NORM, variant, grid.angles, values, ref)


@dataclass(frozen=True)
class AmplitudeRow:
    energy: float
    kn_amplitude: float
    scatter_drop: float
    momentum_ratio: float
    transfer_fraction: float
    reference_angle: float


def amplitude_row(
    hnu: float,
    variant=KnVariant.FULL,
    min_rule=MinRule.OWN,
    constants: PhysicalConstants = CODATA,
) -> AmplitudeRow:
    hnu = float(check_energy(hnu))
    ref = reference_angle(hnu, variant, min_rule, constants)
    # hnu'(0) = hnu, so the drop in scattered energy is the recoil energy;
    # one expression serves both columns
    drop = electron_kinetic_energy(hnu, ref, constants) / hnu
    return AmplitudeRow(
        energy=hnu,
        kn_amplitude=kn_amplitude(hnu, variant, constants),
        scatter_drop=drop,
        momentum_ratio=hnu / electron_momentum(hnu, ref, constants),
        transfer_fraction=drop,
        reference_angle=ref,
    )


def amplitude_table(energies, variant=KnVariant.FULL, min_rule=MinRule.OWN, constants: PhysicalConstants = CODATA):
    return [amplitude_row(e, variant, min_rule, constants) for e in energies]
