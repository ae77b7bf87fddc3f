"""Two-body kinematics of a photon scattering off a free electron at rest.

Energies are in MeV, momenta in MeV/c, angles in radians. Every function
accepts scalars or numpy arrays and broadcasts like a ufunc.

The angular factor ``1 - cos(phi)`` is evaluated as ``2 sin^2(phi/2)`` and the
recoil quantities are built from it directly, so that forward scattering does
not lose precision to cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import CODATA, PhysicalConstants

ANGLE_SLACK = 1e-12
RADICAND_SLACK = 1e-15


class DomainError(ValueError):
    """An input lies outside the physical domain of a formula."""

    def __init__(self, parameter: str, message: str):
        super().__init__(f"{parameter}: {message}")
        self.parameter = parameter


def check_energy(hnu, name: str = "energy"):
    arr = np.asarray(hnu, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError(name, f"photon energy must be finite and > 0 MeV, got {hnu!r}")
    return arr


def check_angle(phi, name: str = "angle"):
    arr = np.asarray(phi, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < -ANGLE_SLACK) or np.any(arr > math.pi + ANGLE_SLACK):
        raise DomainError(name, f"scattering angle must lie in [0, pi] rad, got {phi!r}")
    return np.clip(arr, 0.0, math.pi)


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def _versine(phi):
    # 1 - cos(phi), cancellation free
    return 2.0 * np.sin(0.5 * phi) ** 2


def _transfer(hnu, phi, constants):
    """(hnu, eps * (1 - cos phi)) after validation."""
    h = check_energy(hnu)
    x = _versine(check_angle(phi))
    return h, h / constants.electron_rest_energy * x


def scattered_photon_energy(hnu, phi, constants: PhysicalConstants = CODATA):
    """Energy of the photon scattered through ``phi``."""
    h, ex = _transfer(hnu, phi, constants)
    return _out(h / (1.0 + ex))


def energy_ratio(hnu, phi, constants: PhysicalConstants = CODATA):
    """hnu'/hnu, the Compton scatter fraction."""
    _, ex = _transfer(hnu, phi, constants)
    return _out(1.0 / (1.0 + ex))


def electron_kinetic_energy(hnu, phi, constants: PhysicalConstants = CODATA):
    """Recoil kinetic energy hnu - hnu'(phi)."""
    h, ex = _transfer(hnu, phi, constants)
    return _out(h * ex / (1.0 + ex))


def electron_total_energy(hnu, phi, constants: PhysicalConstants = CODATA):
    """Total recoil energy hnu - hnu' + m0 c^2."""
    return _out(
        np.asarray(electron_kinetic_energy(hnu, phi, constants)) + constants.electron_rest_energy
    )


def electron_momentum(hnu, phi, constants: PhysicalConstants = CODATA):
    """Recoil momentum from momentum conservation, in MeV/c.

    The radicand ``hnu^2 + hnu'^2 - 2 hnu hnu' cos(phi)`` is rearranged as
    ``(hnu - hnu')^2 + 4 hnu hnu' sin^2(phi/2)``.
    """
    h, ex = _transfer(hnu, phi, constants)
    q = h / (1.0 + ex)
    k = h * ex / (1.0 + ex)
    radicand = k * k + 4.0 * h * q * np.sin(0.5 * check_angle(phi)) ** 2
    return _out(np.sqrt(_clamp_radicand(radicand, h * h)))


def _clamp_radicand(radicand, scale):
    radicand = np.asarray(radicand, dtype=float)
    floor = -RADICAND_SLACK * np.asarray(scale)
    if np.any(radicand < floor):
        raise ArithmeticError(f"negative momentum radicand {radicand!r}")
    return np.maximum(radicand, 0.0)


def momentum_from_kinetic(kinetic, constants: PhysicalConstants = CODATA):
    """Relativistic momentum (MeV/c) of an electron with the given kinetic energy.

    Uses p^2 c^2 = K^2 + 2 K m0 c^2.
    """
    k = np.asarray(kinetic, dtype=float)
    if not np.all(np.isfinite(k)) or np.any(k < 0):
        raise DomainError("kinetic", f"kinetic energy must be finite and >= 0 MeV, got {kinetic!r}")
    return _out(np.sqrt(k * (k + 2.0 * constants.electron_rest_energy)))


def compton_shift(phi, constants: PhysicalConstants = CODATA):
    """Wavelength shift lambda' - lambda = (h / m0 c)(1 - cos phi), in metres."""
    return _out(constants.compton_wavelength * _versine(check_angle(phi)))


def photon_wavelength(energy, constants: PhysicalConstants = CODATA):
    """hc / E in metres."""
    return _out(constants.planck_hc / check_energy(energy))


@dataclass(frozen=True)
class ScatterState:
    incident_energy: float
    angle: float
    scattered_energy: float
    electron_momentum: float
    electron_kinetic: float
    electron_total: float


def scatter(hnu: float, phi: float, constants: PhysicalConstants = CODATA) -> ScatterState:
    return ScatterState(
        incident_energy=float(check_energy(hnu)),
        angle=float(check_angle(phi)),
        scattered_energy=scattered_photon_energy(hnu, phi, constants),
        electron_momentum=electron_momentum(hnu, phi, constants),
        electron_kinetic=electron_kinetic_energy(hnu, phi, constants),
        electron_total=electron_total_energy(hnu, phi, constants),
    )
