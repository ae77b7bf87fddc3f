"""Physical constants (CODATA 2014, as published by NIST)."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    electron_rest_energy: float = 0.5109989461  # MeV
    classical_electron_radius: float = 2.8179403227e-15  # m
    planck_hc: float = 1.23984197e-12  # MeV m

    @property
    def re2(self) -> float:
        """Classical electron radius squared, in m^2."""
        return self.classical_electron_radius**2

    @property
    def compton_wavelength(self) -> float:
        """h/(m0 c) in metres."""
        return self.planck_hc / self.electron_rest_energy

    @property
    def thomson_cross_section(self) -> float:
        return 8.0 * math.pi / 3.0 * self.re2


CODATA = PhysicalConstants()

BARN = 1e-28  # m^2
MILLIBARN = 1e-31  # m^2

# Critical values of the chi-square distribution at probability level 0.9999,
# keyed by degrees of freedom. Transcribed, not computed.
CRITICAL_VALUES: dict[int, float] = {1999: 1740.7049, 7: 0.1528}
