"""Compton kinematics, Klein-Nishina cross sections, and their shape matching."""

from .constants import CODATA, PhysicalConstants
from .cross_section import KnMinimum, KnVariant, kn_differential, kn_minimum, kn_total_cross_section
from .kinematics import (
    DomainError,
    ScatterState,
    electron_kinetic_energy,
    electron_momentum,
    electron_total_energy,
    momentum_from_kinetic,
    scatter,
    scattered_photon_energy,
)
from .matching import ChiSquareReport, MatchKind, amplitude_chi2, chi2_sweep, match_curve, pearson_chi_square
from .normalization import (
    AmplitudeRow,
    AngleGrid,
    Curve,
    MinRule,
    amplitude_table,
    electron_kinetic_normalized,
    electron_momentum_normalized,
    kn_global_normalized,
    kn_normalized,
    reference_angle,
    scattered_energy_normalized,
)

__version__ = "0.1.0"
