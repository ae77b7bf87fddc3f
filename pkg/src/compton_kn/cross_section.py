"""Klein-Nishina differential and total cross sections for unpolarized photons.

Cross sections are returned as multiples of r_e^2 (per steradian for the
differential form). Multiply by ``constants.re2`` for m^2.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

import numpy as np

from .constants import CODATA, PhysicalConstants
from .kinematics import _out, check_angle, check_energy
from .numerics import adaptive_simpson, golden_section, trapezoid

COARSE_POINTS = 10_000
MIN_XTOL = 1e-10


class KnVariant(enum.Enum):
    FULL = "full"
    # sin^2(phi) term of the bracket dropped
    NO_SIN2 = "no-sin2"

    @classmethod
    def parse(cls, value: "KnVariant | str") -> "KnVariant":
        if isinstance(value, cls):
            return value
        aliases = {"full": cls.FULL, "no-sin2": cls.NO_SIN2, "no_sin2": cls.NO_SIN2, "nosin2": cls.NO_SIN2}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValueError(f"unknown Klein-Nishina variant {value!r}") from None


def _kn(ratio, sin2):
    return 0.5 * ratio * ratio * (ratio + 1.0 / ratio - sin2)


def kn_differential(hnu, phi, variant: KnVariant | str = KnVariant.FULL, constants: PhysicalConstants = CODATA):
    """d sigma / d Omega at scattering angle ``phi``, in r_e^2 per sr."""
    variant = KnVariant.parse(variant)
    h = check_energy(hnu)
    p = check_angle(phi)
    half = np.sin(0.5 * p)
    ratio = 1.0 / (1.0 + h / constants.electron_rest_energy * 2.0 * half * half)
    sin2 = np.sin(p) ** 2 if variant is KnVariant.FULL else 0.0
    return _out(_kn(ratio, sin2))


def thomson_differential(phi):
    """Classical limit (1 + cos^2 phi) / 2, in r_e^2 per sr."""
    p = check_angle(phi)
    return _out(0.5 * (1.0 + np.cos(p) ** 2))


@dataclass(frozen=True)
class KnMinimum:
    angle: float
    value: float
    energy: float
    variant: KnVariant


def kn_minimum(
    hnu: float,
    variant: KnVariant | str = KnVariant.FULL,
    constants: PhysicalConstants = CODATA,
    coarse_points: int = COARSE_POINTS,
    xtol: float = MIN_XTOL,
) -> KnMinimum:
    """Global minimum of the differential cross section over [0, pi].

    A uniform scan brackets the minimum, which golden-section search then
    refines. Ties go to the larger angle, so a flat or monotone tail resolves
    to pi.
    """
    return _kn_minimum(float(check_energy(hnu)), KnVariant.parse(variant), constants, coarse_points, xtol)


@functools.lru_cache(maxsize=512)
def _kn_minimum(hnu, variant, constants, coarse_points, xtol) -> KnMinimum:
    grid = np.linspace(0.0, math.pi, coarse_points)
    grid[-1] = math.pi
    values = kn_differential(hnu, grid, variant, constants)
    # last occurrence of the minimum
    i = len(values) - 1 - int(np.argmin(values[::-1]))
    best_x, best_f = float(grid[i]), float(values[i])

    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    x, fx = golden_section(lambda t: kn_differential(hnu, t, variant, constants), lo, hi, xtol)
    if fx < best_f or (fx == best_f and x > best_x):
        best_x, best_f = x, fx
    return KnMinimum(angle=float(best_x), value=float(best_f), energy=hnu, variant=variant)


def _scalar_integrand(hnu: float, constants: PhysicalConstants):
    eps = hnu / constants.electron_rest_energy
    sin, cos = math.sin, math.cos

    def f(phi: float) -> float:
        s = sin(phi)
        ratio = 1.0 / (1.0 + eps * (1.0 - cos(phi)))
        return 0.5 * ratio * ratio * (ratio + 1.0 / ratio - s * s) * s

    return f


def kn_total_cross_section(hnu: float, constants: PhysicalConstants = CODATA, rtol: float = 1e-9) -> float:
    """Total Klein-Nishina cross section in units of r_e^2, by adaptive Simpson."""
    hnu = float(check_energy(hnu))
    return 2.0 * math.pi * adaptive_simpson(_scalar_integrand(hnu, constants), 0.0, math.pi, rtol=rtol)


def kn_total_trapezoid(hnu: float, constants: PhysicalConstants = CODATA, n: int = 1_000_001) -> float:
    """Brute-force total cross section on ``n`` uniform nodes (reference check)."""
    hnu = float(check_energy(hnu))
    return 2.0 * math.pi * trapezoid(
        lambda p: kn_differential(hnu, p, KnVariant.FULL, constants) * np.sin(p), 0.0, math.pi, n
    )
