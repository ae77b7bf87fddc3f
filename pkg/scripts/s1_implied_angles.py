"""Back-solve the reference angle implied by each printed sub-MeV amplitude cell.

For every column the printed value is inverted on a dense angle grid and
compared with the true minimum of the cross section. Agreement would show
up as zero offset; the sub-MeV rows instead point to angles a few tenths of
a degree (up to ~2 degrees at 0.5 MeV) short of the minimum.
"""

import math

import numpy as np

from compton_kn.cross_section import kn_differential, kn_minimum
from compton_kn.kinematics import electron_kinetic_energy, electron_momentum
from compton_kn.normalization import REFERENCE_ENERGY
from compton_kn.reference import TABLE_S1_ENERGIES, printed_row, table_s1

PHI = np.linspace(1e-6, math.pi, 2_000_001)


def invert(values, target):
    order = np.argsort(values)
    return float(np.interp(target, values[order], PHI[order]))


def main():
    ref_span = 1.0 - kn_minimum(REFERENCE_ENERGY).value
    s1 = table_s1()
    print(f"{'MeV':>8} {'min deg':>9} {'drop deg':>9} {'mom deg':>9} {'kn-amp deg':>10}")
    for e in TABLE_S1_ENERGIES:
        if e >= 1.0:
            continue
        row = printed_row(s1, e)
        true = math.degrees(kn_minimum(e).angle)
        drop = invert(electron_kinetic_energy(e, PHI) / e, row["scatter_drop"].value)
        mom = invert(e / electron_momentum(e, PHI), row["momentum_ratio"].value)
        # amplitude if KN were evaluated at phi instead of at its minimum
        amp = invert((1.0 - kn_differential(e, PHI)) / ref_span, row["kn_amplitude"].value)
        print(f"{e:>8g} {true:9.3f} {math.degrees(drop):9.3f} {math.degrees(mom):9.3f} {math.degrees(amp):10.3f}")


if __name__ == "__main__":
    main()
