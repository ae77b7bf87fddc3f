"""How the sweep chi-squares move with grid, reference angle and comparison form.

Each line gives computed/printed for table S2 column 1 at a few energies.
Only one combination lands within a fraction of a percent everywhere.
"""

import numpy as np

from compton_kn.matching import chi2_row, pearson_chi_square
from compton_kn.normalization import AngleGrid, kn_normalized, scattered_energy_normalized
from compton_kn.reference import printed_row, table_s2

ENERGIES = (1e-5, 0.01, 0.1, 0.5, 1.0, 10.0, 1000.0)
S2 = table_s2()


def printed(e):
    return printed_row(S2, e)["chi2_scattered"].value


def literal(e, grid):
    # O = KN_norm, E = hnu'_norm; E vanishes at the reference angle
    kn = kn_normalized(e, grid).values
    q = scattered_energy_normalized(e, grid).values
    try:
        return pearson_chi_square(kn, q).chi2
    except ValueError:
        return float("nan")


def line(label, fn):
    ratios = []
    for e in ENERGIES:
        v = fn(e)
        ratios.append(f"{v / printed(e):8.4f}" if np.isfinite(v) else "     n/a")
    print(f"{label:<34}" + " ".join(ratios))


def main():
    print(f"{'convention':<34}" + " ".join(f"{e:>8g}" for e in ENERGIES))
    for n in (1000, 2000, 4000):
        g = AngleGrid.midpoints(n)
        line(f"midpoints n={n}, ref pi", lambda e, g=g: chi2_row(e, g).scattered.chi2)
    g = AngleGrid.midpoints(2000)
    line("midpoints n=2000, ref kn-min", lambda e: chi2_row(e, g, reference="kn-min").scattered.chi2)
    for n in (2000, 2001):
        gi = AngleGrid.inclusive(n)
        line(f"endpoints n={n}, ref pi", lambda e, gi=gi: chi2_row(e, gi).scattered.chi2)
    line("literal O=KN, E=hnu' (midpoints)", lambda e: literal(e, g))


if __name__ == "__main__":
    main()
