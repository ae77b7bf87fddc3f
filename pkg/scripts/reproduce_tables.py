"""Print computed vs printed values for tables S1-S3 and the amplitude chi-squares."""

import argparse

from compton_kn import report
from compton_kn.report import RunConfig


def show(table, cols):
    idx = [table.columns.index(c) for c in cols]
    print(",".join(cols))
    for row in table.rows:
        print(",".join(report.rounded(row[i], 6) if isinstance(row[i], float) else str(row[i]) for i in idx))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid-points", type=int, default=2000)
    args = ap.parse_args()
    cfg = RunConfig(grid_points=args.grid_points)

    print("# table S1")
    show(report.s1_table(cfg), ["energy_mev", "column", "computed_rounded", "printed", "within_last_digit"])
    for name in ("s2", "s3"):
        print(f"\n# table {name.upper()}")
        show(report.chi2_table(cfg, name), ["energy_mev", "column", "chi2", "printed", "ratio"])
    print("\n# amplitude chi-squares")
    t = report.amplitude_chi2_table(cfg)
    print(",".join(t.columns))
    for row in t.rows:
        print(",".join(str(v) for v in row))


if __name__ == "__main__":
    main()
