"""Write every figure's curves and every table to CSV files in one directory."""

import argparse
from pathlib import Path

from compton_kn.cli import main as cli


def run(outdir: Path, grid_points: int) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    from compton_kn.report import FIGURES, TABLES

    for fig in FIGURES:
        cli(["curves", "--figure", fig, "--grid-points", str(grid_points), "--out", str(outdir / f"fig{fig}.csv")])
    for name in TABLES:
        cli(["table", name, "--out", str(outdir / f"table_{name}.csv")])
    cli(["total-xs", "--out", str(outdir / "total_xs.csv")])


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", type=Path)
    ap.add_argument("--grid-points", type=int, default=2000)
    a = ap.parse_args()
    run(a.outdir, a.grid_points)
