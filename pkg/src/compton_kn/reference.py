"""Published tables, kept as printed so last-digit tolerances can be recovered."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import Decimal
from importlib import resources

TABLE_S1_ENERGIES = (1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.5, 1.0, 5.0, 10.0, 50.0, 100.0, 300.0, 500.0, 1000.0)
FIG1_ENERGIES = (1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0, 1000.0)
FIG2_ENERGIES = (1e-3, 0.1, 1.0, 1000.0)

# amplitude chi-squares quoted in the text for the eight rows >= 1 MeV
QUOTED_AMPLITUDE_CHI2_TRANSFER = 0.01025
QUOTED_AMPLITUDE_CHI2_MOMENTUM = 0.02286
AMPLITUDE_CRITICAL_VALUE = 0.1528
SWEEP_CRITICAL_VALUE = 1740.7049
SWEEP_GRID_POINTS = 2000


@dataclass(frozen=True)
class Printed:
    text: str

    @property
    def value(self) -> float:
        return float(self.text)

    @property
    def unit(self) -> float:
        """Size of one unit in the last printed digit."""
        d = Decimal(self.text)
        return float(Decimal(1).scaleb(d.as_tuple().exponent))

    def agrees(self, x: float, units: float = 1.0) -> bool:
        # small slack so that an exact half-unit tie is not decided by float noise
        return abs(x - self.value) <= units * self.unit * (1 + 1e-9)


def _load(name: str) -> list[dict[str, Printed]]:
    text = resources.files(__package__).joinpath("data").joinpath(name).read_text(encoding="utf-8")
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        rows.append({k: Printed(v.strip()) for k, v in rec.items()})
    return rows


def table_s1() -> list[dict[str, Printed]]:
    return _load("table_s1.csv")


def table_s2() -> list[dict[str, Printed]]:
    return _load("table_s2.csv")


def table_s3() -> list[dict[str, Printed]]:
    return _load("table_s3.csv")


def printed_row(table: list[dict[str, Printed]], energy: float) -> dict[str, Printed] | None:
    for row in table:
        if abs(row["energy_mev"].value - energy) <= 1e-12 * energy:
            return row
    return None
