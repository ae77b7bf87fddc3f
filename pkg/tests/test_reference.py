import pytest

from compton_kn.reference import TABLE_S1_ENERGIES, Printed, printed_row, table_s1, table_s2, table_s3


@pytest.mark.parametrize(
    "text, unit", [("0.8941", 1e-4), ("4.0388e-8", 1e-12), ("499.3880", 1e-4), ("1", 1.0), ("4.015e-4", 1e-7)]
)
def test_last_digit_unit(text, unit):
    assert Printed(text).unit == pytest.approx(unit)


def test_agrees():
    p = Printed("0.8941")
    assert p.agrees(0.89415)
    assert p.agrees(0.8940)
    assert not p.agrees(0.89421)
    assert p.agrees(0.8943, units=2)


@pytest.mark.parametrize("loader", [table_s1, table_s2, table_s3])
def test_tables_cover_ladder(loader):
    rows = loader()
    assert [r["energy_mev"].value for r in rows] == list(TABLE_S1_ENERGIES)


def test_printed_row():
    row = printed_row(table_s1(), 1.0)
    assert [row[k].text for k in ("kn_amplitude", "scatter_drop", "momentum_ratio", "transfer_fraction")] == [
        "0.8941",
        "0.7965",
        "0.8309",
        "0.7965",
    ]
    assert printed_row(table_s1(), 2.0) is None
