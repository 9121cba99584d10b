import json
import math

import pytest

from casimir_impedance.emit import (
    FORCE_COLUMNS,
    SWEEP_COLUMNS,
    Table,
    emit,
    force_results_from_table,
    force_table,
    parse,
    render,
    sweep_rows_from_table,
    sweep_table,
)
from casimir_impedance.force import ForceResult, Route, SweepRow, SweepTable


@pytest.fixture
def sweep_record(gold):
    rows = [
        SweepRow(1e-8, 1e-8 / gold.lambda_p, -1.23456789e3, -1.2e3, 2.8, 1e-4),
        SweepRow(2e-8, 2e-8 / gold.lambda_p, float("nan"), float("nan"), float("nan"), float("nan"), "failed"),
    ]
    return SweepTable(gold, 1e-4, Route.IMAGINARY, rows)


def test_empty_table_is_header_only():
    text = render(Table(["a", "b"]))
    lines = text.splitlines()
    assert lines[-1] == "a,b"
    assert all(line.startswith("# ") for line in lines[:-1])


def test_metadata_block(sweep_record):
    text = render(sweep_table(sweep_record))
    assert "# sign_convention: negative pressure = attraction" in text
    assert "# tool: casimir-impedance" in text
    assert "omega_p_ev=9" in text
    assert "# failed_rows: L=2.000e-08: failed" in text


def test_number_format():
    text = render(Table(["x", "n"], [[1 / 3, 7]]))
    assert text.splitlines()[-1] == "3.33333333e-01,7"


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_sweep_round_trip(sweep_record, fmt):
    back = sweep_rows_from_table(parse(render(sweep_table(sweep_record), fmt)))
    for a, b in zip(sweep_record.rows, back):
        for f in ("L", "L_over_lambda_p", "F_local", "F_nonlocal", "delta_percent", "delta_error"):
            x, y = getattr(a, f), getattr(b, f)
            assert (math.isnan(x) and math.isnan(y)) or x == pytest.approx(y, rel=1e-8)


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_force_round_trip(fmt):
    res = [ForceResult(-1.30012577e-3, 3.1e-11, 1.0, 75, 1e-6, Route.REAL)]
    back = force_results_from_table(parse(render(force_table(res, {"route": "real-contour"}), fmt)))
    assert back == res


def test_json_mirrors_csv(sweep_record):
    doc = json.loads(render(sweep_table(sweep_record), "json"))
    assert doc["columns"] == SWEEP_COLUMNS
    assert doc["rows"][1][2] is None
    assert doc["metadata"]["route"] == "imaginary-axis"


def test_emit_to_file_is_byte_stable(tmp_path, sweep_record):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    n = emit(sweep_table(sweep_record), "csv", a)
    emit(sweep_table(sweep_record), "csv", b)
    assert a.read_bytes() == b.read_bytes()
    assert n == len(a.read_bytes())


def test_unknown_format():
    with pytest.raises(ValueError):
        render(Table(FORCE_COLUMNS), "xml")
