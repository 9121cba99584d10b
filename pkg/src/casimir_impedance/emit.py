"""Tabular output: CSV with a ``#`` metadata block, or the same content as JSON.

Numbers are written in scientific notation with 9 significant digits and
NaN marks a failed row, so repeated runs give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .force import ForceResult, Route, SweepRow, SweepTable
from .materials import Material

SIGN_CONVENTION = "negative pressure = attraction"


@dataclass
class Table:
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    metadata: dict[str, str] = field(default_factory=dict)


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int,)) and not isinstance(v, bool):
        return str(v)
    v = float(v)
    if math.isnan(v):
        return "nan"
    return f"{v:.8e}"


def _json_value(v):
    if isinstance(v, str):
        return v
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    v = float(v)
    if math.isnan(v):
        return None
    return float(f"{v:.8e}")


def render(table: Table, fmt: str = "csv") -> str:
    meta = {"tool": f"casimir-impedance {__version__}", "sign_convention": SIGN_CONVENTION}
    meta.update(table.metadata)
    if fmt == "json":
        doc = {
            "metadata": meta,
            "columns": table.columns,
            "rows": [[_json_value(v) for v in row] for row in table.rows],
        }
        return json.dumps(doc, indent=2) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    for key, value in meta.items():
        buf.write(f"# {key}: {value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def emit(table: Table, fmt: str = "csv", path=None, stream=None) -> int:
    """Write ``table`` to ``path`` (or ``stream``); return the number of bytes."""
    text = render(table, fmt)
    data = text.encode("utf-8")
    if path is not None:
        Path(path).write_bytes(data)
    elif stream is not None:
        stream.write(text)
    return len(data)


def _parse_number(s: str):
    if s in ("nan", ""):
        return float("nan")
    try:
        return int(s) if s.lstrip("-").isdigit() else float(s)
    except ValueError:
        return s


def parse(text: str) -> Table:
    """Read back a CSV or JSON document produced by :func:`render`."""
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        rows = [[float("nan") if v is None else v for v in row] for row in doc["rows"]]
        return Table(doc["columns"], rows, dict(doc["metadata"]))
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition(": ")
            meta[key] = value
        elif line:
            body.append(line)
    reader = csv.reader(body)
    columns = next(reader)
    rows = [[_parse_number(v) for v in row] for row in reader]
    return Table(columns, rows, meta)


# -- record conversions -------------------------------------------------------


def material_provenance(m: Material) -> str:
    return (
        f"{m.name} (omega_p_ev={m.omega_p_ev:.6g}, gamma_ev={m.gamma_ev:.6g}, "
        f"v_fermi_m_per_s={m.v_fermi:.6g}; source: {m.source})"
    )


FORCE_COLUMNS = ["L_m", "pressure_Pa", "abs_error_Pa", "eta_casimir", "evaluations"]


def force_table(results: list[ForceResult], metadata=None) -> Table:
    rows = [[r.L, r.pressure, r.abs_error, r.eta_casimir, r.evaluations] for r in results]
    return Table(list(FORCE_COLUMNS), rows, dict(metadata or {}))


def force_results_from_table(table: Table) -> list[ForceResult]:
    route = Route(table.metadata.get("route", Route.IMAGINARY.value))
    return [
        ForceResult(pressure=p, abs_error=e, eta_casimir=eta, evaluations=int(n), L=L, route=route)
        for L, p, e, eta, n in table.rows
    ]


SWEEP_COLUMNS = ["L_over_lambda_p", "L_m", "F_local_Pa", "F_nonlocal_Pa", "delta_percent", "delta_error"]


def sweep_table(sweep: SweepTable, metadata=None) -> Table:
    meta = {
        "material": material_provenance(sweep.material),
        "route": sweep.route.value,
        "tol": f"{sweep.tol:g}",
    }
    if sweep.failed:
        meta["failed_rows"] = "; ".join(f"L={r.L:.3e}: {r.error}" for r in sweep.failed)
    meta.update(metadata or {})
    rows = [[r.L_over_lambda_p, r.L, r.F_local, r.F_nonlocal, r.delta_percent, r.delta_error] for r in sweep.rows]
    return Table(list(SWEEP_COLUMNS), rows, meta)


def sweep_rows_from_table(table: Table) -> list[SweepRow]:
    return [SweepRow(L, x, fl, fnl, d, de) for x, L, fl, fnl, d, de in table.rows]
