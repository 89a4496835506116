"""JSON and CSV serialization of runs and sweep reports.

JSON floats are written with Python's shortest round-trip repr, so parsing
the output gives back the identical doubles.
"""

from __future__ import annotations

import csv
import io
import json
from typing import IO, Iterable, Sequence

from .euclid import Polygon
from .family import BicentricPair
from .lab import SweepReport

CSV_COLUMNS = ("u", "measurement_id", "value", "excluded_flag")


def run_payload(
    family: str,
    pair: BicentricPair,
    rho: float,
    polygons: Iterable[tuple[float, Polygon]] = (),
    reports: Sequence[SweepReport] = (),
) -> dict:
    return {
        "family": family,
        "pair": pair.as_dict(),
        "rho": float(rho),
        "polygons": [{"u": float(u), "vertices": P.vertices.tolist()} for u, P in polygons],
        "reports": [rep.to_dict() for rep in reports],
    }


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, allow_nan=False)


def loads(text: str) -> dict:
    """Parse a run payload; report entries come back as SweepReport objects."""
    data = json.loads(text)
    if "reports" in data:
        data["reports"] = [SweepReport.from_dict(r) for r in data["reports"]]
    return data


def write_csv(reports: Sequence[SweepReport], stream: IO[str]) -> None:
    """One row per grid point and measurement, then '#'-prefixed summary rows."""
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rep in reports:
        rows = [(u, repr(v), 0) for u, v in zip(rep.u_grid, rep.values)]
        rows += [(u, "", 1) for u in rep.excluded]
        rows.sort(key=lambda row: row[0])
        for u, v, flag in rows:
            w.writerow((repr(u), rep.measurement, v, flag))
    for rep in reports:
        stream.write(
            f"# {rep.family},{rep.measurement},samples={rep.samples},excluded={len(rep.excluded)},"
            f"min={rep.min!r},max={rep.max!r},mean={rep.mean!r},spread_rel={rep.spread_rel!r}\n"
        )


def csv_text(reports: Sequence[SweepReport]) -> str:
    buf = io.StringIO()
    write_csv(reports, buf)
    return buf.getvalue()


def read_csv_rows(stream: IO[str]) -> list[dict]:
    """Data rows of a sweep CSV (summary rows skipped); value is None for excluded points."""
    lines = [ln for ln in stream if not ln.startswith("#")]
    out = []
    for row in csv.DictReader(lines):
        out.append(
            {
                "u": float(row["u"]),
                "measurement_id": row["measurement_id"],
                "value": float(row["value"]) if row["value"] else None,
                "excluded_flag": int(row["excluded_flag"]),
            }
        )
    return out
