import csv
import io
import json
import math
import os
import sys
import tempfile
from typing import List, Optional, Sequence

from ..core.schemas import UnitSystem
from ..settings import PROJECT_NAME, VERSION
from .schemas import OutputFormat

# Times, lengths and velocities are always natural; SI runs echo their inputs in eV, kg and m.
UNIT_LABELS = {
    UnitSystem.NATURAL: "natural-units",
    UnitSystem.SI: "si-inputs natural-outputs",
}
FLOAT_FORMAT = "%.12e"


def csv_header(units: UnitSystem = UnitSystem.NATURAL) -> str:
    return f"# {PROJECT_NAME} v{VERSION} {UNIT_LABELS[units]}"


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return FLOAT_FORMAT % value
    return str(value)


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def render_csv(rows: List[dict], columns: Sequence[str], units: UnitSystem = UnitSystem.NATURAL) -> str:
    """
    Renders rows as CSV: a versioned '#' header line tagged with the unit mode, the column names,
    then one line per row.

    Floats use 12 significant decimals in exponent form; None becomes an empty cell.
    """
    buffer = io.StringIO()
    buffer.write(csv_header(units) + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row.get(column)) for column in columns])
    return buffer.getvalue()


def render_json(rows: List[dict], columns: Sequence[str]) -> str:
    """
    Renders rows as a JSON array of flat objects with identical keys; NaN and infinities become null.
    """
    objects = [{column: _json_value(row.get(column)) for column in columns} for row in rows]
    return json.dumps(objects, indent=2) + "\n"


def render(rows: List[dict], columns: Sequence[str], output: OutputFormat,
           units: UnitSystem = UnitSystem.NATURAL) -> str:
    if output is OutputFormat.JSON:
        return render_json(rows, columns)
    return render_csv(rows, columns, units)


def write_output(text: str, path: Optional[str]) -> None:
    """
    Writes text to path atomically (temporary file in the same directory, then rename),
    or to standard output when path is None.
    """
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tunnelgate-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
