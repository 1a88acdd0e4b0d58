"""
Ordered Result Sink

Pipelines hand their rows to one sink, in the order they should appear. The sink
formats every value deterministically (17 significant digits for reals, complex
values split into _re/_im columns) and writes CSV or JSON to a file or to standard
output once the run is complete, so output bytes never depend on how the rows were
computed.
"""

from collections.abc import Iterable, Mapping
import csv
import io
import json
import logging
import math
from pathlib import Path
import sys

from fh_structs import FORMATS
from fh_structs.fh_errors import ConfigError

logger = logging.getLogger(__name__)


def flatten(row: Mapping, prefix: str = "") -> dict:
    """
    Split complex values into name_re / name_im and inline nested mappings.

    Example:
        >>> flatten({"n": 2, "lhs": 1 + 2j, "params": {"nu": 0}})
        {'n': 2, 'lhs_re': 1.0, 'lhs_im': 2.0, 'params_nu': 0}
    """
    flat = {}
    for key, value in row.items():
        name = f"{prefix}{key}"
        if isinstance(value, complex):
            flat[f"{name}_re"] = value.real
            flat[f"{name}_im"] = value.imag
        elif isinstance(value, Mapping):
            flat.update(flatten(value, prefix=f"{name}_"))
        else:
            flat[name] = value
    return flat


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if hasattr(value, "dtype"):
        return format_cell(value.item())
    return str(value)


def _json_value(value):
    if hasattr(value, "dtype"):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    if isinstance(value, Mapping):
        return {k: _json_value(v) for k, v in value.items()}
    return value


class ResultSink:
    """
    Collects rows and writes them in one go.

    Args:
        output (str): Target path, "-" for standard output
        fmt (str): "csv" or "json"

    Example:
        >>> with ResultSink("-", "csv") as sink:
        ...     sink.add({"n": 1, "logdet": 0j})
        n,logdet_re,logdet_im
        1,0,0
    """

    def __init__(self, output: str = "-", fmt: str = "csv"):
        if fmt not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        self.output = output
        self.fmt = fmt
        self.rows: list[dict] = []

    def add(self, row: Mapping) -> None:
        self.rows.append(flatten(row))

    def extend(self, rows: Iterable[Mapping]) -> None:
        for row in rows:
            self.add(row)

    def render(self) -> str:
        if self.fmt == "json":
            return json.dumps([_json_value(r) for r in self.rows], indent=2) + "\n"

        columns: list[str] = []
        for row in self.rows:
            columns.extend(k for k in row if k not in columns)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if columns:
            writer.writerow(columns)
        for row in self.rows:
            writer.writerow([format_cell(row.get(c)) for c in columns])
        return buffer.getvalue()

    def flush(self) -> None:
        text = self.render()
        if self.output == "-":
            sys.stdout.write(text)
            sys.stdout.flush()
        else:
            Path(self.output).write_text(text)
            logger.info("wrote %d rows to %s", len(self.rows), self.output)

    def __enter__(self) -> "ResultSink":
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        # partial results are still written, so breakdown rows reach the output
        self.flush()
