"""Deterministic result files: CSV tables, JSON envelopes, plot scripts.

Every write is atomic (temp file in the target directory, then rename) so
re-runs never observe torn files.  Identical configurations must produce
byte-identical outputs: floats are serialized with repr (shortest
round-trip form), JSON keys are sorted, and nothing volatile (timestamps,
wall time) enters the files.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass, field

from .errors import IoError

__all__ = [
    "ResultEnvelope",
    "atomic_write_text",
    "config_hash",
    "write_csv_atomic",
    "write_json_atomic",
    "emit_table",
    "emit_plot_script",
]

TOOL_VERSION = "0.1.0"


def canonical_config(config: dict) -> dict:
    """The scientifically meaningful part of a config: output location
    stripped, so determinism is judged on what was computed, not where it
    was written."""
    return {k: v for k, v in config.items() if k not in ("out", "config")}


def config_hash(config: dict) -> str:
    """sha256 of the canonical (sorted, repr-float) JSON encoding."""
    blob = json.dumps(canonical_config(config), sort_keys=True, separators=(",", ":"), default=repr)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


@dataclass
class ResultEnvelope:
    """What a command produced: inputs echoed, scalars, table references.

    Wall time is intentionally not stored (it would break byte-for-byte
    determinism); the CLI reports it on stderr instead.
    """

    command: str
    config: dict
    results: dict = field(default_factory=dict)
    tables: list = field(default_factory=list)
    seed: int | None = None

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "config": canonical_config(self.config),
            "config_sha256": config_hash(self.config),
            "results": self.results,
            "seed": self.seed,
            "tables": sorted(self.tables),
            "version": TOOL_VERSION,
        }


def atomic_write_text(path: str, text: str) -> None:
    """Write text via a temp file in the target directory plus rename."""
    directory = os.path.dirname(os.path.abspath(path))
    try:
        os.makedirs(directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
    except OSError as exc:
        raise IoError(f"failed to write {path}: {exc}") from exc


_atomic_write = atomic_write_text


def _format_cell(value) -> str:
    # canonicalize numpy scalars so cells carry the shortest round-trip form
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def write_csv_atomic(path: str, header: list[str], rows) -> None:
    """CSV with LF endings and full round-trip float precision."""
    lines = [",".join(header)]
    for row in rows:
        if len(row) != len(header):
            raise IoError(f"row width {len(row)} != header width {len(header)} in {path}")
        lines.append(",".join(_format_cell(v) for v in row))
    _atomic_write(path, "\n".join(lines) + "\n")


def _json_default(value):
    if hasattr(value, "item"):  # numpy scalar
        return value.item()
    return repr(value)


def write_json_atomic(path: str, payload: dict) -> None:
    _atomic_write(path, json.dumps(payload, sort_keys=True, indent=2, default=_json_default) + "\n")


def emit_table(envelope: ResultEnvelope, out_dir: str, name: str,
               header: list[str], rows) -> str:
    """Write one CSV and register it in the envelope; returns the path."""
    csv_path = os.path.join(out_dir, f"{name}.csv")
    write_csv_atomic(csv_path, header, rows)
    envelope.tables.append(f"{name}.csv")
    return csv_path


def emit_envelope(envelope: ResultEnvelope, out_dir: str) -> str:
    path = os.path.join(out_dir, f"{envelope.command}.json")
    write_json_atomic(path, envelope.to_dict())
    return path


def emit_plot_script(envelope: ResultEnvelope, out_dir: str, name: str,
                     csv_name: str, columns: list[str], loglog: bool = False,
                     annotations: dict | None = None) -> str:
    """Plain-text gnuplot script referencing the CSV by relative path."""
    lines = [
        "# generated plot script; render with: gnuplot <this file>",
        "set datafile separator ','",
        "set key autotitle columnhead",
        f"set title '{envelope.command}'",
    ]
    if loglog:
        lines.append("set logscale xy")
    for key, val in (annotations or {}).items():
        lines.append(f"# {key} = {val}")
    plots = ", ".join(
        f"'{csv_name}' using 1:{i + 2} with lines" for i in range(len(columns))
    )
    lines.append(f"plot {plots}")
    path = os.path.join(out_dir, f"{name}.gp")
    _atomic_write(path, "\n".join(lines) + "\n")
    envelope.tables.append(f"{name}.gp")
    return path
