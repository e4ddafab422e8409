"""Deterministic CSV/JSON writers and the run manifest."""
from __future__ import annotations

import datetime as _dt
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

SPECTRUM_COLUMNS = ("sigma", "kind", "corner", "branch", "m", "n", "multiplicity", "residual")
SURFACE_COLUMNS = ("sigma", "kind", "m", "n", "theta_alpha", "theta_beta", "quantization_residual")


def fmt(value) -> str:
    """Numbers with 9 significant digits; None as an empty field."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        out = f"{value:.9g}"
        return "0" if out == "-0" else out
    return str(value)


def _jsonable(obj):
    if isinstance(obj, float):
        return float(fmt(obj)) if math.isfinite(obj) else fmt(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return _jsonable(obj.item())
    return obj


def write_csv(path: str | Path, columns, rows, manifest: str | Path | None = None) -> Path:
    path = Path(path)
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(fmt(row.get(c)) for c in columns))
    if manifest is not None:
        lines.append(f"# manifest: {Path(manifest).name}")
    path.write_text("\n".join(lines) + "\n")
    return path


def read_csv(path: str | Path) -> list[dict]:
    lines = [ln for ln in Path(path).read_text().splitlines() if ln and not ln.startswith("#")]
    header = lines[0].split(",")
    return [dict(zip(header, ln.split(","))) for ln in lines[1:]]


def write_json(path: str | Path, payload: dict) -> Path:
    path = Path(path)
    path.write_text(json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n")
    return path


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        t = _dt.datetime.fromtimestamp(int(epoch), tz=_dt.timezone.utc)
    else:
        t = _dt.datetime.now(tz=_dt.timezone.utc).replace(microsecond=0)
    return t.isoformat()


@dataclass
class RunManifest:
    command: str
    params: dict
    version: str
    outputs: list = field(default_factory=list)
    timestamp: str = field(default_factory=_timestamp)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "version": self.version,
            "timestamp": self.timestamp,
            "outputs": [str(p) for p in self.outputs],
        }

    def write(self, path: str | Path) -> Path:
        return write_json(path, self.to_dict())
