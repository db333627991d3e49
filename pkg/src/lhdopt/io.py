"""File formats: design CSV, JSON sidecars, trace and results CSV.

One convention everywhere: a design (or OA) is a plain CSV with no header,
one run per line, integer levels, comma separators, LF newlines.  Metadata
travels in a JSON sidecar next to the data file (``foo.csv`` -> ``foo.json``)
with sorted keys so byte-level comparisons are stable.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .constructions import OrthogonalArray, make_oa
from .errors import LhdError


def sidecar_path(path: str | Path) -> Path:
    return Path(path).with_suffix(".json")


def write_design(path: str | Path, design: np.ndarray) -> Path:
    path = Path(path)
    rows = "\n".join(",".join(str(int(v)) for v in row) for row in np.asarray(design))
    path.write_text(rows + "\n", newline="\n")
    return path


def read_design(path: str | Path) -> np.ndarray:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise LhdError(f"cannot read {path}: {e}") from e
    try:
        rows = [
            [int(v) for v in line.split(",")]
            for line in text.strip().splitlines()
            if line.strip()
        ]
        arr = np.array(rows, dtype=np.int64)
    except ValueError as e:
        raise LhdError(f"{path} is not an integer CSV matrix: {e}") from e
    if arr.ndim != 2 or arr.size == 0:
        raise LhdError(f"{path} does not contain a non-empty matrix")
    return arr


def write_json(path: str | Path, obj: dict) -> Path:
    path = Path(path)
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", newline="\n")
    return path


def read_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise LhdError(f"cannot read JSON {path}: {e}") from e


def write_trace(path: str | Path, trace: list[tuple[int, float]]) -> Path:
    path = Path(path)
    lines = ["evaluation_index,best_value"]
    lines += [f"{idx},{val!r}" for idx, val in trace]
    path.write_text("\n".join(lines) + "\n", newline="\n")
    return path


def read_oa(path: str | Path) -> OrthogonalArray:
    """Load an OA from CSV plus its JSON sidecar declaring (N, K, s, t)."""
    cells = read_design(path)
    meta = read_json(sidecar_path(path))
    oa = make_oa(cells, s=int(meta["s"]), strength=int(meta.get("t", 2)))
    if (oa.N, oa.K) != (int(meta["N"]), int(meta["K"])):
        raise LhdError(f"{path}: sidecar (N, K) disagrees with the CSV")
    return oa


def write_oa(path: str | Path, oa: OrthogonalArray) -> Path:
    write_design(path, oa.cells)
    write_json(sidecar_path(path), {"N": oa.N, "K": oa.K, "s": oa.s, "t": oa.strength})
    return Path(path)
