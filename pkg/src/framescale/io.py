"""Frame file formats.

CSV: one vector per line, comma-separated decimals; blank lines and
lines starting with ``#`` are ignored.  JSON: ``{"dim": N, "vectors": [[...], ...]}``.
"""
from __future__ import annotations

import csv
import io
import json
import os
from pathlib import Path
from typing import IO, Union

import numpy as np

from .errors import FrameError
from .linalg import Frame

__all__ = ["parse_frame_file", "parse_frame_text", "frame_to_csv", "frame_to_json",
           "write_points_csv"]

PathOrStream = Union[str, os.PathLike, IO[str]]


def _detect(text: str, name: str | None) -> str:
    if name:
        suffix = Path(name).suffix.lower()
        if suffix in (".csv", ".json"):
            return suffix[1:]
    return "json" if text.lstrip().startswith("{") else "csv"


def _parse_csv(text: str) -> list[list[float]]:
    rows, width = [], None
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        try:
            values = [float(cell) for cell in row]
        except ValueError:
            raise FrameError(f"non-numeric entry at row {lineno}") from None
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise FrameError(f"ragged row {lineno}: expected {width} entries, got {len(values)}")
        rows.append(values)
    return rows


def _parse_json(text: str) -> tuple[list, int | None]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FrameError(f"invalid JSON: {exc.msg}") from None
    if not isinstance(data, dict) or "vectors" not in data:
        raise FrameError('JSON frame must be an object with a "vectors" list')
    vectors = data["vectors"]
    dim = data.get("dim")
    if not isinstance(vectors, list):
        raise FrameError('"vectors" must be a list')
    if not vectors:
        return vectors, dim
    width = dim if dim is not None else len(vectors[0]) if isinstance(vectors[0], list) else 0
    for i, v in enumerate(vectors, start=1):
        if not isinstance(v, list) or not all(
                isinstance(x, (int, float)) and not isinstance(x, bool) for x in v):
            raise FrameError(f"non-numeric entry at row {i}")
        if len(v) != width:
            raise FrameError(f"ragged row {i}: expected {width} entries, got {len(v)}")
    return vectors, dim


def parse_frame_text(text: str, fmt: str | None = None, name: str | None = None) -> Frame:
    fmt = fmt or _detect(text, name)
    if fmt == "csv":
        rows, dim = _parse_csv(text), None
    elif fmt == "json":
        rows, dim = _parse_json(text)
    else:
        raise ValueError(f"unknown frame format {fmt!r}")
    if not rows:
        raise FrameError("empty file: no vectors")
    return Frame(np.array(rows, dtype=float), dim=dim)


def parse_frame_file(source: PathOrStream, fmt: str | None = None) -> Frame:
    """Read and validate a frame from a path or an open text stream."""
    if hasattr(source, "read"):
        return parse_frame_text(source.read(), fmt, getattr(source, "name", None))
    path = Path(source)
    return parse_frame_text(path.read_text(), fmt, path.name)


def frame_to_csv(frame: Frame) -> str:
    return "".join(",".join(repr(float(x)) for x in row) + "\n" for row in frame.vectors)


def frame_to_json(frame: Frame) -> str:
    return json.dumps({"dim": frame.dim, "vectors": frame.vectors.tolist()})


def write_points_csv(path, points, labels=None) -> None:
    points = np.asarray(points, dtype=float)
    header = [f"x{i + 1}" for i in range(points.shape[1])]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header + (["label"] if labels is not None else []))
        for i, p in enumerate(points):
            row = [repr(float(x)) for x in p]
            if labels is not None:
                row.append(labels[i])
            writer.writerow(row)
