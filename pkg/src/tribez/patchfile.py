"""Reading and writing patch and constraint files.

Patch files are JSON documents::

    {"degree": 2,
     "points": [[x, y, z], ...],      # |Theta_n| entries, lexicographic order
     "weights": [w, ...]}             # optional, defaults to all ones

Numbers are written with 17 significant digits so that a write/read cycle
reproduces every value exactly.

Constraint files hold one prescribed control point per line, ``k1 k2 v...``,
in any order; blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import io
import json
import os
from typing import IO, Union

import numpy as np

from .core import MultiIndex, PolynomialPatch, RationalPatch, theta, theta_size

PathOrFile = Union[str, os.PathLike, IO[str]]


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _read_text(src: PathOrFile) -> str:
    if hasattr(src, "read"):
        return src.read()
    with open(src, encoding="utf-8") as fh:
        return fh.read()


def _write_text(dst: PathOrFile, text: str) -> None:
    if hasattr(dst, "write"):
        dst.write(text)
        return
    with open(dst, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def parse_patch(text: str) -> RationalPatch:
    """Parse a patch document; a missing ``weights`` field means all ones."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"patch file is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ValueError("patch file must hold a JSON object")
    if "degree" not in doc:
        raise ValueError("patch file: missing field 'degree'")
    n = doc["degree"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError(f"patch file: 'degree' must be a nonnegative integer, got {n!r}")
    if "points" not in doc:
        raise ValueError("patch file: missing field 'points'")
    size = theta_size(n)
    idx = theta(n)
    raw = doc["points"]
    if not isinstance(raw, list):
        raise ValueError("patch file: 'points' must be an array")
    if len(raw) < size:
        raise ValueError(f"patch file: 'points' has no entry for index {tuple(idx[len(raw)])}")
    if len(raw) > size:
        raise ValueError(f"patch file: 'points' has {len(raw)} entries, expected {size}")
    rows = [r if isinstance(r, list) else [r] for r in raw]
    dims = {len(r) for r in rows}
    if len(dims) != 1:
        raise ValueError("patch file: 'points' entries have inconsistent dimensions")
    try:
        pts = np.array(rows, dtype=np.float64)
    except (TypeError, ValueError):
        raise ValueError("patch file: 'points' must contain numbers") from None
    w = doc.get("weights")
    if w is None:
        weights = np.ones(size)
    else:
        if not isinstance(w, list):
            raise ValueError("patch file: 'weights' must be an array")
        if len(w) < size:
            raise ValueError(f"patch file: 'weights' has no entry for index {tuple(idx[len(w)])}")
        if len(w) > size:
            raise ValueError(f"patch file: 'weights' has {len(w)} entries, expected {size}")
        try:
            weights = np.array(w, dtype=np.float64)
        except (TypeError, ValueError):
            raise ValueError("patch file: 'weights' must contain numbers") from None
    return RationalPatch(n, pts, weights)


def read_patch(src: PathOrFile) -> RationalPatch:
    return parse_patch(_read_text(src))


def format_patch(patch) -> str:
    buf = io.StringIO()
    buf.write('{\n  "degree": %d,\n  "points": [\n' % patch.degree)
    rows = ["    [" + ", ".join(fmt(v) for v in p) + "]" for p in patch.points]
    buf.write(",\n".join(rows))
    buf.write("\n  ]")
    weights = getattr(patch, "weights", None)
    if weights is not None:
        buf.write(',\n  "weights": [' + ", ".join(fmt(v) for v in weights) + "]")
    buf.write("\n}\n")
    return buf.getvalue()


def write_patch(dst: PathOrFile, patch) -> None:
    """Write a :class:`RationalPatch` or :class:`PolynomialPatch` (no weights field)."""
    _write_text(dst, format_patch(patch))


def as_polynomial(patch) -> PolynomialPatch:
    """Drop unit weights; refuses a genuinely rational patch."""
    if isinstance(patch, PolynomialPatch):
        return patch
    if not np.all(patch.weights == patch.weights[0]):
        raise ValueError("expected a polynomial patch (equal weights)")
    return PolynomialPatch(patch.degree, patch.points)


def parse_constraints(text: str) -> dict:
    out = {}
    dim = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) < 3:
            raise ValueError(f"constraint file line {lineno}: expected 'k1 k2 v...'")
        try:
            k = MultiIndex(int(fields[0]), int(fields[1]))
            vals = np.array([float(v) for v in fields[2:]])
        except ValueError:
            raise ValueError(f"constraint file line {lineno}: malformed number") from None
        if dim is None:
            dim = vals.size
        elif vals.size != dim:
            raise ValueError(f"constraint file line {lineno}: expected {dim} values, got {vals.size}")
        if k in out:
            raise ValueError(f"constraint file line {lineno}: duplicate index {tuple(k)}")
        out[k] = vals
    return out


def read_constraints(src: PathOrFile) -> dict:
    return parse_constraints(_read_text(src))


def format_constraints(g: dict) -> str:
    lines = []
    for k in sorted(g):
        vals = np.atleast_1d(g[k])
        lines.append(f"{k[0]} {k[1]} " + " ".join(fmt(v) for v in vals))
    return "\n".join(lines) + "\n"


def write_constraints(dst: PathOrFile, g: dict) -> None:
    _write_text(dst, format_constraints(g))


def format_obj(patch, grid: int) -> str:
    """Triangulated evaluation grid of a patch as Wavefront OBJ text."""
    from .core import barycentric_grid

    pts = barycentric_grid(grid)
    vals = np.asarray(patch(pts))
    if vals.ndim == 1:
        vals = vals[:, None]
    if vals.shape[1] == 1:
        # scalar patch: plot as a height field over the triangle
        vals = np.column_stack([pts, vals])
    index = {}
    for v, (i, j) in enumerate((i, j) for i in range(grid + 1) for j in range(grid + 1 - i)):
        index[i, j] = v + 1
    lines = ["v " + " ".join(fmt(c) for c in p) for p in vals]
    for i in range(grid):
        for j in range(grid - i):
            lines.append(f"f {index[i, j]} {index[i + 1, j]} {index[i, j + 1]}")
            if i + j + 1 < grid:
                lines.append(f"f {index[i + 1, j]} {index[i + 1, j + 1]} {index[i, j + 1]}")
    return "\n".join(lines) + "\n"
