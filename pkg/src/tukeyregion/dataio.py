"""Dataset ingestion, generation and region serialization.

JSON output follows a fixed schema: observation indices in ``tuple`` are
1-based, vertex indices in ``facets`` are 0-based positions in ``vertices``,
and every float is written with 17 significant digits so that parsing it back
gives the identical double.
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, FormatUnsupported, ParseError
from .geometry import PointCloud
from .region import Facet, Halfspace, RegionPolytope, Status
from .search import CriticalHyperplane, Side

__all__ = [
    "load_csv",
    "save_csv",
    "dedup_ties",
    "generate_gaussian",
    "load_transfusion",
    "region_to_dict",
    "region_from_dict",
    "export_region",
    "load_region",
    "dumps",
]


def load_csv(path, *, header: bool | str = "auto", delimiter: str = ",", p: int | None = None) -> PointCloud:
    """Read a rectangular numeric CSV file; each row is one observation.

    Parameters
    ----------
    header : bool or "auto"
        Skip the first row.  ``"auto"`` skips it only when it is not numeric.
    p : int, optional
        Expected column count.

    Raises
    ------
    ParseError
        Non-numeric cell or ragged row (the message names row and column).
    DimensionMismatch
        Column count differs from ``p``.
    """
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh, delimiter=delimiter) if r and any(c.strip() for c in r)]
    if not rows:
        raise ParseError(f"{path}: no data rows")
    start = 0
    if header is True:
        start = 1
    elif header == "auto":
        try:
            [float(c) for c in rows[0]]
        except ValueError:
            start = 1
    width = len(rows[start]) if start < len(rows) else 0
    data = []
    for i, row in enumerate(rows[start:], start=start + 1):
        if len(row) != width:
            raise ParseError(f"{path}: row {i} has {len(row)} fields, expected {width}")
        vals = []
        for j, cell in enumerate(row, start=1):
            try:
                vals.append(float(cell))
            except ValueError:
                raise ParseError(f"{path}: row {i}, column {j}: non-numeric value {cell!r}") from None
        data.append(vals)
    if p is not None and width != p:
        raise DimensionMismatch(f"{path}: {width} columns, expected p={p}")
    try:
        return PointCloud(np.array(data, dtype=float))
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from None


def save_csv(cloud: PointCloud, path_or_file, header: bool = False) -> None:
    own = isinstance(path_or_file, (str, Path))
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        w = csv.writer(fh)
        if header:
            w.writerow([f"x{i + 1}" for i in range(cloud.p)])
        for row in cloud.points:
            w.writerow([_fmt(v) for v in row])
    finally:
        if own:
            fh.close()


def dedup_ties(cloud: PointCloud, return_count: bool = False):
    """Drop rows that repeat an earlier row bit-for-bit; keep first occurrences in order."""
    pts = np.ascontiguousarray(cloud.points)
    seen = set()
    keep = []
    for i, row in enumerate(pts):
        key = row.tobytes()
        if key not in seen:
            seen.add(key)
            keep.append(i)
    out = cloud if len(keep) == cloud.n else PointCloud(pts[keep])
    return (out, cloud.n - len(keep)) if return_count else out


def generate_gaussian(n: int, p: int, seed: int) -> PointCloud:
    """``n`` i.i.d. standard normal vectors in R^p.

    Bit-exact definition: ``numpy.random.Generator(numpy.random.PCG64(seed))
    .standard_normal((n, p))`` (ziggurat transform, float64, row-major).
    """
    if n <= p:
        raise ValueError(f"need n > p, got n={n}, p={p}")
    gen = np.random.Generator(np.random.PCG64(seed))
    return PointCloud(gen.standard_normal((n, p)))


def load_transfusion(path) -> PointCloud:
    """Recency, Frequency and Time columns of the UCI Blood Transfusion file.

    The file has a header and five columns (recency, frequency, monetary,
    time, class); monetary is proportional to frequency and is dropped.
    """
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    data = []
    for i, row in enumerate(rows[1:], start=2):
        try:
            data.append([float(row[0]), float(row[1]), float(row[3])])
        except (ValueError, IndexError):
            raise ParseError(f"{path}: row {i}: cannot read R/F/T columns") from None
    return PointCloud(np.array(data))


# --- serialization --------------------------------------------------------

def _fmt(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite float {x}")
    s = format(x, ".17g")
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def dumps(obj, indent: int | None = 1, _level: int = 0) -> str:
    """JSON text with floats at 17 significant digits."""
    pad = "" if indent is None else "\n" + " " * (indent * (_level + 1))
    end = "" if indent is None else "\n" + " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{" + ",".join(items) + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        return "[" + ",".join(pad + dumps(v, indent, _level + 1) for v in obj) + end + "]"
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist(), indent, _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def region_to_dict(region: RegionPolytope) -> dict:
    hs = []
    for h in region.halfspaces:
        prov = h.provenance
        hs.append({
            "tuple": [i + 1 for i in prov.tuple] if prov is not None else [],
            "side": prov.side.value if prov is not None else None,
            "normal": [float(v) for v in h.normal],
            "offset": float(h.offset),
        })
    return {
        "n": region.n,
        "p": region.p,
        "tau": None if region.tau is None else float(region.tau),
        "k_tau": region.k_tau,
        "status": region.status.value,
        "num_directions": region.num_directions,
        "halfspaces": hs,
        "vertices": [[float(v) for v in row] for row in region.vertices],
        "facets": [list(f.vertices) for f in region.facets],
        "interior_point": [float(v) for v in region.interior_point],
        "chebyshev_slack": float(region.chebyshev_slack),
    }


def region_from_dict(d: dict) -> RegionPolytope:
    """Inverse of :func:`region_to_dict`; facet halfspaces are re-identified."""
    p = int(d["p"])
    hs = []
    for h in d["halfspaces"]:
        normal = np.array(h["normal"], dtype=float)
        prov = None
        if h.get("tuple"):
            prov = CriticalHyperplane(tuple(int(i) - 1 for i in h["tuple"]), Side(h["side"]),
                                      normal, float(h["offset"]))
        hs.append(Halfspace(normal, float(h["offset"]), prov))
    V = np.array(d["vertices"], dtype=float).reshape(-1, p)
    region = RegionPolytope(int(d["n"]), p, d.get("tau"), int(d["k_tau"]), hs, Status(d["status"]),
                            np.array(d["interior_point"], dtype=float), float(d["chebyshev_slack"]), V)
    U = region.normals
    b = region.offsets
    redundant = np.ones(len(hs), dtype=bool)
    facets = []
    for f in d["facets"]:
        vs = tuple(int(i) for i in f)
        j = int(np.argmin(np.abs(V[list(vs)] @ U.T - b).max(axis=0))) if vs and len(hs) else -1
        if j >= 0:
            redundant[j] = False
        facets.append(Facet(vs, j))
    region.facets = facets
    region.redundant = redundant
    return region


def _off(region: RegionPolytope) -> str:
    if region.p != 3 or region.status is not Status.FULLDIM:
        raise FormatUnsupported("OFF export needs a full-dimensional region in R^3")
    V = region.vertices
    faces = [f.vertices for f in region.facets]
    E = sum(len(f) for f in faces) // 2
    lines = ["OFF", f"{len(V)} {len(faces)} {E}"]
    lines += [" ".join(_fmt(c) for c in v) for v in V]
    lines += [" ".join(str(i) for i in (len(f),) + tuple(f)) for f in faces]
    return "\n".join(lines) + "\n"


def format_table(records) -> str:
    """Aligned text table of benchmark records (any objects with ``as_row``)."""
    rows = [r.as_row() for r in records]
    if not rows:
        return ""
    cols = list(rows[0].keys())
    cells = [[_cell(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    out = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    out += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(out) + "\n"


def _cell(v) -> str:
    if isinstance(v, float):
        return f"{v:.4f}" if abs(v) < 1e4 else f"{v:.4g}"
    return "-" if v is None else str(v)


def export_region(region, fmt: str = "json") -> bytes:
    """Serialize a region (``json`` or ``off``) or a list of bench records (``table``).

    Raises
    ------
    FormatUnsupported
        OFF for a region that is not full-dimensional in R^3, or an unknown format.
    """
    if fmt == "json":
        if isinstance(region, RegionPolytope):
            return (dumps(region_to_dict(region)) + "\n").encode()
        return (dumps([r.as_row() for r in region]) + "\n").encode()
    if fmt == "off":
        return _off(region).encode()
    if fmt == "table":
        if isinstance(region, RegionPolytope):
            raise FormatUnsupported("table format is for benchmark records")
        return format_table(region).encode()
    raise FormatUnsupported(f"unknown format {fmt!r}")


def load_region(source) -> RegionPolytope:
    """Read a region from JSON bytes or from a file path."""
    text = source.decode() if isinstance(source, bytes) else Path(source).read_text()
    return region_from_dict(json.loads(text))
