import json

import numpy as np
import pytest

from tukeyregion import (PointCloud, dedup_ties, export_region, generate_gaussian, load_csv, load_region,
                         tukey_region)
from tukeyregion.errors import DimensionMismatch, FormatUnsupported, ParseError


def test_load_csv_square(tmp_path):
    f = tmp_path / "sq.csv"
    f.write_text("0,0\n1,0\n1,1\n0,1\n")
    c = load_csv(f)
    assert (c.n, c.p) == (4, 2)


def test_load_csv_header(tmp_path):
    f = tmp_path / "h.csv"
    f.write_text("x,y\n0,0\n1,0\n1,1\n0,1\n")
    assert load_csv(f, header=True).n == 4
    assert load_csv(f).n == 4
    with pytest.raises(ParseError, match="row 1"):
        load_csv(f, header=False)


def test_load_csv_errors(tmp_path):
    f = tmp_path / "r.csv"
    f.write_text("0,0\n1,0,2\n1,1\n")
    with pytest.raises(ParseError, match="row 2"):
        load_csv(f)
    f.write_text("0,0\n1,a\n1,1\n")
    with pytest.raises(ParseError, match="row 2, column 2"):
        load_csv(f)
    f.write_text("0,0\n1,0\n1,1\n0,1\n")
    with pytest.raises(DimensionMismatch):
        load_csv(f, p=3)


def test_dedup_ties():
    pts = np.array([[0, 0], [1, 0], [0, 0], [1, 1], [1, 0], [0, 1]], float)
    out, removed = dedup_ties(PointCloud(pts), return_count=True)
    assert removed == 2 and out.points.tolist() == [[0, 0], [1, 0], [1, 1], [0, 1]]
    c = generate_gaussian(10, 2, 1)
    assert dedup_ties(c) is c


def test_generate_gaussian():
    a, b = generate_gaussian(40, 3, 1), generate_gaussian(40, 3, 1)
    assert np.array_equal(a.points, b.points)
    big = generate_gaussian(5120, 3, 1)
    assert (np.abs(big.points.mean(axis=0)) < 5 / np.sqrt(5120)).all()
    ref = np.random.Generator(np.random.PCG64(1)).standard_normal((40, 3))
    assert np.array_equal(a.points, ref)


def test_json_square(square):
    d = json.loads(export_region(tukey_region(square, 0.25), "json"))
    assert d["status"] == "FullDim" and len(d["halfspaces"]) == 4 and len(d["vertices"]) == 4
    assert set(d) == {"n", "p", "tau", "k_tau", "status", "num_directions", "halfspaces", "vertices",
                      "facets", "interior_point", "chebyshev_slack"}
    assert all(min(h["tuple"]) >= 1 for h in d["halfspaces"])


def test_json_roundtrip_bit_identical(tmp_path):
    c = generate_gaussian(25, 3, 4)
    r = tukey_region(c, 0.12, seed=2)
    data = export_region(r, "json")
    back = load_region(data)
    assert np.array_equal(back.vertices, r.vertices)
    assert np.array_equal(back.normals, r.normals) and np.array_equal(back.offsets, r.offsets)
    assert [f.vertices for f in back.facets] == [f.vertices for f in r.facets]
    assert [h.provenance.key for h in back.halfspaces] == [h.provenance.key for h in r.halfspaces]
    assert export_region(back, "json") == data
    p = tmp_path / "r.json"
    p.write_bytes(data)
    assert export_region(load_region(p), "json") == data


def test_off_matches_json():
    c = generate_gaussian(30, 3, 1)
    r = tukey_region(c, 0.1, seed=1)
    lines = export_region(r, "off").decode().splitlines()
    assert lines[0] == "OFF"
    V, F, E = map(int, lines[1].split())
    d = json.loads(export_region(r, "json"))
    assert (V, F) == (len(d["vertices"]), len(d["facets"]))
    faces = [list(map(int, ln.split())) for ln in lines[2 + V:]]
    assert len(faces) == F and all(f[0] == len(f) - 1 for f in faces)
    assert 2 * E == sum(f[0] for f in faces)
    assert V - E + F == 2


def test_degenerate_region_export(square):
    r = tukey_region(square, 0.5)
    d = json.loads(export_region(r, "json"))
    assert d["vertices"] == [] and d["interior_point"] == [0.5, 0.5]
    with pytest.raises(FormatUnsupported):
        export_region(r, "off")
    with pytest.raises(FormatUnsupported):
        export_region(tukey_region(square, 0.25), "off")


def test_float_format():
    from tukeyregion.dataio import dumps
    assert dumps([0.1, 1.0, 2, -0.0]) == "[0.10000000000000001, 1.0, 2, -0.0]"
    assert json.loads(dumps({"a": [1e-300, 1.5e300]})) == {"a": [1e-300, 1.5e300]}
