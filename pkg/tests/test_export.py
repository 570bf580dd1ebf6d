import json

import numpy as np

from npcsource.export import read_pgm, write_csv, write_manifest, write_pgm, write_sign_pgm


def test_csv_is_deterministic(tmp_path):
    rows = [(1, 0.1, None, "a,b"), (2, float("nan"), True, "c")]
    a = write_csv(tmp_path / "a.csv", ["i [1]", "x [um]", "flag", "note"], rows).read_bytes()
    b = write_csv(tmp_path / "b.csv", ["i [1]", "x [um]", "flag", "note"], rows).read_bytes()
    assert a == b
    assert a.decode() == 'i [1],x [um],flag,note\n1,0.1,,"a,b"\n2,nan,1,c\n'


def test_pgm_mapping(tmp_path):
    signs = np.array([[-1, 1], [1, 1]])
    img = read_pgm(write_sign_pgm(tmp_path / "s.pgm", signs))
    # row 0 of the image is the top, i.e. the last sign row
    assert img.tolist() == [[255, 255], [0, 255]]
    ramp = read_pgm(write_pgm(tmp_path / "r.pgm", np.array([[0.0, 0.5, 1.0]]), 0.0, 1.0))
    assert ramp.tolist() == [[0, 128, 255]]


def test_manifest_hash_ignores_timestamp(tmp_path):
    out = write_csv(tmp_path / "o.csv", ["x [1]"], [(1,)])
    m1 = json.loads(write_manifest(tmp_path, "cmd", "0", {"a": 1}, [out], {"r": 2}).read_text())
    m2 = json.loads(write_manifest(tmp_path, "cmd", "0", {"a": 1}, [out], {"r": 2}).read_text())
    assert m1["content_sha256"] == m2["content_sha256"]
    assert m1["outputs"][0]["path"] == "o.csv"
    assert "timestamp" in m1
