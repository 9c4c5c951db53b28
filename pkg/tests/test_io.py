import json
import re

import numpy as np
import pytest

from diamond_lab import io
from diamond_lab.matcore import BlockMat, sample
from diamond_lab.preservers import LinearMap, make_canonical


def test_matrix_round_trip_is_exact(tmp_path):
    a = sample("ginibre", 3, 0)
    io.write_matrix(tmp_path / "a.mat", a)
    assert np.array_equal(io.read_matrix(tmp_path / "a.mat"), a)


def test_block_round_trip(tmp_path):
    x = BlockMat([sample("ginibre", 2, 1), np.eye(1)])
    io.write_matrix(tmp_path / "x.mat", x)
    y = io.read_matrix(tmp_path / "x.mat")
    assert isinstance(y, BlockMat) and np.array_equal(y.dense(), x.dense())


def test_layout_is_row_major_pairs():
    doc = io.matrix_to_doc(np.array([[1, 2j], [3, 4]]))
    assert doc["data"] == [[1, 0], [0, 2], [3, 0], [4, 0]]


def test_map_round_trip_keeps_tag(tmp_path):
    T = make_canonical(2.0, sample("unitary", 2, 1), sample("unitary", 2, 2), True)
    io.write_map(tmp_path / "t.map", T)
    S = io.read_map(tmp_path / "t.map")
    assert S.tag.transpose and S.tag.lam == 2.0
    assert np.array_equal(S.super, T.super)


def test_untagged_map(tmp_path):
    io.write_map(tmp_path / "t.map", LinearMap.identity(2))
    assert io.read_map(tmp_path / "t.map").dim == 2


@pytest.mark.parametrize("text, msg", [
    ("not json", "not valid JSON"),
    ('{"rows": 2, "cols": 2, "data": [[1, 0]]}', "rows*cols"),
    ('{"rows": 1, "cols": 1}', "needs integer"),
    ('{"rows": 1, "cols": 1, "data": [["x", 0]]}', "pair of numbers"),
    ('{"rows": 0, "cols": 1, "data": []}', "positive"),
    ('{"blocks": []}', "nonempty"),
    ("[1, 2]", "expected an object"),
])
def test_bad_matrix_files_name_the_path(tmp_path, text, msg):
    p = tmp_path / "bad.mat"
    p.write_text(text)
    with pytest.raises(io.FormatError, match=re.escape(msg)) as err:
        io.read_matrix(p)
    assert "bad.mat" in str(err.value)


def test_missing_file(tmp_path):
    with pytest.raises(io.FormatError, match="cannot read"):
        io.read_matrix(tmp_path / "nope.mat")


def test_map_errors(tmp_path):
    p = tmp_path / "t.map"
    p.write_text(json.dumps(io.matrix_to_doc(np.eye(4))))
    with pytest.raises(io.FormatError, match="dim"):
        io.read_map(p)
    p.write_text(json.dumps({"dim": 3, **io.matrix_to_doc(np.eye(4))}))
    with pytest.raises(io.FormatError, match="9x9"):
        io.read_map(p)
    doc = {"dim": 2, **io.matrix_to_doc(np.eye(4)), "lambda": 2.0,
           "U": io.matrix_to_doc(np.eye(2)), "V": io.matrix_to_doc(np.eye(2))}
    p.write_text(json.dumps(doc))
    with pytest.raises(io.FormatError, match="tag"):
        io.read_map(p)


def test_shipped_fixtures(data_dir, ex):
    a, u = ex
    assert np.array_equal(io.read_matrix(data_dir / "example_a.mat"), a)
    assert np.array_equal(io.read_matrix(data_dir / "example_u.mat"), u)
    assert np.array_equal(io.read_matrix(data_dir / "example_apu.mat"), a + u)
