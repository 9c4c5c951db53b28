"""Matrix and linear-map file formats.

A matrix file is a JSON document::

    {"rows": 2, "cols": 2, "data": [[1, 0], [0, 0], [0, 0], [0, 0]]}

``data`` is the row-major list of ``[re, im]`` pairs. A block-diagonal
element instead carries ``{"blocks": [<matrix doc>, ...]}``.

A linear-map file is a matrix document for the ``n^2 x n^2`` supermatrix
(column-major vectorisation) plus ``"dim": n`` and, optionally, the
canonical-form fields ``"lambda"``, ``"U"``, ``"V"`` (matrix documents) and
``"transpose"``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .matcore import BlockMat, as_cmat
from .preservers import CanonicalTag, LinearMap

__all__ = [
    "FormatError",
    "matrix_to_doc",
    "doc_to_matrix",
    "read_matrix",
    "write_matrix",
    "map_to_doc",
    "doc_to_map",
    "read_map",
    "write_map",
]


class FormatError(ValueError):
    pass


def matrix_to_doc(a) -> dict:
    if isinstance(a, BlockMat):
        return {"blocks": [matrix_to_doc(b) for b in a.blocks]}
    a = as_cmat(a)
    flat = a.reshape(-1)
    return {"rows": a.shape[0], "cols": a.shape[1],
            "data": [[float(z.real), float(z.imag)] for z in flat]}


def doc_to_matrix(doc, where: str = "document"):
    if not isinstance(doc, dict):
        raise FormatError(f"{where}: expected an object")
    if "blocks" in doc:
        blocks = doc["blocks"]
        if not isinstance(blocks, list) or not blocks:
            raise FormatError(f"{where}: 'blocks' must be a nonempty list")
        try:
            return BlockMat(doc_to_matrix(b, f"{where} block {k}") for k, b in enumerate(blocks))
        except FormatError:
            raise
        except ValueError as exc:
            raise FormatError(f"{where}: {exc}") from exc
    try:
        rows, cols, data = int(doc["rows"]), int(doc["cols"]), doc["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{where}: needs integer 'rows', 'cols' and a 'data' list") from exc
    if rows < 1 or cols < 1:
        raise FormatError(f"{where}: rows and cols must be positive")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise FormatError(f"{where}: 'data' must hold rows*cols = {rows * cols} entries")
    try:
        arr = np.array([complex(float(re), float(im)) for re, im in data], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{where}: every entry must be a [re, im] pair of numbers") from exc
    if not np.all(np.isfinite(arr)):
        raise FormatError(f"{where}: non-finite entry")
    return arr.reshape(rows, cols)


def _load(path) -> dict:
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise FormatError(f"{path}: cannot read ({exc.strerror or exc})") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc


def read_matrix(path):
    return doc_to_matrix(_load(path), str(path))


def write_matrix(path, a) -> None:
    Path(path).write_text(json.dumps(matrix_to_doc(a)) + "\n", encoding="utf-8")


def map_to_doc(T: LinearMap) -> dict:
    doc = {"dim": T.dim, **matrix_to_doc(T.super)}
    if isinstance(T.tag, CanonicalTag):
        doc.update({"lambda": T.tag.lam, "U": matrix_to_doc(T.tag.U),
                    "V": matrix_to_doc(T.tag.V), "transpose": T.tag.transpose})
    return doc


def doc_to_map(doc, where: str = "document") -> LinearMap:
    if not isinstance(doc, dict) or "dim" not in doc:
        raise FormatError(f"{where}: linear map needs a 'dim' field")
    sup = doc_to_matrix(doc, where)
    if isinstance(sup, BlockMat):
        raise FormatError(f"{where}: supermatrix cannot be block-diagonal")
    tag = None
    if "lambda" in doc or "U" in doc or "V" in doc:
        try:
            tag = CanonicalTag(float(doc["lambda"]), doc_to_matrix(doc["U"], f"{where} U"),
                               doc_to_matrix(doc["V"], f"{where} V"),
                               bool(doc.get("transpose", False)))
        except KeyError as exc:
            raise FormatError(f"{where}: canonical tag needs lambda, U and V") from exc
    try:
        return LinearMap(int(doc["dim"]), sup, tag)
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def read_map(path) -> LinearMap:
    return doc_to_map(_load(path), str(path))


def write_map(path, T: LinearMap) -> None:
    Path(path).write_text(json.dumps(map_to_doc(T)) + "\n", encoding="utf-8")
