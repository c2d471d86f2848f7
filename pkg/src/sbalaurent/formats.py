"""JSON file formats: matrix files and report files.

Scalars are always written as strings (``"num/den"`` or a decimal residue),
never as JSON numbers, so files round-trip exactly.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from . import __version__
from .field_kernel import FieldDescriptor, LaurentTail, Poly
from .hankel import ExactMatrix, ShapeProfile, TorusMatrix

MATRIX_FORMAT = "sbalaurent.matrix/1"
REPORT_FORMAT = "sbalaurent.report/1"
REPORT_KINDS = ("defect", "star", "minproduct", "generate")


class FormatError(ValueError):
    """Malformed matrix or report file."""


def field_to_dict(field: FieldDescriptor) -> dict:
    if field.kind == "rational":
        return {"kind": "rational"}
    return {"kind": "prime", "modulus": field.modulus}


def field_from_dict(obj) -> FieldDescriptor:
    try:
        kind = obj["kind"]
        if kind == "rational":
            return FieldDescriptor.rational()
        return FieldDescriptor(kind, int(obj["modulus"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad field descriptor {obj!r}: {exc}") from None


def matrix_to_dict(A: TorusMatrix) -> dict:
    fmt = A.field.format
    return {
        "format": MATRIX_FORMAT,
        "field": field_to_dict(A.field),
        "rows": A.rows,
        "cols": A.cols,
        "precision": A.precision,
        "entries": [[[fmt(c) for c in t.coeffs] for t in row] for row in A.entries],
    }


def matrix_from_dict(obj) -> TorusMatrix:
    if not isinstance(obj, dict) or obj.get("format") != MATRIX_FORMAT:
        raise FormatError(f"not a {MATRIX_FORMAT} document")
    field = field_from_dict(obj.get("field"))
    try:
        rows, cols, prec = int(obj["rows"]), int(obj["cols"]), int(obj["precision"])
        grid = obj["entries"]
        if len(grid) != rows or any(len(r) != cols for r in grid):
            raise FormatError(f"entries do not form a {rows}x{cols} grid")
        ent = []
        for row in grid:
            out = []
            for seq in row:
                if not isinstance(seq, list) or len(seq) != prec:
                    raise FormatError(f"coefficient sequence length differs from precision {prec}")
                if not all(isinstance(c, str) for c in seq):
                    raise FormatError("coefficients must be strings")
                out.append(LaurentTail(field, tuple(field.parse(c) for c in seq)))
            ent.append(tuple(out))
        return TorusMatrix(field, rows, cols, prec, tuple(ent))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed matrix file: {exc}") from None
    except ZeroDivisionError as exc:
        raise FormatError(str(exc)) from None


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def pretty_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def matrix_digest(A: TorusMatrix) -> str:
    return "sha256:" + hashlib.sha256(canonical_json(matrix_to_dict(A)).encode()).hexdigest()


def exact_matrix_to_list(mat: ExactMatrix) -> list:
    return [[mat.field.format(x) for x in row] for row in mat.entries]


def poly_to_list(p: Poly) -> list:
    """Ascending coefficient strings; ``[]`` for the zero polynomial."""
    return [p.field.format(c) for c in p.coeffs]


def shape_to_str(shape: ShapeProfile) -> str:
    return str(shape)


def make_report(kind: str, payload: dict, input_digest: str | None) -> dict:
    if kind not in REPORT_KINDS:
        raise ValueError(f"unknown report kind {kind!r}")
    return {
        "format": REPORT_FORMAT,
        "kind": kind,
        "toolVersion": __version__,
        "inputDigest": input_digest,
        "payload": payload,
    }


def write_atomic(path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_matrix(path, A: TorusMatrix):
    write_atomic(path, pretty_json(matrix_to_dict(A)))


def read_matrix(path) -> TorusMatrix:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None
    return matrix_from_dict(obj)
