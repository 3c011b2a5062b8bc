"""JSON interchange format for precyclic modules.

Matrices are written as ``{"shape": [rows, cols], "data": [[...], ...]}``; a
flat row-major ``data`` list is accepted too.  Integers outside the 53-bit
safe range are written as decimal strings so other JSON readers stay exact.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .core import PrecyclicModule
from .linalg import IntegerMatrix

__all__ = [
    "FORMAT_NAME",
    "ModuleFileError",
    "parse_module",
    "emit_module",
    "load_module",
    "save_module",
    "module_to_dict",
    "module_from_dict",
    "modules_equal",
]

FORMAT_NAME = "precyclic-module"
_SAFE = 2 ** 53 - 1


class ModuleFileError(ValueError):
    """Malformed module file; ``location`` points at the offending field."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
        self.message = message


def _encode_int(x: int) -> int | str:
    return x if -_SAFE <= x <= _SAFE else str(x)


def _decode_int(x: Any, where: str) -> int:
    if isinstance(x, bool):
        raise ModuleFileError(where, "expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise ModuleFileError(where, f"expected an integer, got {x!r}")


def _matrix_to_dict(M: IntegerMatrix) -> dict:
    return {"shape": [M.rows, M.cols],
            "data": [[_encode_int(x) for x in row] for row in M.to_lists()]}


def _matrix_from_dict(obj: Any, where: str, shape: tuple[int, int]) -> IntegerMatrix:
    if not isinstance(obj, dict):
        raise ModuleFileError(where, "matrix must be an object with 'shape' and 'data'")
    if "shape" not in obj or "data" not in obj:
        raise ModuleFileError(where, "matrix needs both 'shape' and 'data'")
    sh = obj["shape"]
    if not (isinstance(sh, list) and len(sh) == 2):
        raise ModuleFileError(f"{where}.shape", "shape must be [rows, cols]")
    r, c = (_decode_int(v, f"{where}.shape[{k}]") for k, v in enumerate(sh))
    if (r, c) != shape:
        raise ModuleFileError(f"{where}.shape", f"shape {[r, c]} inconsistent with ranks, "
                                                f"expected {list(shape)}")
    data = obj["data"]
    if not isinstance(data, list):
        raise ModuleFileError(f"{where}.data", "data must be a list")
    if not any(isinstance(x, list) for x in data) and (data or c == 0):
        if len(data) != r * c:
            raise ModuleFileError(f"{where}.data", f"flat data needs {r * c} entries, found {len(data)}")
        flat = [_decode_int(x, f"{where}.data[{k}]") for k, x in enumerate(data)]
        return IntegerMatrix.from_flat(r, c, flat)
    if len(data) != r:
        raise ModuleFileError(f"{where}.data", f"expected {r} rows, found {len(data)}")
    rows = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != c:
            raise ModuleFileError(f"{where}.data[{i}]", f"expected a row of {c} integers")
        rows.append([_decode_int(x, f"{where}.data[{i}][{j}]") for j, x in enumerate(row)])
    return IntegerMatrix(rows, r, c)


def module_to_dict(M: PrecyclicModule) -> dict:
    N = M.max_degree
    out: dict[str, Any] = {
        "format": FORMAT_NAME,
        "max_degree": N,
        "ranks": list(M.ranks),
        "faces": {str(n): [_matrix_to_dict(d) for d in M.faces[n]] for n in range(1, N + 1)},
        "cyclic": {str(n): _matrix_to_dict(T) for n, T in enumerate(M.cyclic)},
    }
    if M.last_degeneracy is not None:
        out["last_degeneracy"] = {str(n): _matrix_to_dict(s)
                                  for n, s in enumerate(M.last_degeneracy)}
    out["metadata"] = {"name": M.name, "description": M.description, "rational": M.rational}
    return out


def _degree_map(obj: Any, where: str, degrees: range) -> dict[int, Any]:
    if isinstance(obj, list):
        obj = {str(k): v for k, v in enumerate(obj) if v is not None}
    if not isinstance(obj, dict):
        raise ModuleFileError(where, "expected an object keyed by degree")
    out = {}
    for key, v in obj.items():
        try:
            n = int(key)
        except ValueError:
            raise ModuleFileError(f"{where}.{key}", "degree keys must be integers") from None
        if n not in degrees:
            raise ModuleFileError(f"{where}.{key}", f"degree outside {degrees.start}..{degrees.stop - 1}")
        out[n] = v
    missing = [n for n in degrees if n not in out]
    if missing:
        raise ModuleFileError(where, f"missing degree {missing[0]}")
    return out


def module_from_dict(obj: Any) -> PrecyclicModule:
    if not isinstance(obj, dict):
        raise ModuleFileError("", "top level must be a JSON object")
    fmt = obj.get("format", FORMAT_NAME)
    if fmt != FORMAT_NAME:
        raise ModuleFileError("format", f"unknown format {fmt!r}")
    for key in ("max_degree", "ranks", "faces", "cyclic"):
        if key not in obj:
            raise ModuleFileError(key, "required field missing")
    N = _decode_int(obj["max_degree"], "max_degree")
    if N < 0:
        raise ModuleFileError("max_degree", "must be non-negative")
    if not isinstance(obj["ranks"], list) or len(obj["ranks"]) != N + 1:
        raise ModuleFileError("ranks", f"expected a list of {N + 1} ranks")
    ranks = [_decode_int(r, f"ranks[{n}]") for n, r in enumerate(obj["ranks"])]
    for n, r in enumerate(ranks):
        if r < 0:
            raise ModuleFileError(f"ranks[{n}]", "rank must be non-negative")

    faces: list[tuple[IntegerMatrix, ...]] = [()]
    raw = _degree_map(obj["faces"], "faces", range(1, N + 1))
    for n in range(1, N + 1):
        lst = raw[n]
        if not isinstance(lst, list) or len(lst) != n + 1:
            raise ModuleFileError(f"faces.{n}", f"degree {n} needs a list of {n + 1} faces")
        faces.append(tuple(_matrix_from_dict(m, f"faces.{n}[{i}]", (ranks[n - 1], ranks[n]))
                           for i, m in enumerate(lst)))
    raw = _degree_map(obj["cyclic"], "cyclic", range(N + 1))
    cyclic = tuple(_matrix_from_dict(raw[n], f"cyclic.{n}", (ranks[n], ranks[n]))
                   for n in range(N + 1))
    degen = None
    if obj.get("last_degeneracy") is not None:
        raw = _degree_map(obj["last_degeneracy"], "last_degeneracy", range(N))
        degen = tuple(_matrix_from_dict(raw[n], f"last_degeneracy.{n}", (ranks[n + 1], ranks[n]))
                      for n in range(N))
    meta = obj.get("metadata", {}) or {}
    if not isinstance(meta, dict):
        raise ModuleFileError("metadata", "metadata must be an object")
    rational = meta.get("rational", meta.get("coefficients") == "Q")
    return PrecyclicModule(ranks, tuple(faces), cyclic, degen,
                           name=str(meta.get("name", "")),
                           description=str(meta.get("description", "")),
                           rational=bool(rational))


def parse_module(text: str) -> PrecyclicModule:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModuleFileError(f"line {e.lineno} column {e.colno}", e.msg) from None
    return module_from_dict(obj)


def emit_module(M: PrecyclicModule) -> str:
    """One matrix per line; stable key order so emitted files diff cleanly."""
    d = module_to_dict(M)

    def dump(x):
        return json.dumps(x, ensure_ascii=False, separators=(",", ":"))

    def mats(m: dict, indent: str) -> str:
        items = []
        for k, v in m.items():
            if isinstance(v, list):
                inner = ",\n".join(f"{indent}    {dump(x)}" for x in v)
                items.append(f'{indent}  "{k}": [\n{inner}\n{indent}  ]' if v else f'{indent}  "{k}": []')
            else:
                items.append(f'{indent}  "{k}": {dump(v)}')
        return "{\n" + ",\n".join(items) + f"\n{indent}}}" if items else "{}"

    parts = []
    for key, v in d.items():
        if key in ("faces", "cyclic", "last_degeneracy"):
            parts.append(f'  "{key}": {mats(v, "  ")}')
        else:
            parts.append(f'  "{key}": {json.dumps(v, ensure_ascii=False)}')
    return "{\n" + ",\n".join(parts) + "\n}\n"


def load_module(path: str | Path) -> PrecyclicModule:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise ModuleFileError(str(p), e.strerror or str(e)) from None
    try:
        return parse_module(text)
    except ModuleFileError as e:
        raise ModuleFileError(f"{p}: {e.location}" if e.location else str(p), e.message) from None


def save_module(M: PrecyclicModule, path: str | Path) -> None:
    Path(path).write_text(emit_module(M), encoding="utf-8")


def modules_equal(a: PrecyclicModule, b: PrecyclicModule) -> bool:
    """Same ranks, structure maps and metadata."""
    return (a.ranks == b.ranks and a.faces == b.faces and a.cyclic == b.cyclic
            and a.last_degeneracy == b.last_degeneracy and a.name == b.name
            and a.description == b.description and a.rational == b.rational)
