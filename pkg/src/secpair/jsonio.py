"""JSON encodings.

group      {"free_rank": r, "torsion": [d1, ...]}          (normal form)
matrix     [[int, ...], ...]
hom        {"source": group, "target": group, "matrix": matrix}
           column j of the matrix is the image of source generator j
extension  {"E": group, "iota": hom, "pi": hom}
Q/Z value  "p/q"
character  {"source": group, "values": ["p/q", ...]}
family     {"k1": group, "bound": M, "psi": {"m": hom, ...}}
K-theory   {"k0": group, "k1": group}
complex    [[[re, im], ...], ...]

Decoders raise :class:`InputError` carrying the JSON path of the offending value.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .coeff import KTheoryPair
from .fgab import FgGroup, GroupHom, IntMatrix
from .functors import QZHom, QZValue
from .lambda_families import LambdaFamily
from .pairing import ExtensionClass


class InputError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def load(arg: str, path: str = "$") -> Any:
    """Inline JSON, or the contents of a JSON file."""
    text = arg.strip()
    if not text.startswith(("{", "[", '"')):
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise InputError(path, f"cannot read {arg!r}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(path, f"invalid JSON ({exc.msg} at line {exc.lineno} col {exc.colno})") from exc


def _expect(obj, typ, path):
    if not isinstance(obj, typ) or isinstance(obj, bool):
        name = typ.__name__ if isinstance(typ, type) else "/".join(t.__name__ for t in typ)
        raise InputError(path, f"expected {name}, got {type(obj).__name__}")
    return obj


def _field(obj: dict, key: str, path: str):
    _expect(obj, dict, path)
    if key not in obj:
        raise InputError(path, f"missing key {key!r}")
    return obj[key]


# -- encoders ---------------------------------------------------------------


def group_to_json(G: FgGroup) -> dict:
    return {"free_rank": G.free_rank, "torsion": list(G.invariant_factors)}


def matrix_to_json(M: IntMatrix) -> list:
    return M.tolist()


def hom_to_json(f: GroupHom) -> dict:
    return {"source": group_to_json(f.source), "target": group_to_json(f.target),
            "matrix": matrix_to_json(f.matrix)}


def extension_to_json(x: ExtensionClass) -> dict:
    return {"E": group_to_json(x.e_group), "iota": hom_to_json(x.iota), "pi": hom_to_json(x.pi)}


def qzhom_to_json(chi: QZHom) -> dict:
    return {"source": group_to_json(chi.source), "values": [str(v) for v in chi.values]}


def family_to_json(F: LambdaFamily) -> dict:
    # written raw: a corrupted family need not consist of homomorphisms
    return {"k1": group_to_json(F.k1), "bound": F.bound,
            "psi": {str(m): {"source": group_to_json(F.tor_group(m)),
                             "target": {"free_rank": 0, "torsion": [m]},
                             "matrix": [list(F.psi[m])]}
                    for m in sorted(F.psi)}}


def complex_matrix_to_json(M) -> list:
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


# -- decoders ---------------------------------------------------------------


def group_from_json(obj, path: str = "$") -> FgGroup:
    r = _expect(_field(obj, "free_rank", path), int, f"{path}.free_rank")
    tors = _expect(obj.get("torsion", []), list, f"{path}.torsion")
    for i, d in enumerate(tors):
        _expect(d, int, f"{path}.torsion[{i}]")
    try:
        return FgGroup(r, tuple(tors))
    except ValueError as exc:
        raise InputError(path, str(exc)) from exc


def matrix_from_json(obj, path: str = "$", rows: int | None = None, cols: int | None = None) -> IntMatrix:
    _expect(obj, list, path)
    for i, row in enumerate(obj):
        _expect(row, list, f"{path}[{i}]")
        for j, x in enumerate(row):
            _expect(x, int, f"{path}[{i}][{j}]")
        if cols is not None and len(row) != cols:
            raise InputError(f"{path}[{i}]", f"expected {cols} entries, got {len(row)}")
    if rows is not None and len(obj) != rows:
        raise InputError(path, f"expected {rows} rows, got {len(obj)}")
    if not obj:
        return IntMatrix.zeros(0, cols or 0)
    try:
        return IntMatrix.from_rows(obj)
    except ValueError as exc:
        raise InputError(path, str(exc)) from exc


def hom_from_json(obj, path: str = "$") -> GroupHom:
    S = group_from_json(_field(obj, "source", path), f"{path}.source")
    T = group_from_json(_field(obj, "target", path), f"{path}.target")
    M = matrix_from_json(_field(obj, "matrix", path), f"{path}.matrix", T.ngens, S.ngens)
    if T.ngens == 0:
        M = IntMatrix.zeros(0, S.ngens)
    try:
        return GroupHom(S, T, M)
    except ValueError as exc:
        raise InputError(f"{path}.matrix", str(exc)) from exc


def extension_from_json(obj, path: str = "$") -> ExtensionClass:
    E = group_from_json(_field(obj, "E", path), f"{path}.E")
    iota = hom_from_json(_field(obj, "iota", path), f"{path}.iota")
    pi = hom_from_json(_field(obj, "pi", path), f"{path}.pi")
    try:
        return ExtensionClass(E, iota, pi)
    except ValueError as exc:
        raise InputError(path, str(exc)) from exc


def qz_from_json(obj, path: str = "$") -> QZValue:
    _expect(obj, str, path)
    try:
        return QZValue.parse(obj)
    except ValueError as exc:
        raise InputError(path, str(exc)) from exc


def qzhom_from_json(obj, path: str = "$") -> QZHom:
    S = group_from_json(_field(obj, "source", path), f"{path}.source")
    vals = _expect(_field(obj, "values", path), list, f"{path}.values")
    parsed = [qz_from_json(v, f"{path}.values[{i}]") for i, v in enumerate(vals)]
    try:
        return QZHom(S, tuple(parsed))
    except ValueError as exc:
        raise InputError(f"{path}.values", str(exc)) from exc


def family_from_json(obj, path: str = "$") -> LambdaFamily:
    k1 = group_from_json(_field(obj, "k1", path), f"{path}.k1")
    bound = _expect(_field(obj, "bound", path), int, f"{path}.bound")
    psi_obj = _expect(_field(obj, "psi", path), dict, f"{path}.psi")
    psi = {}
    for key, h in psi_obj.items():
        p = f"{path}.psi.{key}"
        try:
            m = int(key)
        except ValueError as exc:
            raise InputError(p, "keys must be integers") from exc
        rows = _expect(_field(h, "matrix", p), list, f"{p}.matrix")
        row = _expect(rows[0], list, f"{p}.matrix[0]") if rows else []
        psi[m] = tuple(_expect(x, int, f"{p}.matrix[0][{j}]") for j, x in enumerate(row))
    try:
        return LambdaFamily(k1, bound, psi)
    except ValueError as exc:
        raise InputError(f"{path}.psi", str(exc)) from exc


def ktheory_from_json(obj, path: str = "$") -> KTheoryPair:
    return KTheoryPair(group_from_json(_field(obj, "k0", path), f"{path}.k0"),
                       group_from_json(_field(obj, "k1", path), f"{path}.k1"))


def complex_matrix_from_json(obj, path: str = "$") -> np.ndarray:
    _expect(obj, list, path)
    rows = []
    for i, row in enumerate(obj):
        _expect(row, list, f"{path}[{i}]")
        out = []
        for j, z in enumerate(row):
            p = f"{path}[{i}][{j}]"
            _expect(z, list, p)
            if len(z) != 2:
                raise InputError(p, "expected a [re, im] pair")
            re, im = (_expect(c, (int, float), f"{p}[{k}]") for k, c in enumerate(z))
            out.append(complex(re, im))
        rows.append(out)
    if not rows or any(len(r) != len(rows) for r in rows):
        raise InputError(path, "expected a non-empty square matrix")
    return np.array(rows, dtype=complex)
