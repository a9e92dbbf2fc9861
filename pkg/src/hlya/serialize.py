"""JSON input/output for algebras, cochains, deformations and gauges.

All indices in files are 1-based; rationals are strings like ``-3/2`` with
the denominator omitted when it is 1.  Omitted structure entries are zero.
Emission is deterministic: keys are sorted and entry lists are emitted in
index order, so identical data yields byte-identical files.
"""

from __future__ import annotations

import itertools
import json
import os
from fractions import Fraction

from .algebra import Algebra, algebra_from_sparse
from .cochain import Cochain
from .deformation import Deformation, Gauge, bracket_cochain, ternary_cochain
from .errors import InputError
from .exactlin import Matrix, rat, rat_str


class ParseError(InputError):
    """Malformed input file; message carries a field path diagnostic."""


def _fail(path: str, msg: str):
    raise ParseError(f"{path}: {msg}")


def _rat_at(value, path: str) -> Fraction:
    try:
        return rat(value)
    except (ValueError, ZeroDivisionError, TypeError):
        _fail(path, f"not a rational: {value!r}")


def _vec_at(value, dim: int, path: str):
    if not isinstance(value, list) or len(value) != dim:
        _fail(path, f"expected a coefficient list of length {dim}")
    return [_rat_at(x, f"{path}[{k}]") for k, x in enumerate(value)]


# --- algebras --------------------------------------------------------------


def algebra_to_obj(a: Algebra) -> dict:
    d = a.dim
    binary = [
        [i + 1, j + 1, [rat_str(x) for x in a.binary[i][j]]]
        for i in range(d)
        for j in range(i + 1, d)
        if any(a.binary[i][j])
    ]
    ternary = [
        [i + 1, j + 1, k + 1, [rat_str(x) for x in a.ternary[i][j][k]]]
        for i in range(d)
        for j in range(i + 1, d)
        for k in range(d)
        if any(a.ternary[i][j][k])
    ]
    return {
        "name": a.name,
        "dim": d,
        "binary": binary,
        "ternary": ternary,
        "alpha": [[rat_str(x) for x in row] for row in a.alpha],
    }


def algebra_from_obj(obj, path: str = "algebra") -> Algebra:
    if not isinstance(obj, dict):
        _fail(path, "expected an object")
    dim = obj.get("dim")
    if not isinstance(dim, int) or dim < 1:
        _fail(f"{path}.dim", "expected a positive integer")
    binary = {}
    for pos, entry in enumerate(obj.get("binary", [])):
        where = f"{path}.binary[{pos}]"
        if not isinstance(entry, list) or len(entry) != 3:
            _fail(where, "expected [i, j, coefficients]")
        i, j, vec = entry
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= dim):
            _fail(where, f"need 1 <= i < j <= {dim}")
        binary[(i - 1, j - 1)] = _vec_at(vec, dim, f"{where}[2]")
    ternary = {}
    for pos, entry in enumerate(obj.get("ternary", [])):
        where = f"{path}.ternary[{pos}]"
        if not isinstance(entry, list) or len(entry) != 4:
            _fail(where, "expected [i, j, k, coefficients]")
        i, j, k, vec = entry
        ok = all(isinstance(x, int) for x in (i, j, k)) and 1 <= i < j <= dim and 1 <= k <= dim
        if not ok:
            _fail(where, f"need 1 <= i < j <= {dim} and 1 <= k <= {dim}")
        ternary[(i - 1, j - 1, k - 1)] = _vec_at(vec, dim, f"{where}[3]")
    alpha_obj = obj.get("alpha")
    if alpha_obj is None:
        alpha = [[int(r == c) for c in range(dim)] for r in range(dim)]
    else:
        if not isinstance(alpha_obj, list) or len(alpha_obj) != dim:
            _fail(f"{path}.alpha", f"expected {dim} rows")
        alpha = [_vec_at(row, dim, f"{path}.alpha[{r}]") for r, row in enumerate(alpha_obj)]
    name = obj.get("name", "")
    if not isinstance(name, str):
        _fail(f"{path}.name", "expected a string")
    return algebra_from_sparse(dim, binary, ternary, alpha, name)


# --- cochains --------------------------------------------------------------


def cochain_to_obj(c: Cochain) -> list:
    entries = []
    for idx in sorted(c.table):
        for k, x in enumerate(c.table[idx]):
            if x:
                entries.append([*(i + 1 for i in idx), k + 1, rat_str(x)])
    return entries


def cochain_from_obj(entries, arity: int, dim: int, path: str = "cochain") -> Cochain:
    if not isinstance(entries, list):
        _fail(path, "expected a list of sparse entries")
    table: dict = {}
    for pos, entry in enumerate(entries):
        where = f"{path}[{pos}]"
        if not isinstance(entry, list) or len(entry) != arity + 2:
            _fail(where, f"expected [i_1..i_{arity}, k, coefficient]")
        *idx, k, coef = entry
        if not all(isinstance(i, int) and 1 <= i <= dim for i in idx):
            _fail(where, f"argument indices must lie in 1..{dim}")
        if not (isinstance(k, int) and 1 <= k <= dim):
            _fail(where, f"output index must lie in 1..{dim}")
        key = tuple(i - 1 for i in idx)
        vec = table.setdefault(key, [Fraction(0)] * dim)
        vec[k - 1] += _rat_at(coef, where)
    return Cochain(arity, dim, {idx: tuple(vec) for idx, vec in table.items()})


# --- deformations and gauges ----------------------------------------------


def _resolve_base(obj, path: str, base_dir: str | None) -> Algebra:
    base = obj.get("base")
    if isinstance(base, dict):
        return algebra_from_obj(base, f"{path}.base")
    if isinstance(base, str):
        ref = base if os.path.isabs(base) or base_dir is None else os.path.join(base_dir, base)
        try:
            with open(ref) as fh:
                inner = json.load(fh)
        except OSError as exc:
            _fail(f"{path}.base", f"cannot read {ref}: {exc}")
        except json.JSONDecodeError as exc:
            _fail(f"{path}.base", f"invalid JSON in {ref}: {exc}")
        return algebra_from_obj(inner, ref)
    _fail(f"{path}.base", "expected an inline algebra object or a file reference")


def _coefficient_list(obj, key: str, arity: int, dim: int, order: int, path: str) -> list:
    out = [None] * (order + 1)
    for pos, entry in enumerate(obj.get(key, [])):
        where = f"{path}.{key}[{pos}]"
        if not isinstance(entry, list) or len(entry) != 2:
            _fail(where, "expected [order_index, sparse cochain]")
        i, data = entry
        if not (isinstance(i, int) and 1 <= i <= order):
            _fail(where, f"order index must lie in 1..{order}")
        out[i] = cochain_from_obj(data, arity, dim, f"{where}[1]")
    for i in range(1, order + 1):
        if out[i] is None:
            out[i] = Cochain.zero(arity, dim)
    return out


def deformation_to_obj(d: Deformation, base_ref: str | None = None) -> dict:
    base = base_ref if base_ref is not None else algebra_to_obj(d.base)
    return {
        "base": base,
        "order": d.order,
        "f": [[i, cochain_to_obj(d.f_seq[i])] for i in range(1, d.order + 1) if not d.f_seq[i].is_zero()],
        "g": [[i, cochain_to_obj(d.g_seq[i])] for i in range(1, d.order + 1) if not d.g_seq[i].is_zero()],
    }


def deformation_from_obj(obj, path: str = "deformation", base_dir: str | None = None) -> Deformation:
    if not isinstance(obj, dict):
        _fail(path, "expected an object")
    base = _resolve_base(obj, path, base_dir)
    order = obj.get("order")
    if not isinstance(order, int) or order < 0:
        _fail(f"{path}.order", "expected a nonnegative integer")
    f_seq = _coefficient_list(obj, "f", 2, base.dim, order, path)
    g_seq = _coefficient_list(obj, "g", 3, base.dim, order, path)
    f_seq[0] = bracket_cochain(base)
    g_seq[0] = ternary_cochain(base)
    return Deformation(base, order, f_seq, g_seq)


def gauge_to_obj(p: Gauge, base_ref: str | None = None) -> dict:
    base = base_ref if base_ref is not None else algebra_to_obj(p.base)
    phi = [
        [i, [[rat_str(x) for x in row] for row in p.phi[i].data]]
        for i in range(1, p.order + 1)
        if not p.phi[i].is_zero()
    ]
    return {"base": base, "order": p.order, "phi": phi}


def gauge_from_obj(obj, path: str = "gauge", base_dir: str | None = None) -> Gauge:
    if not isinstance(obj, dict):
        _fail(path, "expected an object")
    base = _resolve_base(obj, path, base_dir)
    order = obj.get("order")
    if not isinstance(order, int) or order < 0:
        _fail(f"{path}.order", "expected a nonnegative integer")
    d = base.dim
    phi = [Matrix.identity(d)] + [Matrix.zeros(d, d)] * order
    for pos, entry in enumerate(obj.get("phi", [])):
        where = f"{path}.phi[{pos}]"
        if not isinstance(entry, list) or len(entry) != 2:
            _fail(where, "expected [order_index, matrix]")
        i, rows = entry
        if not (isinstance(i, int) and 1 <= i <= order):
            _fail(where, f"order index must lie in 1..{order}")
        if not isinstance(rows, list) or len(rows) != d:
            _fail(f"{where}[1]", f"expected {d} rows")
        phi[i] = Matrix([_vec_at(row, d, f"{where}[1][{r}]") for r, row in enumerate(rows)])
    return Gauge(base, order, phi)


# --- matrices (operator dumps) --------------------------------------------


def matrix_to_obj(m: Matrix) -> dict:
    entries = [
        [i + 1, j + 1, rat_str(m.data[i][j])]
        for i, j in itertools.product(range(m.rows), range(m.cols))
        if m.data[i][j]
    ]
    return {"rows": m.rows, "cols": m.cols, "entries": entries}


def matrix_from_obj(obj, path: str = "matrix") -> Matrix:
    if not isinstance(obj, dict):
        _fail(path, "expected an object")
    rows, cols = obj.get("rows"), obj.get("cols")
    if not (isinstance(rows, int) and isinstance(cols, int) and rows >= 0 and cols >= 0):
        _fail(path, "rows/cols must be nonnegative integers")
    data = [[Fraction(0)] * cols for _ in range(rows)]
    for pos, entry in enumerate(obj.get("entries", [])):
        where = f"{path}.entries[{pos}]"
        if not isinstance(entry, list) or len(entry) != 3:
            _fail(where, "expected [i, j, value]")
        i, j, v = entry
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i <= rows and 1 <= j <= cols):
            _fail(where, "index out of range")
        data[i - 1][j - 1] = _rat_at(v, where)
    return Matrix(data)


# --- file helpers ----------------------------------------------------------


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}")


def load_algebra(path: str) -> Algebra:
    return algebra_from_obj(load_json(path), path)


def load_deformation(path: str) -> Deformation:
    return deformation_from_obj(load_json(path), path, base_dir=os.path.dirname(path) or ".")


def load_gauge(path: str) -> Gauge:
    return gauge_from_obj(load_json(path), path, base_dir=os.path.dirname(path) or ".")


def save(path: str, obj) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(obj))
