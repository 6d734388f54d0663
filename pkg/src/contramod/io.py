"""JSON schemas for fields, matrices, coalgebras, comodules, contramodules
and morphisms.

Scalars serialize as decimal strings, "num/den" for rationals.  Structure
tensors use coefficient triples: delta/coaction entries are
``[i, j, k, "val"]`` meaning the image of basis vector k contains
val * (e_i (x) e_j); theta entries are ``[i, j, k, "val"]`` meaning
(dual j) (x) (basis k) maps to val * (basis i).  Coalgebra references may be
inline objects or catalog names like "grouplike(3)".
"""

from __future__ import annotations

import re

from .coalgebra import Coalgebra, CoalgebraMorphism, divided_power_dual, grouplike, matrix_coalgebra
from .comodule import Comodule
from .contramodule import Contramodule
from .fields import GF, QQ, FieldSpec
from .matrix import Mat


class SchemaError(ValueError):
    """Input does not match a schema; message points at the offending field."""


def field_to_json(f: FieldSpec):
    return "Q" if f.characteristic == 0 else {"Fp": f.characteristic}


def field_from_json(data) -> FieldSpec:
    if data == "Q":
        return QQ
    if isinstance(data, dict) and set(data) == {"Fp"}:
        try:
            return GF(int(data["Fp"]))
        except ValueError as e:
            raise SchemaError(f"field: {e}") from None
    raise SchemaError(f"field: expected \"Q\" or {{\"Fp\": p}}, got {data!r}")


def parse_field_flag(text: str) -> FieldSpec:
    """CLI flag form: Q or Fp:<p>."""
    if text == "Q":
        return QQ
    m = re.fullmatch(r"Fp:(\d+)", text)
    if not m:
        raise SchemaError(f"field flag must be Q or Fp:<p>, got {text!r}")
    return GF(int(m.group(1)))


def mat_to_json(m: Mat) -> dict:
    entries = [[i, j, m.field.format(v)] for (i, j), v in sorted(m.data.items())]
    return {"rows": m.rows, "cols": m.cols, "entries": entries}


def mat_from_json(data, field: FieldSpec, where: str = "matrix") -> Mat:
    if not isinstance(data, dict) or "rows" not in data or "cols" not in data:
        raise SchemaError(f"{where}: need rows, cols, entries")
    try:
        return Mat.from_entries(
            int(data["rows"]), int(data["cols"]), field,
            ((int(i), int(j), field.parse(v)) for i, j, v in data.get("entries", [])),
        )
    except (TypeError, ValueError) as e:
        raise SchemaError(f"{where}: {e}") from None


def _triples_to_mat(triples, inner_dim: int, rows: int, cols: int, field, where: str) -> Mat:
    """[[i, j, k, val], ...] with row index i*inner_dim + j, column k."""
    entries = []
    try:
        for i, j, k, v in triples:
            entries.append((int(i) * inner_dim + int(j), int(k), field.parse(v)))
    except (TypeError, ValueError) as e:
        raise SchemaError(f"{where}: bad coefficient triple: {e}") from None
    try:
        return Mat.from_entries(rows, cols, field, entries)
    except ValueError as e:
        raise SchemaError(f"{where}: {e}") from None


def _mat_to_triples(m: Mat, inner_dim: int, field) -> list:
    out = []
    for (row, k), v in sorted(m.data.items()):
        i, j = divmod(row, inner_dim)
        out.append([i, j, k, field.format(v)])
    return out


def coalgebra_to_json(c: Coalgebra) -> dict:
    return {
        "field": field_to_json(c.field),
        "dim": c.dim,
        "delta": _mat_to_triples(c.delta, c.dim, c.field),
        "epsilon": [c.field.format(c.eps(i)) for i in range(c.dim)],
    }


_NAME_RE = re.compile(r"([a-z_]+)\((\d+(?:,\s*\d+)*)\)")


def coalgebra_by_name(name: str, field: FieldSpec) -> Coalgebra:
    m = _NAME_RE.fullmatch(name.strip())
    if not m:
        raise SchemaError(f"coalgebra: cannot parse name {name!r}")
    kind = m.group(1)
    args = [int(a) for a in m.group(2).split(",")]
    builders = {
        "grouplike": grouplike,
        "matrix_coalgebra": matrix_coalgebra,
        "divided_power_dual": divided_power_dual,
    }
    if kind in builders:
        return builders[kind](field, *args)
    if kind == "sl2_kernel":
        from .sl2 import frob_kernel_coalgebra

        p = field.characteristic
        if p == 0:
            raise SchemaError("coalgebra: sl2_kernel needs a prime field")
        return frob_kernel_coalgebra(p, *args)
    raise SchemaError(f"coalgebra: unknown catalog name {kind!r}")


def coalgebra_from_json(data, default_field: FieldSpec | None = None) -> Coalgebra:
    if isinstance(data, str):
        if default_field is None:
            raise SchemaError("coalgebra: a named coalgebra needs a field")
        return coalgebra_by_name(data, default_field)
    if not isinstance(data, dict):
        raise SchemaError("coalgebra: expected an object or a catalog name")
    field = field_from_json(data.get("field", "Q"))
    try:
        dim = int(data["dim"])
    except (KeyError, ValueError):
        raise SchemaError("coalgebra: missing or bad dim") from None
    delta = _triples_to_mat(data.get("delta", []), dim, dim * dim, dim, field, "delta")
    eps_list = data.get("epsilon")
    if not isinstance(eps_list, list) or len(eps_list) != dim:
        raise SchemaError("epsilon: need a list of length dim")
    epsilon = Mat.from_entries(
        1, dim, field, ((0, i, field.parse(v)) for i, v in enumerate(eps_list))
    )
    return Coalgebra(field, dim, delta, epsilon, name=data.get("name", ""))


def comodule_to_json(m: Comodule) -> dict:
    inner = m.dim if m.side == "left" else m.coalgebra.dim
    return {
        "coalgebra": coalgebra_to_json(m.coalgebra),
        "side": m.side,
        "dim": m.dim,
        "coaction": _mat_to_triples(m.coaction, inner, m.field),
    }


def comodule_from_json(data, default_field: FieldSpec | None = None) -> Comodule:
    if not isinstance(data, dict):
        raise SchemaError("comodule: expected an object")
    c = coalgebra_from_json(data.get("coalgebra"), default_field)
    side = data.get("side", "left")
    if side not in ("left", "right"):
        raise SchemaError(f"side: must be left or right, got {side!r}")
    try:
        dim = int(data["dim"])
    except (KeyError, ValueError):
        raise SchemaError("comodule: missing or bad dim") from None
    inner = dim if side == "left" else c.dim
    rows = c.dim * dim if side == "left" else dim * c.dim
    coact = _triples_to_mat(data.get("coaction", []), inner, rows, dim, c.field, "coaction")
    return Comodule(c, side, dim, coact, name=data.get("name", ""))


def contramodule_to_json(b: Contramodule) -> dict:
    return {
        "coalgebra": coalgebra_to_json(b.coalgebra),
        "dim": b.dim,
        "theta": _mat_to_triples(b.theta, b.dim, b.field),
    }


def contramodule_from_json(data, default_field: FieldSpec | None = None) -> Contramodule:
    if not isinstance(data, dict):
        raise SchemaError("contramodule: expected an object")
    c = coalgebra_from_json(data.get("coalgebra"), default_field)
    try:
        dim = int(data["dim"])
    except (KeyError, ValueError):
        raise SchemaError("contramodule: missing or bad dim") from None
    theta = _triples_to_mat(data.get("theta", []), dim, dim, c.dim * dim, c.field, "theta")
    return Contramodule(c, dim, theta, name=data.get("name", ""))


def morphism_to_json(rho: CoalgebraMorphism) -> dict:
    return {
        "source": coalgebra_to_json(rho.source),
        "target": coalgebra_to_json(rho.target),
        "matrix": mat_to_json(rho.matrix),
        "surjective": rho.surjective,
    }


def morphism_from_json(data, default_field: FieldSpec | None = None) -> CoalgebraMorphism:
    if not isinstance(data, dict):
        raise SchemaError("morphism: expected an object")
    src = coalgebra_from_json(data.get("source"), default_field)
    tgt = coalgebra_from_json(data.get("target"), default_field)
    matrix = mat_from_json(data.get("matrix"), src.field, where="morphism.matrix")
    try:
        return CoalgebraMorphism(src, tgt, matrix, surjective=bool(data.get("surjective", False)))
    except ValueError as e:
        raise SchemaError(f"morphism: {e}") from None


def detect_and_load(data, default_field: FieldSpec | None = None):
    """Dispatch on schema keys: delta -> coalgebra, coaction -> comodule,
    theta -> contramodule, matrix+source -> morphism."""
    if not isinstance(data, dict):
        raise SchemaError("input: expected a JSON object")
    if "coaction" in data:
        return comodule_from_json(data, default_field)
    if "theta" in data:
        return contramodule_from_json(data, default_field)
    if "delta" in data:
        return coalgebra_from_json(data, default_field)
    if "source" in data and "matrix" in data:
        return morphism_from_json(data, default_field)
    raise SchemaError("input: cannot detect object kind from keys")
