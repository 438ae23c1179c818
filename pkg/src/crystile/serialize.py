"""JSON schemas for groups, tilings, and isometries.

Rationals are written as plain ints when integral, else as "p/q" strings;
both forms (plus integer strings) parse back.
"""

from __future__ import annotations

import json

from .rational import rat, rat_json
from .isometry import Frame, Isometry
from .groups import CrystalGroup, validate_group
from .polytope import ConvexPolytope
from .tiling import PeriodicTiling, Provenance, periodic_tiling


class SchemaError(ValueError):
    pass


def parse_rational(value):
    if isinstance(value, bool) or isinstance(value, float):
        raise SchemaError(f"rationals must be ints or 'p/q' strings, got {value!r}")
    try:
        return rat(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {value!r}: {exc}") from exc


def parse_vector(value, dim=None):
    if isinstance(value, str):
        parts = [p for p in value.replace(" ", "").split(",") if p]
        out = tuple(parse_rational(p) for p in parts)
    else:
        out = tuple(parse_rational(p) for p in value)
    if dim is not None and len(out) != dim:
        raise SchemaError(f"expected a {dim}-vector, got {len(out)} entries")
    return out


def parse_matrix(value, dim):
    rows = tuple(parse_vector(row, dim) for row in value)
    if len(rows) != dim:
        raise SchemaError(f"expected a {dim}x{dim} matrix")
    return rows


def vector_json(v):
    return [rat_json(x) for x in v]


def matrix_json(m):
    return [vector_json(row) for row in m]


# --- groups -------------------------------------------------------------------

def group_to_json(group: CrystalGroup) -> dict:
    out = {
        "dim": group.dim,
        "gram": matrix_json(group.frame.gram),
        "reps": [
            {"linear": matrix_json(m), "translation": vector_json(v)}
            for m, v in group.reps
        ],
    }
    if group.name:
        out["name"] = group.name
    return out


def group_from_json(data: dict) -> CrystalGroup:
    try:
        dim = int(data["dim"])
        gram = parse_matrix(data["gram"], dim)
        frame = Frame(dim, gram)
        pairs = [
            (parse_matrix(rep["linear"], dim), parse_vector(rep["translation"], dim))
            for rep in data["reps"]
        ]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed group file: {exc}") from exc
    return validate_group(frame, pairs, name=data.get("name"))


# --- tilings -------------------------------------------------------------------

def tiling_to_json(tiling: PeriodicTiling) -> dict:
    out = {
        "dim": tiling.dim,
        "gram": matrix_json(tiling.frame.gram),
        "cell_tiles": [
            {"vertices": [vector_json(p) for p in t.vertices]} for t in tiling.cell_tiles
        ],
    }
    prov = tiling.provenance
    if prov is not None:
        pj = {"kind": prov.kind}
        if prov.group is not None:
            pj["group"] = group_to_json(prov.group)
        if prov.base_point is not None:
            pj["base_point"] = vector_json(prov.base_point)
        if prov.base_cell is not None:
            pj["base_cell"] = {"vertices": [vector_json(p) for p in prov.base_cell.vertices]}
        if prov.apex is not None:
            pj["apex"] = vector_json(prov.apex)
        out["provenance"] = pj
    return out


def tiling_from_json(data: dict, validate: bool = True) -> PeriodicTiling:
    try:
        dim = int(data["dim"])
        frame = Frame(dim, parse_matrix(data["gram"], dim))
        tiles = [
            ConvexPolytope(frame, [parse_vector(p, dim) for p in t["vertices"]])
            for t in data["cell_tiles"]
        ]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed tiling file: {exc}") from exc
    prov = None
    pj = data.get("provenance")
    if pj:
        group = group_from_json(pj["group"]) if "group" in pj else None
        base_cell = None
        if "base_cell" in pj:
            base_cell = ConvexPolytope(frame, [parse_vector(p, dim) for p in pj["base_cell"]["vertices"]])
        prov = Provenance(
            kind=pj.get("kind", "unknown"),
            group=group,
            base_point=parse_vector(pj["base_point"], dim) if "base_point" in pj else None,
            base_cell=base_cell,
            apex=parse_vector(pj["apex"], dim) if "apex" in pj else None,
        )
    return periodic_tiling(frame, tiles, provenance=prov, validate=validate)


# --- isometries ------------------------------------------------------------------

def isometry_to_json(iso: Isometry) -> dict:
    return {"linear": matrix_json(iso.linear), "translation": vector_json(iso.translation)}


def isometry_from_json(data: dict, frame: Frame, target: Frame = None) -> Isometry:
    try:
        dim = frame.dim
        lin = parse_matrix(data["linear"], dim)
        trans = parse_vector(data["translation"], dim)
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed isometry: {exc}") from exc
    return Isometry(frame, lin, trans, target=target)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_json_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def write_json_file(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_json(obj))
