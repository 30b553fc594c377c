"""JSON forms of modules and maps; field elements are written as strings."""
from __future__ import annotations

import hashlib
import json

import numpy as np

from .linalg import FieldSpec
from .quiver import AlgebraPresentation, QuiverAlgebra
from .reps import Rep, RepMap


def matrix_to_json(F: FieldSpec, m: np.ndarray) -> list:
    return [[F.to_str(x) for x in row] for row in m.tolist()] if m.shape[0] else {"shape": list(m.shape)}


def matrix_from_json(F: FieldSpec, data) -> np.ndarray:
    if isinstance(data, dict):
        return F.zeros(*data["shape"])
    return F.array([[F.from_str(x) for x in row] for row in data])


def algebra_hash(alg: QuiverAlgebra) -> str:
    text = json.dumps(alg.pres.to_json(), sort_keys=True)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def rep_to_json(x: Rep) -> dict:
    F = x.field
    arrows = {a.label: matrix_to_json(F, m) for a, m in zip(x.algebra.arrows, x.maps)}
    out = {"algebra": algebra_hash(x.algebra), "dims": list(x.dims), "arrows": arrows}
    if x.name:
        out["name"] = x.name
    if x.tops is not None:
        out["tops"] = list(x.tops)
    return out


def rep_from_json(alg: QuiverAlgebra, data: dict) -> Rep:
    F = alg.field
    if "algebra" in data and isinstance(data["algebra"], str) and data["algebra"] != algebra_hash(alg):
        raise ValueError("module was written for a different algebra")
    maps = tuple(matrix_from_json(F, data["arrows"][a.label]) for a in alg.arrows)
    tops = tuple(data["tops"]) if "tops" in data else None
    return Rep(alg, tuple(data["dims"]), maps, tops=tops, name=data.get("name", ""))


def map_to_json(f: RepMap) -> list:
    F = f.field
    return [matrix_to_json(F, m) for m in f.mats]


def map_from_json(source: Rep, target: Rep, data: list) -> RepMap:
    F = source.field
    return RepMap(source, target, tuple(matrix_from_json(F, m) for m in data))


def algebra_to_json(alg: QuiverAlgebra) -> dict:
    return alg.pres.to_json()


def algebra_from_json(data: dict) -> QuiverAlgebra:
    return QuiverAlgebra(AlgebraPresentation.from_json(data))


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"
