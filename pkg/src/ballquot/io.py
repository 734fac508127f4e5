"""JSON containers for lattices, embeddings, actions and cyclotomic vectors."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .cyclotomic import CycVector
from .isometry import IsometryAction
from .lattice import Lattice
from .sublattice import PrimitiveEmbedding, _ambient_from


def jsonable(obj):
    """Convert results to JSON-safe values; rationals become ``"num/den"`` strings."""
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        raise TypeError("floats are not serialized; use exact values")
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return jsonable(obj.to_dict())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def kind_of(d: dict) -> str:
    if "matrix" in d:
        return "action"
    if "basis" in d:
        return "embedding"
    if "gram" in d:
        return "lattice"
    if "coords" in d and "p" in d:
        return "cycvector"
    raise ValueError("unrecognized container")


def from_dict(d: dict, ambient: Lattice | None = None):
    kind = kind_of(d)
    if kind == "action":
        return IsometryAction.from_dict(d)
    if kind == "embedding":
        return PrimitiveEmbedding.from_dict(d)
    if kind == "lattice":
        return Lattice.from_dict(d)
    if ambient is None:
        if "ambient" not in d:
            raise ValueError("a cyclotomic vector needs an ambient lattice")
        ambient = _ambient_from(d["ambient"])
    return CycVector.from_dict(d, ambient)


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, ensure_ascii=False)


def load(path: str | Path, ambient: Lattice | None = None):
    with open(path, encoding="utf-8") as fh:
        return from_dict(json.load(fh), ambient)


def save(obj, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj) + "\n")
