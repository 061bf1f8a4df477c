"""JSON formats for spaces, measures, tuples, cones and reports.

Rationals travel as lowest-terms strings (``"3/4"``, ``"1"``). JSON lists
used as point labels are turned into tuples so they stay hashable.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .barycentric import ConeOrderedSpace, PointMeasure
from .lawvere import LawvereSpace
from .measure import DiscreteMeasure
from .numeric import DEFAULT_TOL, fmt, to_number
from .ometric import FiniteOrderedMetricSpace


class FormatError(ValueError):
    pass


def label(v):
    if isinstance(v, list):
        return tuple(label(a) for a in v)
    return v


def unlabel(v):
    if isinstance(v, tuple):
        return [unlabel(a) for a in v]
    if isinstance(v, DiscreteMeasure):
        return measure_to_json(v, inline_space=False)["weights"]
    return v


def key_of(v) -> str:
    """Object-key form of a label (JSON keys must be strings)."""
    return v if isinstance(v, str) else json.dumps(unlabel(v))


def space_from_json(obj: dict, approx: bool = False, tol: float = DEFAULT_TOL) -> FiniteOrderedMetricSpace:
    try:
        return FiniteOrderedMetricSpace.build(
            [label(p) for p in obj["points"]], obj["dist"], obj["leq"], approx=approx, tol=tol
        )
    except KeyError as exc:
        raise FormatError(f"space is missing field {exc}") from None


def space_to_json(X: FiniteOrderedMetricSpace) -> dict:
    return {
        "points": [unlabel(p) for p in X.points],
        "dist": [[fmt(v) for v in r] for r in X.dist],
        "leq": [list(r) for r in X.leq],
    }


def lawvere_from_json(obj: dict, approx: bool = False, tol: float = DEFAULT_TOL) -> LawvereSpace:
    return LawvereSpace.build([label(p) for p in obj["points"]], obj["dl"], approx=approx, tol=tol)


def lawvere_to_json(L: LawvereSpace) -> dict:
    return {"points": [unlabel(p) for p in L.points], "dl": [[fmt(v) for v in r] for r in L.dl]}


def _resolve_key(X: FiniteOrderedMetricSpace, k: str):
    if k in X.index:
        return k
    try:
        lab = label(json.loads(k))
    except json.JSONDecodeError:
        raise FormatError(f"unknown point {k!r}") from None
    if lab not in X.index:
        raise FormatError(f"unknown point {k!r}")
    return lab


def measure_from_json(obj: dict, space: FiniteOrderedMetricSpace) -> DiscreteMeasure:
    w = obj.get("weights")
    if not isinstance(w, dict):
        raise FormatError("measure needs a 'weights' object")
    return DiscreteMeasure(space, {_resolve_key(space, k): to_number(v, space.exact) for k, v in w.items()})


def measure_to_json(p: DiscreteMeasure, inline_space: bool = False) -> dict:
    out: dict[str, Any] = {}
    if inline_space:
        out["space"] = space_to_json(p.base)
    out["weights"] = {key_of(x): fmt(w) for x, w in p.weights.items()}
    return out


def cone_from_json(obj: dict) -> ConeOrderedSpace:
    dom = [(d["b"], d["c"]) for d in obj.get("domain", [])]
    return ConeOrderedSpace(int(obj["dim"]), tuple(tuple(r) for r in obj["rows"]), tuple(dom))


def point_measure_from_json(obj: dict) -> PointMeasure:
    return PointMeasure(tuple(tuple(a) for a in obj["atoms"]), tuple(obj["weights"]))


def vec_to_json(v) -> list:
    return [fmt(a) for a in v]


def function_table_from_json(obj: dict) -> dict:
    """``{"table": [[x, fx], ...]}`` with x and fx vectors."""
    try:
        return {tuple(to_number(a) for a in x): tuple(to_number(a) for a in fx) for x, fx in obj["table"]}
    except (KeyError, ValueError, TypeError) as exc:
        raise FormatError(f"bad function table: {exc}") from None


def coupling_to_json(c) -> list:
    return [{"from": unlabel(x), "to": unlabel(y), "mass": fmt(m)} for x, y, m in c.entries()]


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False)
