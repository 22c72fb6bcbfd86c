"""JSON, DOT, and CSV codecs for the public data types.

Output is deterministic: dictionary keys are sorted and floats are printed
with 17 significant digits, so identical data always serializes to identical
bytes.  Infinite ratio values appear as the strings "inf" / "-inf".
"""

from __future__ import annotations

import json
import math

import numpy as np

from . import trees
from .canonical import (
    AmbientPoint,
    Configuration,
    StratumPoint,
    Verdict,
    ambient_point,
)
from .maps import FramedPoint, framed_point
from .simplicial import SimplicialPoint, simplicial_point
from .associahedron import FacePoset


# -- deterministic writer -------------------------------------------------------


def _fmt(value, indent: int) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f'{inner}{json.dumps(str(k))}: {_fmt(v, indent + 1)}'
            for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        seq = list(value)
        if not seq:
            return "[]"
        flat = all(not isinstance(v, (dict, list, tuple)) for v in seq)
        if flat:
            return "[" + ", ".join(_fmt(v, indent) for v in seq) + "]"
        items = [f"{inner}{_fmt(v, indent + 1)}" for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            raise ValueError("NaN is not serializable")
        if math.isinf(v):
            return '"inf"' if v > 0 else '"-inf"'
        return format(v, ".17g")
    if isinstance(value, str):
        return json.dumps(value)
    raise TypeError(f"cannot serialize {type(value)}")


def dumps(obj) -> str:
    return _fmt(obj, 0) + "\n"


def _revive(obj):
    if isinstance(obj, dict):
        return {k: _revive(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_revive(v) for v in obj]
    if obj == "inf":
        return math.inf
    if obj == "-inf":
        return -math.inf
    return obj


def loads(text: str):
    return _revive(json.loads(text))


# -- trees -----------------------------------------------------------------------


def tree_to_json(t: trees.FTree) -> dict:
    labels = [v if 1 <= v <= t.n else 0 for v in range(t.num_vertices)]
    return {"n": t.n, "parents": list(t.parent), "labels": labels}


def tree_from_json(data: dict) -> trees.FTree:
    parents = list(data["parents"])
    labels = list(data["labels"])
    n = int(data["n"])
    if len(parents) != len(labels):
        raise ValueError("parents and labels must have equal length")
    roots = [v for v, p in enumerate(parents) if p == -1]
    if len(roots) != 1:
        raise ValueError("tree must have exactly one root")
    root = roots[0]
    leaf_of = {}
    for v, lab in enumerate(labels):
        if lab:
            if not 1 <= lab <= n or lab in leaf_of.values():
                raise ValueError(f"bad leaf label {lab}")
            leaf_of[v] = lab
    if len(leaf_of) != n:
        raise ValueError("labels are not a bijection with 1..n")
    kids: dict[int, list[int]] = {v: [] for v in range(len(parents))}
    for v, p in enumerate(parents):
        if p == -1:
            continue
        if not 0 <= p < len(parents):
            raise ValueError(f"bad parent {p}")
        kids[p].append(v)
    for v in leaf_of:
        if kids[v]:
            raise ValueError(f"labelled vertex {v} has children")

    over: dict[int, frozenset[int]] = {}

    def collect(v: int, seen: set[int]) -> frozenset[int]:
        if v in seen:
            raise ValueError("parent array contains a cycle")
        seen.add(v)
        if v in leaf_of:
            over[v] = frozenset([leaf_of[v]])
        else:
            acc: set[int] = set()
            for w in kids[v]:
                acc |= collect(w, seen)
            over[v] = frozenset(acc)
        return over[v]

    collect(root, set())
    if len(over) != len(parents):
        raise ValueError("tree is not connected")
    sets = []
    for v in range(len(parents)):
        if v == root or v in leaf_of:
            continue
        if over[v] in sets:
            raise ValueError("tree has a bivalent internal vertex")
        sets.append(over[v])
    return trees.tree_from_nested(sets, n)


def setmap_to_json(sm: trees.SetMap) -> dict:
    return {"m": sm.m, "n": sm.n, "map": list(sm.values)}


def setmap_from_json(data: dict) -> trees.SetMap:
    return trees.SetMap(int(data["m"]), int(data["n"]), tuple(int(v) for v in data["map"]))


# -- geometric points ---------------------------------------------------------------


def config_to_json(c: Configuration) -> dict:
    return {"m": c.m, "points": [list(map(float, row)) for row in c.points]}


def config_from_json(data: dict) -> Configuration:
    pts = np.asarray(data["points"], dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    if int(data.get("m", pts.shape[1])) != pts.shape[1]:
        raise ValueError("declared dimension does not match the points")
    return Configuration(pts)


def _u_to_json(u):
    return {f"{i},{j}": list(map(float, vec)) for (i, j), vec in u.items()}


def _u_from_json(data):
    out = {}
    for key, vec in data.items():
        i, j = (int(t) for t in key.split(","))
        out[(i, j)] = np.asarray(vec, dtype=float)
    return out


def ambient_to_json(a: AmbientPoint) -> dict:
    return {
        "m": a.m,
        "x": [list(map(float, row)) for row in a.x],
        "u": _u_to_json(a.u),
        "d": {f"{i},{j},{k}": val for (i, j, k), val in a.d.items()},
    }


def ambient_from_json(data: dict) -> AmbientPoint:
    x = np.asarray(data["x"], dtype=float)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    d = {}
    for key, val in data["d"].items():
        i, j, k = (int(t) for t in key.split(","))
        d[(i, j, k)] = float(val)
    return ambient_point(x, _u_from_json(data["u"]), d)


def simplicial_to_json(p: SimplicialPoint, frames=None) -> dict:
    out = {
        "m": p.m,
        "x": [list(map(float, row)) for row in p.x],
        "u": _u_to_json(p.u),
    }
    if frames is not None:
        out["frames"] = [
            list(map(float, frames[i])) for i in range(1, p.n + 1)
        ]
    return out


def simplicial_from_json(data: dict) -> SimplicialPoint:
    x = np.asarray(data["x"], dtype=float)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    return simplicial_point(x, _u_from_json(data["u"]))


def framed_to_json(fp: FramedPoint) -> dict:
    if fp.is_ambient:
        out = ambient_to_json(fp.point)
    else:
        out = simplicial_to_json(fp.point)
    out["frames"] = [list(map(float, fp.frames[i])) for i in range(1, fp.n + 1)]
    return out


def framed_from_json(data: dict) -> FramedPoint:
    if "frames" not in data:
        raise ValueError("framed point needs a frames field")
    point = ambient_from_json(data) if "d" in data else simplicial_from_json(data)
    frames = [np.asarray(f, dtype=float) for f in data["frames"]]
    return framed_point(point, frames)


def point_from_json(data: dict):
    """Dispatch on the schema: framed, ambient, or simplicial."""
    if "frames" in data:
        return framed_from_json(data)
    if "d" in data:
        return ambient_from_json(data)
    return simplicial_from_json(data)


# -- stratum data ---------------------------------------------------------------------


def _vertex_key(t: trees.FTree, v: int) -> str:
    return ",".join(str(i) for i in sorted(t.leaves_over[v]))


def stratum_to_json(s: StratumPoint) -> dict:
    t = s.tree
    return {
        "tree": tree_to_json(t),
        "root": [list(map(float, row)) for row in s.root_config],
        "configs": {
            _vertex_key(t, v): [list(map(float, row)) for row in s.configs[v]]
            for v in t.internal_vertices
        },
        "scales": {_vertex_key(t, v): s.scales[v] for v in t.internal_vertices},
    }


def stratum_from_json(data: dict) -> StratumPoint:
    t = tree_from_json(data["tree"])
    key_of = {_vertex_key(t, v): v for v in t.internal_vertices}
    configs = {}
    scales = {}
    for key, rows in data["configs"].items():
        if key not in key_of:
            raise ValueError(f"no internal vertex over leaves {{{key}}}")
        configs[key_of[key]] = np.asarray(rows, dtype=float)
    for key, val in data["scales"].items():
        if key not in key_of:
            raise ValueError(f"no internal vertex over leaves {{{key}}}")
        scales[key_of[key]] = float(val)
    return StratumPoint(t, np.asarray(data["root"], dtype=float), configs, scales)


# -- verdicts and reports ----------------------------------------------------------------


def verdict_to_json(v: Verdict) -> dict:
    return {
        "pass": v.passed,
        "max_residual": v.max_residual,
        "violations": [
            {
                "condition": viol.condition,
                "indices": list(viol.indices),
                "residual": viol.residual,
            }
            for viol in v.violations
        ],
    }


def face_poset_to_json(poset: FacePoset) -> dict:
    return {
        "n": poset.index,
        "faces": [
            {"dim": d, "tree": tree_to_json(t)}
            for t, d in zip(poset.faces, poset.dims)
        ],
        "covers": [list(c) for c in poset.covers],
    }


def fvector_csv(counts) -> str:
    return ",".join(str(c) for c in counts) + "\n"


def residuals_csv(rows) -> str:
    """Rows of (subset, p, q, residual) as CSV."""
    lines = ["subset,v,w,residual"]
    for subset, p, q, res in rows:
        label = " ".join(str(i) for i in subset)
        lines.append(f"{label},e{p},e{q},{format(res, '.17g')}")
    return "\n".join(lines) + "\n"


def trajectory_csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(
            ",".join(
                format(v, ".17g") if isinstance(v, float) else str(v) for v in row
            )
        )
    return "\n".join(lines) + "\n"
