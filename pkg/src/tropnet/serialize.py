"""JSON encodings of networks, weightings, tableaux, path systems and matrices."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .hive import HornTriple
from .multipath import GammaDeltaPath, Multipath, Tableau, make_gd_path, make_multipath
from .network import Edge, PlanarNetwork, Vertex, Weighting, build_network
from .tropical import format_weight, to_weight


def _q(x: Fraction) -> str:
    return format_weight(Fraction(x))


def network_to_json(net: PlanarNetwork) -> dict:
    strip = {"a": _q(net.a), "b": _q(net.b)}
    if net.middle is not None:
        strip["middle"] = _q(net.middle)
    edges = []
    for e in net.edges:
        item = {"id": e.id, "tail": e.tail, "head": e.head}
        if e.multiplicity != 1:
            item["multiplicity"] = e.multiplicity
        if e.via:
            item["via"] = [[_q(x), _q(y)] for x, y in e.via]
        edges.append(item)
    return {
        "strip": strip,
        "vertices": [{"id": v.id, "x": _q(v.x), "y": _q(v.y)} for v in net.vertices],
        "edges": edges,
    }


def network_from_json(obj: dict) -> PlanarNetwork:
    strip = obj["strip"]
    verts = [Vertex(int(v["id"]), Fraction(v["x"]), Fraction(v["y"])) for v in obj["vertices"]]
    edges = [Edge(int(e["id"]), int(e["tail"]), int(e["head"]), int(e.get("multiplicity", 1)),
                  tuple((Fraction(x), Fraction(y)) for x, y in e.get("via", ())))
             for e in obj["edges"]]
    return build_network(Fraction(strip["a"]), Fraction(strip["b"]), verts, edges,
                         middle=strip.get("middle"))


def weighting_to_json(w) -> dict:
    return {"weights": {str(e): format_weight(w[e]) for e in sorted(w)}}


def weighting_from_json(obj: dict) -> Weighting:
    return Weighting({int(k): to_weight(v) for k, v in obj["weights"].items()})


def _entry(v) -> str:
    return repr(v) if isinstance(v, float) and v != float("-inf") else format_weight(v)


def tableau_to_json(t: Tableau) -> dict:
    return {"n": t.n, "rows": [[_entry(v) for v in row] for row in t.rows]}


def tableau_from_json(obj: dict) -> Tableau:
    return Tableau(int(obj["n"]), [[to_weight(v) for v in row] for row in obj["rows"]])


def multipath_to_json(m: Multipath) -> dict:
    return {"paths": [list(p) for p in m.paths]}


def multipath_from_json(net: PlanarNetwork, obj: dict) -> Multipath:
    return make_multipath(net, obj["paths"])


def gd_path_to_json(p: GammaDeltaPath) -> dict:
    return {"gamma": [list(x) for x in p.gamma_part.paths],
            "delta": [list(x) for x in p.delta_part.paths]}


def gd_path_from_json(gd: PlanarNetwork, obj: dict) -> GammaDeltaPath:
    return make_gd_path(gd, obj["gamma"], obj["delta"])


def matrix_to_json(m) -> dict:
    rows = [[float(x) for x in row] for row in m]
    return {"n": len(rows), "entries": rows}


def matrix_from_json(obj: dict):
    rows = [[float(x) for x in row] for row in obj["entries"]]
    if len(rows) != int(obj.get("n", len(rows))):
        raise ValueError("matrix size does not match 'n'")
    return rows


def triple_to_json(t: HornTriple) -> dict:
    return {k: [_entry(x) for x in getattr(t, k)] for k in ("lam", "mu", "nu")}


def parse_vector(text: str) -> tuple[Fraction, ...]:
    """Comma-separated rationals, e.g. ``"3/2,1,-1"``."""
    return tuple(Fraction(x.strip()) for x in text.split(",") if x.strip())


def load(path) -> dict:
    return json.loads(Path(path).read_text())


def dump(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=False)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
