"""JSON interchange for posets, graphs, partial maps and certificates.

Dumps are deterministic: keys keep insertion order, vertices and elements
keep canonical order, and edges are listed in canonical pair order.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .constructions.certificate import LevelCertificate
from .errors import InvalidGraph, UnknownVertex
from .graph import ColoredGraph, check_valid
from .morphism import PartialMap
from .poset import Poset, build_poset, named_poset


class FormatError(InvalidGraph):
    """Input does not follow the interchange format."""


def _need(obj: Any, key: str, kind: type, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"{where}: missing {key!r}")
    val = obj[key]
    if not isinstance(val, kind):
        raise FormatError(f"{where}: {key!r} must be {kind.__name__}")
    return val


# --------------------------------------------------------------------------- posets


def poset_to_json(p: Poset) -> dict:
    return {"elements": list(p.elements), "min": p.min, "covers": [list(c) for c in p.covers()]}


def poset_from_json(obj: Any) -> Poset:
    elements = _need(obj, "elements", list, "poset")
    covers = obj.get("covers", [])
    if not isinstance(covers, list) or not all(isinstance(c, list) and len(c) == 2 for c in covers):
        raise FormatError("poset: covers must be a list of pairs")
    return build_poset([str(e) for e in elements], [(str(a), str(b)) for a, b in covers], str(obj.get("min", "0")))


def load_poset(source: str) -> Poset:
    """A named shorthand (F2, D3, chain3, trivial) or a path to a poset file."""
    path = Path(source)
    if path.exists():
        return poset_from_json(read_json(path))
    return named_poset(source)


# --------------------------------------------------------------------------- graphs


def graph_to_json(G: ColoredGraph) -> dict:
    verts = []
    for v in G.vertices:
        entry: dict[str, Any] = {"id": v, "color": G.color(v)}
        if v in G.labels:
            entry["labels"] = G.labels[v]
        verts.append(entry)
    names = G.Q.elements
    iu, ju = np.nonzero(np.triu(G.xi != G.Q.min_index, 1))
    edges = [{"u": G.vertices[i], "v": G.vertices[j], "color": names[G.xi[i, j]]} for i, j in zip(iu.tolist(), ju.tolist())]
    return {"P": poset_to_json(G.P), "Q": poset_to_json(G.Q), "vertices": verts, "edges": edges}


def graph_from_json(obj: Any) -> ColoredGraph:
    P = poset_from_json(_need(obj, "P", dict, "graph"))
    Q = poset_from_json(_need(obj, "Q", dict, "graph"))
    vertices, colors, labels = [], {}, {}
    for k, entry in enumerate(_need(obj, "vertices", list, "graph")):
        vid = _need(entry, "id", str, f"vertex {k}")
        vertices.append(vid)
        if "color" in entry:
            colors[vid] = str(entry["color"])
        if entry.get("labels"):
            if not isinstance(entry["labels"], dict):
                raise FormatError(f"vertex {vid!r}: labels must be an object")
            labels[vid] = entry["labels"]
    seen: set[frozenset] = set()
    edges = []
    for k, e in enumerate(obj.get("edges", [])):
        u, v = _need(e, "u", str, f"edge {k}"), _need(e, "v", str, f"edge {k}")
        if u == v:
            raise FormatError(f"edge {k}: self-pair {u!r}")
        key = frozenset((u, v))
        if key in seen:
            raise FormatError(f"edge {k}: duplicate pair {u!r}, {v!r}")
        seen.add(key)
        edges.append((u, v, str(_need(e, "color", str, f"edge {k}"))))
    G = ColoredGraph.from_edges(P, Q, vertices, edges, colors, labels)
    check_valid(G)
    return G


# --------------------------------------------------------------------------- maps


def map_to_json(f: PartialMap) -> dict:
    return f.to_json()


def map_from_json(G: ColoredGraph, obj: Any, target: ColoredGraph | None = None) -> PartialMap:
    pairs = _need(obj, "pairs", list, "map")
    return _build_map(G, [tuple(p) for p in pairs], target)


def parse_map(G: ColoredGraph, text: str, target: ColoredGraph | None = None) -> PartialMap:
    """``"a:a,b:a"`` -> the partial map a -> a, b -> a (empty text: the empty map)."""
    pairs = []
    for part in filter(None, (s.strip() for s in text.split(","))):
        if part.count(":") != 1:
            raise FormatError(f"malformed map entry {part!r}; expected source:target")
        a, b = (s.strip() for s in part.split(":"))
        pairs.append((a, b))
    return _build_map(G, pairs, target)


def _build_map(G: ColoredGraph, pairs, target: ColoredGraph | None) -> PartialMap:
    T = target if target is not None else G
    mapping: dict[str, str] = {}
    for p in pairs:
        if len(p) != 2:
            raise FormatError(f"map pair {p!r} must have two entries")
        a, b = map(str, p)
        if a not in G.index:
            raise UnknownVertex(a)
        if b not in T.index:
            raise UnknownVertex(b)
        if a in mapping and mapping[a] != b:
            raise FormatError(f"{a!r} is mapped twice")
        mapping[a] = b
    return PartialMap(G, T, mapping)


def format_map(f: PartialMap) -> str:
    return ",".join(f"{a}:{b}" for a, b in f.pairs())


# --------------------------------------------------------------------------- certificates


def certificate_to_json(cert: LevelCertificate) -> dict:
    return cert.to_json()


def certificate_from_json(obj: Any) -> LevelCertificate:
    if not isinstance(obj, dict):
        raise FormatError("certificate must be an object")
    try:
        return LevelCertificate.from_json(obj)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"certificate: malformed axiom ({exc})") from exc


# --------------------------------------------------------------------------- files


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=1, ensure_ascii=False) + "\n"


def write_json(path: str | Path, obj: Any) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from exc


def load_graph(path: str | Path) -> ColoredGraph:
    return graph_from_json(read_json(path))


def load_certificate(path: str | Path) -> LevelCertificate:
    return certificate_from_json(read_json(path))
