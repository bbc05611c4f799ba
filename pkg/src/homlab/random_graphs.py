"""Seeded random colored graphs and partial homomorphisms for test corpora."""

from __future__ import annotations

import random

from .graph import ColoredGraph
from .morphism import PartialMap
from .oracle import naive_is_homomorphism
from .poset import Poset


def random_graph(rng: random.Random, n: int, P: Poset, Q: Poset, name: str = "v") -> ColoredGraph:
    """A random graph on ``n`` vertices.

    Each graph draws its own color weights, so the corpus mixes near-empty,
    near-complete and evenly mixed graphs instead of concentrating on one
    density.
    """
    verts = [f"{name}{i}" for i in range(n)]
    qw = [rng.random() ** 2 for _ in Q.elements]
    pw = [rng.random() ** 2 for _ in P.elements]
    colors = {v: rng.choices(P.elements, pw)[0] for v in verts}
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            edges.append((verts[i], verts[j], rng.choices(Q.elements, qw)[0]))
    return ColoredGraph.from_edges(P, Q, verts, edges, colors)


def random_partial_hom(rng: random.Random, G: ColoredGraph, size: int, tries: int = 50) -> PartialMap | None:
    """A uniformly grown random partial homomorphism G -> G with ``size`` domain vertices."""
    vs = list(G.vertices)
    for _ in range(tries):
        dom = rng.sample(vs, size)
        mapping: dict[str, str] = {}
        for x in dom:
            opts = [y for y in vs if naive_is_homomorphism(G, G, {**mapping, x: y})]
            if not opts:
                break
            mapping[x] = rng.choice(opts)
        else:
            return PartialMap(G, G, mapping)
    return None
