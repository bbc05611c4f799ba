"""Brute-force reference implementations.

These check the definitions directly, by name, in plain Python: no
requirement sets, no vectorized masks and no pruning. They are slow on
purpose and exist to cross-check the engine.
"""

from __future__ import annotations

from itertools import combinations, product

from .errors import NotHomomorphism, VertexInDomain
from .graph import ColoredGraph
from .morphism import Classification, PartialMap, Witness
from .poset import leq


def naive_is_homomorphism(S: ColoredGraph, T: ColoredGraph, mapping: dict[str, str]) -> bool:
    for x, y in mapping.items():
        if not leq(S.P, S.color(x), T.color(y)):
            return False
    items = list(mapping.items())
    for (x1, y1), (x2, y2) in product(items, repeat=2):
        if not leq(S.Q, S.edge(x1, x2), T.edge(y1, y2)):
            return False
    return True


def naive_one_point_targets(f: PartialMap, c: str) -> list[str]:
    if c in f.mapping:
        raise VertexInDomain(c)
    f.source.vidx(c)
    if not naive_is_homomorphism(f.source, f.target, f.mapping):
        raise NotHomomorphism(repr(f))
    return [
        d for d in f.target.vertices if naive_is_homomorphism(f.source, f.target, {**f.mapping, c: d})
    ]


def all_endomorphisms(G: ColoredGraph) -> list[tuple[str, ...]]:
    """Every total map V -> V that is a homomorphism, as image tuples."""
    vs = G.vertices
    return [img for img in product(vs, repeat=len(vs)) if naive_is_homomorphism(G, G, dict(zip(vs, img)))]


def brute_force_classify(G: ColoredGraph) -> Classification:
    """Classify by enumerating all total maps and all partial maps.

    Witnesses follow the engine's order (domain size, canonical domain,
    lexicographic image) but carry no blocking vertex.
    """
    vs = G.vertices
    n = len(vs)
    endos = all_endomorphisms(G)
    ext_any: set = set()
    ext_inj: set = set()
    for img in endos:
        injective = len(set(img)) == n
        for mask in range(1 << n):
            key = tuple(img[i] if mask >> i & 1 else None for i in range(n))
            ext_any.add(key)
            if injective:
                ext_inj.add(key)
    hh = mh = mm = None
    for size in range(1, n + 1):
        for dom in combinations(range(n), size):
            for img in product(range(n), repeat=size):
                mapping = {vs[d]: vs[y] for d, y in zip(dom, img)}
                if not naive_is_homomorphism(G, G, mapping):
                    continue
                key = [None] * n
                for d, y in zip(dom, img):
                    key[d] = vs[y]
                key = tuple(key)
                mono = len(set(img)) == size
                if key not in ext_any:
                    hh = hh or mapping
                    if mono:
                        mh = mh or mapping
                if mono and key not in ext_inj:
                    mm = mm or mapping

    def wit(m):
        return None if m is None else Witness(PartialMap(G, G, m), None)

    return Classification(
        is_MH=mh is None,
        is_HH=hh is None,
        is_MM=mm is None,
        hh_witness=wit(hh),
        mh_witness=wit(mh),
        mm_witness=wit(mm),
        search_bound=n,
    )
