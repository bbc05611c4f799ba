"""Partial maps between colored graphs and the MH/HH/MM classification engine.

Everything below works on dense integer indices. The central primitive is the
candidate mask: for a partial homomorphism ``f`` and an unmapped vertex ``c``,
the boolean vector of target vertices ``d`` for which ``f + (c -> d)`` is still
a homomorphism. Total extension is a depth-first search over unmapped vertices
in canonical order, branching on that mask.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import (
    InvalidGraph,
    NonLinearQ,
    NotHomomorphism,
    NotMonomorphism,
    PosetMismatch,
    UnknownVertex,
    VertexInDomain,
)
from .graph import ColoredGraph, check_valid, requirement, satisfying_mask
from .poset import is_linear

UNMAPPED = -1


@dataclass(eq=False)
class PartialMap:
    """A finite map from vertices of ``source`` to vertices of ``target``."""

    source: ColoredGraph
    target: ColoredGraph
    mapping: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self.mapping = dict(self.mapping)
        for x, y in self.mapping.items():
            if x not in self.source.index:
                raise UnknownVertex(x)
            if y not in self.target.index:
                raise UnknownVertex(y)

    @classmethod
    def endo(cls, G: ColoredGraph, mapping: Mapping[str, str] | Iterable = ()) -> "PartialMap":
        return cls(G, G, dict(mapping))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PartialMap):
            return NotImplemented
        return (
            self.source is other.source
            and self.target is other.target
            and self.mapping == other.mapping
        )

    def __len__(self) -> int:
        return len(self.mapping)

    def __repr__(self) -> str:
        return "PartialMap({" + ", ".join(f"{x}->{y}" for x, y in self.pairs()) + "})"

    def pairs(self) -> list[tuple[str, str]]:
        """Pairs in canonical order of the domain."""
        idx = self.source.index
        return sorted(self.mapping.items(), key=lambda p: idx[p[0]])

    @property
    def domain(self) -> tuple[str, ...]:
        return tuple(x for x, _ in self.pairs())

    @property
    def image(self) -> tuple[str, ...]:
        used = set(self.mapping.values())
        return tuple(v for v in self.target.vertices if v in used)

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.mapping)

    def is_total(self) -> bool:
        return len(self.mapping) == len(self.source)

    def extend(self, c: str, d: str) -> "PartialMap":
        if c in self.mapping:
            raise VertexInDomain(c)
        return PartialMap(self.source, self.target, {**self.mapping, c: d})

    def restrict(self, keep: Iterable[str]) -> "PartialMap":
        keep = set(keep)
        return PartialMap(self.source, self.target, {x: y for x, y in self.mapping.items() if x in keep})

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(domain indices, image indices) in canonical domain order."""
        ps = self.pairs()
        dom = np.array([self.source.index[x] for x, _ in ps], dtype=np.intp)
        img = np.array([self.target.index[y] for _, y in ps], dtype=np.intp)
        return dom, img

    def to_json(self) -> dict:
        return {"pairs": [list(p) for p in self.pairs()]}


def _same_language(f: PartialMap) -> None:
    s, t = f.source, f.target
    if s is t:
        return
    if s.P != t.P or s.Q != t.Q:
        raise PosetMismatch("source and target must share P and Q")


def _hom_idx(S: ColoredGraph, T: ColoredGraph, dom, img) -> bool:
    if len(dom) == 0:
        return True
    if not S.P.leq_matrix[S.chi[dom], T.chi[img]].all():
        return False
    if len(dom) <= 6:
        # small domains: plain loops beat the fancy-indexing overhead
        Ql, sr, tr = S.Q.leq_matrix, S.rows, T.rows
        for a in range(len(dom)):
            sa, ta = sr[dom[a]], tr[img[a]]
            for b in range(a + 1, len(dom)):
                if not Ql[sa[dom[b]], ta[img[b]]]:
                    return False
        return True
    return bool(S.Q.leq_matrix[S.xi[np.ix_(dom, dom)], T.xi[np.ix_(img, img)]].all())


def is_homomorphism(f: PartialMap) -> bool:
    _same_language(f)
    dom, img = f.arrays()
    return _hom_idx(f.source, f.target, dom, img)


def is_monomorphism(f: PartialMap) -> bool:
    return f.is_injective() and is_homomorphism(f)


def _candidates(S: ColoredGraph, T: ColoredGraph, dom, img, c: int) -> np.ndarray:
    """Targets d such that dom->img plus c->d is a homomorphism (given dom->img is one)."""
    mask = S.P.leq_matrix[S.chi[c]][T.chi]
    if len(dom):
        mask = mask & S.Q.leq_matrix[S.xi[c, dom][:, None], T.xi[img]].all(axis=0)
    return mask


def _check_extension_args(f: PartialMap, c: str) -> None:
    _same_language(f)
    f.source.vidx(c)
    if c in f.mapping:
        raise VertexInDomain(c)
    if not is_homomorphism(f):
        raise NotHomomorphism(repr(f))


def one_point_targets(f: PartialMap, c: str) -> list[str]:
    """All target vertices d, in canonical order, such that f + (c -> d) is a homomorphism."""
    _check_extension_args(f, c)
    req = requirement(f.source, f, c)
    mask = satisfying_mask(f.target, req)
    return [f.target.vertices[i] for i in np.flatnonzero(mask)]


# --------------------------------------------------------------------------- total extension


def _extend_assign(G: ColoredGraph, assign: list[int], injective: bool) -> list[int] | None:
    """Depth-first completion of ``assign`` (UNMAPPED marks free vertices)."""
    n = len(G)
    order = [v for v in range(n) if assign[v] == UNMAPPED]
    dom = [v for v in range(n) if assign[v] != UNMAPPED]
    img = [assign[v] for v in dom]
    used = np.zeros(n, dtype=bool)
    if injective:
        used[img] = True
    Pl, Ql, chi, xi = G.P.leq_matrix, G.Q.leq_matrix, G.chi, G.xi
    # prefix masks: cand[k] restricted by everything mapped before order[k]
    base = [Pl[chi[c]][chi] for c in order]
    if dom:
        d_arr, i_arr = np.array(dom), np.array(img)
        base = [b & Ql[xi[c, d_arr][:, None], xi[i_arr]].all(axis=0) for b, c in zip(base, order)]
    out = list(assign)
    groups = _distinct_groups(G, order, injective)

    def rec(k: int, masks: list[np.ndarray]) -> bool:
        if k == len(order):
            return True
        c = order[k]
        cand = masks[k]
        if injective:
            cand = cand & ~used
        for d in np.flatnonzero(cand).tolist():
            # narrow every later vertex by the new pair (c, d)
            nxt = masks[: k + 1]
            ok = True
            for later in order[k + 1 :]:
                m = masks[len(nxt)] & Ql[xi[later, c]][xi[d]]
                if not m.any():
                    ok = False
                    break
                nxt.append(m)
            if not ok:
                continue
            if injective:
                used[d] = True
            if not _distinct_feasible(groups, k + 1, nxt, used if injective else None):
                if injective:
                    used[d] = False
                continue
            out[c] = d
            if rec(k + 1, nxt):
                return True
            if injective:
                used[d] = False
            out[c] = UNMAPPED
        return False

    if any(not m.any() for m in base):
        return None
    return out if rec(0, base) else None


def _distinct_groups(G: ColoredGraph, order: list[int], injective: bool) -> list[list[int]]:
    """Groups of positions in ``order`` whose images must be pairwise distinct.

    Two vertices joined by a nonzero color cannot share an image (the loop
    color is the minimum), so a greedy cover of the free vertices by nonzero
    cliques gives all-different constraints; injective search adds one
    group with every free vertex.
    """
    if injective:
        return [list(range(len(order)))] if len(order) > 2 else []
    zero = G.Q.min_index
    left = list(range(len(order)))
    groups = []
    while left:
        group = [left.pop(0)]
        for p in list(left):
            if all(G.xi[order[p], order[q]] != zero for q in group):
                group.append(p)
                left.remove(p)
        if len(group) > 2:
            groups.append(group)
    return groups


def _distinct_feasible(groups, start: int, masks: list[np.ndarray], used: np.ndarray | None) -> bool:
    """Hall check: the still-free members of each group have distinct candidates."""
    for group in groups:
        rows = [masks[p] if used is None else masks[p] & ~used for p in group if p >= start]
        m = len(rows)
        if m < 2:
            continue
        counts = [int(r.sum()) for r in rows]
        if min(counts) >= m:
            continue  # every member has m options: Hall's condition holds trivially
        if min(counts) == 0:
            return False
        match = maximum_bipartite_matching(csr_matrix(np.vstack(rows)), perm_type="column")
        if (match < 0).any():
            return False
    return True


def _assign_of(f: PartialMap) -> list[int]:
    G = f.source
    assign = [UNMAPPED] * len(G)
    for x, y in f.mapping.items():
        assign[G.index[x]] = G.index[y]
    return assign


def extend_to_endomorphism(f: PartialMap, injective: bool = False) -> PartialMap | None:
    """The lexicographically first total (injective) endomorphism extending ``f``.

    Returns None when there is none; the search is complete.
    """
    if f.source is not f.target and f.source != f.target:
        raise InvalidGraph("extension to an endomorphism needs source == target")
    _same_language(f)
    if not is_homomorphism(f):
        raise NotHomomorphism(repr(f))
    if injective and not f.is_injective():
        raise NotMonomorphism(repr(f))
    G = f.source
    got = _extend_assign(G, _assign_of(f), injective)
    if got is None:
        return None
    return PartialMap(G, f.target, {G.vertices[i]: f.target.vertices[j] for i, j in enumerate(got)})


# --------------------------------------------------------------------------- enumeration


def _iter_homs(
    G: ColoredGraph,
    dom: tuple[int, ...],
    image_mask: np.ndarray | None = None,
    injective: bool = False,
    track_all: bool = False,
) -> Iterator[tuple[tuple[int, ...], np.ndarray | None]]:
    """Partial homomorphisms on ``dom`` in lexicographic order of images.

    With ``track_all`` also yields the (vertex x target) matrix of one-point
    candidates for every vertex of G with respect to the yielded map.
    """
    Pl, Ql, chi, xi = G.P.leq_matrix, G.Q.leq_matrix, G.chi, G.xi
    n, k = len(G), len(dom)
    img = [0] * k
    used = np.zeros(n, dtype=bool)
    full0 = Pl[chi[:, None], chi[None, :]] if track_all else None

    def rec(i: int, cand_rows: list[np.ndarray], full):
        if i == k:
            yield tuple(img), full
            return
        x = dom[i]
        cand = cand_rows[i]
        if image_mask is not None:
            cand = cand & image_mask
        if injective:
            cand = cand & ~used
        for y in np.flatnonzero(cand).tolist():
            rows = cand_rows[: i + 1] + [r & Ql[xi[dom[j], x]][xi[y]] for j, r in enumerate(cand_rows[i + 1 :], i + 1)]
            if not all(r.any() for r in rows[i + 1 :]):
                continue
            img[i] = y
            used[y] = True
            nf = full & Ql[xi[:, x][:, None], xi[y][None, :]] if track_all else None
            yield from rec(i + 1, rows, nf)
            used[y] = False

    start = [Pl[chi[x]][chi] for x in dom]
    yield from rec(0, start, full0)


def _restrictions(assign: list[int]) -> Iterator[tuple[int, ...]]:
    n = len(assign)
    for bits in range(1 << n):
        yield tuple(assign[v] if bits >> v & 1 else UNMAPPED for v in range(n))


def _key(n: int, dom, img) -> tuple[int, ...]:
    a = [UNMAPPED] * n
    for x, y in zip(dom, img):
        a[x] = y
    return tuple(a)


@dataclass
class Witness:
    """A partial map that does not extend, plus the first vertex blocking it (if any)."""

    map: PartialMap
    vertex: str | None

    def to_json(self) -> dict:
        return {"map": self.map.to_json()["pairs"], "vertex": self.vertex}


@dataclass
class Classification:
    is_MH: bool
    is_HH: bool
    is_MM: bool
    hh_witness: Witness | None = None
    mh_witness: Witness | None = None
    mm_witness: Witness | None = None
    search_bound: int = 0
    exact: bool = True

    def to_json(self) -> dict:
        return {
            "MH": self.is_MH,
            "HH": self.is_HH,
            "MM": self.is_MM,
            "hh_witness": self.hh_witness.to_json() if self.hh_witness else None,
            "mh_witness": self.mh_witness.to_json() if self.mh_witness else None,
            "mm_witness": self.mm_witness.to_json() if self.mm_witness else None,
            "search_bound": self.search_bound,
            "exact": self.exact,
        }


_RESTRICT_MAX = 10


class _Cache:
    """Restrictions of endomorphisms found so far (their extendability is settled)."""

    def __init__(self, n: int):
        self.n = n
        self.any: set[tuple[int, ...]] = set()
        self.inj: set[tuple[int, ...]] = set()

    def extends(self, G: ColoredGraph, key: tuple[int, ...], injective: bool) -> bool:
        pool = self.inj if injective else self.any
        if key in pool:
            return True
        got = _extend_assign(G, list(key), injective)
        if got is None:
            return False
        rs = set(_restrictions(got)) if self.n <= _RESTRICT_MAX else {key, tuple(got)}
        self.any |= rs
        if injective or len(set(got)) == self.n:
            self.inj |= rs
        return True


def _blocking_vertex(G: ColoredGraph, key: tuple[int, ...], injective: bool) -> str | None:
    dom = np.array([v for v, y in enumerate(key) if y != UNMAPPED], dtype=np.intp)
    img = np.array([key[v] for v in dom], dtype=np.intp)
    used = np.zeros(len(G), dtype=bool)
    used[img] = True
    for c in range(len(G)):
        if key[c] != UNMAPPED:
            continue
        cand = _candidates(G, G, dom, img, c)
        if injective:
            cand = cand & ~used
        if not cand.any():
            return G.vertices[c]
    return None


def _scan_domain(G: ColoredGraph, dom: tuple[int, ...], need: tuple[bool, bool, bool], cache: _Cache):
    """First failing map on ``dom`` for each needed kind (hh, mh, mm)."""
    need = list(need)
    found: list[tuple[int, ...] | None] = [None, None, None]
    n = len(G)
    for img, _ in _iter_homs(G, dom, injective=not need[0]):
        inj = len(set(img)) == len(img)
        if not (need[0] or inj):
            continue
        key = _key(n, dom, img)
        if need[0] or (inj and need[1]):
            if not cache.extends(G, key, False):
                if need[0]:
                    found[0], need[0] = key, False
                if inj and need[1]:
                    found[1], need[1] = key, False
        if inj and need[2] and not cache.extends(G, key, True):
            found[2], need[2] = key, False
        if not any(need):
            break
    return found


def _thread_count(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("HOMLAB_THREADS", "1") or 1)
    return max(1, threads)


def classify(G: ColoredGraph, max_domain: int | None = None, threads: int | None = None) -> Classification:
    """Exact MH/HH/MM verdicts for a finite colored graph.

    Partial homomorphisms are enumerated by domain size, then canonical domain
    order, then lexicographic image order; the first failure of each kind is
    the reported witness. ``threads`` splits domains across workers; the merge
    keeps the canonical-first failure so results do not depend on it.
    """
    check_valid(G)
    n = len(G)
    bound = n if max_domain is None else min(max_domain, n)
    threads = _thread_count(threads)
    best: list[tuple[int, ...] | None] = [None, None, None]
    cache = _Cache(n)
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        for size in range(1, bound + 1):
            if all(b is not None for b in best):
                break
            need = tuple(b is None for b in best)
            doms = list(combinations(range(n), size))
            if pool is None:
                results = []
                for dom in doms:
                    r = _scan_domain(G, dom, need, cache)
                    results.append(r)
                    need = tuple(nd and r[i] is None for i, nd in enumerate(need))
                    if not any(need):
                        break
            else:
                results = list(pool.map(lambda d: _scan_domain(G, d, need, cache), doms))
            for r in results:
                for i in range(3):
                    if best[i] is None and r[i] is not None:
                        best[i] = r[i]
    finally:
        if pool is not None:
            pool.shutdown()

    def wit(key, injective):
        if key is None:
            return None
        f = PartialMap(G, G, {G.vertices[v]: G.vertices[y] for v, y in enumerate(key) if y != UNMAPPED})
        return Witness(f, _blocking_vertex(G, key, injective))

    hh, mh, mm = best
    return Classification(
        is_MH=mh is None,
        is_HH=hh is None,
        is_MM=mm is None,
        hh_witness=wit(hh, False),
        mh_witness=wit(mh, False),
        mm_witness=wit(mm, True),
        search_bound=bound,
        exact=bound == n,
    )


# --------------------------------------------------------------------------- witnesses


def iter_failure_witnesses(
    G: ColoredGraph,
    max_domain: int = 3,
    mode: str = "hh",
    domain_pool: Iterable[str] | None = None,
    image_pool: Iterable[str] | None = None,
    min_domain: int = 1,
) -> Iterator[tuple[PartialMap, str]]:
    """Every (f, c) with f a partial hom (mono for mode 'mh') and no one-point target at c.

    Order: domain size, canonical domain, lexicographic image, then c.
    The pools restrict where domains and images are drawn from; a restricted
    search is still sound, since any blocked pair refutes the property.
    """
    if mode not in ("hh", "mh"):
        raise ValueError(f"mode must be 'hh' or 'mh', not {mode!r}")
    check_valid(G)
    n = len(G)
    dom_idx = sorted(G.vidx(v) for v in set(domain_pool)) if domain_pool is not None else list(range(n))
    image_mask = None
    if image_pool is not None:
        image_mask = np.zeros(n, dtype=bool)
        image_mask[[G.vidx(v) for v in image_pool]] = True
    for size in range(max(1, min_domain), max_domain + 1):
        for dom in combinations(dom_idx, size):
            in_dom = np.zeros(n, dtype=bool)
            in_dom[list(dom)] = True
            for img, full in _iter_homs(G, dom, image_mask, injective=mode == "mh", track_all=True):
                blocked = ~full.any(axis=1) & ~in_dom
                if not blocked.any():
                    continue
                f = PartialMap(G, G, {G.vertices[x]: G.vertices[y] for x, y in zip(dom, img)})
                for c in np.flatnonzero(blocked).tolist():
                    yield f, G.vertices[c]


def hh_failure_witness(G: ColoredGraph, max_domain: int = 3, **kw) -> tuple[PartialMap, str] | None:
    """The first one-point-blocked partial homomorphism, or None."""
    return next(iter_failure_witnesses(G, max_domain, "hh", **kw), None)


def mh_failure_witness(G: ColoredGraph, max_domain: int = 3, **kw) -> tuple[PartialMap, str] | None:
    return next(iter_failure_witnesses(G, max_domain, "mh", **kw), None)


def blocked_vertices(f: PartialMap) -> list[str]:
    """Unmapped source vertices at which ``f`` has no one-point extension."""
    _same_language(f)
    if not is_homomorphism(f):
        raise NotHomomorphism(repr(f))
    S, T = f.source, f.target
    dom, img = f.arrays()
    out = []
    for c in range(len(S)):
        if S.vertices[c] in f.mapping:
            continue
        if not _candidates(S, T, dom, img, c).any():
            out.append(S.vertices[c])
    return out


# --------------------------------------------------------------------------- linear Q


def transversal_extend(f: PartialMap, u: str) -> PartialMap | None:
    """Extend a homomorphism to ``u`` through its best transversal (Q linear).

    Each fiber of ``f`` contributes the vertex whose edge towards ``u`` has the
    largest color; a one-point target for the restriction of ``f`` to those
    representatives dominates every fiber, so it extends all of ``f``.
    """
    Q = f.source.Q
    if not is_linear(Q):
        raise NonLinearQ("transversal extension needs a linearly ordered Q")
    _check_extension_args(f, u)
    S = f.source
    rank = Q.leq_matrix.sum(axis=0)  # number of colors below; strictly monotone on a chain
    iu = S.vidx(u)
    best: dict[str, str] = {}
    for x, y in f.pairs():
        cur = best.get(y)
        if cur is None or rank[S.xi[iu, S.index[x]]] > rank[S.xi[iu, S.index[cur]]]:
            best[y] = x
    s0 = f.restrict(best.values())
    targets = one_point_targets(s0, u)
    if not targets:
        return None
    return f.extend(u, targets[0])
