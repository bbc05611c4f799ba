"""P,Q-colored graphs, induced substructures and the diagram calculus.

A colored graph has vertex colors from a poset P and a symmetric edge coloring
with values in a poset Q; the minimum of Q encodes a nonedge. Colors are held
as dense integer matrices of poset indices so that extension queries over all
candidate vertices vectorize.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Iterable, Mapping

import numpy as np

from .errors import (
    BaseContainsVertex,
    BaseMismatch,
    BadParameter,
    InvalidGraph,
    UnknownVertex,
    VertexInDomain,
)
from .poset import Poset

if TYPE_CHECKING:
    from .morphism import PartialMap


class ColoredGraph:
    """A finite P,Q-colored graph.

    ``chi[i]`` is the P-index of vertex ``vertices[i]`` and ``xi[i, j]`` the
    Q-index of the pair. The constructor does not validate; use
    :func:`validate` (generators and the file reader always do).
    """

    def __init__(
        self,
        P: Poset,
        Q: Poset,
        vertices: Iterable[str],
        chi: Any,
        xi: Any,
        labels: Mapping[str, Mapping[str, Any]] | None = None,
    ):
        if max(len(P), len(Q)) > 127:
            raise BadParameter("posets with more than 127 elements are not supported")
        self.P = P
        self.Q = Q
        self.vertices = tuple(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise InvalidGraph("duplicate vertex identifiers")
        n = len(self.vertices)
        self.chi = np.array(chi, dtype=np.int8).reshape(n)
        self.xi = np.array(xi, dtype=np.int8).reshape(n, n)
        self.chi.setflags(write=False)
        self.xi.setflags(write=False)
        self.labels = {v: dict(labels[v]) for v in self.vertices if labels and v in labels}
        self._rows = None

    @classmethod
    def from_edges(
        cls,
        P: Poset,
        Q: Poset,
        vertices: Iterable[str],
        edges: Iterable[tuple[str, str, str]] = (),
        colors: Mapping[str, str] | None = None,
        labels: Mapping[str, Mapping[str, Any]] | None = None,
    ) -> "ColoredGraph":
        """Build from named data. Omitted pairs are the minimum of Q."""
        vertices = tuple(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        n = len(vertices)
        chi = np.full(n, P.min_index, dtype=np.int8)
        for v, c in (colors or {}).items():
            if v not in index:
                raise UnknownVertex(v)
            chi[index[v]] = P.idx(c)
        xi = np.full((n, n), Q.min_index, dtype=np.int8)
        for u, v, c in edges:
            if u not in index:
                raise UnknownVertex(u)
            if v not in index:
                raise UnknownVertex(v)
            if u == v:
                raise InvalidGraph(f"self-pair {u!r}")
            q = Q.idx(c)
            xi[index[u], index[v]] = q
            xi[index[v], index[u]] = q
        return cls(P, Q, vertices, chi, xi, labels)

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"ColoredGraph(|V|={len(self)}, P={list(self.P.elements)}, Q={list(self.Q.elements)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColoredGraph):
            return NotImplemented
        return (
            self.P == other.P
            and self.Q == other.Q
            and self.vertices == other.vertices
            and np.array_equal(self.chi, other.chi)
            and np.array_equal(self.xi, other.xi)
            and self.labels == other.labels
        )

    __hash__ = None

    def vidx(self, v: str) -> int:
        try:
            return self.index[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def color(self, v: str) -> str:
        return self.P.elements[self.chi[self.vidx(v)]]

    def edge(self, u: str, v: str) -> str:
        return self.Q.elements[self.xi[self.vidx(u), self.vidx(v)]]

    def edges(self):
        """Pairs with a color other than the minimum, as ``(u, v, color)`` with u before v."""
        z = self.Q.min_index
        iu, ju = np.nonzero(np.triu(self.xi != z, k=1))
        names = self.Q.elements
        for i, j in zip(iu.tolist(), ju.tolist()):
            yield self.vertices[i], self.vertices[j], names[self.xi[i, j]]

    def label(self, v: str, key: str, default=None):
        return self.labels.get(v, {}).get(key, default)

    def with_label(self, key: str, value) -> list[str]:
        """Vertices whose label ``key`` equals ``value``, in canonical order."""
        return [v for v in self.vertices if self.labels.get(v, {}).get(key) == value]

    @property
    def rows(self) -> list[list[int]]:
        """``xi`` as nested lists; scalar access is much faster than on the array."""
        if self._rows is None:
            self._rows = self.xi.tolist()
        return self._rows


@dataclass(frozen=True)
class Diagram:
    """Edge colors from one vertex towards a finite base set."""

    base: tuple[str, ...]
    values: Mapping[str, str]
    order: Poset = field(compare=False, repr=False)

    def __post_init__(self):
        if set(self.values) != set(self.base):
            raise BaseMismatch("diagram values must be defined exactly on its base")


@dataclass(frozen=True)
class Requirement:
    """What a candidate image of a new vertex must dominate.

    ``demands[b]`` collects the colors from the new vertex towards every
    preimage of ``b``; a candidate ``d`` must have ``xi(d, b)`` above each of
    them. For an injective map every demand set is a singleton.
    """

    base: tuple[str, ...]
    demands: Mapping[str, frozenset]
    vertex_demand: str

    def as_diagram(self, Q: Poset) -> Diagram:
        if any(len(s) != 1 for s in self.demands.values()):
            raise BadParameter("requirement has non-singleton demands")
        return Diagram(self.base, {b: next(iter(s)) for b, s in self.demands.items()}, Q)


def violation(G: ColoredGraph) -> str | None:
    """Describe the first broken invariant of ``G``, or return None."""
    n = len(G)
    if n and (G.chi.min() < 0 or G.chi.max() >= len(G.P)):
        return "vertex color outside P"
    if n and (G.xi.min() < 0 or G.xi.max() >= len(G.Q)):
        return "edge color outside Q"
    diag = G.xi.diagonal()
    bad = np.nonzero(diag != G.Q.min_index)[0]
    if bad.size:
        v = G.vertices[int(bad[0])]
        return f"xi({v},{v}) = {G.Q.elements[diag[bad[0]]]} is not the minimum"
    asym = np.argwhere(G.xi != G.xi.T)
    if asym.size:
        i, j = map(int, asym[0])
        return f"xi not symmetric on ({G.vertices[i]}, {G.vertices[j]})"
    stray = set(G.labels) - set(G.vertices)
    if stray:
        return f"labels for unknown vertices {sorted(stray)!r}"
    return None


def validate(G: ColoredGraph) -> bool:
    return violation(G) is None


def check_valid(G: ColoredGraph) -> None:
    msg = violation(G)
    if msg is not None:
        raise InvalidGraph(msg)


def induced(G: ColoredGraph, A: Iterable[str]) -> ColoredGraph:
    """Restriction of ``G`` to ``A``; vertices keep their canonical order."""
    keep = set(A)
    for v in keep:
        G.vidx(v)
    idx = [i for i, v in enumerate(G.vertices) if v in keep]
    verts = [G.vertices[i] for i in idx]
    return ColoredGraph(
        G.P,
        G.Q,
        verts,
        G.chi[idx],
        G.xi[np.ix_(idx, idx)],
        {v: G.labels[v] for v in verts if v in G.labels},
    )


def diagram(G: ColoredGraph, v: str, A: Iterable[str]) -> Diagram:
    A = tuple(A)
    i = G.vidx(v)
    if v in A:
        raise BaseContainsVertex(v)
    names = G.Q.elements
    return Diagram(A, {u: names[G.xi[i, G.vidx(u)]] for u in A}, G.Q)


def requirement(G: ColoredGraph, f: "PartialMap", c: str) -> Requirement:
    """The generalized pull-back diagram for extending ``f`` to ``c``."""
    if c in f.mapping:
        raise VertexInDomain(c)
    ic = G.vidx(c)
    names = G.Q.elements
    demands: dict[str, set] = {}
    for x, b in f.mapping.items():
        demands.setdefault(b, set()).add(names[G.xi[ic, G.vidx(x)]])
    target = f.target
    base = tuple(b for b in target.vertices if b in demands)
    return Requirement(base, {b: frozenset(demands[b]) for b in base}, G.color(c))


def diagram_leq(x: Diagram, y: Diagram) -> bool:
    if set(x.base) != set(y.base):
        raise BaseMismatch(f"{x.base!r} vs {y.base!r}")
    Q = x.order
    return all(Q.leq_matrix[Q.idx(x.values[a]), Q.idx(y.values[a])] for a in x.base)


def satisfies(G: ColoredGraph, d: str, req: Requirement) -> bool:
    """Can ``d`` serve as the image of the requirement's vertex?

    A candidate inside the base is allowed: it then needs every demand on
    itself to be the minimum, since ``xi(d, d)`` is.
    """
    i = G.vidx(d)
    if not G.P.leq_matrix[G.P.idx(req.vertex_demand), G.chi[i]]:
        return False
    Ql = G.Q.leq_matrix
    for b, qs in req.demands.items():
        have = G.xi[i, G.vidx(b)]
        if not all(Ql[G.Q.idx(q), have] for q in qs):
            return False
    return True


def satisfying_mask(G: ColoredGraph, req: Requirement) -> np.ndarray:
    """Boolean vector over ``G.vertices``: which candidates satisfy ``req``."""
    mask = G.P.leq_matrix[G.P.idx(req.vertex_demand)][G.chi].copy()
    Ql = G.Q.leq_matrix
    for b, qs in req.demands.items():
        row = G.xi[G.vidx(b)]
        for q in qs:
            mask &= Ql[G.Q.idx(q)][row]
    return mask


def is_vertex_uniform(G: ColoredGraph) -> bool:
    return len(G) == 0 or bool((G.chi == G.chi[0]).all())
