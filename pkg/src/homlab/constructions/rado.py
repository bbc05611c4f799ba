"""Finite approximants of the random F_n-colored graph and of its partitioned version.

Both generators work in levels. A level enumerates nonempty subsets of the
vertices present so far (by size, then lexicographically in canonical order),
and for each subset every color pattern over it, in lexicographic order of the
antichain colors; each (subset, pattern) gets a fresh witness vertex joined to
the subset exactly by that pattern and to nothing else.
"""

from __future__ import annotations

from itertools import combinations, product
from math import comb
from typing import Sequence

from ..errors import BadParameter
from ..poset import make_F, trivial
from .builder import GraphBuilder, projected_check
from .certificate import Axiom, ConstructionReport, LevelCertificate


def _queries(n_vertices: int, cap: int, n_colors: int) -> int:
    return sum(comb(n_vertices, k) * n_colors**k for k in range(1, cap + 1))


def _witness_patterns(base: Sequence[int], cap: int, colors: Sequence[int]):
    for k in range(1, cap + 1):
        for Y in combinations(base, k):
            for t in product(colors, repeat=k):
                yield Y, t


def rado_approx(n: int, base_size: int, rounds: int, subset_cap: int = 2) -> ConstructionReport:
    """Iterated one-point extension closure over F_n, ``rounds`` levels deep."""
    if n < 1 or base_size < 1 or rounds < 1 or subset_cap < 1:
        raise BadParameter("rado_approx needs n, base_size, rounds, subset_cap >= 1")
    Q = make_F(n)
    total = base_size
    for _ in range(rounds):
        total += _queries(total, subset_cap, n + 1)
        projected_check(total)
    b = GraphBuilder(trivial(), Q, capacity=total)
    for i in range(base_size):
        b.add(f"y{i}", level=0, role="base")
    colors = list(range(len(Q)))  # canonical order: 0, c1..cn
    cert = LevelCertificate(levels=[list(b.vertices)])
    names = Q.elements
    for r in range(1, rounds + 1):
        prev = list(range(len(b)))
        for k, (Y, t) in enumerate(_witness_patterns(prev, subset_cap, colors)):
            w = b.add(f"r{r}/w{k}", level=r, role="witness")
            for y, q in zip(Y, t):
                b.set_edge(w, y, q)
            A = tuple(b.vertices[y] for y in Y)
            cert.axioms.append(Axiom(A, tuple((a, names[q]) for a, q in zip(A, t)), b.vertices[w]))
        cert.levels.append(list(b.vertices))
    return ConstructionReport(
        b.build(),
        cert,
        {"kind": "rado", "n": n, "base_size": base_size, "rounds": rounds, "subset_cap": subset_cap},
        [f"extension axioms certified for subsets of size <= {subset_cap} of each level below the last"],
    )


def partitioned_layer(
    b: GraphBuilder,
    base: Sequence[int],
    m: int,
    subset_cap: int,
    passes: int,
    colors: Sequence[int],
    name,
    extra_labels=None,
    color_of=None,
) -> list[Axiom]:
    """Add ``passes`` fresh witnesses per class for every (subset of ``base``, pattern).

    ``name(k, serial)`` names the witness in class ``k``; ``color_of(k)`` gives
    its vertex color (default: the minimum). Returns the certificate axioms.
    """
    names = b.Q.elements
    axioms = []
    serial = 0
    extra_labels = extra_labels or (lambda k: {})
    for _ in range(passes):
        for Y, t in _witness_patterns(base, subset_cap, colors):
            A = tuple(b.vertices[y] for y in Y)
            tt = tuple((a, names[q]) for a, q in zip(A, t))
            for k in range(1, m + 1):
                color = color_of(k) if color_of else None
                w = b.add(name(k, serial), color, class_index=k, role="witness", level=1, **extra_labels(k))
                serial += 1
                for y, q in zip(Y, t):
                    b.set_edge(w, y, q)
                axioms.append(Axiom(A, tt, b.vertices[w], k, extra_labels(k).get("copy_index")))
    return axioms


def partitioned_size(base_size: int, m: int, subset_cap: int, passes: int, n_colors: int) -> int:
    return base_size + passes * m * _queries(base_size, subset_cap, n_colors)


def partitioned_rado(
    n: int, m: int, base_size: int = 2, subset_cap: int = 1, passes: int = 1
) -> ConstructionReport:
    """An F_n-colored approximant split into ``m`` classes, each class witnessing every pattern."""
    if n < 1 or m < 1 or base_size < 1 or subset_cap < 1 or passes < 1:
        raise BadParameter("partitioned_rado needs all parameters >= 1")
    Q = make_F(n)
    total = partitioned_size(base_size, m, subset_cap, passes, n + 1)
    projected_check(total)
    b = GraphBuilder(trivial(), Q, capacity=total)
    for i in range(base_size):
        k = i % m + 1
        b.add(f"C{k}/y{i}", class_index=k, role="base", level=0)
    base = list(range(base_size))
    cert = LevelCertificate(levels=[list(b.vertices)])
    cert.axioms = partitioned_layer(
        b, base, m, subset_cap, passes, list(range(len(Q))), lambda k, s: f"C{k}/w{s}"
    )
    cert.levels.append(list(b.vertices))
    return ConstructionReport(
        b.build(),
        cert,
        {"kind": "partitioned", "n": n, "m": m, "base_size": base_size, "subset_cap": subset_cap, "passes": passes},
        [f"every pattern over base subsets of size <= {subset_cap} has {passes} witness(es) per class"],
    )
