"""Counterexample for edge-color posets without a common upper bound for their maximal colors."""

from __future__ import annotations

from itertools import cycle

from ..errors import BadParameter, DirectedQ
from ..poset import Poset, is_directed, sorted_maximal
from .builder import GraphBuilder, projected_check
from .certificate import ConstructionReport, LevelCertificate
from .rado import partitioned_layer, partitioned_size


def lattice_counterexample(
    P: Poset, Q: Poset, base_size: int | None = None, subset_cap: int = 2, passes: int = 1
) -> ConstructionReport:
    """A partitioned approximant over the maximal colors of Q, one class per vertex color.

    Class ``C_i`` gets the i-th element of P. Pairs that no certificate axiom
    constrains are filled cyclically with the non-maximal nonzero colors of Q,
    except one uncolored pair ``u, v`` of equal-colored base vertices. The
    designated witness ``w`` is joined to ``u`` and ``v`` by the first two
    maximal colors, so ``{u -> u, v -> u}`` cannot be extended to ``w``.
    """
    if is_directed(Q):
        raise DirectedQ("Q is directed; the construction needs two maximal colors with no upper bound")
    R = sorted_maximal(Q)
    m = len(P)
    if base_size is None:
        base_size = m + 1
    if base_size < m + 1:
        raise BadParameter(f"base_size must be >= |P| + 1 = {m + 1} to place two base vertices in one class")
    if subset_cap < 2 or passes < 1:
        raise BadParameter("subset_cap must be >= 2 and passes >= 1")
    colors = [Q.min_index] + [Q.idx(r) for r in R]
    total = partitioned_size(base_size, m, subset_cap, passes, len(colors))
    projected_check(total)

    b = GraphBuilder(P, Q, capacity=total)
    for i in range(base_size):
        k = i % m + 1
        b.add(f"C{k}/y{i}", color=P.elements[k - 1], class_index=k, role="base", level=0)
    cert = LevelCertificate(levels=[list(b.vertices)])
    cert.axioms = partitioned_layer(
        b,
        list(range(base_size)),
        m,
        subset_cap,
        passes,
        colors,
        lambda k, s: f"C{k}/w{s}",
        color_of=lambda k: P.elements[k - 1],
    )
    cert.levels.append(list(b.vertices))

    u, v = b.vertices[0], b.vertices[m]
    target = ((u, R[0]), (v, R[1]))
    w = next(ax.witness for ax in cert.axioms if ax.A == (u, v) and ax.t == target and ax.cls == 1)

    constrained = {(b.index[ax.witness], b.index[a]) for ax in cert.axioms for a in ax.A}
    constrained |= {(j, i) for i, j in constrained}
    constrained.add((b.index[u], b.index[v]))
    maximal = set(R)
    fill = [Q.idx(q) for q in Q.elements if q != Q.min and q not in maximal]
    if fill:
        it = cycle(fill)
        n = len(b)
        for i in range(n):
            for j in range(i + 1, n):
                if (i, j) not in constrained and b.edge(i, j) == Q.min_index:
                    b.set_edge(i, j, next(it))

    return ConstructionReport(
        b.build(),
        cert,
        {
            "kind": "lattice",
            "P": list(P.elements),
            "Q": list(Q.elements),
            "base_size": base_size,
            "subset_cap": subset_cap,
            "passes": passes,
        },
        [
            "extension axioms for the maximal colors certified over base subsets only",
            "unconstrained pairs filled with non-maximal colors; one designated pair left uncolored",
        ],
        {"triple": [u, v, w], "maximal_colors": R[:2]},
    )
