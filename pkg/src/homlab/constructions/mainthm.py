"""The MH-but-not-HH structure for a directed, non-linear edge-color poset.

Copies ``M_1 .. M_{n+1}`` of a partitioned top-color approximant, each split
into ``n!`` classes ``M_i^sigma``, sit pairwise joined by the top color. Special
vertex ``x_i`` sees its own copy in the top color and a vertex of ``M_j^sigma``
(j != i) in the color ``P_{sigma(c_j(x_i))}``, where ``P_1 .. P_n`` are the
maximal colors strictly below the top.
"""

from __future__ import annotations

from itertools import permutations

from ..errors import (
    BadParameter,
    EqualIndices,
    IndexOutOfRange,
    LinearQ,
    NonDirectedQ,
    NonInjectivePattern,
    WrongGenerator,
)
from ..poset import Poset, is_directed, is_linear, sorted_maximal, strict_tops_below_top, top, trivial
from .builder import GraphBuilder, projected_check
from .certificate import ConstructionReport, LevelCertificate
from .rado import partitioned_layer, partitioned_size


def c_index(i: int, j: int, n: int) -> int:
    """Position of special ``x_j`` among the specials other than ``x_i`` (1-based)."""
    if not (1 <= i <= n + 1 and 1 <= j <= n + 1):
        raise IndexOutOfRange(f"indices must lie in 1..{n + 1}, got i={i}, j={j}")
    if i == j:
        raise EqualIndices(f"c_{i} is undefined at x_{i}")
    return j if j <= i - 1 else j - 1


def perm_name(sigma: tuple[int, ...]) -> str:
    return "".join(map(str, sigma))


def special_name(i: int) -> str:
    return f"x{i}"


def mainthm_structure(
    Q: Poset,
    base_size: int = 2,
    subset_cap: int = 2,
    passes: int = 1,
    fill_seed: int = 0,
    vertex_colored: bool = False,
    P: Poset | None = None,
) -> ConstructionReport:
    """Build the structure at finite scale.

    With ``vertex_colored`` the specials get the first maximal nonzero color
    of ``P`` and every other vertex the minimum.
    """
    if not is_directed(Q):
        raise NonDirectedQ("Q must be directed")
    if is_linear(Q):
        raise LinearQ("Q is a linear order")
    one = top(Q)
    tops = strict_tops_below_top(Q)
    n = len(tops)
    if n < 2:
        raise BadParameter(f"needs at least two maximal colors below the top, found {tops!r}")
    if base_size < 1 or subset_cap < 1 or passes < 1:
        raise BadParameter("base_size, subset_cap and passes must be >= 1")
    if P is None:
        P = trivial()
    spec_color = None
    if vertex_colored:
        options = [p for p in sorted_maximal(P) if p != P.min]
        if not options:
            raise BadParameter("vertex-colored variant needs a nonzero color in P")
        spec_color = options[0]

    sigmas = list(permutations(range(1, n + 1)))
    m = len(sigmas)
    zero, top_i = Q.min_index, Q.idx(one)
    colors = [zero, top_i]
    per_copy = partitioned_size(base_size, m, subset_cap, passes, 2)
    projected_check((n + 1) * (per_copy + 1))

    b = GraphBuilder(P, Q, capacity=(n + 1) * (per_copy + 1))
    for i in range(1, n + 2):
        b.add(special_name(i), spec_color, special=True, copy_index=i)
    cert = LevelCertificate(levels=[[]])
    copies: list[list[int]] = []
    for i in range(1, n + 2):
        start = len(b)

        def nm(k, serial, role, i=i):
            sig = perm_name(sigmas[k - 1])
            return f"M{i}^[{sig}]/{role}{serial}"

        for r in range(base_size):
            k = r % m + 1
            b.add(nm(k, r, "b"), copy_index=i, class_index=k, sigma=perm_name(sigmas[k - 1]), role="base", level=0)
        cert.levels[0].extend(b.vertices[start:])
        axioms = partitioned_layer(
            b,
            list(range(start, start + base_size)),
            m,
            subset_cap,
            passes,
            colors,
            lambda k, s, nm=nm: nm(k, s, "w"),
            extra_labels=lambda k, i=i: {"copy_index": i, "sigma": perm_name(sigmas[k - 1])},
        )
        # the fill below recolors every uncolored pair, so only all-top patterns survive
        cert.axioms.extend(ax for ax in axioms if all(q == one for _, q in ax.t))
        copies.append(list(range(start, len(b))))
    cert.levels.append(list(b.vertices))

    # intra-copy fill: every uncolored pair gets a nonzero color, cyclically from a seeded offset
    fill = [q for q in range(len(Q)) if q != zero]
    pos = fill_seed % len(fill)
    filled: list[tuple[int, int]] = []
    for members in copies:
        for a_i, u in enumerate(members):
            for v in members[a_i + 1 :]:
                if b.edge(u, v) == zero:
                    b.set_edge(u, v, fill[pos])
                    pos = (pos + 1) % len(fill)
                    filled.append((u, v))
    # copies pairwise joined by the top color
    for a_i, A in enumerate(copies):
        for B in copies[a_i + 1 :]:
            for u in A:
                for v in B:
                    b.set_edge(u, v, top_i)
    # specials
    for i, members in enumerate(copies, start=1):
        for u in members:
            sigma = sigmas[b.labels[b.vertices[u]]["class_index"] - 1]
            for j in range(1, n + 2):
                xj = b.index[special_name(j)]
                if j == i:
                    b.set_edge(u, xj, top_i)
                else:
                    b.set_edge(u, xj, Q.idx(tops[sigma[c_index(i, j, n) - 1] - 1]))
    _ensure_all_colors(b, Q, filled)

    return ConstructionReport(
        b.build(),
        cert,
        {
            "kind": "mainthm",
            "Q": list(Q.elements),
            "n": n,
            "base_size": base_size,
            "subset_cap": subset_cap,
            "passes": passes,
            "fill_seed": fill_seed,
            "vertex_colored": vertex_colored,
            "tops": tops,
            "top": one,
        },
        [
            "each copy certifies all-top patterns over base subsets of size <= subset_cap, per class",
            "patterns with uncolored values are not certified: the fill recolors those pairs",
        ],
        {"specials": [special_name(i) for i in range(1, n + 2)]},
    )


def _ensure_all_colors(b: GraphBuilder, Q: Poset, filled: list[tuple[int, int]]) -> None:
    """Recolor fill pairs (latest first) until every color of Q occurs, where possible."""
    xi = b.view()
    counts = {q: int((xi == q).sum()) for q in range(len(Q))}
    missing = [q for q in range(len(Q)) if counts[q] == 0]
    for u, v in reversed(filled):
        if not missing:
            break
        old = b.edge(u, v)
        if counts[old] > 2:  # each pair is counted twice in the symmetric matrix
            q = missing.pop(0)
            b.set_edge(u, v, q)
            counts[old] -= 2
            counts[q] += 2


def _require_mainthm(report: ConstructionReport) -> None:
    if report.parameters.get("kind") != "mainthm":
        raise WrongGenerator("report was not produced by mainthm_structure")


def _class_members(report: ConstructionReport):
    G = report.graph
    out: dict[tuple[int, str], list[str]] = {}
    for v in G.vertices:
        lab = G.labels.get(v, {})
        if lab.get("special"):
            continue
        out.setdefault((lab["copy_index"], lab["sigma"]), []).append(v)
    return out


def claim_witness(
    report: ConstructionReport, F, S, t: dict[str, str]
) -> str | None:
    """A vertex joined by the top color to all of ``F`` with diagram ``t`` over the specials ``S``.

    The copy is the one whose special ``t`` sends to the top (or the first
    copy whose special lies outside ``S``); the class is the first
    permutation realizing the rest of ``t``; inside it the certificate
    supplies a witness joined by the top color to the part of ``F`` in that
    copy. Returns None when the certificate has no such witness.
    """
    _require_mainthm(report)
    G = report.graph
    n = report.parameters["n"]
    tops = report.parameters["tops"]
    one = report.parameters["top"]
    S = list(S)
    F = set(F)
    specials = [special_name(i) for i in range(1, n + 2)]
    for v in list(F) + S:
        G.vidx(v)
    if F & set(specials):
        raise BadParameter("F must avoid the special vertices")
    if set(t) != set(S) or not set(S) <= set(specials):
        raise BadParameter("t must be defined exactly on a set of special vertices")
    if len(set(t.values())) != len(t):
        raise NonInjectivePattern(repr(t))
    allowed = {one, *tops}
    if not set(t.values()) <= allowed:
        raise BadParameter(f"pattern values must lie in {sorted(allowed)!r}")

    sp_idx = {x: int(x[1:]) for x in specials}
    at_top = [x for x in S if t[x] == one]
    if at_top:
        i = sp_idx[at_top[0]]
    else:
        i = next(sp_idx[x] for x in specials if x not in S)
    want = {c_index(i, sp_idx[x], n): tops.index(t[x]) + 1 for x in S if sp_idx[x] != i}
    sigmas = list(permutations(range(1, n + 1)))
    k, sigma = next((r, s) for r, s in enumerate(sigmas, 1) if all(s[c - 1] == p for c, p in want.items()))
    sig = perm_name(sigma)

    local = tuple(v for v in G.vertices if v in F and G.label(v, "copy_index") == i)
    if not local:
        members = _class_members(report).get((i, sig), [])
        return members[0] if members else None
    pattern = tuple((a, one) for a in local)
    for ax in report.certificate.axioms:
        if ax.copy == i and ax.cls == k and ax.A == local and ax.t == pattern:
            return ax.witness
    return None


def specials_of(report: ConstructionReport) -> list[str]:
    _require_mainthm(report)
    return list(report.witnesses["specials"])

