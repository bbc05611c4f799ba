"""The D_2-colored structure built from six 1-cliques and three special vertices.

Clique ``M_x^s`` (x in a, b, c; s in 0, 1) is joined to its own special x by
the top color. A superscript-0 clique is joined by R to the next special in
the cycle a -> b -> c -> a and by B to the previous one; superscript 1 swaps
R and B. Specials are pairwise uncolored, everything else is the top color.

Any permutation of the specials lifts to an automorphism: clique ``M_x^s``
goes to ``M_{p(x)}^{s'}``, with ``s'`` flipped exactly when p is odd. The
extension routine uses this symmetry to bring a monomorphism whose image holds
two specials into the normal form where those specials are b and c.
"""

from __future__ import annotations

import logging
from itertools import combinations, combinations_with_replacement, permutations

from ..errors import BadParameter, NotMonomorphism, VertexInDomain, WrongGenerator
from ..graph import ColoredGraph
from ..morphism import PartialMap, is_monomorphism, one_point_targets
from ..poset import Poset, build_poset, trivial
from .builder import GraphBuilder
from .certificate import ConstructionReport, LevelCertificate

log = logging.getLogger(__name__)

SPECIALS = ("a", "b", "c")
NEXT = {"a": "b", "b": "c", "c": "a"}
PREV = {v: k for k, v in NEXT.items()}


def diamond_poset() -> Poset:
    """D_2 with its antichain named R and B."""
    return build_poset(["0", "R", "B", "1"], [("0", "R"), ("0", "B"), ("R", "1"), ("B", "1")])


def clique_name(x: str, s: int, k: int) -> str:
    return f"M{x}{s}/{k}"


def _special_color(x: str, s: int, y: str) -> str:
    """Color between a vertex of M_x^s and the special y."""
    if y == x:
        return "1"
    r_side = NEXT[x] if s == 0 else PREV[x]
    return "R" if y == r_side else "B"


def diamond_M(clique_size: int) -> ConstructionReport:
    if clique_size < 1:
        raise BadParameter("clique_size must be >= 1")
    Q = diamond_poset()
    b = GraphBuilder(trivial(), Q, capacity=3 + 6 * clique_size)
    for x in SPECIALS:
        b.add(x, special=True)
    members = []
    for x in SPECIALS:
        for s in (0, 1):
            for k in range(clique_size):
                members.append(b.add(clique_name(x, s, k), special=False, pi=x, s=s))
    one = Q.idx("1")
    for i, u in enumerate(members):
        for v in members[i + 1 :]:
            b.set_edge(u, v, one)
    for u in members:
        lab = b.labels[b.vertices[u]]
        for y in SPECIALS:
            b.set_edge(u, b.index[y], Q.idx(_special_color(lab["pi"], lab["s"], y)))
    return ConstructionReport(
        b.build(),
        LevelCertificate(levels=[list(b.vertices)]),
        {"kind": "diamond", "clique_size": clique_size},
        ["finite truncation: each of the six cliques has clique_size vertices"],
    )


def _check_diamond(M: ColoredGraph) -> None:
    ok = all(M.label(x, "special") is True for x in SPECIALS) and {"R", "B", "1"} <= set(M.Q.elements)
    if not ok:
        raise WrongGenerator("graph was not produced by diamond_M")


def _perm_parity(p: dict[str, str]) -> int:
    # a permutation of three points is odd iff it fixes exactly one
    return int(sum(p[x] == x for x in SPECIALS) == 1)


# even permutations first, so the normal form prefers a superscript-preserving symmetry
_AUTOS = sorted((dict(zip(SPECIALS, img)) for img in permutations(SPECIALS)), key=_perm_parity)


def _case(g: dict[str, str], third: str | None) -> str | None:
    """Case label for the special part ``g`` of a map whose image specials are {b, c}.

    ``third`` is pi of the image of the remaining special (None if it is not
    in the domain).
    """
    if g.get("b") == "b" and g.get("c") == "c":
        return "1"
    if g.get("b") == "c" and g.get("c") == "b":
        return "2"
    if g.get("a") == "c" and g.get("b") == "b":
        return "4" if third == "b" else "3"
    if g.get("a") == "c" and g.get("c") == "b":
        return "6" if third == "c" else "5"
    return None


def _prescribe(case: str, g: dict[str, str], third: str | None, x: str, s: int) -> tuple[str, int]:
    """Target class (special, superscript) for d in M_x^s, in the normal form."""

    def f_pi(y):
        # the case text writes M_{f(pi(d))}; when f sends pi(d) into a clique, read it as that clique's special
        return g[y] if y in g else third

    if case == "1":
        return x, s
    if case == "2":
        return (g[x], 1 - s) if x in ("b", "c") else ("a", 1 - s)
    if case == "3":
        return (g[x], 1 - s) if x in ("a", "b") else (x, s)
    if case == "4":
        return {"a": ("c", 1 - s), "c": (x, s), "b": ("b", 1 - s)}[x]
    if case == "5":
        return (g[x], s) if x in ("a", "c") else ("b", 1 - s)
    if case == "6":
        return (f_pi(x), 1 - s) if x in ("b", "c") else ("c", s)
    raise AssertionError(case)


def diamond_case(M: ColoredGraph, f: PartialMap, d: str) -> tuple[str, tuple[str, int] | None]:
    """Which situation of the case analysis applies, and the class it prescribes.

    Labels: ``easy-1`` (at most one special in the image; class None means any
    free clique vertex joined by 1 to the image), ``easy-2`` (f permutes the
    specials), ``1``..``6`` (two specials in the image), ``special-d`` (d is
    itself special; no prescription).
    """
    _check_diamond(M)
    image = set(f.mapping.values())
    img_sp = [x for x in SPECIALS if x in image]
    if len(img_sp) <= 1:
        return "easy-1", ((img_sp[0], -1) if img_sp else None)
    if M.label(d, "special"):
        return "special-d", None
    x, s = M.label(d, "pi"), M.label(d, "s")
    if len(img_sp) == 3:
        return "easy-2", (f.mapping[x], -1)
    # preimages of the two image specials are specials (only they span uncolored pairs)
    g = {y: f.mapping[y] for y in SPECIALS if f.mapping.get(y) in SPECIALS}
    (missing,) = [y for y in SPECIALS if y not in img_sp]
    for alpha in _AUTOS:
        if alpha[missing] != "a":
            continue
        inv = {v: k for k, v in alpha.items()}
        flip = _perm_parity(alpha)
        g2 = {alpha[y]: alpha[z] for y, z in g.items()}
        rest = [y for y in SPECIALS if y in f.mapping and y not in g]
        third = None
        if rest:
            third = alpha[M.label(f.mapping[rest[0]], "pi")]
        case = _case(g2, third)
        if case is None:
            continue
        tx, ts = _prescribe(case, g2, third, alpha[x], s ^ flip)
        return case, (inv[tx], ts ^ flip)
    raise AssertionError("no normal form found")  # unreachable for a valid monomorphism


def _extends(M: ColoredGraph, f: PartialMap, d: str, dd: str) -> bool:
    rows, Ql = M.rows, M.Q.leq_matrix
    i, j = M.index[d], M.index[dd]
    if not M.P.leq_matrix[M.chi[i], M.chi[j]]:
        return False
    for x, y in f.mapping.items():
        if not Ql[rows[i][M.index[x]], rows[j][M.index[y]]]:
            return False
    return True


def _free_in(M: ColoredGraph, x: str | None, s: int, image: set[str]) -> list[str]:
    """Clique vertices of M_x^s (s = -1: both superscripts; x None: every clique) outside the image."""
    out = []
    for v in M.vertices:
        lab = M.labels.get(v, {})
        if lab.get("special", True):
            continue
        if x is not None and lab["pi"] != x:
            continue
        if s != -1 and lab["s"] != s:
            continue
        if v not in image:
            out.append(v)
    return out


def diamond_extend(M: ColoredGraph, f: PartialMap, d: str) -> str | None:
    """Image for ``d`` extending the monomorphism ``f`` as a homomorphism, by the case analysis.

    The prescribed class is searched for its least vertex outside the image.
    When the prescription does not extend ``f`` the divergence is logged and
    the first generic one-point target is used instead.
    """
    _check_diamond(M)
    if d in f.mapping:
        raise VertexInDomain(d)
    if not is_monomorphism(f):
        raise NotMonomorphism(repr(f))
    case, cls = diamond_case(M, f, d)
    image = set(f.mapping.values())
    choice = None
    if case == "easy-1":
        free = _free_in(M, cls[0] if cls else None, -1, image)
        choice = free[0] if free else None
    elif case == "easy-2":
        for s2 in (M.label(d, "s"), 1 - M.label(d, "s")):
            free = _free_in(M, cls[0], s2, image)
            if free and _extends(M, f, d, free[0]):
                choice = free[0]
                break
    elif cls is not None:
        free = _free_in(M, cls[0], cls[1], image)
        if not free:
            return None
        choice = free[0]
    if choice is not None and _extends(M, f, d, choice):
        return choice
    if choice is not None:
        log.warning("case %s prescription %s fails for %r at %s; using generic fallback", case, cls, f, d)
    targets = one_point_targets(f, d)
    return targets[0] if targets else None


def _clique_classes(M: ColoredGraph) -> dict[tuple[str, int], list[str]]:
    out: dict[tuple[str, int], list[str]] = {}
    for v in M.vertices:
        lab = M.labels.get(v, {})
        if not lab.get("special", True):
            out.setdefault((lab["pi"], lab["s"]), []).append(v)
    return out


def iter_two_special_monos(M: ColoredGraph, max_domain: int = 4, representatives: bool = False):
    """Monomorphisms of ``M`` with domain size <= ``max_domain`` and at least two specials in the image.

    Two image specials span an uncolored pair, so their preimages are specials;
    the search fixes the special part first and then extends over clique
    vertices. With ``representatives`` only one map per orbit of the clique
    permutations (applied independently on source and target) is produced:
    domain and image clique vertices are the first ones of their class.
    Orbit mates get the same case and prescribed classes, so extension
    validity is constant on each orbit.
    """
    _check_diamond(M)
    classes = _clique_classes(M)
    keys = sorted(classes)
    Ql, rows = M.Q.leq_matrix, M.rows
    idx = M.index

    def ok(mapping: dict[str, str], x: str, y: str) -> bool:
        ix, iy = idx[x], idx[y]
        return all(Ql[rows[ix][idx[a]], rows[iy][idx[b]]] for a, b in mapping.items())

    def targets(mapping, used, x):
        if representatives:
            counts: dict[tuple, int] = {}
            for y in used:
                lab = M.labels[y]
                if not lab["special"]:
                    counts[(lab["pi"], lab["s"])] = counts.get((lab["pi"], lab["s"]), 0) + 1
            cand = [y for y in SPECIALS]
            cand += [classes[k][counts.get(k, 0)] for k in keys if counts.get(k, 0) < len(classes[k])]
        else:
            cand = list(M.vertices)
        return [y for y in cand if y not in used and ok(mapping, x, y)]

    def extend(mapping, order, k):
        if k == len(order):
            if sum(y in SPECIALS for y in mapping.values()) >= 2:
                yield PartialMap(M, M, dict(mapping))
            return
        x = order[k]
        used = set(mapping.values())
        for y in targets(mapping, used, x):
            # preimages of image specials are specials: once only cliques remain, two must already be hit
            mapping[x] = y
            if k + 1 < len(order) and order[k + 1] not in SPECIALS:
                if sum(v in SPECIALS for v in mapping.values()) < 2:
                    del mapping[x]
                    continue
            yield from extend(mapping, order, k + 1)
            del mapping[x]

    for size in range(2, max_domain + 1):
        for n_sp in (2, 3):
            if n_sp > size:
                continue
            for dsp in combinations(SPECIALS, n_sp):
                rest = size - n_sp
                if representatives:
                    # multisets of classes, each realized by the first vertices of the class
                    doms = []
                    for combo in combinations_with_replacement(keys, rest):
                        picks, seen = [], {}
                        for k in combo:
                            j = seen.get(k, 0)
                            if j >= len(classes[k]):
                                break
                            picks.append(classes[k][j])
                            seen[k] = j + 1
                        else:
                            doms.append(tuple(picks))
                else:
                    pool = [v for k in keys for v in classes[k]]
                    doms = list(combinations(pool, rest))
                for dc in doms:
                    yield from extend({}, list(dsp) + list(dc), 0)
