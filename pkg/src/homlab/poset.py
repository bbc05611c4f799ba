"""Finite partial orders with a minimum element.

Posets here are tiny (a dozen elements at most in practice), so the order is
kept as a fully materialized boolean matrix and every query is a table lookup.
Elements are opaque strings; their declaration order is the canonical order
used for all tie-breaking downstream.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import BadParameter, ClosureViolation, NoMinimum, NoTop, UnknownElement

ZERO = "0"
ONE = "1"


class Poset:
    """An immutable finite partial order with a minimum element.

    ``leq_matrix[i, j]`` is True iff ``elements[i] <= elements[j]``.
    """

    __slots__ = ("elements", "index", "min", "leq_matrix", "_hash")

    def __init__(self, elements: Sequence[str], leq_matrix: np.ndarray, min: str):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise BadParameter(f"duplicate elements in {self.elements!r}")
        if min not in self.index:
            raise UnknownElement(min)
        mat = np.array(leq_matrix, dtype=bool)
        n = len(self.elements)
        if mat.shape != (n, n):
            raise BadParameter(f"order matrix has shape {mat.shape}, expected {(n, n)}")
        if not mat.diagonal().all():
            raise ClosureViolation("order is not reflexive")
        off = mat & mat.T
        np.fill_diagonal(off, False)
        if off.any():
            i, j = map(int, np.argwhere(off)[0])
            raise ClosureViolation(
                f"antisymmetry fails: {self.elements[i]} <= {self.elements[j]} <= {self.elements[i]}"
            )
        m8 = mat.astype(np.uint8)
        if (((m8 @ m8) > 0) & ~mat).any():
            raise ClosureViolation("order is not transitive")
        if not mat[self.index[min]].all():
            raise NoMinimum(f"{min!r} is not below every element")
        mat.setflags(write=False)
        self.leq_matrix = mat
        self.min = min
        self._hash = hash((self.elements, mat.tobytes(), min))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.index

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return (
            self.elements == other.elements
            and self.min == other.min
            and bool(np.array_equal(self.leq_matrix, other.leq_matrix))
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Poset({list(self.elements)!r}, covers={self.covers()!r})"

    def idx(self, x: str) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise UnknownElement(x) from None

    @property
    def min_index(self) -> int:
        return self.index[self.min]

    def covers(self) -> list[tuple[str, str]]:
        """The covering relation (Hasse diagram edges) in canonical order."""
        mat = self.leq_matrix
        n = len(self.elements)
        out = []
        for i in range(n):
            for j in range(n):
                if i == j or not mat[i, j]:
                    continue
                if not any(mat[i, k] and mat[k, j] for k in range(n) if k not in (i, j)):
                    out.append((self.elements[i], self.elements[j]))
        return out


def build_poset(elements: Iterable[str], covers: Iterable[tuple[str, str]], min: str = ZERO) -> Poset:
    """Build the reflexive-transitive closure of ``covers`` over ``elements``."""
    elements = list(elements)
    if not elements:
        raise BadParameter("a poset needs at least one element")
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != len(elements):
        raise BadParameter(f"duplicate elements in {elements!r}")
    if min not in index:
        raise UnknownElement(min)
    n = len(elements)
    mat = np.eye(n, dtype=bool)
    for a, b in covers:
        if a not in index:
            raise UnknownElement(a)
        if b not in index:
            raise UnknownElement(b)
        mat[index[a], index[b]] = True
    # iterated composition until fixpoint
    while True:
        nxt = mat | ((mat.astype(np.uint8) @ mat.astype(np.uint8)) > 0)
        if np.array_equal(nxt, mat):
            break
        mat = nxt
    off = mat & mat.T
    np.fill_diagonal(off, False)
    if off.any():
        i, j = map(int, np.argwhere(off)[0])
        raise ClosureViolation(f"cycle through {elements[i]!r} and {elements[j]!r}")
    if not mat[index[min]].all():
        missing = [e for e, ok in zip(elements, mat[index[min]]) if not ok]
        raise NoMinimum(f"{min!r} is not below {missing!r}")
    return Poset(elements, mat, min)


def leq(p: Poset, a: str, b: str) -> bool:
    return bool(p.leq_matrix[p.idx(a), p.idx(b)])


def is_linear(p: Poset) -> bool:
    mat = p.leq_matrix
    return bool((mat | mat.T).all())


def upper_bounds(p: Poset, a: str, b: str) -> set[str]:
    col = p.leq_matrix[p.idx(a)] & p.leq_matrix[p.idx(b)]
    return {e for e, ok in zip(p.elements, col) if ok}


def is_directed(p: Poset) -> bool:
    """Every pair has a common upper bound."""
    mat = p.leq_matrix.astype(np.uint8)
    # (i, j) have a common upper bound iff row_i . row_j > 0
    return bool(((mat @ mat.T) > 0).all())


def maximal_elements(p: Poset) -> set[str]:
    mat = p.leq_matrix
    n = len(p)
    return {p.elements[i] for i in range(n) if mat[i].sum() == 1}


def _maximal_in(p: Poset, keep: list[int]) -> list[int]:
    mat = p.leq_matrix
    return [i for i in keep if not any(mat[i, j] for j in keep if j != i)]


def top(p: Poset) -> str | None:
    """The maximum element, if there is one."""
    mat = p.leq_matrix
    for j in range(len(p)):
        if mat[:, j].all():
            return p.elements[j]
    return None


def strict_tops_below_top(p: Poset) -> list[str]:
    """Maximal elements of ``p`` minus its maximum, in canonical order."""
    t = top(p)
    if t is None:
        raise NoTop("poset has no maximum element")
    keep = [i for i in range(len(p)) if p.elements[i] != t]
    return [p.elements[i] for i in _maximal_in(p, keep)]


def sorted_maximal(p: Poset) -> list[str]:
    """``maximal_elements`` as a list in canonical order."""
    return [e for e in p.elements if e in maximal_elements(p)]


def make_F(n: int) -> Poset:
    """An n-element antichain c1..cn over the minimum."""
    if n < 1:
        raise BadParameter(f"F_n needs n >= 1, got {n}")
    cs = [f"c{i}" for i in range(1, n + 1)]
    return build_poset([ZERO, *cs], [(ZERO, c) for c in cs])


def make_D(n: int) -> Poset:
    """The diamond: an n-element antichain between a minimum and a maximum."""
    if n < 2:
        raise BadParameter(f"D_n needs n >= 2, got {n}")
    cs = [f"c{i}" for i in range(1, n + 1)]
    return build_poset([ZERO, *cs, ONE], [(ZERO, c) for c in cs] + [(c, ONE) for c in cs])


def make_chain(k: int) -> Poset:
    """A k-element chain 0 < c1 < ... < c(k-1)."""
    if k < 1:
        raise BadParameter(f"a chain needs k >= 1 elements, got {k}")
    names = [ZERO] + [f"c{i}" for i in range(1, k)]
    return build_poset(names, list(zip(names, names[1:])))


def trivial() -> Poset:
    return make_chain(1)


def named_poset(name: str) -> Poset:
    """Expand CLI shorthands: ``F2``, ``D3``, ``chain3``, ``trivial``."""
    low = name.strip()
    try:
        if low == "trivial":
            return trivial()
        if low.startswith("chain"):
            return make_chain(int(low[5:]))
        if low[:1] in ("F", "D") and low[1:].isdigit():
            return (make_F if low[0] == "F" else make_D)(int(low[1:]))
    except ValueError:
        pass
    raise BadParameter(f"unknown poset shorthand {name!r}")

