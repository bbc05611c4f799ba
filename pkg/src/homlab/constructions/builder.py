"""Mutable scratch graph used by the generators before publishing a ColoredGraph."""

from __future__ import annotations

import numpy as np

from ..errors import SizeExplosion
from ..graph import ColoredGraph
from ..poset import Poset
from .certificate import HARD_CAP


class GraphBuilder:
    def __init__(self, P: Poset, Q: Poset, capacity: int = 64):
        self.P, self.Q = P, Q
        self.vertices: list[str] = []
        self.index: dict[str, int] = {}
        self.labels: dict[str, dict] = {}
        self._chi = np.full(capacity, P.min_index, dtype=np.int8)
        self._xi = np.full((capacity, capacity), Q.min_index, dtype=np.int8)

    def __len__(self) -> int:
        return len(self.vertices)

    def _grow(self, need: int) -> None:
        cap = len(self._chi)
        if need <= cap:
            return
        new = max(need, 2 * cap)
        chi = np.full(new, self.P.min_index, dtype=np.int8)
        chi[:cap] = self._chi
        xi = np.full((new, new), self.Q.min_index, dtype=np.int8)
        xi[:cap, :cap] = self._xi
        self._chi, self._xi = chi, xi

    def add(self, name: str, color: str | None = None, **labels) -> int:
        if len(self.vertices) >= HARD_CAP:
            raise SizeExplosion(f"more than {HARD_CAP} vertices")
        i = len(self.vertices)
        self._grow(i + 1)
        self.vertices.append(name)
        self.index[name] = i
        if color is not None:
            self._chi[i] = self.P.idx(color)
        if labels:
            self.labels[name] = labels
        return i

    def set_edge(self, i: int, j: int, q: int) -> None:
        self._xi[i, j] = q
        self._xi[j, i] = q

    def edge(self, i: int, j: int) -> int:
        return int(self._xi[i, j])

    def view(self) -> np.ndarray:
        n = len(self.vertices)
        return self._xi[:n, :n]

    def build(self) -> ColoredGraph:
        n = len(self.vertices)
        return ColoredGraph(self.P, self.Q, self.vertices, self._chi[:n], self._xi[:n, :n], self.labels)


def projected_check(count: int) -> None:
    if count > HARD_CAP:
        raise SizeExplosion(f"projected {count} vertices exceeds the cap of {HARD_CAP}")
