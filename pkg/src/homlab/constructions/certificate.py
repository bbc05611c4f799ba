"""Level certificates: finite records of which extension axioms hold, and by which witness."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any

from ..graph import ColoredGraph, check_valid

HARD_CAP = 20_000


@dataclass(frozen=True)
class Axiom:
    """``witness`` realizes the color pattern ``t`` over the finite set ``A``."""

    A: tuple[str, ...]
    t: tuple[tuple[str, str], ...]
    witness: str
    cls: int | None = None
    copy: int | None = None

    @property
    def pattern(self) -> dict[str, str]:
        return dict(self.t)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"A": list(self.A), "t": dict(self.t)}
        if self.copy is not None:
            out["copy"] = self.copy
        out["class"] = self.cls
        out["witness"] = self.witness
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Axiom":
        A = tuple(obj["A"])
        t = obj["t"]
        return cls(A, tuple((a, t[a]) for a in A), obj["witness"], obj.get("class"), obj.get("copy"))


@dataclass
class LevelCertificate:
    levels: list[list[str]] = field(default_factory=list)
    axioms: list[Axiom] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"levels": self.levels, "axioms": [a.to_json() for a in self.axioms]}

    @classmethod
    def from_json(cls, obj: dict) -> "LevelCertificate":
        return cls([list(lv) for lv in obj.get("levels", [])], [Axiom.from_json(a) for a in obj.get("axioms", [])])

    def witnesses_by_query(self) -> dict[tuple, list[str]]:
        """(A, t, class, copy) -> witnesses in certificate order."""
        out: dict[tuple, list[str]] = defaultdict(list)
        for ax in self.axioms:
            out[(ax.A, ax.t, ax.cls, ax.copy)].append(ax.witness)
        return dict(out)


@dataclass
class ConstructionReport:
    graph: ColoredGraph
    certificate: LevelCertificate
    parameters: dict
    notes: list[str] = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)

    def __post_init__(self):
        check_valid(self.graph)


def verify_certificate(G: ColoredGraph, cert: LevelCertificate) -> list[str]:
    """Recheck every axiom against ``G``; returns one message per failure (empty if all hold)."""
    failures = []
    prev: set[str] = set()
    for i, level in enumerate(cert.levels):
        missing = [v for v in level if v not in G.index]
        if missing:
            failures.append(f"level {i}: unknown vertices {missing[:3]!r}")
        if not prev <= set(level):
            failures.append(f"level {i} does not contain level {i - 1}")
        prev = set(level)
    seen: dict[tuple, set[str]] = defaultdict(set)
    names = G.Q.elements
    for k, ax in enumerate(cert.axioms):
        tag = f"axiom {k} (witness {ax.witness!r})"
        if ax.witness not in G.index:
            failures.append(f"{tag}: witness is not a vertex")
            continue
        if set(ax.pattern) != set(ax.A):
            failures.append(f"{tag}: pattern not defined exactly on A")
            continue
        if ax.witness in ax.A:
            failures.append(f"{tag}: witness lies in A")
            continue
        bad = [a for a in ax.A if a not in G.index]
        if bad:
            failures.append(f"{tag}: unknown base vertices {bad!r}")
            continue
        w = G.index[ax.witness]
        for a, q in ax.t:
            got = names[G.xi[w, G.index[a]]]
            if got != q:
                failures.append(f"{tag}: xi({ax.witness},{a}) = {got}, certified {q}")
                break
        if ax.cls is not None and G.label(ax.witness, "class_index") != ax.cls:
            failures.append(f"{tag}: witness not in class {ax.cls}")
        if ax.copy is not None and G.label(ax.witness, "copy_index") != ax.copy:
            failures.append(f"{tag}: witness not in copy {ax.copy}")
        key = (ax.A, ax.t, ax.cls, ax.copy)
        if ax.witness in seen[key]:
            failures.append(f"{tag}: witness repeated for the same query")
        seen[key].add(ax.witness)
    return failures
