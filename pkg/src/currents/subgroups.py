"""Stallings core graphs for finitely generated subgroups of a free group.

A subgroup given by generator words is represented by the folded wedge of
loops.  Folding merges same-labeled edges at a vertex until the labeled
graph is deterministic; the rank is then first Betti number of the core.
Conjugacy of a cyclic word into the subgroup is a closed-path test at any
vertex of the core graph.
"""

from __future__ import annotations

from typing import Iterable

from .words import inverse


class _DSU:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        p = self.parent.setdefault(x, x)
        if p != x:
            self.parent[x] = p = self.find(p)
        return p

    def union(self, x: int, y: int) -> int:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx
        return rx


class CoreGraph:
    """Folded labeled graph; ``edges[(v, x)] = w`` for lowercase x, both ways."""

    def __init__(self, words: Iterable[str]):
        edges: list[tuple[int, str, int]] = []
        nxt = 1
        for w in words:
            if not w:
                continue
            prev = 0
            for i, letter in enumerate(w):
                target = 0 if i == len(w) - 1 else nxt
                if i != len(w) - 1:
                    nxt += 1
                if letter.islower():
                    edges.append((prev, letter, target))
                else:
                    edges.append((target, letter.lower(), prev))
                prev = target
        self._fold(edges)

    def _fold(self, edges: list[tuple[int, str, int]]) -> None:
        dsu = _DSU()
        changed = True
        while changed:
            changed = False
            out: dict[tuple[int, str], int] = {}
            inc: dict[tuple[int, str], int] = {}
            for a, x, b in edges:
                a, b = dsu.find(a), dsu.find(b)
                if (a, x) in out and out[(a, x)] != b:
                    dsu.union(out[(a, x)], b)
                    changed = True
                    break
                if (b, x) in inc and inc[(b, x)] != a:
                    dsu.union(inc[(b, x)], a)
                    changed = True
                    break
                out[(a, x)] = b
                inc[(b, x)] = a
        folded = {(dsu.find(a), x, dsu.find(b)) for a, x, b in edges}
        self.base = dsu.find(0)
        self.vertices = {self.base} | {a for a, _, _ in folded} | {b for _, _, b in folded}
        self.edge_set = folded
        self._trim_to_core()

    def _trim_to_core(self) -> None:
        # repeatedly remove valence-1 vertices (base included: cyclic tests
        # and rank only need the core)
        edges = set(self.edge_set)
        while True:
            deg: dict[int, int] = {}
            for a, _, b in edges:
                deg[a] = deg.get(a, 0) + 1
                deg[b] = deg.get(b, 0) + 1
            leaves = {v for v, d in deg.items() if d == 1}
            if not leaves:
                break
            edges = {e for e in edges if e[0] not in leaves and e[2] not in leaves}
        self.core_edges = edges
        self.core_vertices = {a for a, _, _ in edges} | {b for _, _, b in edges}
        self._core_out = {(a, x): b for a, x, b in edges}
        self._core_inc = {(b, x): a for a, x, b in edges}

    def rank(self) -> int:
        v = len(self.core_vertices)
        e = len(self.core_edges)
        if v == 0:
            return 0
        return e - v + 1

    def traces_cycle(self, word: str) -> bool:
        """Whether the word reads a closed path at some core vertex."""
        core_out = self._core_out
        core_inc = self._core_inc
        for start in self.core_vertices:
            v: int | None = start
            for letter in word:
                if letter.islower():
                    v = core_out.get((v, letter))
                else:
                    v = core_inc.get((v, letter.lower()))
                if v is None:
                    break
            if v == start and v is not None:
                return True
        return False


def subgroup_rank(words: Iterable[str]) -> int:
    return CoreGraph(words).rank()


def conjugate_into(words: Iterable[str], cyclic_word: str) -> bool:
    """Whether the cyclic word, up to conjugacy and inversion, lies in <words>."""
    g = CoreGraph(words)
    return g.traces_cycle(cyclic_word) or g.traces_cycle(inverse(cyclic_word))
