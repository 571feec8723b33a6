"""Canonical labeling of small graphs.

Equitable-partition refinement, then a backtracking search over
individualizations.  Among the discrete leaves, the labeling whose
upper-triangle bit string (graph6 column order) is lexicographically
largest wins.  Automorphisms found at equal leaves prune sibling orbits
and let the search jump back to the level where the equivalent path
diverged.
"""

from __future__ import annotations

from typing import Sequence

from penergy.graphs import Graph, graph6_encode, relabel

CANON_MAX = 16


def _mask(cell: Sequence[int]) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of the ordered partition ``cells``."""
    cells = [list(c) for c in cells]
    while True:
        for w in range(len(cells)):
            wmask = _mask(cells[w])
            out = []
            split = False
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                counts = [(adj[v] & wmask).bit_count() for v in cell]
                lo, hi = min(counts), max(counts)
                if lo == hi:
                    out.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v, c in zip(cell, counts):
                    groups.setdefault(c, []).append(v)
                out.extend(groups[c] for c in sorted(groups))
                split = True
            if split:
                cells = out
                break
        else:
            return cells


def leaf_code(adj: Sequence[int], lab: Sequence[int]) -> int:
    code = 0
    for j in range(1, len(lab)):
        row = adj[lab[j]]
        for i in range(j):
            code = code << 1 | (row >> lab[i] & 1)
    return code


class _Search:
    def __init__(self, adj: Sequence[int]):
        self.adj = adj
        self.n = len(adj)
        self.first = None   # (code, lab, path)
        self.best = None
        self.automorphisms: list[list[int]] = []

    def _aut(self, lab_a, lab_b) -> list[int]:
        gamma = [0] * self.n
        for a, b in zip(lab_a, lab_b):
            gamma[a] = b
        return gamma

    @staticmethod
    def _diverge(p: list[int], q: list[int]) -> int:
        for i, (a, b) in enumerate(zip(p, q)):
            if a != b:
                return i
        return min(len(p), len(q))

    def _leaf(self, lab: list[int], path: list[int]):
        code = leaf_code(self.adj, lab)
        if self.first is None:
            self.first = self.best = (code, lab, path)
            return None
        for ref in (self.first, self.best):
            if code == ref[0]:
                self.automorphisms.append(self._aut(ref[1], lab))
                return self._diverge(ref[2], path)
        if code > self.best[0]:
            self.best = (code, lab, path)
        return None

    def _orbit_roots(self, path: list[int]) -> list[int]:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.automorphisms:
            if all(g[u] == u for u in path):
                for x, y in enumerate(g):
                    rx, ry = find(x), find(y)
                    if rx != ry:
                        parent[max(rx, ry)] = min(rx, ry)
        return [find(x) for x in range(self.n)]

    def run(self, cells: list[list[int]], path: list[int]):
        cells = refine(self.adj, cells)
        if len(cells) == self.n:
            return self._leaf([c[0] for c in cells], path)
        size = min(len(c) for c in cells if len(c) > 1)
        t = next(i for i, c in enumerate(cells) if len(c) == size)
        target = sorted(cells[t])
        tried_roots: set[int] = set()
        depth = len(path)
        for v in target:
            if tried_roots:
                roots = self._orbit_roots(path)
                if roots[v] in {roots[u] for u in tried_roots}:
                    continue
            rest = [u for u in target if u != v]
            child = cells[:t] + [[v], rest] + cells[t + 1:]
            back = self.run(child, path + [v])
            tried_roots.add(v)
            if back is not None and back < depth:
                return back
        return None


def canonical_labeling(g: Graph, colors: Sequence[Sequence[int]] | None = None) -> tuple[list[int], int]:
    """Canonical order ``lab`` (``lab[i]`` is the vertex placed at position ``i``) and its code.

    ``colors`` is an optional ordered vertex partition that isomorphisms
    must respect.
    """
    if g.n > CANON_MAX:
        raise ValueError(f"canonical labeling supports n <= {CANON_MAX}")
    cells = [sorted(c) for c in colors] if colors else [list(range(g.n))]
    search = _Search(g.adj)
    search.run(cells, [])
    code, lab, _ = search.best
    return lab, code


def canonical_graph(g: Graph) -> Graph:
    lab, _ = canonical_labeling(g)
    return relabel(g, lab)


def canonical_form(g: Graph) -> bytes:
    """Byte string equal for two graphs exactly when they are isomorphic."""
    return graph6_encode(canonical_graph(g)).encode("ascii")


def automorphism_generators(g: Graph) -> list[list[int]]:
    search = _Search(g.adj)
    search.run([list(range(g.n))], [])
    return search.automorphisms
