"""Isomorphism-free generation of graphs by canonical augmentation.

Each graph on ``n`` vertices is produced from exactly one parent class on
``n - 1`` vertices: the class of ``G - m(G)``, where ``m(G)`` is the
canonical deletion vertex.  ``m(G)`` is the eligible vertex (non-cut when
generating connected graphs) with the largest degree invariant, ties
broken by the earliest position in the canonical labeling.  Children of
one parent are deduplicated locally, so parents can be expanded
independently.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable

from penergy.canon import canonical_graph, canonical_labeling
from penergy.graphs import Graph, graph6_decode, graph6_encode, induced_subgraph, relabel

MAX_ENUM_N = 10


def _is_connected_without(adj: list[int], n: int, w: int) -> bool:
    rest = ((1 << n) - 1) & ~(1 << w)
    if not rest:
        return True
    seen = frontier = rest & -rest
    while frontier:
        v = (frontier & -frontier).bit_length() - 1
        frontier &= frontier - 1
        new = adj[v] & rest & ~seen
        seen |= new
        frontier |= new
    return seen == rest


def _invariant(adj: list[int], degs: list[int], v: int) -> tuple:
    row = adj[v]
    nbr = []
    while row:
        low = row & -row
        nbr.append(degs[low.bit_length() - 1])
        row ^= low
    nbr.sort(reverse=True)
    return (degs[v], tuple(nbr))


def expand(parent: Graph, connected: bool = True) -> list[Graph]:
    """Canonical children of the canonical representative ``parent``."""
    n = parent.n + 1
    v = n - 1
    parent_g6 = graph6_encode(parent)
    seen: set[str] = set()
    out: list[Graph] = []
    start = 1 if connected else 0
    for s in range(start, 1 << parent.n):
        adj = [r | ((s >> i & 1) << v) for i, r in enumerate(parent.adj)] + [s]
        degs = [r.bit_count() for r in adj]
        dv = degs[v]
        eligible = (lambda w: _is_connected_without(adj, n, w)) if connected else (lambda w: True)
        if any(degs[w] > dv and eligible(w) for w in range(v)):
            continue
        fv = _invariant(adj, degs, v)
        ties = []
        reject = False
        for w in range(v):
            if degs[w] != dv:
                continue
            fw = _invariant(adj, degs, w)
            if fw < fv:
                continue
            if not eligible(w):
                continue
            if fw > fv:
                reject = True
                break
            ties.append(w)
        if reject:
            continue
        g = Graph(n, tuple(adj))
        lab, _ = canonical_labeling(g)
        if ties:
            pos = {u: i for i, u in enumerate(lab)}
            m = min([v, *ties], key=pos.__getitem__)
            if m != v:
                reduced = induced_subgraph(g, [u for u in range(n) if u != m])
                if graph6_encode(canonical_graph(reduced)) != parent_g6:
                    continue
        child = relabel(g, lab)
        key = graph6_encode(child)
        if key in seen:
            continue
        seen.add(key)
        out.append(child)
    return out


def _expand_g6(args: tuple[str, bool]) -> list[str]:
    g6, connected = args
    return [graph6_encode(c) for c in expand(graph6_decode(g6), connected)]


_LEVELS: dict[tuple[int, bool], tuple[str, ...]] = {}


def graph6_level(n: int, connected: bool = True, workers: int = 1) -> tuple[str, ...]:
    """Sorted canonical graph6 strings of all (connected) graphs on ``n`` vertices.

    Levels are cached per process.  With ``workers > 1`` the parents of a
    level are expanded in a process pool; the sorted merge makes the result
    independent of the worker count.
    """
    if not 1 <= n <= MAX_ENUM_N:
        raise ValueError(f"enumeration supports 1 <= n <= {MAX_ENUM_N}")
    key = (n, connected)
    if key in _LEVELS:
        return _LEVELS[key]
    if n == 1:
        level = ("@",)
    else:
        parents = graph6_level(n - 1, connected, workers)
        jobs = [(p, connected) for p in parents]
        if workers > 1 and len(jobs) > 64:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_expand_g6, jobs, chunksize=16))
        else:
            parts = [_expand_g6(j) for j in jobs]
        level = tuple(sorted(c for part in parts for c in part))
    _LEVELS[key] = level
    return level


def connected_graphs(n: int, workers: int = 1) -> list[Graph]:
    return [graph6_decode(s) for s in graph6_level(n, True, workers)]


def all_graphs(n: int, workers: int = 1) -> list[Graph]:
    return [graph6_decode(s) for s in graph6_level(n, False, workers)]


def enumerate_connected(n: int, sink: Callable[[Graph], object] | None = None, workers: int = 1) -> int:
    """Stream one representative per isomorphism class of connected ``n``-vertex graphs."""
    level = graph6_level(n, True, workers)
    if sink is not None:
        for s in level:
            sink(graph6_decode(s))
    return len(level)


def dominating_vertex_graphs(n: int) -> list[Graph]:
    """Non-complete ``n``-vertex graphs with a dominating vertex.

    Built by adding a dominating vertex to every ``(n-1)``-vertex graph and
    deduplicating by canonical form.
    """
    if n < 2:
        return []
    out: dict[str, Graph] = {}
    for h in all_graphs(n - 1):
        if h.m == h.n * (h.n - 1) // 2:
            continue
        rows = [r | 1 << h.n for r in h.adj] + [(1 << h.n) - 1]
        g = canonical_graph(Graph(n, tuple(rows)))
        out.setdefault(graph6_encode(g), g)
    return [out[k] for k in sorted(out)]


def iter_graphs(ns: Iterable[int], connected: bool = True) -> Iterable[Graph]:
    for n in ns:
        for s in graph6_level(n, connected):
            yield graph6_decode(s)
