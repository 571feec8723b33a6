"""Simple undirected graphs on at most 64 vertices, stored as bitset rows."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from penergy.spectra import Spectrum, SymmetricMatrix

MAX_VERTICES = 64
GRAPH6_MAX = 62


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count must be in 1..{MAX_VERTICES}")
        adj = tuple(int(r) for r in self.adj)
        if len(adj) != self.n:
            raise ValueError("need one adjacency row per vertex")
        full = (1 << self.n) - 1
        for i, row in enumerate(adj):
            if row & ~full or row >> i & 1:
                raise ValueError(f"bad adjacency row {i}")
            r = row
            while r:
                j = (r & -r).bit_length() - 1
                if not adj[j] >> i & 1:
                    raise ValueError(f"adjacency not symmetric at ({i}, {j})")
                r &= r - 1
        object.__setattr__(self, "adj", adj)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.adj[i] >> j & 1]

    @property
    def m(self) -> int:
        return sum(self.degrees()) // 2

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adj[v])

    def __str__(self):
        return graph6_encode(self)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


FAMILY_KINDS = ("path", "cycle", "complete", "star", "edgeless")


def family(kind: str, n: int) -> Graph:
    """Named graph on ``n`` vertices. ``star`` is ``K_{1,n-1}`` centred at 0."""
    if kind not in FAMILY_KINDS:
        raise ValueError(f"unknown family {kind!r}")
    if n < 1 or (kind == "cycle" and n < 3):
        raise ValueError(f"invalid order {n} for {kind}")
    if kind == "path":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "cycle":
        edges = [(i, (i + 1) % n) for i in range(n)]
    elif kind == "complete":
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elif kind == "star":
        edges = [(0, i) for i in range(1, n)]
    else:
        edges = []
    return Graph.from_edges(n, edges)


_FAMILY_CODES = {"P": "path", "C": "cycle", "K": "complete", "S": "star", "E": "edgeless"}


def parse_family(spec: str) -> Graph:
    """Mini-language: ``P7``, ``C12``, ``K5``, ``S4`` (star with 4 leaves), ``E3``."""
    match = re.fullmatch(r"\s*([PCKSE])(\d+)\s*", spec)
    if not match:
        raise ValueError(f"bad family spec {spec!r}")
    code, num = match.group(1), int(match.group(2))
    if code == "S":
        num += 1
    return family(_FAMILY_CODES[code], num)


def closed_form_spectrum(kind: str, n: int) -> Spectrum:
    if kind == "path":
        vals = [2 * math.cos(k * math.pi / (n + 1)) for k in range(1, n + 1)]
    elif kind == "cycle":
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        vals = [2 * math.cos(2 * math.pi * k / n) for k in range(n)]
    elif kind == "complete":
        vals = [n - 1.0] + [-1.0] * (n - 1)
    elif kind == "star":
        leaves = n - 1
        r = math.sqrt(leaves)
        vals = [r, -r] + [0.0] * (leaves - 1) if leaves else [0.0]
    else:
        raise ValueError(f"no closed form for {kind!r}")
    return Spectrum.from_values(vals, scale=float(max(abs(v) for v in vals)) if vals else 0.0)


def adjacency_array(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for i, row in enumerate(g.adj):
        for j in _bits(row):
            a[i, j] = 1.0
    return a


def adjacency(g: Graph) -> SymmetricMatrix:
    return SymmetricMatrix(adjacency_array(g))


def family_matrix(kind: str, n: int) -> SymmetricMatrix:
    """Adjacency matrix of a named family, built densely so ``n`` may exceed the bitset cap."""
    if kind not in FAMILY_KINDS:
        raise ValueError(f"unknown family {kind!r}")
    if n < 1 or (kind == "cycle" and n < 3):
        raise ValueError(f"invalid order {n} for {kind}")
    a = np.zeros((n, n))
    idx = np.arange(n - 1)
    if kind in ("path", "cycle"):
        a[idx, idx + 1] = a[idx + 1, idx] = 1.0
        if kind == "cycle":
            a[0, n - 1] = a[n - 1, 0] = 1.0
    elif kind == "complete":
        a[:] = 1.0
        np.fill_diagonal(a, 0.0)
    elif kind == "star":
        a[0, 1:] = a[1:, 0] = 1.0
    return SymmetricMatrix(a)


def components(g: Graph, within: int | None = None) -> list[int]:
    """Connected components (as bitmasks) of the subgraph induced on ``within``."""
    rest = g.full_mask if within is None else within
    comps = []
    while rest:
        seed = rest & -rest
        comp = frontier = seed
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            new = g.adj[v] & rest & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    return comps


def is_connected(g: Graph, within: int | None = None) -> bool:
    return len(components(g, within)) <= 1


def is_clique(g: Graph, mask: int) -> bool:
    for v in _bits(mask):
        if (g.adj[v] | 1 << v) & mask != mask:
            return False
    return True


def is_disjoint_union_of_cliques(g: Graph, within: int | None = None) -> bool:
    return all(is_clique(g, c) for c in components(g, within))


def clique_deletion_vertices(g: Graph) -> dict[int, int]:
    """Vertices ``v`` with ``G - v`` a disjoint union of cliques, mapped to the clique count."""
    out = {}
    for v in range(g.n):
        rest = g.full_mask & ~(1 << v)
        if not rest:
            out[v] = 0
            continue
        comps = components(g, rest)
        if all(is_clique(g, c) for c in comps):
            out[v] = len(comps)
    return out


@dataclass(frozen=True)
class Structure:
    connected: bool
    complete: bool
    dominating_vertices: frozenset[int]
    is_disjoint_union_of_cliques: bool
    components: tuple[tuple[int, ...], ...] = field(default=())


def structural_predicates(g: Graph) -> Structure:
    comps = components(g)
    degs = g.degrees()
    dom = frozenset(v for v, d in enumerate(degs) if d == g.n - 1)
    return Structure(
        connected=len(comps) == 1,
        complete=len(dom) == g.n,
        dominating_vertices=dom,
        is_disjoint_union_of_cliques=all(is_clique(g, c) for c in comps),
        components=tuple(tuple(_bits(c)) for c in comps),
    )


def is_complete(g: Graph) -> bool:
    return all(r.bit_count() == g.n - 1 for r in g.adj)


def has_dominating_vertex(g: Graph) -> bool:
    return any(r.bit_count() == g.n - 1 for r in g.adj)


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    keep = sorted(set(s))
    if not keep:
        raise ValueError("vertex set must be non-empty")
    pos = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        row = 0
        for u in _bits(g.adj[v]):
            if u in pos:
                row |= 1 << pos[u]
        rows.append(row)
    return Graph(len(keep), tuple(rows))


def relabel(g: Graph, order: Sequence[int]) -> Graph:
    """Graph whose vertex ``i`` is vertex ``order[i]`` of ``g``."""
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    rows = []
    for v in order:
        row = 0
        for u in _bits(g.adj[v]):
            row |= 1 << pos[u]
        rows.append(row)
    return Graph(g.n, tuple(rows))


def add_dominating_vertex(g: Graph) -> Graph:
    n = g.n + 1
    new = (1 << g.n) - 1
    rows = [r | 1 << g.n for r in g.adj] + [new]
    return Graph(n, tuple(rows))


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return Graph(g.n, tuple(full & ~r & ~(1 << i) for i, r in enumerate(g.adj)))


def graph6_encode(g: Graph) -> str:
    """Standard graph6 text (no header), size byte plus 6-bit groups of the upper triangle."""
    if g.n > GRAPH6_MAX:
        raise ValueError(f"graph6 single-byte form supports n <= {GRAPH6_MAX}")
    out = [chr(g.n + 63)]
    acc = nbits = 0
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def graph6_decode(text: str) -> Graph:
    text = text.strip()
    if not text:
        raise ValueError("empty graph6 string")
    codes = [ord(ch) - 63 for ch in text]
    if any(not 0 <= c <= 63 for c in codes):
        raise ValueError(f"invalid graph6 character in {text!r}")
    n = codes[0]
    if n > GRAPH6_MAX or n < 1:
        raise ValueError(f"unsupported graph6 size byte in {text!r}")
    nbits = n * (n - 1) // 2
    data = codes[1:]
    if len(data) != (nbits + 5) // 6:
        raise ValueError(f"graph6 length mismatch for n={n}: {text!r}")
    bits = 0
    for c in data:
        bits = bits << 6 | c
    pad = 6 * len(data) - nbits
    if bits & ((1 << pad) - 1):
        raise ValueError("nonzero padding bits in graph6 string")
    bits >>= pad
    rows = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if bits >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(rows))


def read_graph6_lines(text: str) -> list[Graph]:
    return [graph6_decode(ln) for ln in text.splitlines() if ln.strip() and not ln.startswith(">>")]
