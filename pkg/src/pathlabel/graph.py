"""Simple undirected graphs on dense integer vertices, plus the structural
predicates the path-cover formulas are conditioned on.

Vertices are ``0..n-1``.  Adjacency lists are kept sorted so that two graphs
with the same edge set compare equal.  Vine lengths are counted in vertices
throughout the package.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import GraphParseError, ShapeError

__all__ = [
    "Graph",
    "GraphStats",
    "Vine",
    "parse_edge_list",
    "format_edge_list",
    "complement",
    "stats",
    "classify",
    "vines",
    "to_graph6",
    "parse_graph6",
    "looks_like_graph6",
    "parse_graph",
    "to_dot",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "complete_bipartite",
    "spider",
    "disjoint_union",
]


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        for u, nbrs in enumerate(self.adj):
            prev = -1
            for v in nbrs:
                if v <= prev:
                    raise ValueError(f"neighbors of {u} not strictly ascending")
                if v == u:
                    raise ValueError(f"self-loop at {u}")
                if not 0 <= v < self.n:
                    raise ValueError(f"neighbor {v} of {u} out of range")
                prev = v
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u not in self.nbr_sets[v]:
                    raise ValueError(f"asymmetric adjacency {u}-{v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        lists: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} outside 0..{n - 1}")
            lists[u].add(v)
            lists[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in lists))

    @cached_property
    def nbr_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.nbr_sets[u]

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return tuple((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    def is_heavy(self, v: int) -> bool:
        return len(self.adj[v]) > 2

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def is_connected(self) -> bool:
        return len(self.components) == 1

    def is_tree(self) -> bool:
        return self.m == self.n - 1 and self.is_connected()

    def is_forest(self) -> bool:
        return self.m == self.n - len(self.components)

    def subgraph(self, vertices: Sequence[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, reindexed; returns it with the new→old vertex map."""
        old = sorted(vertices)
        index = {v: i for i, v in enumerate(old)}
        adj = tuple(
            tuple(sorted(index[w] for w in self.adj[v] if w in index)) for v in old
        )
        return Graph(len(old), adj), old

    def bfs_distances(self, source: int) -> list[int]:
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for y in self.adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    leaves: int
    heavy_edges: int
    heavy_vertices: tuple[int, ...]
    light_vertices: tuple[int, ...]


@dataclass(frozen=True)
class Vine:
    vertices: tuple[int, ...]  # leaf first, inner end last
    center: int | None = None

    def __len__(self) -> int:
        return len(self.vertices)


# -- construction helpers ---------------------------------------------------

def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with parts ``0..a-1`` and ``a..a+b-1``."""
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def spider(arms: Sequence[int]) -> Graph:
    """Vertex 0 joined to paths with the given vertex counts, arm by arm."""
    edges = []
    nxt = 1
    for length in arms:
        if length < 1:
            raise ValueError("arm lengths must be positive")
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph.from_edges(offset, edges)


# -- edge-list text ---------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``u v`` lines; an optional leading ``n <count>`` line fixes the vertex count.

    Blank lines and ``#`` comments are ignored.
    """
    declared = None
    seen: set[tuple[int, int]] = set()
    edges = []
    first = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if first and tokens[0] == "n":
            first = False
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise GraphParseError(f"malformed vertex-count line {raw!r}", lineno)
            declared = int(tokens[1])
            if declared < 1:
                raise GraphParseError("vertex count must be positive", lineno)
            continue
        first = False
        if len(tokens) != 2 or not all(t.isdigit() for t in tokens):
            raise GraphParseError(f"expected 'u v', got {raw!r}", lineno)
        u, v = int(tokens[0]), int(tokens[1])
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError(f"duplicate edge {key[0]}-{key[1]}", lineno)
        seen.add(key)
        edges.append(key)
    top = max((v for e in edges for v in e), default=-1) + 1
    if declared is None:
        if top == 0:
            raise GraphParseError("empty input: no edges and no vertex count")
        n = top
    else:
        if top > declared:
            raise GraphParseError(f"vertex {top - 1} exceeds declared count {declared}")
        n = declared
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


# -- graph6 -----------------------------------------------------------------

_G6_CHARS = re.compile(r"^[\x3f-\x7e]+$")


def to_graph6(g: Graph) -> str:
    if g.n > 62:
        raise ValueError("graph6 short form supports at most 62 vertices")
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s or not _G6_CHARS.match(s):
        raise GraphParseError(f"not a graph6 string: {text!r}")
    n = ord(s[0]) - 63
    if n > 62:
        raise GraphParseError("graph6 long form (n > 62) is not supported")
    if n < 1:
        raise GraphParseError("graph6 with zero vertices is not supported")
    nbits = n * (n - 1) // 2
    if len(s) - 1 != (nbits + 5) // 6:
        raise GraphParseError(f"graph6 length mismatch for n={n}")
    bits = []
    for ch in s[1:]:
        val = ord(ch) - 63
        bits.extend((val >> (5 - i)) & 1 for i in range(6))
    if any(bits[nbits:]):
        raise GraphParseError("nonzero padding bits in graph6 string")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def looks_like_graph6(text: str) -> bool:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        return True
    if "\n" in s or not s or not _G6_CHARS.match(s):
        return False
    n = ord(s[0]) - 63
    return 1 <= n <= 62 and len(s) - 1 == (n * (n - 1) // 2 + 5) // 6


def parse_graph(text: str) -> Graph:
    """Auto-detect graph6 vs edge-list input."""
    if looks_like_graph6(text):
        return parse_graph6(text)
    return parse_edge_list(text)


def to_dot(g: Graph, labels: Sequence[int] | None = None,
           paths: Sequence[Sequence[int]] | None = None) -> str:
    """DOT text; covering edges are drawn bold, vertex labels shown as ``v:label``."""
    bold = set()
    for p in paths or ():
        for a, b in zip(p, p[1:]):
            bold.add((min(a, b), max(a, b)))
    lines = ["graph G {"]
    for v in range(g.n):
        name = f"{v}:{labels[v]}" if labels is not None else str(v)
        lines.append(f'  {v} [label="{name}"];')
    for u, v in g.edges:
        attr = " [style=bold, penwidth=3]" if (u, v) in bold else ""
        lines.append(f"  {u} -- {v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- structure ----------------------------------------------------------------

def complement(g: Graph) -> Graph:
    full = frozenset(range(g.n))
    adj = tuple(tuple(sorted(full - g.nbr_sets[v] - {v})) for v in range(g.n))
    return Graph(g.n, adj)


def stats(g: Graph) -> GraphStats:
    deg = g.degrees
    heavy = tuple(v for v in range(g.n) if deg[v] > 2)
    light = tuple(v for v in range(g.n) if deg[v] <= 2)
    h = sum(1 for u, v in g.edges if deg[u] > 2 and deg[v] > 2)
    return GraphStats(
        n=g.n,
        m=g.m,
        leaves=sum(1 for d in deg if d == 1),
        heavy_edges=h,
        heavy_vertices=heavy,
        light_vertices=light,
    )


def _vine_from(g: Graph, leaf: int) -> Vine:
    deg = g.degrees
    verts = [leaf]
    prev, cur = -1, leaf
    while True:
        nxt = [w for w in g.adj[cur] if w != prev]
        if not nxt:
            raise ShapeError("component is a path; its vines have no center")
        w = nxt[0]
        if deg[w] > 2:
            return Vine(tuple(verts), w)
        if deg[w] == 1:
            raise ShapeError("component is a path; its vines have no center")
        verts.append(w)
        prev, cur = cur, w


def vines(g: Graph) -> list[Vine]:
    """One vine per leaf, ordered by leaf index."""
    shape = classify(g)
    if shape in ("path", "cycle"):
        raise ShapeError(f"a {shape} has no vines with a center")
    return [_vine_from(g, v) for v in range(g.n) if g.degree(v) == 1]


def classify(g: Graph) -> str:
    deg = g.degrees
    connected = g.is_connected()
    if connected and g.m == g.n - 1:
        if max(deg, default=0) <= 2:
            return "path"
        heavy = [v for v in range(g.n) if deg[v] > 2]
        if len(heavy) == 1:
            if deg[heavy[0]] == g.n - 1:
                return "star"
            if len({len(_vine_from(g, v).vertices) for v in range(g.n) if deg[v] == 1}) == 1:
                return "generalized_star"
        return "tree"
    if connected and g.n >= 3 and all(d == 2 for d in deg):
        return "cycle"
    if g.is_forest():
        return "forest"
    return "connected_other" if connected else "disconnected_other"
