"""Minimum path coverings of trees and tree-like graphs.

The tree routine is the classical leaf-pruning reduction: repeatedly pick a
vertex ``v`` whose neighbours are all leaves except one (``u``).  With a
single leaf neighbour the leaf can be dropped without changing the cover
number; with ``k >= 2`` leaf neighbours ``v`` and its leaves are cut off and
the cover number grows by ``k - 1``.  The reduction trace is replayed
backwards to build an explicit witness.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import ConditionError, ContractError, ShapeError
from .graph import Graph, classify, stats

__all__ = [
    "PathCovering",
    "Theorem7Data",
    "path_sequence",
    "tree_path_cover",
    "formula_bounds",
    "theorem7_path_cover",
    "is_2_sparse",
    "is_general_2_sparse",
    "theorem12_path_cover",
    "theorem12_cover",
    "expand_tree",
    "expansion_blocks",
    "theorem13_path_cover",
    "max_forest_matching",
]


@dataclass(frozen=True)
class PathCovering:
    paths: tuple[tuple[int, ...], ...]
    host_n: int

    @classmethod
    def from_paths(cls, paths, host_n: int) -> "PathCovering":
        return cls(tuple(tuple(p) for p in paths), host_n)

    def __len__(self) -> int:
        return len(self.paths)

    @property
    def sequence(self) -> tuple[int, ...]:
        return path_sequence(self)

    def canonical(self) -> "PathCovering":
        """Each path read from its lower endpoint; paths sorted by (size, vertices)."""
        oriented = [p if p[0] <= p[-1] else p[::-1] for p in self.paths]
        oriented.sort(key=lambda p: (len(p), p))
        return PathCovering(tuple(oriented), self.host_n)

    def validate(self, g: Graph) -> None:
        """Raise ContractError unless this is a path covering of ``g``."""
        if self.host_n != g.n:
            raise ContractError(f"covering is for {self.host_n} vertices, graph has {g.n}")
        seen = [False] * g.n
        for p in self.paths:
            if not p:
                raise ContractError("empty path in covering")
            for x in p:
                if not 0 <= x < g.n:
                    raise ContractError(f"vertex {x} out of range")
                if seen[x]:
                    raise ContractError(f"vertex {x} covered twice")
                seen[x] = True
            for a, b in zip(p, p[1:]):
                if not g.has_edge(a, b):
                    raise ContractError(f"consecutive path vertices {a},{b} are not adjacent")
        missing = [x for x in range(g.n) if not seen[x]]
        if missing:
            raise ContractError(f"vertex {missing[0]} not covered")

    def is_valid_for(self, g: Graph) -> bool:
        try:
            self.validate(g)
        except ContractError:
            return False
        return True


@dataclass(frozen=True)
class Theorem7Data:
    s: int
    t: int
    l: int
    h: int


def path_sequence(cover: PathCovering) -> tuple[int, ...]:
    return tuple(sorted(len(p) for p in cover.paths))


def _require_tree(t: Graph) -> None:
    if not t.is_tree():
        raise ShapeError("input is not a tree")


# -- tree reduction -------------------------------------------------------------

def tree_path_cover(t: Graph) -> tuple[int, PathCovering]:
    """Exact P(T) with a witness, in time linear in the number of vertices."""
    _require_tree(t)
    n = t.n
    if n == 1:
        return 1, PathCovering(((0,),), 1)
    adj = t.adj
    deg = list(t.degrees)
    removed = [False] * n
    nl = [sum(1 for w in adj[v] if deg[w] >= 2) for v in range(n)]
    nonleaf = sum(1 for d in deg if d >= 2)
    alive = n
    queue = deque(v for v in range(n) if deg[v] >= 2 and nl[v] == 1)
    trace = []

    while alive > 2 and nonleaf > 1:
        v = queue.popleft()
        if removed[v] or deg[v] < 2 or nl[v] != 1:
            continue
        leaves = []
        u = -1
        for w in adj[v]:
            if removed[w]:
                continue
            if deg[w] == 1:
                leaves.append(w)
            else:
                u = w
        if len(leaves) == 1:
            z = leaves[0]
            removed[z] = True
            alive -= 1
            deg[v] = 1
            nonleaf -= 1
            nl[u] -= 1
            if nl[u] == 1:
                queue.append(u)
            trace.append((v, (z,)))
        else:
            removed[v] = True
            for z in leaves:
                removed[z] = True
            alive -= len(leaves) + 1
            nonleaf -= 1
            deg[u] -= 1
            nl[u] -= 1
            if deg[u] == 1:
                nonleaf -= 1
                w = next(x for x in adj[u] if not removed[x])
                nl[w] -= 1
                if deg[w] >= 2 and nl[w] == 1:
                    queue.append(w)
            elif nl[u] == 1:
                queue.append(u)
            trace.append((v, tuple(leaves)))

    rest = [x for x in range(n) if not removed[x]]
    if len(rest) <= 2:
        paths = [deque(rest)]
    else:
        center = next(x for x in rest if deg[x] >= 2)
        leaves = [x for x in rest if x != center]
        paths = [deque([leaves[0], center, leaves[1]])]
        paths.extend(deque([z]) for z in leaves[2:])
    where = {}
    for i, p in enumerate(paths):
        for x in p:
            where[x] = i

    for v, leaves in reversed(trace):
        if len(leaves) == 1:
            p = paths[where[v]]
            z = leaves[0]
            if p[-1] == v:
                p.append(z)
            else:
                p.appendleft(z)
            where[z] = where[v]
        else:
            z1, z2, *others = leaves
            where[v] = where[z1] = where[z2] = len(paths)
            paths.append(deque([z1, v, z2]))
            for z in others:
                where[z] = len(paths)
                paths.append(deque([z]))

    cover = PathCovering(tuple(tuple(p) for p in paths), n)
    return len(cover.paths), cover


def formula_bounds(t: Graph) -> tuple[int, int]:
    """(l - h - 1, l - 1): lower and upper bound on P(T) for a tree with n >= 2."""
    _require_tree(t)
    if t.n < 2:
        raise ShapeError("bounds need a tree with at least two vertices")
    st = stats(t)
    return st.leaves - st.heavy_edges - 1, st.leaves - 1


# -- closed forms ---------------------------------------------------------------

def max_forest_matching(g: Graph, vertices) -> int:
    """Maximum matching size of the forest induced by ``vertices`` (leaf stripping)."""
    inside = set(vertices)
    matched: set[int] = set()
    seen: set[int] = set()
    size = 0
    for root in sorted(inside):
        if root in seen:
            continue
        order = [root]
        parent = {root: -1}
        seen.add(root)
        i = 0
        while i < len(order):
            x = order[i]
            i += 1
            for y in g.adj[x]:
                if y in inside and y not in seen:
                    seen.add(y)
                    parent[y] = x
                    order.append(y)
        for x in reversed(order):
            p = parent[x]
            if p >= 0 and x not in matched and p not in matched:
                matched.update((x, p))
                size += 1
    return size


def theorem7_path_cover(t: Graph) -> tuple[int, Theorem7Data]:
    """P(T) = l - h + s - t - 1 when every heavy vertex has a light neighbour."""
    _require_tree(t)
    if t.n < 2:
        raise ShapeError("formula needs a tree with at least two vertices")
    deg = t.degrees
    special = []
    for v in range(t.n):
        if deg[v] <= 2:
            continue
        light = sum(1 for w in t.adj[v] if deg[w] <= 2)
        if light == 0:
            raise ConditionError(f"heavy vertex {v} has no light neighbor", witness=v)
        if light == 1:
            special.append(v)
    st = stats(t)
    matching = max_forest_matching(t, special)
    data = Theorem7Data(s=len(special), t=matching, l=st.leaves, h=st.heavy_edges)
    return data.l - data.h + data.s - data.t - 1, data


def is_2_sparse(g: Graph) -> bool:
    deg = g.degrees
    return not any(deg[u] > 2 and deg[v] > 2 for u, v in g.edges)


def is_general_2_sparse(g: Graph) -> bool:
    deg = g.degrees
    for v in range(g.n):
        if deg[v] > 2 and sum(1 for w in g.adj[v] if deg[w] <= 2) < 2:
            return False
    return True


def _check_theorem12(g: Graph) -> None:
    if not g.is_connected():
        raise ConditionError("graph is disconnected")
    if g.m < 1:
        raise ConditionError("graph has no edges")
    if classify(g) == "cycle":
        raise ConditionError("graph is a cycle")
    deg = g.degrees
    for v in range(g.n):
        if deg[v] > 2 and sum(1 for w in g.adj[v] if deg[w] <= 2) < 3:
            raise ConditionError(
                f"heavy vertex {v} has fewer than three light neighbors", witness=v)


def theorem12_path_cover(g: Graph) -> int:
    """P(G) = l + m - h - n for connected non-cycles whose heavy vertices see >= 3 light ones."""
    _check_theorem12(g)
    st = stats(g)
    return st.leaves + st.m - st.heavy_edges - st.n


def theorem12_cover(g: Graph) -> PathCovering:
    """A minimum covering for a graph meeting the hypothesis of theorem12_path_cover.

    Heavy-heavy edges are dropped, every light-light edge is kept and each heavy
    vertex keeps two edges to light neighbours; the pairs are chosen by a
    backtracking search that keeps the kept subgraph acyclic.
    """
    target = theorem12_path_cover(g)
    deg = g.degrees
    parent = list(range(g.n))
    size = [1] * g.n

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def union(a, b):
        a, b = find(a), find(b)
        if size[a] < size[b]:
            a, b = b, a
        parent[b] = a
        size[a] += size[b]
        return b

    def undo(b):
        a = parent[b]
        parent[b] = b
        size[a] -= size[b]

    kept = []
    for u, v in g.edges:
        if deg[u] <= 2 and deg[v] <= 2:
            union(u, v)
            kept.append((u, v))
    heavy = [v for v in range(g.n) if deg[v] > 2]
    options = [[w for w in g.adj[v] if deg[w] <= 2] for v in heavy]
    chosen: list[tuple[int, int]] = []

    def place(i: int) -> bool:
        if i == len(heavy):
            return True
        v = heavy[i]
        lights = options[i]
        for a in range(len(lights)):
            if find(lights[a]) == find(v):
                continue
            ra = union(v, lights[a])
            for b in range(a + 1, len(lights)):
                if find(lights[b]) == find(v):
                    continue
                rb = union(v, lights[b])
                chosen.append((v, lights[a]))
                chosen.append((v, lights[b]))
                if place(i + 1):
                    return True
                chosen.pop()
                chosen.pop()
                undo(rb)
            undo(ra)
        return False

    if not place(0):
        raise ConditionError("no acyclic two-edge selection exists at the heavy vertices")
    cover = _forest_to_cover(g.n, kept + chosen)
    if len(cover.paths) != target:
        raise ContractError("constructed covering does not attain the closed form")
    return cover


def _forest_to_cover(n: int, edges) -> PathCovering:
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    seen = [False] * n
    paths = []
    for s in range(n):
        if seen[s] or len(nbrs[s]) > 1:
            continue
        path = [s]
        seen[s] = True
        prev, cur = -1, s
        while True:
            nxt = [w for w in nbrs[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            seen[cur] = True
            path.append(cur)
        paths.append(tuple(path))
    if not all(seen):
        raise ContractError("edge set contains a cycle")
    return PathCovering(tuple(paths), n)


# -- block-graph expansion --------------------------------------------------------

def _orders_by_edge(t: Graph, block_order) -> dict[tuple[int, int], int]:
    if isinstance(block_order, Mapping):
        orders = {}
        for (a, b), q in block_order.items():
            orders[(min(a, b), max(a, b))] = q
        missing = [e for e in t.edges if e not in orders]
        if missing:
            raise ConditionError(f"no block order given for edge {missing[0]}", witness=missing[0])
    else:
        seq = list(block_order)
        if len(seq) != len(t.edges):
            raise ConditionError("one block order per tree edge is required")
        orders = dict(zip(t.edges, seq))
    for e, q in orders.items():
        if q < 2:
            raise ConditionError(f"block order {q} < 2 on edge {e}", witness=e)
    return orders


def expansion_blocks(t: Graph, block_order) -> dict[tuple[int, int], list[int]]:
    """Fresh vertices per tree edge, numbered from ``t.n`` in edge order."""
    orders = _orders_by_edge(t, block_order)
    fresh = {}
    nxt = t.n
    for e in t.edges:
        q = orders[e]
        fresh[e] = list(range(nxt, nxt + q - 2))
        nxt += q - 2
    return fresh


def expand_tree(t: Graph, block_order: Sequence[int] | Mapping) -> Graph:
    """Replace each tree edge by a clique of the given order (>= 2)."""
    _require_tree(t)
    if t.n < 2:
        raise ShapeError("expansion needs a tree with at least two vertices")
    fresh = expansion_blocks(t, block_order)
    total = t.n + sum(len(f) for f in fresh.values())
    edges = []
    for (u, v), extra in fresh.items():
        block = [u, v, *extra]
        for i in range(len(block)):
            for j in range(i + 1, len(block)):
                edges.append((block[i], block[j]))
    return Graph.from_edges(total, edges)


def theorem13_path_cover(t: Graph, block_order) -> tuple[int, PathCovering]:
    """P(G) = l - 1 for every expansion G of a 2-sparse tree, with a threaded witness."""
    _require_tree(t)
    if t.n < 2:
        raise ShapeError("expansion needs a tree with at least two vertices")
    if not is_2_sparse(t):
        u, v = next((a, b) for a, b in t.edges if t.degree(a) > 2 and t.degree(b) > 2)
        raise ConditionError(f"tree is not 2-sparse: heavy edge {u}-{v}", witness=(u, v))
    fresh = expansion_blocks(t, block_order)
    g = expand_tree(t, block_order)
    _, base = tree_path_cover(t)
    paths = [deque(p) for p in base.paths]
    where = {x: i for i, p in enumerate(base.paths) for x in p}
    used = set()
    for p in base.paths:
        for a, b in zip(p, p[1:]):
            used.add((min(a, b), max(a, b)))

    for (u, v), extra in fresh.items():
        if not extra:
            continue
        if (u, v) in used:
            p = paths[where[u]]
            i = p.index(u)
            # insert the fresh vertices between u and v, in path direction
            if i + 1 < len(p) and p[i + 1] == v:
                for k, x in enumerate(extra):
                    p.insert(i + 1 + k, x)
            else:
                for k, x in enumerate(extra):
                    p.insert(i + k, x)
        else:
            light = u if t.degree(u) <= 2 else v
            p = paths[where[light]]
            if p[-1] == light:
                p.extend(extra)
            elif p[0] == light:
                p.extendleft(extra)
            else:
                raise ContractError(f"light endpoint {light} is interior to its path")
        for x in extra:
            where[x] = where[u] if (u, v) in used else where[light]

    cover = PathCovering(tuple(tuple(p) for p in paths), g.n)
    return len(cover.paths), cover
