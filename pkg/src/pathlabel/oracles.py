"""Brute-force ground truth for small graphs.

Nothing in here uses the closed forms or the tree reduction: path covers come
from an exhaustive search over linear forests, L(2,1) spans and hole counts
from an exhaustive sweep over label values.  Budgets are hard limits; when a
search would exceed one a ResourceError is raised instead of a guess.
"""
from __future__ import annotations

import heapq
import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import ResourceError
from .graph import Graph
from .pathcover import PathCovering

__all__ = [
    "OracleBudget",
    "OracleCover",
    "oracle_path_cover",
    "oracle_lambda",
    "oracle_rho",
    "oracle_lambda_rho",
    "prufer_decode",
    "prufer_encode",
    "enumerate_trees",
    "random_tree",
    "count_trees",
]


@dataclass(frozen=True)
class OracleBudget:
    """Hard limits for the exhaustive searches.

    ``max_n`` bounds the vertex count (16 is the default for path covers, pass
    ``OracleBudget.for_labeling()`` to get the 8-vertex default used for the
    labeling searches).  ``time_hint`` is a wall-clock limit in seconds.
    """

    max_n: int = 16
    max_coverings: int = 10_000
    time_hint: float | None = None
    max_nodes: int = 5_000_000

    @classmethod
    def for_labeling(cls, **kw) -> "OracleBudget":
        kw.setdefault("max_n", 8)
        return cls(**kw)


@dataclass(frozen=True)
class OracleCover:
    P: int
    sequences: tuple[tuple[int, ...], ...]
    coverings: tuple[PathCovering, ...]
    total_optima: int
    truncated: bool = field(default=False)


class _Clock:
    def __init__(self, budget: OracleBudget):
        self.deadline = None if budget.time_hint is None else time.monotonic() + budget.time_hint
        self.max_nodes = budget.max_nodes
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise ResourceError(f"search exceeded {self.max_nodes} nodes")
        if self.deadline is not None and not self.nodes & 1023 and time.monotonic() > self.deadline:
            raise ResourceError("search exceeded its time budget")


# -- path covers ----------------------------------------------------------------

def _linear_forest_search(g: Graph, edges, clock: _Clock, best: int, collect: bool):
    """Depth-first include/exclude search over ``edges``.

    With ``collect`` False returns the largest linear-forest size found above
    ``best``.  With ``collect`` True returns every edge subset of size exactly
    ``best`` (which must be the optimum) as (chosen edge list, component sizes).
    """
    n = g.n
    m = len(edges)
    cap = [2] * n
    rem = [0] * n
    for u, v in edges:
        rem[u] += 1
        rem[v] += 1
    contrib = [min(2, r) for r in rem]
    total = [sum(contrib)]
    parent = list(range(n))
    size = [1] * n
    chosen: list[tuple[int, int]] = []
    found = []
    state = {"best": best}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def refresh(x):
        c = cap[x] if cap[x] < rem[x] else rem[x]
        total[0] += c - contrib[x]
        contrib[x] = c

    def rec(i, c):
        clock.tick()
        bound = c + total[0] // 2
        if collect:
            if bound < state["best"]:
                return
        elif bound <= state["best"]:
            return
        if i == m:
            if collect:
                sizes = sorted(size[x] for x in range(n) if parent[x] == x)
                found.append((list(chosen), tuple(sizes)))
            else:
                state["best"] = c
            return
        u, v = edges[i]
        rem[u] -= 1
        rem[v] -= 1
        if cap[u] and cap[v]:
            ru, rv = find(u), find(v)
            if ru != rv:
                cap[u] -= 1
                cap[v] -= 1
                refresh(u)
                refresh(v)
                if size[ru] < size[rv]:
                    ru, rv = rv, ru
                parent[rv] = ru
                size[ru] += size[rv]
                chosen.append((u, v))
                rec(i + 1, c + 1)
                chosen.pop()
                parent[rv] = rv
                size[ru] -= size[rv]
                cap[u] += 1
                cap[v] += 1
        refresh(u)
        refresh(v)
        rec(i + 1, c)
        rem[u] += 1
        rem[v] += 1
        refresh(u)
        refresh(v)

    rec(0, 0)
    return found if collect else state["best"]


def _max_linear_forest(g: Graph, edges, clock: _Clock) -> int:
    # warm start: greedy in the given order
    cap = [2] * g.n
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    greedy = 0
    for u, v in edges:
        if cap[u] and cap[v] and find(u) != find(v):
            cap[u] -= 1
            cap[v] -= 1
            parent[find(u)] = find(v)
            greedy += 1
    improved = _linear_forest_search(g, edges, clock, greedy, collect=False)
    return max(greedy, improved)


def oracle_path_cover(g: Graph, budget: OracleBudget | None = None,
                      order: str = "forward") -> OracleCover:
    """Exact P(G) = n - (max edges of a linear forest), with every optimal covering.

    ``order`` picks the edge order of the search ("forward" or "reverse"); the
    two orders are independent runs used to cross-check each other.
    """
    budget = budget or OracleBudget()
    if g.n > budget.max_n:
        raise ResourceError(f"n={g.n} exceeds oracle cutoff {budget.max_n}")
    edges = list(g.edges)
    if order == "reverse":
        edges.reverse()
    elif order != "forward":
        raise ValueError(f"unknown search order {order!r}")
    clock = _Clock(budget)
    best = _max_linear_forest(g, edges, clock)
    optima = _linear_forest_search(g, edges, clock, best, collect=True)
    sequences = sorted({sizes for _, sizes in optima})
    coverings = []
    for chosen, _ in optima[: budget.max_coverings]:
        coverings.append(_edges_to_cover(g.n, chosen))
    return OracleCover(
        P=g.n - best,
        sequences=tuple(sequences),
        coverings=tuple(coverings),
        total_optima=len(optima),
        truncated=len(optima) > budget.max_coverings,
    )


def _edges_to_cover(n: int, chosen) -> PathCovering:
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for a, b in chosen:
        nbrs[a].append(b)
        nbrs[b].append(a)
    seen = [False] * n
    paths = []
    for s in range(n):
        if seen[s] or len(nbrs[s]) == 2:
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
    return PathCovering(tuple(paths), n)


# -- L(2,1) labelings -----------------------------------------------------------

def _packings(n: int, close: list[int]) -> list[int]:
    """All nonempty vertex sets whose members are pairwise at distance >= 3."""
    out = []

    def grow(start, mask, blocked):
        for v in range(start, n):
            if not blocked >> v & 1:
                new = mask | 1 << v
                out.append(new)
                grow(v + 1, new, blocked | close[v] | 1 << v)

    grow(0, 0, 0)
    return out


def _sweep(g: Graph, budget: OracleBudget):
    """Assign label values 0, 1, 2, ... in turn, each to a packing or to nobody.

    A state is (labelled set, set carrying the previous label); the previous
    label class is all that constrains the next one.  Layer j holds the states
    after labels 0..j with their fewest holes so far.  The first layer that
    covers every vertex gives the span; its fewest holes give the hole index.
    """
    n = g.n
    if n > budget.max_n:
        raise ResourceError(f"n={n} exceeds labeling oracle cutoff {budget.max_n}")
    clock = _Clock(budget)
    adjm = [0] * n
    for u, v in g.edges:
        adjm[u] |= 1 << v
        adjm[v] |= 1 << u
    close = []
    for v in range(n):
        mask = adjm[v]
        for w in g.adj[v]:
            mask |= adjm[w]
        close.append(mask & ~(1 << v))
    packs = _packings(n, close)
    touch = {0: 0}
    for p in packs:
        t = 0
        for v in range(n):
            if p >> v & 1:
                t |= adjm[v]
        touch[p] = t
    full = (1 << n) - 1
    layer = {(p, p): 0 for p in packs}
    history = [{key: None for key in layer}]
    while True:
        done = [(h, key) for key, h in layer.items() if key[0] == full]
        if done:
            holes, key = min(done)
            span = len(history) - 1
            labels = [0] * n
            j = span
            while key is not None:
                used, last = key
                for v in range(n):
                    if last >> v & 1:
                        labels[v] = j
                key = history[j][key]
                j -= 1
            return span, holes, labels
        nxt: dict[tuple[int, int], int] = {}
        back: dict[tuple[int, int], tuple[int, int]] = {}
        for key, h in layer.items():
            clock.tick()
            used, last = key
            hole = (used, 0)
            if h + 1 < nxt.get(hole, 1 << 30):
                nxt[hole] = h + 1
                back[hole] = key
            blocked = used | touch[last]
            for p in packs:
                if not p & blocked:
                    new = (used | p, p)
                    if h < nxt.get(new, 1 << 30):
                        nxt[new] = h
                        back[new] = key
        layer = nxt
        history.append(back)


def oracle_lambda_rho(g: Graph, budget: OracleBudget | None = None):
    """(lambda, rho, witness labels) where the witness is a lambda-labeling with rho holes."""
    from .labeling import Labeling

    budget = budget or OracleBudget.for_labeling()
    span, holes, labels = _sweep(g, budget)
    return span, holes, Labeling(tuple(labels))


def oracle_lambda(g: Graph, budget: OracleBudget | None = None):
    """Exact L(2,1)-labeling number with a witness labeling."""
    span, _, lab = oracle_lambda_rho(g, budget)
    return span, lab


def oracle_rho(g: Graph, budget: OracleBudget | None = None):
    """Exact hole index (fewest holes over all minimum-span labelings) with a witness."""
    _, holes, lab = oracle_lambda_rho(g, budget)
    return holes, lab


# -- labeled trees ----------------------------------------------------------------

def prufer_decode(seq: Sequence[int], n: int | None = None) -> Graph:
    """Labeled tree on ``len(seq) + 2`` vertices (or ``n`` when given)."""
    if n is None:
        n = len(seq) + 2
    if n == 1 and not seq:
        return Graph(1, ((),))
    if n < 2 or len(seq) != n - 2:
        raise ValueError(f"a Pruefer sequence for n={n} has length {n - 2}")
    degree = [1] * n
    for x in seq:
        if not 0 <= x < n:
            raise ValueError(f"Pruefer symbol {x} out of range 0..{n - 1}")
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    a, b = leaves
    edges.append((a, b))
    return Graph.from_edges(n, edges)


def prufer_encode(t: Graph) -> tuple[int, ...]:
    if not t.is_tree():
        raise ValueError("Pruefer encoding needs a tree")
    n = t.n
    if n <= 2:
        return ()
    degree = list(t.degrees)
    removed = [False] * n
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    seq = []
    for _ in range(n - 2):
        leaf = heapq.heappop(leaves)
        removed[leaf] = True
        x = next(w for w in t.adj[leaf] if not removed[w])
        seq.append(x)
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    return tuple(seq)


def count_trees(n: int) -> int:
    return 1 if n <= 2 else n ** (n - 2)


def enumerate_trees(n: int) -> Iterator[Graph]:
    """Every labeled tree on ``n`` vertices, in Pruefer-sequence order."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > 9:
        raise ResourceError("exhaustive tree enumeration is limited to n <= 9")
    if n == 1:
        yield Graph(1, ((),))
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        yield prufer_decode(seq, n)


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniformly random labeled tree (uniform Pruefer sequence)."""
    if n == 1:
        return Graph(1, ((),))
    return prufer_decode([rng.randrange(n) for _ in range(n - 2)], n)
