"""Trees whose complements have a unique island sequence.

Two views of the same class are implemented here:

* the constructive family of labeled trees grown from a labeled generalized
  star (three or more vines) or a labeled path by three attachment
  operations, and
* the linear-time decision procedure DUIS, which peels the tree from the leaf
  side, keeping a mark ``A``/``O`` and an integer constraint ``f`` per vertex.

Vine lengths and the ``k`` values of DUIS are vertex counts.
"""
from __future__ import annotations

import json
import random
import sys
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ConstructionError, ShapeError
from .graph import Graph
from .oracles import OracleBudget, oracle_path_cover

__all__ = [
    "LabeledTree",
    "DuisStep",
    "DuisVerdict",
    "make_labeled_generalized_star",
    "make_labeled_path",
    "apply_type1",
    "apply_type2",
    "apply_type3",
    "generate_F",
    "replay_script",
    "duis",
    "sequence_set",
    "certify_F_membership",
    "script_to_json",
    "script_from_json",
]


@dataclass(frozen=True)
class LabeledTree:
    """A tree with marks ``A``/``B``/``O`` (``O`` on leaves).

    ``star_vines`` maps each ``B`` vertex to the vine vertex count of the
    labeled generalized star that introduced it; Type-3 attachments need it.
    ``center`` is set on single star pieces.
    """

    tree: Graph
    marks: tuple[str, ...]
    star_vines: dict = field(default_factory=dict, compare=False)
    center: int | None = field(default=None, compare=False)
    vine_count: int | None = field(default=None, compare=False)
    vine_vertices: int | None = field(default=None, compare=False)
    script: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.marks) != self.tree.n:
            raise ValueError("one mark per vertex is required")
        for v, m in enumerate(self.marks):
            if m not in "ABO" or len(m) != 1:
                raise ValueError(f"unknown mark {m!r}")
            if self.tree.degree(v) == 1 and m != "O":
                raise ValueError(f"leaf {v} must be marked O")


def _star_edges(vine_count: int, vine_vertices: int):
    edges = []
    for i in range(vine_count):
        prev = 0
        for j in range(vine_vertices):
            x = 1 + i * vine_vertices + j
            edges.append((prev, x))
            prev = x
    return edges


def make_labeled_generalized_star(vine_count: int, vine_vertices: int) -> LabeledTree:
    """Center 0; vine ``i`` is ``1+i*L .. (i+1)*L`` read outward from the center."""
    if vine_count < 2:
        raise ConstructionError("a labeled generalized star needs at least two vines")
    if vine_vertices < 1:
        raise ConstructionError("vines need at least one vertex")
    n = 1 + vine_count * vine_vertices
    tree = Graph.from_edges(n, _star_edges(vine_count, vine_vertices))
    marks = ["A"] * n
    star_vines = {}
    for i in range(vine_count):
        first = 1 + i * vine_vertices
        last = (i + 1) * vine_vertices
        if first != last:
            marks[first] = "B"
            star_vines[first] = vine_vertices
        marks[last] = "O"
    return LabeledTree(tree, tuple(marks), star_vines, 0, vine_count, vine_vertices,
                       ({"op": "base", "kind": "star", "vine_count": vine_count,
                         "vine_vertices": vine_vertices},))


def make_labeled_path(n: int) -> LabeledTree:
    if n < 3:
        raise ConstructionError("a labeled path has at least three vertices")
    tree = Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    marks = ("O",) + ("A",) * (n - 2) + ("O",)
    return LabeledTree(tree, marks, {}, script=({"op": "base", "kind": "path", "n": n},))


def _attach(t: LabeledTree, u: int, piece: LabeledTree, v: int, record: dict) -> LabeledTree:
    off = t.tree.n
    edges = list(t.tree.edges)
    edges.extend((a + off, b + off) for a, b in piece.tree.edges)
    edges.append((u, v + off))
    tree = Graph.from_edges(off + piece.tree.n, edges)
    marks = list(t.marks) + list(piece.marks)
    star_vines = dict(t.star_vines)
    star_vines.update({x + off: c for x, c in piece.star_vines.items()})
    return LabeledTree(tree, tuple(marks), star_vines, script=t.script + (record,))


def _check_u(t: LabeledTree, u: int, want: str, op: str) -> None:
    if not 0 <= u < t.tree.n:
        raise ConstructionError(f"{op}: vertex {u} not in tree")
    if t.marks[u] != want:
        raise ConstructionError(f"{op}: vertex {u} is marked {t.marks[u]}, needs {want}")


def apply_type1(t: LabeledTree, u: int, star: LabeledTree) -> LabeledTree:
    """Join an ``A`` vertex to the center of a star with at least three vines."""
    _check_u(t, u, "A", "type1")
    if star.center is None or star.vine_count is None or star.vine_count < 3:
        raise ConstructionError("type1 needs a labeled generalized star with >= 3 vines")
    return _attach(t, u, star, star.center, {
        "op": "type1", "u": u, "vine_count": star.vine_count,
        "vine_vertices": star.vine_vertices})


def apply_type2(t: LabeledTree, u: int, p: LabeledTree, v: int) -> LabeledTree:
    """Join an ``A`` vertex to a non-leaf vertex ``v`` of a labeled path."""
    _check_u(t, u, "A", "type2")
    g = p.tree
    if g.m != g.n - 1 or max(g.degrees) > 2 or g.n < 3 or p.center is not None:
        raise ConstructionError("type2 needs a labeled path")
    if not 0 <= v < g.n or g.degree(v) != 2:
        raise ConstructionError(f"type2: vertex {v} is not an internal path vertex")
    return _attach(t, u, p, v, {"op": "type2", "u": u, "path_n": g.n, "v": v})


def apply_type3(t: LabeledTree, u: int, star: LabeledTree) -> LabeledTree:
    """Join a ``B`` vertex to the center of a star whose vines match the star owning ``u``."""
    _check_u(t, u, "B", "type3")
    if star.center is None:
        raise ConstructionError("type3 needs a labeled generalized star")
    want = t.star_vines.get(u)
    if want != star.vine_vertices:
        raise ConstructionError(
            f"type3: star vines have {star.vine_vertices} vertices, "
            f"the star owning {u} has {want}")
    return _attach(t, u, star, star.center, {
        "op": "type3", "u": u, "vine_count": star.vine_count,
        "vine_vertices": star.vine_vertices})


# -- scripts --------------------------------------------------------------------

def _relabel(t: LabeledTree, target: list[int]) -> LabeledTree:
    """Rename vertex ``i`` to ``target[i]``."""
    n = t.tree.n
    if sorted(target) != list(range(n)):
        raise ConstructionError("script vertex ids must be a permutation of 0..n-1")
    tree = Graph.from_edges(n, [(target[a], target[b]) for a, b in t.tree.edges])
    marks = [""] * n
    for i, m in enumerate(t.marks):
        marks[target[i]] = m
    star_vines = {target[x]: c for x, c in t.star_vines.items()}
    return LabeledTree(tree, tuple(marks), star_vines, script=t.script)


def replay_script(script: Sequence[dict]) -> LabeledTree:
    """Rebuild a labeled tree from its construction script.

    Pieces are numbered consecutively unless every entry carries a
    ``vertices`` list (piece-local order -> final vertex id); then ``u``
    refers to final ids as well.
    """
    if not script or script[0].get("op") != "base":
        raise ConstructionError("a script starts with a base entry")
    explicit = "vertices" in script[0]
    if any(("vertices" in e) != explicit for e in script):
        raise ConstructionError("either all script entries carry vertices or none do")
    target: list[int] = []
    fresh_of: dict[int, int] = {}

    def piece_for(entry):
        op = entry["op"]
        if op == "base" and entry["kind"] == "path" or op == "type2":
            return make_labeled_path(entry["n"] if op == "base" else entry["path_n"])
        return make_labeled_generalized_star(entry["vine_count"], entry["vine_vertices"])

    base = script[0]
    t = piece_for(base)
    if explicit:
        target.extend(base["vertices"])
    t = LabeledTree(t.tree, t.marks, t.star_vines, script=(dict(base),))
    for entry in script[1:]:
        if explicit:
            fresh_of = {x: i for i, x in enumerate(target)}
            u = fresh_of.get(entry["u"])
            if u is None:
                raise ConstructionError(f"script attaches at unknown vertex {entry['u']}")
        else:
            u = entry["u"]
        piece = piece_for(entry)
        op = entry["op"]
        if op == "type1":
            t = apply_type1(t, u, piece)
        elif op == "type2":
            t = apply_type2(t, u, piece, entry["v"])
        elif op == "type3":
            t = apply_type3(t, u, piece)
        else:
            raise ConstructionError(f"unknown script op {op!r}")
        if explicit:
            target.extend(entry["vertices"])
    if explicit:
        t = _relabel(t, target)
        t = LabeledTree(t.tree, t.marks, t.star_vines, script=tuple(dict(e) for e in script))
    return t


def script_to_json(script) -> str:
    return json.dumps(list(script))


def script_from_json(text: str) -> list[dict]:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("construction script must be a JSON list")
    return data


def generate_F(rng: random.Random, size_budget: int, max_n: int | None = None) -> LabeledTree:
    """Random member of the family: a base piece plus up to ``size_budget`` attachments.

    Pieces are drawn small so that ``max_n`` (if given) is respected; attachment
    stops early when no operation fits.
    """
    def fits(extra):
        return max_n is None or t.tree.n + extra <= max_n

    bases = []
    for c in range(3, 6):
        for L in range(1, 4):
            if max_n is None or 1 + c * L <= max_n:
                bases.append(("star", c, L))
    for k in range(3, 8):
        if max_n is None or k <= max_n:
            bases.append(("path", k, 0))
    if not bases:
        raise ValueError("max_n too small for any base piece")
    kind, a, b = rng.choice(bases)
    t = make_labeled_generalized_star(a, b) if kind == "star" else make_labeled_path(a)
    for _ in range(size_budget):
        options = []
        a_vertices = [v for v, m in enumerate(t.marks) if m == "A"]
        b_vertices = [v for v, m in enumerate(t.marks) if m == "B"]
        if a_vertices:
            for c in range(3, 5):
                for L in range(1, 4):
                    if fits(1 + c * L):
                        options.append(("type1", c, L))
            for k in range(3, 8):
                if fits(k):
                    options.append(("type2", k, 0))
        if b_vertices:
            for c in range(2, 5):
                Ls = {t.star_vines[v] for v in b_vertices}
                for L in sorted(Ls):
                    if fits(1 + c * L):
                        options.append(("type3", c, L))
        if not options:
            break
        op, a, b = rng.choice(options)
        if op == "type1":
            t = apply_type1(t, rng.choice(a_vertices), make_labeled_generalized_star(a, b))
        elif op == "type2":
            t = apply_type2(t, rng.choice(a_vertices), make_labeled_path(a), rng.randrange(1, a - 1))
        else:
            us = [v for v in b_vertices if t.star_vines[v] == b]
            t = apply_type3(t, rng.choice(us), make_labeled_generalized_star(a, b))
    return t


# -- DUIS -------------------------------------------------------------------------

@dataclass(frozen=True)
class DuisStep:
    step: int                 # 1, 3, 4, 5, 6 or 7
    v: int | None = None
    u: int | None = None
    shape: str = ""           # "star", "path" or "" (Step 1)
    k: int = 0
    action: str = ""
    arms: tuple[tuple[int, ...], ...] = ()


@dataclass(frozen=True)
class DuisVerdict:
    unique: bool
    trace: tuple[DuisStep, ...]
    root: int
    ops: int
    final_path: tuple[int, ...] = ()

    @property
    def answer(self) -> str:
        return "unique" if self.unique else "multiple"

    def to_json(self) -> dict:
        return {
            "verdict": self.answer,
            "root": self.root,
            "operations": self.ops,
            "trace": [
                {"step": s.step, "v": s.v, "u": s.u, "shape": s.shape, "k": s.k,
                 "action": s.action}
                for s in self.trace
            ],
        }


def duis(t: Graph, root: int | None = None) -> DuisVerdict:
    """Decide whether the complement of tree ``t`` has a unique island sequence.

    ``root`` is the fixed leaf the peeling is measured from (lowest-index leaf
    by default).  Among the heavy vertices at maximum distance from it the
    lowest index is peeled first.  ``ops`` counts vertex and adjacency visits.
    """
    if not t.is_tree():
        raise ShapeError("DUIS needs a tree")
    n = t.n
    adj = t.adj
    deg = list(t.degrees)
    mark = ["O"] * n
    f = [0] * n
    trace: list[DuisStep] = []
    ops = 0

    if root is None:
        root = next((v for v in range(n) if deg[v] <= 1), 0)
    elif deg[root] > 1:
        raise ShapeError(f"root {root} is not a leaf")
    r = root

    # distances from r, computed once
    dist = [-1] * n
    parent = [-1] * n
    dist[r] = 0
    queue = deque([r])
    while queue:
        x = queue.popleft()
        ops += 1
        for y in adj[x]:
            ops += 1
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                parent[y] = x
                queue.append(y)
    depth = max(dist)
    buckets: list[list[int]] = [[] for _ in range(depth + 1)]
    for v in range(n):
        buckets[dist[v]].append(v)
    order = [v for d in range(depth, -1, -1) for v in buckets[d]]
    ops += n

    removed = [False] * n
    alive = n
    heavy = sum(1 for d in deg if d > 2)
    pos = 0

    def bad(x, k):
        return mark[x] == "A" or 0 < f[x] != k

    while True:
        if heavy == 0:
            # Step 1: the remaining tree is a path P_k
            k = alive
            path = [r]
            prev, cur = -1, r
            while True:
                nxt = -1
                for y in adj[cur]:
                    ops += 1
                    if y != prev and not removed[y]:
                        nxt = y
                if nxt < 0:
                    break
                prev, cur = cur, nxt
                path.append(cur)
            ends = {path[0], path[-1]}
            if any(bad(x, k) for x in ends):
                trace.append(DuisStep(1, k=k, action="reject"))
                return DuisVerdict(False, tuple(trace), r, ops, tuple(path))
            trace.append(DuisStep(1, k=k, action="accept"))
            return DuisVerdict(True, tuple(trace), r, ops, tuple(path))

        # Step 2: farthest heavy vertex v, its neighbour u toward r
        while removed[order[pos]] or deg[order[pos]] <= 2:
            pos += 1
            ops += 1
        v = order[pos]
        u = parent[v]
        arms = []
        for w in adj[v]:
            ops += 1
            if w == u or removed[w]:
                continue
            arm = [w]
            prev, cur = v, w
            while True:
                nxt = -1
                for y in adj[cur]:
                    ops += 1
                    if y != prev and not removed[y]:
                        nxt = y
                if nxt < 0:
                    break
                arm.append(nxt)
                prev, cur = cur, nxt
            arms.append(tuple(arm))
        lengths = {len(a) for a in arms}
        leaves = [a[-1] for a in arms]

        if len(arms) >= 3:
            if len(lengths) > 1:
                # Step 3: neither a path nor a generalized star
                trace.append(DuisStep(3, v, u, "spider", 0, "reject", tuple(arms)))
                return DuisVerdict(False, tuple(trace), r, ops)
            # Step 4: generalized star with vines of k vertices
            k = len(arms[0])
            if any(bad(a[0], k) for a in arms) or any(
                    mark[x] == "A" or f[x] > 0 for x in leaves):
                trace.append(DuisStep(4, v, u, "star", k, "reject", tuple(arms)))
                return DuisVerdict(False, tuple(trace), r, ops)
            action = "keep"
            if 0 < f[u] != k:
                mark[u] = "A"
                f[u] = 0
                action = "mark A"
            if f[u] == 0 and mark[u] == "O":
                f[u] = k
                action = f"f={k}"
            trace.append(DuisStep(4, v, u, "star", k, action, tuple(arms)))
        else:
            k = 1 + len(arms[0]) + len(arms[1])
            if any(bad(x, k) for x in leaves):
                step = 5 if len(lengths) > 1 else 6
                trace.append(DuisStep(step, v, u, "path", k, "reject", tuple(arms)))
                return DuisVerdict(False, tuple(trace), r, ops)
            if len(lengths) > 1:
                # Step 5: v is not the middle vertex
                mark[u] = "A"
                f[u] = 0
                trace.append(DuisStep(5, v, u, "path", k, "mark A", tuple(arms)))
            else:
                # Step 6: v is the middle vertex, k odd
                half = (k - 1) // 2
                v1, v2 = arms[0][0], arms[1][0]
                if any(mark[x] == "A" or 0 < f[x] != half for x in (u, v1, v2)) or any(
                        f[x] == k for x in leaves):
                    mark[u] = "A"
                    f[u] = 0
                    action = "mark A"
                else:
                    f[u] = half
                    action = f"f={half}"
                trace.append(DuisStep(6, v, u, "path", k, action, tuple(arms)))

        # T := T'
        removed[v] = True
        for a in arms:
            for x in a:
                removed[x] = True
            alive -= len(a)
        alive -= 1
        heavy -= 1
        deg[u] -= 1
        if deg[u] == 2:
            heavy -= 1
        pos += 1


def sequence_set(t: Graph, cutoff_n: int = 16) -> tuple[tuple[int, ...], ...]:
    """Every path sequence realised by some minimum path covering (exhaustive)."""
    return oracle_path_cover(t, OracleBudget(max_n=cutoff_n)).sequences


# -- certificates -------------------------------------------------------------------

def _path_of(piece):
    center, arms = piece
    if center is None:
        return list(arms[0])
    return list(reversed(arms[0])) + [center] + list(arms[1])


def _decompose(t: Graph, pieces, root: int):
    """Script with ``pieces[root]`` as base, or None if some attachment has no operation."""
    owner = {}
    for i, (center, arms) in enumerate(pieces):
        if center is not None:
            owner[center] = i
        for a in arms:
            for x in a:
                owner[x] = i
    marks: dict[int, str] = {}
    star_vines: dict[int, int] = {}

    def label_star(center, arms):
        L = len(arms[0])
        marks[center] = "A"
        for a in arms:
            for i, x in enumerate(a):
                if i == len(a) - 1:
                    marks[x] = "O"
                elif i == 0:
                    marks[x] = "B"
                    star_vines[x] = L
                else:
                    marks[x] = "A"

    def label_path(seq):
        for i, x in enumerate(seq):
            marks[x] = "O" if i in (0, len(seq) - 1) else "A"

    def star_entry(center, arms):
        return {"vine_count": len(arms), "vine_vertices": len(arms[0]),
                "vertices": [center] + [x for a in arms for x in a]}

    center, arms = pieces[root]
    if center is not None and len(arms) >= 3:
        label_star(center, arms)
        script = [{"op": "base", "kind": "star", **star_entry(center, arms)}]
    else:
        seq = _path_of(pieces[root])
        if len(seq) < 3:
            return None
        label_path(seq)
        script = [{"op": "base", "kind": "path", "n": len(seq), "vertices": seq}]

    done = {root}
    queue = deque([root])
    while queue:
        i = queue.popleft()
        center, arms = pieces[i]
        members = ([center] if center is not None else []) + [x for a in arms for x in a]
        for x in members:
            for y in t.adj[x]:
                j = owner[y]
                if j in done:
                    continue
                done.add(j)
                queue.append(j)
                c, a = pieces[j]
                mx = marks[x]
                L = len(a[0])
                if c is not None and len(a) >= 3:
                    if y != c:
                        return None
                    if mx == "A":
                        op = "type1"
                    elif mx == "B" and star_vines.get(x) == L:
                        op = "type3"
                    else:
                        return None
                    label_star(c, a)
                    script.append({"op": op, "u": x, **star_entry(c, a)})
                    continue
                seq = _path_of(pieces[j])
                if y not in seq[1:-1]:
                    return None
                if mx == "A":
                    label_path(seq)
                    script.append({"op": "type2", "u": x, "path_n": len(seq),
                                   "v": seq.index(y), "vertices": seq})
                elif (mx == "B" and y == c and len(a) == 2 and len(a[1]) == L
                      and star_vines.get(x) == L):
                    label_star(c, a)
                    script.append({"op": "type3", "u": x, **star_entry(c, a)})
                else:
                    return None
    return script


class _PieceSearch:
    """Partition of a tree into family pieces, found by memoized search over directed edges.

    A piece hangs off its parent piece through one tree edge x-y: y is the
    center of a star or an internal vertex of a path, and the mark of x decides
    what may hang there (A: a star with >= 3 vines or a path; B: a star with
    >= 2 vines of the same length as the star owning x).  Every piece leaf is
    a leaf of the tree.  The memo keeps only decisions; ``pieces_*`` rebuild
    the partition from them.
    """

    def __init__(self, t: Graph):
        self.adj = t.adj
        self.memo: dict = {}
        self._depths: dict = {}

    def leaf_depths(self, prev, cur) -> frozenset:
        """Distances (in vertices) from the edge prev-cur to the leaves beyond cur."""
        key = (prev, cur)
        if key not in self._depths:
            if len(self.adj[cur]) == 1:
                out = frozenset([1])
            else:
                out = frozenset(d + 1 for w in self.adj[cur] if w != prev
                                for d in self.leaf_depths(cur, w))
            self._depths[key] = out
        return self._depths[key]

    def _memo(self, key, fn):
        if key not in self.memo:
            self.memo[key] = fn()
        return self.memo[key]

    def _lengths(self, y, parent, min_vines):
        count: dict = {}
        for w in self.adj[y]:
            if w != parent:
                for d in self.leaf_depths(y, w):
                    count[d] = count.get(d, 0) + 1
        return sorted(d for d, c in count.items() if c >= min_vines)

    # -- decisions ---------------------------------------------------------------
    def child(self, x, y, mark, L):
        """How the side of y away from x hangs off x: ("star", k), ("path", a, b) or None."""
        return self._memo(("child", x, y, mark, L), lambda: self._child(x, y, mark, L))

    def _child(self, x, y, mark, L):
        if mark == "B":
            return ("star", L) if self.star(y, x, 2, L) else None
        for k in self._lengths(y, x, 3):
            if self.star(y, x, 3, k):
                return ("star", k)
        ends = self.path(y, x)
        return None if ends is None else ("path",) + ends

    def _hang_ok(self, v, skip, mark, L) -> bool:
        return all(self.child(v, w, mark, L) is not None for w in self.adj[v] if w not in skip)

    def vine(self, prev, cur, left, L):
        """Next vertex of a vine continuing at cur with ``left`` vertices to go (cur for the last)."""
        key = ("vine", prev, cur, left, L if left == L else 0)
        return self._memo(key, lambda: self._vine(prev, cur, left, L))

    def _vine(self, prev, cur, left, L):
        if left == 1:
            return cur if len(self.adj[cur]) == 1 else None
        mark = "B" if left == L else "A"
        for nxt in self.adj[cur]:
            if (nxt != prev and left - 1 in self.leaf_depths(cur, nxt)
                    and self.vine(cur, nxt, left - 1, L) is not None
                    and self._hang_ok(cur, (prev, nxt), mark, L)):
                return nxt
        return None

    def arm(self, prev, cur):
        """Next vertex of a path arm continuing at cur (cur itself at a leaf)."""
        return self._memo(("arm", prev, cur), lambda: self._arm(prev, cur))

    def _arm(self, prev, cur):
        if len(self.adj[cur]) == 1:
            return cur
        for nxt in self.adj[cur]:
            if (nxt != prev and self.arm(cur, nxt) is not None
                    and self._hang_ok(cur, (prev, nxt), "A", 0)):
                return nxt
        return None

    def star(self, y, parent, min_vines, L) -> bool:
        vines = 0
        for w in self.adj[y]:
            if w == parent:
                continue
            if L in self.leaf_depths(y, w) and self.vine(y, w, L, L) is not None:
                vines += 1
            elif self.child(y, w, "A", 0) is None:
                return False
        return vines >= min_vines

    def path(self, y, parent):
        """Two neighbors of y carrying the path arms, or None."""
        ok, forced = [], []
        for w in self.adj[y]:
            if w == parent:
                continue
            if self.arm(y, w) is not None:
                ok.append(w)
            if self.child(y, w, "A", 0) is None:
                forced.append(w)
        if len(forced) > 2 or any(w not in ok for w in forced):
            return None
        ends = forced + [w for w in ok if w not in forced]
        return (ends[0], ends[1]) if len(ends) >= 2 else None

    def root(self, y):
        for k in self._lengths(y, None, 3):
            if self.star(y, None, 3, k):
                return ("star", k)
        ends = self.path(y, None)
        return None if ends is None else ("path",) + ends

    # -- reconstruction ------------------------------------------------------------
    def pieces_at(self, y, parent, how, out: list) -> None:
        """Append the piece at y and, recursively, everything hanging off it."""
        stack = [(y, parent, how)]
        while stack:
            y, parent, how = stack.pop()
            if how[0] == "star":
                L = how[1]
                arms = []
                for w in self.adj[y]:
                    if w == parent:
                        continue
                    if L in self.leaf_depths(y, w) and self.vine(y, w, L, L) is not None:
                        arm = self._walk_vine(y, w, L, stack)
                        arms.append(tuple(arm))
                    else:
                        stack.append((w, y, self.child(y, w, "A", 0)))
                out.append((y, arms))
            else:
                a, b = how[1], how[2]
                left = self._walk_arm(y, a, stack)
                right = self._walk_arm(y, b, stack)
                for w in self.adj[y]:
                    if w not in (parent, a, b):
                        stack.append((w, y, self.child(y, w, "A", 0)))
                out.append((None, [tuple(list(reversed(left)) + [y] + right)]))

    def _walk_vine(self, prev, cur, L, stack):
        seq, left = [], L
        while True:
            seq.append(cur)
            if left == 1:
                return seq
            nxt = self.vine(prev, cur, left, L)
            mark = "B" if left == L else "A"
            for w in self.adj[cur]:
                if w not in (prev, nxt):
                    stack.append((w, cur, self.child(cur, w, mark, L)))
            prev, cur, left = cur, nxt, left - 1

    def _walk_arm(self, prev, cur, stack):
        seq = []
        while True:
            seq.append(cur)
            nxt = self.arm(prev, cur)
            if nxt == cur:
                return seq
            for w in self.adj[cur]:
                if w not in (prev, nxt):
                    stack.append((w, cur, self.child(cur, w, "A", 0)))
            prev, cur = cur, nxt


def _search_decomposition(t: Graph):
    search = _PieceSearch(t)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 40 * t.n + 1000))
    try:
        for y in range(t.n):
            how = search.root(y)
            if how is not None:
                pieces: list = []
                search.pieces_at(y, None, how, pieces)
                return _decompose(t, pieces, 0)
    finally:
        sys.setrecursionlimit(limit)
    return None


def certify_F_membership(t: Graph) -> list[dict] | None:
    """Construction script rebuilding ``t`` (same vertex ids) as a family member.

    Returns None when DUIS finds multiple island sequences.  The pieces are
    the parts DUIS peels off plus the path left at the end (or that path
    merged into the last peeled star as one more vine); each piece is tried
    as the base and the rest attached outward from it, the operation type
    being read off the mark of the attachment vertex.
    """
    if t.n < 3:
        raise ShapeError("membership certificates need at least three vertices")
    verdict = duis(t)
    if not verdict.unique:
        return None
    steps = [s for s in verdict.trace if s.step in (4, 5, 6)]
    peeled = [(s.v, list(s.arms)) for s in steps]
    final = tuple(verdict.final_path)
    partitions = []
    # the remaining path is one more vine of the last piece only if it ends at u
    if peeled and final[-1] == steps[-1].u:
        v, arms = peeled[-1]
        spider_arms = arms + [tuple(reversed(final))]
        if len({len(a) for a in spider_arms}) == 1:
            partitions.append(peeled[:-1] + [(v, spider_arms)])
    partitions.append(peeled + [(None, [final])])
    for pieces in partitions:
        for root in range(len(pieces) - 1, -1, -1):
            script = _decompose(t, pieces, root)
            if script is not None:
                return script
    # no labeling follows the trace (a piece may hang off a leaf of what was
    # built before it); look for any partition into family pieces instead
    script = _search_decomposition(t)
    if script is not None:
        return script
    raise ConstructionError("DUIS accepted but no decomposition into family pieces was found")
