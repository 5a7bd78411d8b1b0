"""L(2,1)-labelings and the path-cover route to lambda and rho of a complement.

A path covering of G with p >= 2 paths labels the complement of G: walk the
paths one after another, giving consecutive integers along a path and
skipping a single integer between paths.  With a minimum covering this is a
minimum-span labeling with p - 1 holes, and its islands are the paths.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import ConditionError, ContractError, ResourceError
from .graph import Graph, classify, complement
from .pathcover import (
    PathCovering,
    is_2_sparse,
    theorem12_cover,
    theorem12_path_cover,
    theorem13_path_cover,
    tree_path_cover,
)

__all__ = [
    "Labeling",
    "IslandSequence",
    "validate_l21",
    "labeling_from_cover",
    "islands_of",
    "ComplementInvariants",
    "cover_of",
    "lambda_rho_of_complement",
    "block_tree",
]


@dataclass(frozen=True)
class Labeling:
    labels: tuple[int, ...]

    def __post_init__(self):
        if any(x < 0 for x in self.labels):
            raise ValueError("labels must be nonnegative")

    @property
    def span(self) -> int:
        return max(self.labels, default=0)

    @property
    def used(self) -> frozenset[int]:
        return frozenset(self.labels)

    @property
    def hole_labels(self) -> tuple[int, ...]:
        used = self.used
        return tuple(h for h in range(1, self.span) if h not in used)

    @property
    def holes(self) -> int:
        return len(self.hole_labels)

    @property
    def islands(self) -> tuple[tuple[int, int], ...]:
        """Maximal runs of consecutive used labels as (first, last) pairs."""
        runs = []
        for x in sorted(self.used):
            if runs and runs[-1][1] == x - 1:
                runs[-1][1] = x
            else:
                runs.append([x, x])
        return tuple((a, b) for a, b in runs)

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "span": self.span,
            "holes": self.holes,
            "islands": [list(r) for r in self.islands],
        }

    @classmethod
    def from_json(cls, data) -> "Labeling":
        if isinstance(data, str):
            data = json.loads(data)
        lab = cls(tuple(int(x) for x in data["labels"]))
        for key in ("span", "holes"):
            if key in data and data[key] != getattr(lab, key):
                raise ContractError(f"stored {key}={data[key]} disagrees with labels")
        return lab


IslandSequence = tuple  # nondecreasing island sizes


def islands_of(f: Labeling) -> tuple[int, ...]:
    return tuple(sorted(b - a + 1 for a, b in f.islands))


def validate_l21(g: Graph, f: Labeling) -> tuple[bool, tuple[int, int, int] | None]:
    """Check both distance conditions; on failure return (x, y, distance)."""
    if len(f.labels) != g.n:
        raise ContractError("labeling length differs from vertex count")
    lab = f.labels
    for x in range(g.n):
        for y in g.adj[x]:
            if y > x and abs(lab[x] - lab[y]) < 2:
                return False, (x, y, 1)
    for x in range(g.n):
        near = g.nbr_sets[x]
        seen = set()
        for w in g.adj[x]:
            for y in g.adj[w]:
                if y > x and y not in near and y not in seen:
                    seen.add(y)
                    if lab[x] == lab[y]:
                        return False, (x, y, 2)
    return True, None


def labeling_from_cover(g: Graph, cover: PathCovering) -> Labeling:
    """Label ``g`` from a path covering of its complement."""
    try:
        cover.validate(complement(g))
    except ContractError as exc:
        raise ContractError(f"not a path covering of the complement: {exc}") from None
    labels = [0] * g.n
    nxt = 0
    for path in cover.canonical().paths:
        for x in path:
            labels[x] = nxt
            nxt += 1
        nxt += 1
    return Labeling(tuple(labels))


# -- lambda / rho of a complement -----------------------------------------------

def block_tree(g: Graph):
    """If ``g`` is an edge-expansion of a tree, return (tree, per-edge orders, vertex map).

    The tree lives on the cut vertices plus one representative (lowest index)
    for each leaf block; ``vertex map`` lists the original index of each tree
    vertex.  Returns None when ``g`` is not such a block graph.
    """
    import networkx as nx

    if not g.is_connected() or g.n < 2:
        return None
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges)
    blocks = [sorted(b) for b in nx.biconnected_components(nxg)]
    for b in blocks:
        k = len(b)
        if sum(1 for u in b for v in g.adj[u] if v in set(b)) != k * (k - 1):
            return None
    cuts = set(nx.articulation_points(nxg))
    ends = []
    for b in blocks:
        inner = [v for v in b if v in cuts]
        if len(inner) > 2:
            return None
        if len(inner) == 2:
            ends.append((inner[0], inner[1], len(b)))
        elif len(inner) == 1:
            other = min(v for v in b if v != inner[0])
            ends.append((inner[0], other, len(b)))
        else:
            ends.append((b[0], b[1], len(b)))
    verts = sorted({x for a, b, _ in ends for x in (a, b)})
    index = {v: i for i, v in enumerate(verts)}
    tree = Graph.from_edges(len(verts), [(index[a], index[b]) for a, b, _ in ends])
    orders = {(min(index[a], index[b]), max(index[a], index[b])): q for a, b, q in ends}
    return tree, orders, verts


def _component_cover(g: Graph, budget) -> tuple[PathCovering, str]:
    """Minimum covering of a connected graph by the most specific exact method."""
    from .oracles import oracle_path_cover

    if g.is_tree():
        return tree_path_cover(g)[1], "tree"
    shape = classify(g)
    if shape == "cycle":
        return PathCovering((tuple(_cycle_order(g)),), g.n), "cycle"
    try:
        theorem12_path_cover(g)
    except ConditionError:
        pass
    else:
        return theorem12_cover(g), "theorem12"
    found = block_tree(g)
    if found is not None:
        tree, orders, verts = found
        if is_2_sparse(tree):
            _, cov = theorem13_path_cover(tree, orders)
            return _relabel_expansion_cover(g, tree, orders, verts, cov), "theorem13"
    if budget is not None and g.n <= budget.max_n:
        return oracle_path_cover(g, budget).coverings[0], "oracle"
    raise ConditionError("no exact path-cover method applies to this component")


def _cycle_order(g: Graph) -> list[int]:
    order = [0]
    prev, cur = -1, 0
    while len(order) < g.n:
        nxt = g.adj[cur][0] if g.adj[cur][0] != prev else g.adj[cur][1]
        prev, cur = cur, nxt
        order.append(cur)
    return order


def _relabel_expansion_cover(g, tree, orders, verts, cov):
    # the expansion numbers fresh clique vertices after the tree vertices, edge by edge;
    # map them back onto the non-representative vertices of each block of ``g``
    from .pathcover import expansion_blocks

    fresh = expansion_blocks(tree, orders)
    mapping = {i: v for i, v in enumerate(verts)}
    taken = set(verts)
    for (a, b), extra in fresh.items():
        ga, gb = verts[a], verts[b]
        common = sorted((g.nbr_sets[ga] & g.nbr_sets[gb]) - taken)
        block = [x for x in common if len(g.adj[x]) == orders[(a, b)] - 1]
        for x, y in zip(extra, block):
            mapping[x] = y
            taken.add(y)
    paths = tuple(tuple(mapping[x] for x in p) for p in cov.paths)
    out = PathCovering(paths, g.n)
    out.validate(g)
    return out


def cover_of(g: Graph, budget=None) -> tuple[PathCovering, list[str]]:
    """Minimum path covering of any graph whose components this package can solve exactly."""
    paths = []
    methods = []
    for comp in g.components:
        sub, old = g.subgraph(comp)
        cov, how = _component_cover(sub, budget)
        methods.append(how)
        paths.extend(tuple(old[x] for x in p) for p in cov.paths)
    return PathCovering(tuple(paths), g.n), methods


@dataclass(frozen=True)
class ComplementInvariants:
    """lambda and rho of the complement of ``g`` (lam/rho None when only bounded)."""

    n: int
    P: int
    lam: int | None
    rho: int | None
    lam_upper: int
    certificate: Labeling | None
    cover: PathCovering
    methods: tuple[str, ...]
    exact: bool
    note: str = ""

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "P": self.P,
            "lambda": self.lam,
            "rho": self.rho,
            "lambda_upper_bound": self.lam_upper,
            "exact": self.exact,
            "methods": list(self.methods),
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "cover": [list(p) for p in self.cover.paths],
            "note": self.note,
        }


def lambda_rho_of_complement(g: Graph, budget=None) -> ComplementInvariants:
    """lambda(g^c) = n + P(g) - 2 and rho(g^c) = P(g) - 1 whenever P(g) >= 2.

    P(g) is computed component by component (trees, cycles, the closed-form
    families, block graphs of 2-sparse trees; the oracle for anything else
    small enough).  When P(g) = 1 only lambda(g^c) <= n - 1 follows; the exact
    values then come from the labeling oracle if ``n`` is within its cutoff.
    """
    from .oracles import OracleBudget, oracle_lambda_rho

    if budget is None:
        budget = OracleBudget()
    cover, methods = cover_of(g, budget)
    p = len(cover.paths)
    if p >= 2:
        cert = labeling_from_cover(complement(g), cover)
        return ComplementInvariants(
            n=g.n, P=p, lam=g.n + p - 2, rho=p - 1, lam_upper=g.n + p - 2,
            certificate=cert, cover=cover, methods=tuple(methods), exact=True)
    lab_budget = OracleBudget.for_labeling(time_hint=budget.time_hint)
    note = "P(g)=1: lambda(g^c) <= n-1; exact value requires brute force"
    try:
        lam, rho, wit = oracle_lambda_rho(complement(g), lab_budget)
    except ResourceError:
        return ComplementInvariants(
            n=g.n, P=1, lam=None, rho=None, lam_upper=g.n - 1, certificate=None,
            cover=cover, methods=tuple(methods), exact=False, note=note)
    return ComplementInvariants(
        n=g.n, P=1, lam=lam, rho=rho, lam_upper=g.n - 1, certificate=wit,
        cover=cover, methods=tuple(methods) + ("labeling-oracle",), exact=True, note=note)
