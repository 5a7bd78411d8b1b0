"""Verification campaigns: closed forms and algorithms checked against the oracles.

Each suite walks a corpus (all labeled trees up to ``min(max_n, 8)`` vertices,
then ``samples`` random instances per larger size) and collects every failing
instance; the smallest one is reported.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .errors import ConditionError
from .graph import Graph, classify, complement, format_edge_list, stats
from .islands import certify_F_membership, duis, replay_script
from .labeling import labeling_from_cover, validate_l21
from .oracles import (
    OracleBudget,
    enumerate_trees,
    oracle_lambda_rho,
    oracle_path_cover,
    random_tree,
)
from .pathcover import (
    expand_tree,
    formula_bounds,
    is_2_sparse,
    is_general_2_sparse,
    theorem7_path_cover,
    theorem12_path_cover,
    theorem13_path_cover,
    tree_path_cover,
)

SUITES = ("thm5", "thm6", "thm7", "thm8", "thm12", "thm13", "thm1-2", "duis")
EXHAUSTIVE_MAX = 8


@dataclass
class SuiteResult:
    suite: str
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)  # (Graph, message)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def minimal_failure(self):
        if not self.failures:
            return None
        return min(self.failures, key=lambda fm: (fm[0].n, fm[0].m, fm[0].edges))

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "checked": self.checked,
            "skipped": self.skipped,
            "failures": len(self.failures),
            "ok": self.ok,
        }
        worst = self.minimal_failure()
        if worst is not None:
            out["minimal_counterexample"] = {
                "edge_list": format_edge_list(worst[0]),
                "message": worst[1],
            }
        return out


def tree_corpus(max_n: int, samples: int, seed: int, min_n: int = 1) -> Iterator[Graph]:
    """All labeled trees up to 8 vertices, then ``samples`` uniform random trees per size."""
    rng = random.Random(seed)
    for n in range(min_n, min(max_n, EXHAUSTIVE_MAX) + 1):
        yield from enumerate_trees(n)
    for n in range(max(min_n, EXHAUSTIVE_MAX + 1), max_n + 1):
        for _ in range(samples):
            yield random_tree(n, rng)


def tree_key(t: Graph) -> str:
    """Isomorphism-invariant key of a tree: sorted nested-parenthesis encoding from its center."""
    n = t.n
    if n <= 2:
        return "()" * n
    deg = list(t.degrees)
    layer = [v for v in range(n) if deg[v] == 1]
    left = n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in t.adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt

    def enc(v, parent):
        return "(" + "".join(sorted(enc(w, v) for w in t.adj[v] if w != parent)) + ")"

    return min(enc(c, -1) for c in layer)


# -- per-instance checks ----------------------------------------------------------
# Each returns None on success, a message on failure, or SKIP when the instance
# is outside the statement's hypothesis.

SKIP = object()


class _OracleCache:
    """Oracle path-cover results per labeled tree, shared between checks."""

    def __init__(self, budget: OracleBudget | None = None):
        self.budget = budget or OracleBudget()
        self._last = None

    def cover(self, g: Graph):
        if self._last is not None and self._last[0] == g:
            return self._last[1]
        res = oracle_path_cover(g, self.budget)
        self._last = (g, res)
        return res


def check_bounds(t: Graph, oc: _OracleCache):
    if t.n < 2:
        return SKIP
    p = oc.cover(t).P
    lo, hi = formula_bounds(t)
    if not lo <= p <= hi:
        return f"P={p} outside [{lo}, {hi}]"
    q, cov = tree_path_cover(t)
    if q != p or len(cov.paths) != p or not cov.is_valid_for(t):
        return f"tree_path_cover gives {q}, oracle {p}"
    return None


def check_two_sparse(t: Graph, oc: _OracleCache):
    if t.n < 2:
        return SKIP
    p = oc.cover(t).P
    st = stats(t)
    if (p == st.leaves - 1) != is_2_sparse(t):
        return f"P={p}, l-1={st.leaves - 1}, 2-sparse={is_2_sparse(t)}"
    return None


def check_general_two_sparse(t: Graph, oc: _OracleCache):
    if t.n < 2:
        return SKIP
    p = oc.cover(t).P
    st = stats(t)
    lo = st.leaves - st.heavy_edges - 1
    if (p == lo) != is_general_2_sparse(t):
        return f"P={p}, l-h-1={lo}, general 2-sparse={is_general_2_sparse(t)}"
    return None


def check_theorem7(t: Graph, oc: _OracleCache):
    if t.n < 2:
        return SKIP
    try:
        f, data = theorem7_path_cover(t)
    except ConditionError:
        return SKIP
    p = oc.cover(t).P
    q = tree_path_cover(t)[0]
    if not f == q == p:
        return f"formula {f} ({data}), tree_path_cover {q}, oracle {p}"
    return None


def check_complement_labeling(t: Graph, oc: _OracleCache, lam_cache: dict | None = None):
    """lambda(T^c) = n + P - 2 and rho(T^c) = P - 1 when P >= 2; lambda <= n - 1 otherwise.

    With ``lam_cache`` the oracle runs once per isomorphism class of trees.
    """
    p, cov = tree_path_cover(t)
    g = complement(t)
    if lam_cache is not None:
        key = tree_key(t)
        if key not in lam_cache:
            lam_cache[key] = oracle_lambda_rho(g, OracleBudget.for_labeling())[:2]
        lam, rho = lam_cache[key]
    else:
        lam, rho, wit = oracle_lambda_rho(g, OracleBudget.for_labeling())
        ok, bad = validate_l21(g, wit)
        if not ok:
            return f"oracle witness violates the distance conditions at {bad}"
    if p == 1:
        if lam > t.n - 1:
            return f"P=1 but lambda={lam} > n-1"
        if lam == t.n - 1 and rho != 0:
            return f"P=1, lambda=n-1 but rho={rho}"
        return None
    if lam != t.n + p - 2 or rho != p - 1:
        return f"P={p}: oracle lambda={lam}, rho={rho}; expected {t.n + p - 2}, {p - 1}"
    cert = labeling_from_cover(g, cov)
    ok, bad = validate_l21(g, cert)
    if not ok:
        return f"certificate violates the distance conditions at {bad}"
    if cert.span != lam or cert.holes != p - 1:
        return f"certificate span {cert.span}, holes {cert.holes}"
    return None


def check_duis(t: Graph, oc: _OracleCache):
    seqs = oc.cover(t).sequences
    verdict = duis(t)
    if verdict.unique != (len(seqs) == 1):
        return f"duis says {verdict.answer}, oracle sequences {list(seqs)}"
    if verdict.unique and t.n >= 3:
        script = certify_F_membership(t)
        if replay_script(script).tree != t:
            return "membership script does not rebuild the tree"
    return None


# -- generators for the closed-form families -------------------------------------------

def random_theorem12_graph(rng: random.Random, max_n: int = 12) -> Graph:
    """Connected non-cycle graph in which every heavy vertex has >= 3 light neighbors.

    A small random core of heavy vertices is decorated with pendant light paths
    and light bridges between core vertices.
    """
    while True:
        k = rng.randint(1, 3)
        edges = set()
        for v in range(1, k):
            edges.add((rng.randrange(v), v))
        for a in range(k):
            for b in range(a + 1, k):
                if rng.random() < 0.3:
                    edges.add((a, b))
        n = k
        light = [0] * k
        while min(light) < 3 and n < max_n:
            a = rng.randrange(k)
            if k > 1 and rng.random() < 0.3:
                b = rng.choice([x for x in range(k) if x != a])
                length = rng.randint(1, 2)
                if n + length > max_n:
                    continue
                chain = list(range(n, n + length))
                edges.add((a, chain[0]))
                edges.update(zip(chain, chain[1:]))
                edges.add((b, chain[-1]) if b < chain[-1] else (chain[-1], b))
                light[a] += 1
                light[b] += 1
            else:
                length = rng.randint(1, 2)
                if n + length > max_n:
                    length = max_n - n
                chain = list(range(n, n + length))
                edges.add((a, chain[0]))
                edges.update(zip(chain, chain[1:]))
                light[a] += 1
            n += length
        if min(light) < 3:
            continue
        g = Graph.from_edges(n, [(min(a, b), max(a, b)) for a, b in edges])
        try:
            theorem12_path_cover(g)
        except ConditionError:
            continue
        return g


def random_2_sparse_tree(rng: random.Random, n: int, interesting: bool = False) -> Graph:
    """Uniform random 2-sparse tree; ``interesting`` excludes paths and generalized stars."""
    while True:
        t = random_tree(n, rng)
        if not is_2_sparse(t):
            continue
        if interesting and classify(t) in ("path", "star", "generalized_star"):
            continue
        return t


def random_expansion_instance(rng: random.Random, max_n: int = 14):
    """(tree, block orders) with a 2-sparse tree and orders in 2..4, expansion <= max_n vertices."""
    while True:
        n = rng.randint(2, 7)
        t = random_2_sparse_tree(rng, n)
        orders = [rng.randint(2, 4) for _ in t.edges]
        if n + sum(q - 2 for q in orders) <= max_n:
            return t, orders


# -- suites ------------------------------------------------------------------------------

_TREE_CHECKS: dict[str, Callable] = {
    "thm5": check_bounds,
    "thm6": check_two_sparse,
    "thm8": check_general_two_sparse,
    "thm7": check_theorem7,
    "duis": check_duis,
}


def run_suite(suite: str, max_n: int = 8, samples: int = 100, seed: int = 0) -> SuiteResult:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    res = SuiteResult(suite)
    t0 = time.perf_counter()
    oc = _OracleCache()
    if suite in _TREE_CHECKS:
        check = _TREE_CHECKS[suite]
        for t in tree_corpus(max_n, samples, seed):
            _record(res, t, check(t, oc))
    elif suite == "thm1-2":
        cache: dict = {}
        for t in tree_corpus(min(max_n, OracleBudget.for_labeling().max_n), samples, seed, min_n=2):
            _record(res, t, check_complement_labeling(t, oc, cache))
    elif suite == "thm12":
        rng = random.Random(seed)
        for _ in range(samples):
            g = random_theorem12_graph(rng, max(max_n, 4))
            f = theorem12_path_cover(g)
            p = oc.cover(g).P
            _record(res, g, None if f == p else f"formula {f}, oracle {p}")
    elif suite == "thm13":
        rng = random.Random(seed)
        for _ in range(samples):
            t, orders = random_expansion_instance(rng, max(max_n, 4))
            g = expand_tree(t, orders)
            f, cov = theorem13_path_cover(t, orders)
            p = oc.cover(g).P
            msg = None
            if f != p or not cov.is_valid_for(g) or len(cov.paths) != f:
                msg = f"formula {f}, oracle {p} (orders {orders})"
            _record(res, g, msg)
    res.elapsed = time.perf_counter() - t0
    return res


def _record(res: SuiteResult, g: Graph, outcome) -> None:
    if outcome is SKIP:
        res.skipped += 1
        return
    res.checked += 1
    if outcome is not None:
        res.failures.append((g, outcome))
