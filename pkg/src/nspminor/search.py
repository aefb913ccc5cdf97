"""Exact minor search: complete minors, Hadwiger number, small patterns.

A connected pattern H is a minor of a graph iff some connected component
can be partitioned into |H| connected branch sets whose quotient contains
H as a subgraph (leftover vertices can always be absorbed by a neighbouring
branch set).  The search therefore walks contraction sequences of each
component down to |H| vertices, memoising visited partitions, and prunes
with two admissible bounds:

* degree: a quotient vertex whose degree is below the minimum pattern
  degree must be contracted, and one contraction absorbs at most two of
  them;
* edge count: contracting an edge whose ends share c neighbours loses
  c + 1 edges, and shared-neighbour counts drop by at most one per
  contraction, so r more contractions lose at least
  sum(max(1, L - i) for i < r) edges, L being the current minimum.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Optional

from .certificates import MinorModel, verify_minor_model
from .graph import (
    Graph,
    complete_graph,
    complete_multipartite,
    component_masks,
    is_connected,
    iter_bits,
)

FOUND, ABSENT, INCONCLUSIVE = "found", "absent", "inconclusive"


@dataclass
class SearchConfig:
    budget: int = 0              # node budget, 0 = unbounded
    deterministic: bool = True
    symmetry: bool = False       # memoise quotients up to isomorphism
    seed: Optional[int] = None   # branching shuffle when not deterministic
    counting: bool = True        # shared-neighbour edge-loss bound


@dataclass
class SearchResult:
    outcome: str
    model: MinorModel | None = None
    nodes: int = 0
    ms: float = 0.0

    @property
    def found(self) -> bool:
        return self.outcome == FOUND

    def to_json_obj(self, timing: bool = True) -> dict:
        out = self.model.to_json_obj() if self.model is not None else {}
        out["outcome"] = self.outcome
        out["nodes"] = self.nodes
        if timing:
            out["ms"] = round(self.ms, 3)
        return out


class SearchInconclusive(RuntimeError):
    """Node budget ran out before the question was settled."""


class _Budget(Exception):
    pass


def _pattern_embedding(qadj: list[int], pat: Graph, order: list[int]) -> list[int] | None:
    """Map pattern vertices (0-based, in ``order``) injectively onto quotient
    vertices so every pattern edge lands on a quotient edge."""
    m = len(qadj)
    qdeg = [r.bit_count() for r in qadj]
    pdeg = [r.bit_count() for r in pat.adj]
    phi = [-1] * pat.n

    def place(k: int, used: int) -> bool:
        if k == len(order):
            return True
        p = order[k]
        for q in range(m):
            if used >> q & 1 or qdeg[q] < pdeg[p]:
                continue
            ok = True
            for r in iter_bits(pat.adj[p]):
                if phi[r] >= 0 and not qadj[q] >> phi[r] & 1:
                    ok = False
                    break
            if ok:
                phi[p] = q
                if place(k + 1, used | 1 << q):
                    return True
                phi[p] = -1
        return False

    return phi if place(0, 0) else None


class _Searcher:
    def __init__(self, g: Graph, pattern: Graph, cfg: SearchConfig):
        self.g = g
        self.pat = pattern
        self.cfg = cfg
        self.t = pattern.n
        self.need = pattern.size
        self.min_deg = min((r.bit_count() for r in pattern.adj), default=0)
        self.complete = pattern.size == self.t * (self.t - 1) // 2
        self.order = sorted(range(pattern.n), key=lambda p: (-pattern.adj[p].bit_count(), p))
        self.nodes = 0
        self.seen: set = set()
        self.rng = random.Random(cfg.seed)

    def run(self) -> list[int] | None:
        for comp in component_masks(self.g):
            if comp.bit_count() < self.t:
                continue
            blocks = [1 << v for v in iter_bits(comp)]
            found = self._dfs(blocks)
            if found is not None:
                return found
        return None

    def _key(self, blocks: list[int], qadj: list[int]):
        if not self.cfg.symmetry:
            return frozenset(blocks)
        from .graph import canonical_code
        return canonical_code(Graph(len(qadj), tuple(qadj)), cap=64)

    def _dfs(self, blocks: list[int]) -> list[int] | None:
        adj = self.g.adj
        m = len(blocks)
        nb = []
        for b in blocks:
            s = 0
            for v in iter_bits(b):
                s |= adj[v]
            nb.append(s & ~b)
        qadj = [0] * m
        for i in range(m):
            for j in range(i + 1, m):
                if nb[i] & blocks[j]:
                    qadj[i] |= 1 << j
                    qadj[j] |= 1 << i
        key = self._key(blocks, qadj)
        if key in self.seen:
            return None
        self.seen.add(key)
        self.nodes += 1
        if self.cfg.budget and self.nodes > self.cfg.budget:
            raise _Budget
        deg = [r.bit_count() for r in qadj]
        edges = sum(deg) // 2
        r = m - self.t
        if r == 0:
            if self.complete:
                return blocks if edges == self.need else None
            phi = _pattern_embedding(qadj, self.pat, self.order)
            return None if phi is None else [blocks[q] for q in phi]
        if edges - r < self.need:
            return None
        low = [i for i in range(m) if deg[i] < self.min_deg]
        if len(low) > 2 * r:
            return None
        loss = {}
        for i in range(m):
            for j in iter_bits(qadj[i] >> (i + 1)):
                j += i + 1
                loss[(i, j)] = (qadj[i] & qadj[j]).bit_count() + 1
        if self.cfg.counting:
            least = min(loss.values())
            bound = sum(max(1, least - k) for k in range(r))
            if edges - bound < self.need:
                return None
        if low:
            v = min(low, key=lambda i: (deg[i], i))
            cand = [(min(v, u), max(v, u)) for u in iter_bits(qadj[v])]
        else:
            cand = list(loss)
        if self.cfg.deterministic:
            cand.sort(key=lambda e: (loss[e], -(deg[e[0]] + deg[e[1]]), e))
        else:
            self.rng.shuffle(cand)
        for i, j in cand:
            nxt = blocks[:i] + blocks[i + 1:j] + blocks[j + 1:]
            nxt.insert(i, blocks[i] | blocks[j])
            found = self._dfs(nxt)
            if found is not None:
                return found
        return None


def has_minor(g: Graph, pattern: Graph, cfg: SearchConfig | None = None) -> SearchResult:
    """Exact decision of ``pattern`` being a minor of ``g``.

    Patterns must be connected (a single vertex is allowed).  Budget
    exhaustion gives an inconclusive result, never an absent one.
    """
    cfg = cfg or SearchConfig()
    if pattern.n == 0:
        raise ValueError("pattern must have at least one vertex")
    if not is_connected(pattern):
        raise ValueError("pattern must be connected")
    start = time.perf_counter()
    s = _Searcher(g, pattern, cfg)
    try:
        blocks = None if pattern.n > g.n else s.run()
    except _Budget:
        return SearchResult(INCONCLUSIVE, None, s.nodes, _ms(start))
    if blocks is None:
        return SearchResult(ABSENT, None, s.nodes, _ms(start))
    sets = [frozenset(v + 1 for v in iter_bits(b)) for b in blocks]
    model = MinorModel(g, sets, pattern)
    assert verify_minor_model(model), "search produced an invalid model"
    return SearchResult(FOUND, model, s.nodes, _ms(start))


def has_complete_minor(g: Graph, t: int, cfg: SearchConfig | None = None) -> SearchResult:
    if t < 1:
        raise ValueError("t must be at least 1")
    return has_minor(g, complete_graph(t), cfg)


def _ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0


def greedy_clique_minor(g: Graph) -> list[frozenset[int]]:
    """Cheap lower bound: contract min-degree vertices until the quotient
    is complete, keeping the largest complete quotient seen."""
    if g.n == 0:
        return []
    best: list[int] = []
    for comp in component_masks(g):
        blocks = [1 << v for v in iter_bits(comp)]
        while True:
            m = len(blocks)
            nb = []
            for b in blocks:
                s = 0
                for v in iter_bits(b):
                    s |= g.adj[v]
                nb.append(s & ~b)
            qadj = [sum(1 << j for j in range(m) if j != i and nb[i] & blocks[j])
                    for i in range(m)]
            deg = [r.bit_count() for r in qadj]
            if sum(deg) == m * (m - 1):
                if m > len(best):
                    best = list(blocks)
                break
            v = min(range(m), key=lambda i: (deg[i], i))
            if deg[v] == 0:
                blocks = blocks[:v] + blocks[v + 1:]
                continue
            u = min(iter_bits(qadj[v]), key=lambda j: ((qadj[v] & qadj[j]).bit_count(), j))
            i, j = min(u, v), max(u, v)
            blocks = blocks[:i] + [blocks[i] | blocks[j]] + blocks[i + 1:j] + blocks[j + 1:]
    return [frozenset(v + 1 for v in iter_bits(b)) for b in best]


def hadwiger(g: Graph, cfg: SearchConfig | None = None) -> tuple[int, MinorModel]:
    """Largest t with K_t a minor of g, with a witness model.

    Starts from a greedy contraction lower bound and climbs until the
    exact search reports absence.  Raises SearchInconclusive if a node
    budget runs out on the way.
    """
    cfg = cfg or SearchConfig()
    sets = greedy_clique_minor(g)
    t = len(sets)
    model = MinorModel(g, sets, complete_graph(t))
    upper = _edge_upper_bound(g)
    while t < upper:
        res = has_complete_minor(g, t + 1, cfg)
        if res.outcome == INCONCLUSIVE:
            raise SearchInconclusive(f"budget exhausted deciding K_{t + 1}")
        if not res.found:
            break
        t, model = t + 1, res.model
    return t, model


def _edge_upper_bound(g: Graph) -> int:
    best = 0
    for comp in component_masks(g):
        k = comp.bit_count()
        e = sum((g.adj[v] & comp).bit_count() for v in iter_bits(comp)) // 2
        t = k
        while t * (t - 1) // 2 > e:
            t -= 1
        best = max(best, t)
    return best


def k3311() -> Graph:
    """Complete 4-partite graph with parts 3, 3, 1, 1."""
    return complete_multipartite(3, 3, 1, 1)


def ik_sufficient(g: Graph, cfg: SearchConfig | None = None) -> MinorModel | None:
    """A K_7 or K_{3,3,1,1} minor model if one exists.

    Either certifies intrinsic knottedness; None says nothing either way.
    """
    for pat in (complete_graph(7), k3311()):
        res = has_minor(g, pat, cfg)
        if res.found:
            return res.model
    return None
