"""Minor models, contraction schedules and the constructive K_n certificates.

Certificates are built for complements of the three families: the mod-4
wheel schedules, the prism induction that strips a universal vertex per
step, and the outerplanar induction over independent 2-chords with its
order-11 case analysis.  Every branch set is reported in the host's
original vertex labels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from math import comb
from typing import Sequence, Union

from .graph import (
    Graph,
    GraphError,
    complement,
    complete_graph,
    contract_edge,
    delete_vertex,
    has_subgraph_clique,
    induced_subgraph,
    iter_bits,
    mask_connected,
)


class CertificateError(GraphError):
    """A certificate could not be built for the given input."""


# -- minor models -----------------------------------------------------------

@dataclass(frozen=True)
class MinorModel:
    """Branch sets in ``host``; set i stands for target vertex i + 1."""

    host: Graph
    branch_sets: Sequence[frozenset[int]]
    target: Graph

    @property
    def target_name(self) -> str:
        t = self.target
        if t.size == t.n * (t.n - 1) // 2:
            return f"K{t.n}"
        from .search import k3311
        if t == k3311():
            return "K3311"
        return f"H{t.n}"

    def to_json_obj(self) -> dict:
        out = {"target": self.target_name,
               "branch_sets": [sorted(s) for s in self.branch_sets]}
        if self.target_name.startswith("H"):
            out["target_edges"] = [list(e) for e in self.target.edges()]
        return out


def minor_model_violation(m: MinorModel) -> str | None:
    """First violated model condition, or None if ``m`` is a valid witness."""
    host, sets = m.host, [frozenset(s) for s in m.branch_sets]
    for s in sets:
        for v in s:
            if not isinstance(v, int) or not 1 <= v <= host.n:
                raise GraphError(f"branch set references invalid vertex {v!r}")
    if len(sets) != m.target.n:
        return f"{len(sets)} branch sets for a target of order {m.target.n}"
    masks = [sum(1 << (v - 1) for v in s) for s in sets]
    seen = 0
    for i, mask in enumerate(masks):
        if not mask:
            return f"branch set {i + 1} is empty"
        if seen & mask:
            return f"branch set {i + 1} overlaps an earlier one"
        seen |= mask
    for i, mask in enumerate(masks):
        if not mask_connected(host.adj, mask):
            return f"branch set {i + 1} is not connected"
    nbhd = []
    for mask in masks:
        s = 0
        for v in iter_bits(mask):
            s |= host.adj[v]
        nbhd.append(s)
    for a, b in m.target.edges():
        if not nbhd[a - 1] & masks[b - 1]:
            return f"no host edge between branch sets {a} and {b}"
    return None


def verify_minor_model(m: MinorModel) -> bool:
    return minor_model_violation(m) is None


# -- contraction schedules --------------------------------------------------

@dataclass(frozen=True)
class Contract:
    u: int
    v: int


@dataclass(frozen=True)
class Delete:
    v: int


Step = Union[Contract, Delete]


@dataclass(frozen=True)
class ContractionSchedule:
    """Steps in original host labels; applying them must expose K_target."""

    steps: tuple[Step, ...]
    target: int

    def to_json_obj(self) -> dict:
        steps = [{"contract": [s.u, s.v]} if isinstance(s, Contract) else {"delete": s.v}
                 for s in self.steps]
        return {"steps": steps, "target": self.target}

    @classmethod
    def from_json_obj(cls, obj: dict) -> ContractionSchedule:
        steps = []
        for s in obj["steps"]:
            if "contract" in s:
                steps.append(Contract(*map(int, s["contract"])))
            else:
                steps.append(Delete(int(s["delete"])))
        return cls(tuple(steps), int(obj["target"]))


class ScheduleError(CertificateError):
    def __init__(self, index: int, msg: str):
        super().__init__(f"step {index}: {msg}")
        self.index = index


def apply_schedule(host: Graph, s: ContractionSchedule) -> tuple[Graph, MinorModel]:
    """Run the steps; return the final graph and the K_target model it shows.

    The model uses the lexicographically first K_target clique of the
    final graph; its branch sets are the original vertices merged into
    each clique vertex.
    """
    g = host
    if g.labels is None:
        g = Graph(g.n, g.adj, tuple(frozenset((v,)) for v in g.vertices))
    for i, step in enumerate(s.steps):
        try:
            if isinstance(step, Contract):
                a, b = g.index_of(step.u), g.index_of(step.v)
                if a == b:
                    raise GraphError(f"{step.u} and {step.v} are already merged")
                g = contract_edge(g, a, b)
            else:
                g = delete_vertex(g, g.index_of(step.v))
        except GraphError as exc:
            raise ScheduleError(i, str(exc)) from None
    clique = has_subgraph_clique(g, s.target)
    if clique is None:
        raise CertificateError(f"schedule does not expose K_{s.target}")
    sets = [g.original(v) for v in clique]
    return g, MinorModel(host, sets, complete_graph(s.target))


# -- wheels -----------------------------------------------------------------

def wheel_hadwiger(n: int) -> int:
    return 3 * (n - 1) // 4


def wheel_schedule(n: int) -> ContractionSchedule:
    """Contractions in the complement of W_n exposing K_{floor(3(n-1)/4)}.

    The hub v_n is isolated in the complement and simply left out.
    """
    if n < 6:
        raise CertificateError("wheel schedules need n >= 6")
    t, r = divmod(n - 1, 4)
    steps: list[Step] = []
    if r == 0:                       # n = 4t + 1
        steps = [Contract(2 * l, 2 * l + 2 * t) for l in range(1, t + 1)]
    elif r == 1:                     # n = 4t + 2
        steps = [Contract(2 * l, 2 * l + 2 * t) for l in range(1, t + 1)]
        # v_{4t+1} sits between v_{4t} and v_1 on the rim; v_2 is its
        # least complement neighbour
        steps.append(Contract(4 * t + 1, 2))
    elif r == 2:                     # n = 4t + 3
        steps = [Contract(2 * l, 2 * l + 2 * t) for l in range(1, t + 1)]
        if t == 1:
            # n = 7: {v2, v4} misses v3 in the complement; absorbing v6
            # (instead of deleting it) gives the triangle {v2, v4, v6}
            steps.append(Contract(4, 6))
        else:
            steps.append(Delete(4 * t + 2))
    else:                            # n = 4t + 4
        steps = [Contract(2 * l, 2 * l + 2 * t + 2) for l in range(1, t + 1)]
        steps.append(Contract(2 * t + 2, 4 * t + 3))
    return ContractionSchedule(tuple(steps), wheel_hadwiger(n))


def wheel_certificate(n: int) -> MinorModel:
    from .families import wheel
    return apply_schedule(complement(wheel(n)), wheel_schedule(n))[1]


# -- edge-count bound for wheel complements ---------------------------------

@dataclass(frozen=True)
class BoundRow:
    k: int
    delta_lower: int | None      # lower bound on edges lost at step k
    edges_upper: int             # upper bound on |E(H_k)|


@dataclass(frozen=True)
class BoundTrace:
    n: int
    k_max: int
    hadwiger: int
    rows: tuple[BoundRow, ...]
    target_edges: int

    @property
    def bound(self) -> int:
        return self.rows[-1].edges_upper

    @property
    def verdict(self) -> bool:
        return self.bound < self.target_edges


def bound_trace(n: int) -> BoundTrace:
    """Edge ledger showing K_{h+1} cannot be reached in the wheel complement.

    H_0 (hub removed) is (n-4)-regular; every contraction loses at least
    one more edge than the shared neighbours of its ends, and the minimum
    shared count n - 7 drops by at most one per step, so step k loses at
    least (n - 5) - k edges.
    """
    if n < 6:
        raise CertificateError("bound trace needs n >= 6")
    k_max = (n - 2) // 4
    rows = [BoundRow(0, None, (n - 1) * (n - 4) // 2)]
    for k in range(1, k_max + 1):
        delta = (n - 5) - k
        rows.append(BoundRow(k, delta, rows[-1].edges_upper - delta))
    closed = (n - 1) * (n - 4) // 2 - k_max * (n - 5) + k_max * (k_max + 1) // 2
    assert rows[-1].edges_upper == closed
    h = wheel_hadwiger(n)
    return BoundTrace(n, k_max, h, tuple(rows), comb(h + 1, 2))


def closed_form_row(n: int) -> dict:
    """Closed forms by residue of n mod 4, doubled to stay integral."""
    s, r = divmod(n, 4)
    bound2, target2 = {
        0: (9 * s * s - 3 * s - 6, 9 * s * s - 3 * s),
        1: (9 * s * s + 3 * s - 8, 9 * s * s + 3 * s),
        2: (9 * s * s + 3 * s - 2, 9 * s * s + 3 * s),
        3: (9 * s * s + 9 * s - 2, 9 * s * s + 9 * s + 2),
    }[r]
    k_max = {0: s - 1, 1: s - 1, 2: s, 3: s}[r]
    hw = {0: 3 * s - 1, 1: 3 * s, 2: 3 * s, 3: 3 * s + 1}[r]
    return {"n": n, "residue": ("4s", "4s+1", "4s+2", "4s+3")[r], "s": s,
            "k_max": k_max, "hadwiger": hw, "bound": bound2 // 2, "target": target2 // 2}


# -- prisms -----------------------------------------------------------------

@lru_cache(maxsize=None)
def prism_base_schedules() -> dict[tuple[int, int, int], ContractionSchedule]:
    """Frozen 4-contraction K_7 schedules for the five order-11 prisms,
    in the labels of ``elongated_prism(a, b, c)``."""
    raw = json.loads(resources.files("nspminor.data").joinpath("prism_base.json").read_text())
    return {tuple(int(x) for x in k.split(",")): ContractionSchedule.from_json_obj(v)
            for k, v in raw.items()}


def _prism_sets(paths: list[list[int]]) -> list[frozenset[int]]:
    from .families import prism_paths
    inner = [p[1:-1] for p in paths]
    order = 6 + sum(len(x) for x in inner)
    if order == 11:
        rank = sorted(range(3), key=lambda i: -len(inner[i]))
        counts = tuple(len(inner[i]) for i in rank)
        canon = prism_paths(*counts)
        relabel = {}
        for ci, i in enumerate(rank):
            relabel.update(zip(canon[ci], paths[i]))
        sched = prism_base_schedules()[counts]
        from .families import elongated_prism
        _, model = apply_schedule(complement(elongated_prism(*counts)), sched)
        return [frozenset(relabel[v] for v in s) for s in model.branch_sets]
    long = [i for i in range(3) if inner[i]]
    if len(long) >= 2:
        i, j = sorted(long, key=lambda k: (-len(inner[k]), k))[:2]
        x, y = inner[i][0], inner[j][0]
        paths = [p[:] for p in paths]
        paths[i].remove(x)
        paths[j].remove(y)
    else:
        (i,) = long
        x, y = inner[i][0], inner[i][-1]
        paths = [p[:] for p in paths]
        paths[i] = [p for p in paths[i] if p not in (x, y)]
    # x and y have disjoint neighbourhoods in the prism, so {x, y} is
    # adjacent in the complement to every other vertex
    return _prism_sets(paths) + [frozenset((x, y))]


def prism_certificate(spec) -> MinorModel:
    """K_n model in the complement of an elongated prism of order 2n - 3."""
    from .families import Prism, elongated_prism, prism_paths
    if not isinstance(spec, Prism):
        spec = Prism(*spec)
    if spec.order % 2 == 0 or spec.order < 11:
        raise CertificateError(f"prism certificates need odd order >= 11, got {spec.order}")
    host = complement(elongated_prism(*spec.subdivisions))
    sets = _prism_sets(prism_paths(*spec.subdivisions))
    model = MinorModel(host, sets, complete_graph(len(sets)))
    _check(model)
    return model


def _check(model: MinorModel) -> None:
    problem = minor_model_violation(model)
    if problem is not None:
        raise CertificateError(f"constructed model is invalid: {problem}")


# -- maximal outerplanar ----------------------------------------------------

def _fan_sets(h: Graph, hub: int, cyc: list[int]) -> list[frozenset[int]]:
    """Fans are spanning subgraphs of a wheel; reuse the wheel schedule."""
    from .families import wheel
    p = cyc.index(hub)
    rim = cyc[p + 1:] + cyc[:p]
    size = h.n
    to_h = {k + 1: rim[k] for k in range(len(rim))}
    to_h[size] = hub
    _, model = apply_schedule(complement(wheel(size)), wheel_schedule(size))
    return [frozenset(x for v in s for x in h.original(to_h[v])) for s in model.branch_sets]


# Boundary-label branch sets for the order-11 case with a 5-chord (v1, v6)
# on the short side v2..v5; keyed by the apex of the triangle on (v1, v6)
# facing v7..v11 and by which B-side pair is missing from G.
def _five_chord_sets(comp, x: int, keep: tuple[int, int], merge: tuple[int, int]):
    c1, c2 = merge
    s1, s2 = keep
    if x == 7:
        if comp(8, 10):
            return "x7a", [{s1}, {s2}, {c1, 7}, {c2, 11}, {8}, {9, 6}, {10}]
        if comp(9, 11):
            return "x7b", [{s1}, {s2}, {c1, 7}, {c2, 8}, {9}, {10, 6}, {11}]
        raise CertificateError("both (v8, v10) and (v9, v11) lie in G")
    if x == 8:
        return "x8", [{s1}, {s2}, {c1, 8}, {c2, 11}, {7}, {9}, {10, 6}]
    return "x9", [{s1}, {s2}, {c1, 8}, {c2, 9}, {7}, {10, 6}, {11}]


NO_FIVE_CHORD_SETS = [{1, 7}, {2, 8}, {3, 9}, {4}, {5, 11}, {6}, {10}]


def order11_case(h: Graph, cyc: list[int]) -> tuple[str, list[frozenset[int]]]:
    """Order-11 base case: which branch applied, and the branch sets.

    The case tag is ``"rotation"`` when there is no 5-chord, else
    ``"x7a"``, ``"x7b"``, ``"x8"`` or ``"x9"`` for the apex of the triangle
    on the 5-chord, suffixed ``"/reflected"`` and ``"/35"`` when the
    reflection or the (v3, v5) variant of the short side was used.
    """
    n = 11
    pos = {v: i for i, v in enumerate(cyc)}

    def edge(a: int, b: int) -> bool:
        return bool(h.adj[a - 1] >> (b - 1) & 1)

    starts = sorted(pos[u] if (pos[v] - pos[u]) % n == 5 else pos[v]
                    for u, v in h.edges() if (pos[v] - pos[u]) % n in (5, 6))
    if starts:
        p = starts[0]
        label = {i: cyc[(p + i - 1) % n] for i in range(1, n + 1)}
        comp = lambda i, j: not edge(label[i], label[j])  # noqa: E731
        x = next(k for k in range(7, 12) if not comp(1, k) and not comp(6, k))
        suffix = ""
        if x >= 10:
            label = {i: label[(6 - i) % n + 1] for i in range(1, n + 1)}
            x = 18 - x
            suffix += "/reflected"
        if comp(2, 4):
            keep, merge = (2, 4), (3, 5)
        elif comp(3, 5):
            keep, merge = (3, 5), (2, 4)
            suffix += "/35"
        else:
            raise CertificateError("both (v2, v4) and (v3, v5) lie in G")
        case, sets = _five_chord_sets(comp, x, keep, merge)
        case += suffix
    else:
        for shift in range(n):
            for step in (1, -1):
                label = {i: cyc[(shift + step * (i - 1)) % n] for i in range(1, n + 1)}
                masks = [sum(1 << (label[i] - 1) for i in s) for s in NO_FIVE_CHORD_SETS]
                if _pairwise_complement_model(h, masks):
                    case, sets = "rotation" if step == 1 else "rotation/reflected", NO_FIVE_CHORD_SETS
                    break
            else:
                continue
            break
        else:
            raise CertificateError("no rotation aligns the fixed order-11 schedule")
    return case, [frozenset(x for i in s for x in h.original(label[i])) for s in sets]


def _pairwise_complement_model(h: Graph, masks: list[int]) -> bool:
    full = (1 << h.n) - 1
    cadj = [full ^ r ^ (1 << i) for i, r in enumerate(h.adj)]
    nb = []
    for m in masks:
        if not mask_connected(cadj, m):
            return False
        s = 0
        for v in iter_bits(m):
            s |= cadj[v]
        nb.append(s)
    return all(nb[i] & masks[j] for i in range(len(masks)) for j in range(i + 1, len(masks)))


def _outer_sets(h: Graph) -> list[frozenset[int]]:
    from .families import Fan, boundary_cycle, dichotomy
    cyc = boundary_cycle(h)
    d = dichotomy(h)
    if isinstance(d, Fan):
        return _fan_sets(h, d.hub, cyc)[: (h.n + 3) // 2]
    if h.n == 11:
        return order11_case(h, cyc)[1]
    pos = {v: i for i, v in enumerate(cyc)}
    apex = []
    for u, v in (d.e1, d.e2):
        a, b = pos[u], pos[v]
        mid = (a + 1) % h.n if (b - a) % h.n == 2 else (b + 1) % h.n
        apex.append(cyc[mid])
    i, j = apex
    rest = induced_subgraph(h, [v for v in h.vertices if v not in (i, j)])
    # the two ear apexes have disjoint neighbourhoods in G, so their merged
    # branch set sees everything in the complement
    return _outer_sets(rest) + [h.original(i) | h.original(j)]


def outerplanar_certificate(g: Graph) -> MinorModel:
    """K_n model in the complement of a maximal outerplanar graph of order 2n - 3."""
    from .families import outerplanar_spec
    if outerplanar_spec(g) is None:
        raise CertificateError("graph is not maximal outerplanar")
    if g.n % 2 == 0 or g.n < 11:
        raise CertificateError(f"outerplanar certificates need odd order >= 11, got {g.n}")
    h = Graph(g.n, g.adj, tuple(frozenset((v,)) for v in g.vertices))
    sets = _outer_sets(h)
    model = MinorModel(complement(g), sets, complete_graph(len(sets)))
    _check(model)
    return model


def certify(g: Graph) -> tuple[object, MinorModel]:
    """Dispatch on the family of ``g``; returns (spec, verified model)."""
    from .families import Prism, Wheel, classify
    spec = classify(g)
    if spec is None:
        raise CertificateError("graph is not a maximal non-separating planar graph")
    if isinstance(spec, Wheel):
        label = _wheel_labels(g)
        sched = wheel_schedule(spec.n)
        steps = tuple(Contract(label[s.u], label[s.v]) if isinstance(s, Contract)
                      else Delete(label[s.v]) for s in sched.steps)
        _, model = apply_schedule(complement(g), ContractionSchedule(steps, sched.target))
    elif isinstance(spec, Prism):
        model = prism_certificate(spec)
        iso = _prism_iso(g, spec)
        sets = [frozenset(iso[v] for v in s) for s in model.branch_sets]
        model = MinorModel(complement(g), sets, model.target)
    else:
        model = outerplanar_certificate(g)
    _check(model)
    return spec, model


def _wheel_labels(g: Graph) -> dict[int, int]:
    """Map wheel labels (rim 1..n-1 in cyclic order, hub n) onto ``g``."""
    n = g.n
    full = (1 << n) - 1
    hub = next(i + 1 for i in range(n) if g.adj[i] == full ^ (1 << i))
    rim_nb = {v: sorted(w + 1 for w in iter_bits(g.adj[v - 1]) if w + 1 != hub)
              for v in g.vertices if v != hub}
    first = min(rim_nb)
    walk = [first, rim_nb[first][0]]
    while len(walk) < n - 1:
        a, b = rim_nb[walk[-1]]
        walk.append(a if a != walk[-2] else b)
    label = {k + 1: walk[k] for k in range(n - 1)}
    label[n] = hub
    return label


def _prism_iso(g: Graph, spec) -> dict[int, int] | None:
    """Map canonical prism labels onto the vertices of ``g``."""
    from .families import prism_paths
    n = g.n
    degs = [r.bit_count() for r in g.adj]
    tris = []
    for u in range(n):
        for v in iter_bits(g.adj[u] >> (u + 1)):
            v += u + 1
            for w in iter_bits(g.adj[u] & g.adj[v] & ~((2 << v) - 1)):
                tris.append((u + 1, v + 1, w + 1))
    t1, t2 = tris
    traced = []
    for s in t1:
        start = next(w + 1 for w in iter_bits(g.adj[s - 1]) if w + 1 not in t1)
        path, prev, cur = [s], s, start
        while degs[cur - 1] == 2:
            path.append(cur)
            a, b = (w + 1 for w in iter_bits(g.adj[cur - 1]))
            prev, cur = cur, (a if a != prev else b)
        path.append(cur)
        traced.append(path)
    traced.sort(key=lambda p: -len(p))
    canon = prism_paths(*spec.subdivisions)
    iso = {}
    for cp, gp in zip(canon, traced):
        if len(cp) != len(gp):
            return None
        iso.update(zip(cp, gp))
    return iso
