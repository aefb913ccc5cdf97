"""The three families of maximal non-separating planar graphs.

Wheels W_n = K_1 + C_{n-1}, elongated triangular prisms and maximal
outerplanar graphs (triangulated polygons): builders, enumerators up to
isomorphism, a structural recogniser, and the chord analysis used by the
outerplanar certificates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Union

from .graph import (
    Graph,
    GraphError,
    canonical_code,
    delete_vertex,
    iter_bits,
    is_connected,
    complement,
)

OUTERPLANAR_CAP = 13


# -- specs ------------------------------------------------------------------

@dataclass(frozen=True)
class Wheel:
    n: int

    def __post_init__(self):
        if self.n < 4:
            raise GraphError("a wheel needs at least 4 vertices")

    def to_json_obj(self) -> dict:
        return {"family": "wheel", "n": self.n}


@dataclass(frozen=True)
class Prism:
    """Elongated prism; subdivision counts are kept sorted descending."""

    a: int
    b: int = 0
    c: int = 0

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 0:
            raise GraphError("subdivision counts must be non-negative")
        a, b, c = sorted((self.a, self.b, self.c), reverse=True)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def order(self) -> int:
        return 6 + self.a + self.b + self.c

    @property
    def subdivisions(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def to_json_obj(self) -> dict:
        return {"family": "prism", "subdivisions": list(self.subdivisions)}


@dataclass(frozen=True)
class MaxOuterplanar:
    """Triangulated n-gon with boundary v_1..v_n and the given chords."""

    n: int
    chords: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        norm = frozenset((min(u, v), max(u, v)) for u, v in self.chords)
        object.__setattr__(self, "chords", norm)
        _check_triangulation(self.n, norm)

    def to_json_obj(self) -> dict:
        return {"family": "outerplanar", "n": self.n,
                "chords": [list(c) for c in sorted(self.chords)]}


FamilySpec = Union[Wheel, Prism, MaxOuterplanar]


def spec_from_json_obj(obj: dict) -> FamilySpec:
    try:
        fam = obj["family"]
        if fam == "wheel":
            return Wheel(int(obj["n"]))
        if fam == "prism":
            a, b, c = (int(x) for x in obj["subdivisions"])
            return Prism(a, b, c)
        if fam == "outerplanar":
            return MaxOuterplanar(int(obj["n"]),
                                  frozenset(tuple(map(int, c)) for c in obj["chords"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed family spec: {exc}") from None
    raise GraphError(f"unknown family {obj.get('family')!r}")


def build(spec: FamilySpec) -> Graph:
    if isinstance(spec, Wheel):
        return wheel(spec.n)
    if isinstance(spec, Prism):
        return elongated_prism(*spec.subdivisions)
    return max_outerplanar(spec)


# -- wheels and prisms ------------------------------------------------------

def wheel(n: int) -> Graph:
    """Rim v_1..v_{n-1} in cyclic order, hub v_n."""
    if n < 4:
        raise GraphError("a wheel needs at least 4 vertices")
    rim = [(i, i % (n - 1) + 1) for i in range(1, n)]
    return Graph.from_edges(n, rim + [(i, n) for i in range(1, n)])


def prism_paths(a: int, b: int, c: int) -> list[list[int]]:
    """The three u_i..w_i paths of ``elongated_prism(a, b, c)``, endpoints included."""
    paths, nxt = [], 7
    for i, k in enumerate((a, b, c)):
        paths.append([i + 1] + list(range(nxt, nxt + k)) + [i + 4])
        nxt += k
    return paths


def elongated_prism(a: int, b: int, c: int) -> Graph:
    """Triangles u_A u_B u_C = 1,2,3 and w_A w_B w_C = 4,5,6.

    Subdivision vertices are numbered 7.. along P_A, then P_B, then P_C.
    """
    if min(a, b, c) < 0:
        raise GraphError("subdivision counts must be non-negative")
    edges = [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]
    for p in prism_paths(a, b, c):
        edges += list(zip(p, p[1:]))
    return Graph.from_edges(6 + a + b + c, edges)


def enumerate_prisms(order: int) -> list[Prism]:
    """One spec per partition of order - 6 into at most three parts."""
    if order < 6:
        raise GraphError("an elongated prism has at least 6 vertices")
    k = order - 6
    return [Prism(a, b, k - a - b)
            for a in range(k, -1, -1)
            for b in range(min(a, k - a), -1, -1)
            if k - a - b <= b]


# -- maximal outerplanar ----------------------------------------------------

def _crosses(e: tuple[int, int], f: tuple[int, int]) -> bool:
    (a, b), (c, d) = e, f
    return a < c < b < d or c < a < d < b


def _check_triangulation(n: int, chords: frozenset[tuple[int, int]]) -> None:
    if n < 3:
        raise GraphError("a polygon needs at least 3 vertices")
    if len(chords) != n - 3:
        raise GraphError(f"expected {n - 3} chords, got {len(chords)}")
    for u, v in chords:
        if not 1 <= u < v <= n or v - u == 1 or (u, v) == (1, n):
            raise GraphError(f"({u}, {v}) is not a chord of the {n}-gon")
    for e, f in combinations(sorted(chords), 2):
        if _crosses(e, f):
            raise GraphError(f"chords {e} and {f} cross")


def max_outerplanar(spec: MaxOuterplanar) -> Graph:
    n = spec.n
    ring = [(i, i % n + 1) for i in range(1, n + 1)]
    return Graph.from_edges(n, ring + sorted(spec.chords))


def fan(n: int) -> MaxOuterplanar:
    """All chords at v_1: the fan K_1 + P_{n-1}."""
    return MaxOuterplanar(n, frozenset((1, k) for k in range(3, n)))


def _triangulations(lo: int, hi: int) -> list[frozenset[tuple[int, int]]]:
    """Chord sets triangulating the convex polygon lo, lo+1, ..., hi.

    The edge (lo, hi) is treated as a side; chords exclude it.
    """
    return list(_triangulations_cached(lo, hi))


@lru_cache(maxsize=None)
def _triangulations_cached(lo: int, hi: int) -> tuple[frozenset, ...]:
    if hi - lo < 2:
        return (frozenset(),)
    out = []
    for apex in range(lo + 1, hi):
        extra = set()
        if apex - lo > 1:
            extra.add((lo, apex))
        if hi - apex > 1:
            extra.add((apex, hi))
        for left in _triangulations_cached(lo, apex):
            for right in _triangulations_cached(apex, hi):
                out.append(left | right | frozenset(extra))
    return tuple(out)


def all_triangulations(n: int) -> list[frozenset[tuple[int, int]]]:
    """Every labelled triangulation of the n-gon (Catalan(n-2) of them)."""
    return [c - {(1, n)} for c in _triangulations(1, n)]


def _dihedral_images(n: int, chords: frozenset[tuple[int, int]]):
    for shift in range(n):
        for flip in (False, True):
            out = []
            for u, v in chords:
                a, b = ((u - 1 + shift) % n, (v - 1 + shift) % n) if not flip else \
                       ((shift - u + 1) % n, (shift - v + 1) % n)
                out.append((min(a, b) + 1, max(a, b) + 1))
            yield tuple(sorted(out))


def enumerate_max_outerplanar(n: int, cap: int = OUTERPLANAR_CAP) -> list[MaxOuterplanar]:
    """All maximal outerplanar graphs of order n up to isomorphism.

    Labelled triangulations are first reduced modulo the dihedral group of
    the polygon, then deduplicated by canonical code; the result is sorted
    by canonical code.  Each entry keeps its boundary labelling 1..n.
    """
    if not 4 <= n <= cap:
        raise GraphError(f"order {n} outside enumerable range 4..{cap}")
    reps = {}
    for chords in all_triangulations(n):
        key = min(_dihedral_images(n, chords))
        if key not in reps:
            reps[key] = MaxOuterplanar(n, frozenset(key))
    by_code = {}
    for spec in reps.values():
        code = canonical_code(max_outerplanar(spec))
        by_code.setdefault(code, spec)
    return [by_code[c] for c in sorted(by_code)]


def edge_triangle_counts(g: Graph) -> dict[tuple[int, int], int]:
    return {(u, v): (g.adj[u - 1] & g.adj[v - 1]).bit_count() for u, v in g.edges()}


def boundary_cycle(g: Graph) -> list[int] | None:
    """Hamiltonian boundary of a maximal outerplanar graph, else None.

    Boundary edges are the edges lying in exactly one triangle.  The walk
    starts at vertex 1 and heads towards its smaller boundary neighbour.
    """
    n = g.n
    if n < 3 or g.size != 2 * n - 3:
        return None
    tri = edge_triangle_counts(g)
    nb = {v: [] for v in g.vertices}
    for (u, v), c in tri.items():
        if c == 1:
            nb[u].append(v)
            nb[v].append(u)
        elif c != 2:
            return None
    if any(len(x) != 2 for x in nb.values()):
        return None
    cyc = [1, min(nb[1])]
    while len(cyc) < n:
        a, b = nb[cyc[-1]]
        nxt = a if a != cyc[-2] else b
        if nxt == 1:
            return None
        cyc.append(nxt)
    if 1 not in nb[cyc[-1]]:
        return None
    return cyc


def outerplanar_spec(g: Graph) -> tuple[MaxOuterplanar, list[int]] | None:
    """Spec in boundary coordinates plus the map position -> vertex."""
    cyc = boundary_cycle(g)
    if cyc is None:
        return None
    pos = {v: i + 1 for i, v in enumerate(cyc)}
    n = g.n
    chords = set()
    for u, v in g.edges():
        a, b = sorted((pos[u], pos[v]))
        if b - a != 1 and (a, b) != (1, n):
            chords.add((a, b))
    try:
        return MaxOuterplanar(n, frozenset(chords)), cyc
    except GraphError:
        return None


# -- recognition ------------------------------------------------------------

def _is_wheel(g: Graph) -> bool:
    n = g.n
    if n < 4 or g.size != 2 * (n - 1):
        return False
    full = (1 << n) - 1
    for i in range(n):
        if g.adj[i] == full ^ (1 << i):
            rim = delete_vertex(g, i + 1)
            if is_connected(rim) and all(r.bit_count() == 2 for r in rim.adj):
                return True
    return False


def _prism_counts(g: Graph) -> tuple[int, int, int] | None:
    n = g.n
    if n < 6 or g.size != n + 3 or not is_connected(g):
        return None
    degs = [r.bit_count() for r in g.adj]
    if sorted(degs)[:n - 6] != [2] * (n - 6) or sorted(degs)[n - 6:] != [3] * 6:
        return None
    tris = []
    for u in range(n):
        for v in iter_bits(g.adj[u] >> (u + 1)):
            v += u + 1
            for w in iter_bits(g.adj[u] & g.adj[v] & ~((2 << v) - 1)):
                tris.append((u, v, w))
    if len(tris) != 2:
        return None
    t1, t2 = (sum(1 << x for x in t) for t in tris)
    if t1 & t2 or (t1 | t2).bit_count() != 6:
        return None
    counts, ends = [], 0
    for s in tris[0]:
        (start,) = list(iter_bits(g.adj[s] & ~t1))
        prev, cur, k = s, start, 0
        while degs[cur] == 2:
            a, b = iter_bits(g.adj[cur])
            prev, cur = cur, (a if a != prev else b)
            k += 1
        if not t2 >> cur & 1:
            return None
        ends |= 1 << cur
        counts.append(k)
    if ends != t2 or sum(counts) != n - 6:
        return None
    return tuple(sorted(counts, reverse=True))


def classify(g: Graph) -> FamilySpec | None:
    """Family of a maximal non-separating planar graph, or None.

    Overlaps at tiny orders resolve as Wheel > Prism > MaxOuterplanar.
    """
    if _is_wheel(g):
        return Wheel(g.n)
    counts = _prism_counts(g)
    if counts is not None:
        return Prism(*counts)
    found = outerplanar_spec(g)
    if found is not None:
        return found[0]
    return None


# -- chords and the 2-chord dichotomy ---------------------------------------

@dataclass(frozen=True)
class ChordClass:
    edge: tuple[int, int]
    length: int


@dataclass(frozen=True)
class IndependentPair:
    e1: tuple[int, int]
    e2: tuple[int, int]


@dataclass(frozen=True)
class Fan:
    hub: int


Dichotomy = Union[IndependentPair, Fan]


def _require_outerplanar(g: Graph) -> list[int]:
    cyc = boundary_cycle(g)
    if cyc is None or outerplanar_spec(g) is None:
        raise GraphError("graph is not maximal outerplanar")
    return cyc


def _chord_length(pos: dict[int, int], n: int, u: int, v: int) -> int:
    d = abs(pos[u] - pos[v])
    return min(d, n - d)


def chord_classes(g: Graph) -> list[ChordClass]:
    cyc = _require_outerplanar(g)
    n = g.n
    pos = {v: i for i, v in enumerate(cyc)}
    out = []
    for u, v in g.edges():
        length = _chord_length(pos, n, u, v)
        if length >= 2:
            out.append(ChordClass((u, v), length))
    return out


def _two_chord_in_arc(adj: tuple[int, ...], arc: list[int]) -> tuple[int, int]:
    """Descend inside the sub-polygon on ``arc`` to a 2-chord of the host.

    ``arc`` is a run of consecutive boundary vertices whose end vertices
    are adjacent.  Any 2-chord spanning three consecutive arc vertices is
    a 2-chord of the host; if the sub-polygon only has a 2-chord wrapping
    around the closing edge, drop the end vertex it misses and repeat.
    """
    lo, hi = 0, len(arc) - 1
    while True:
        for p in range(lo, hi - 1):
            if adj[arc[p] - 1] >> (arc[p + 2] - 1) & 1:
                return tuple(sorted((arc[p], arc[p + 2])))
        if adj[arc[hi - 1] - 1] >> (arc[lo] - 1) & 1:
            hi -= 1
        elif adj[arc[hi] - 1] >> (arc[lo + 1] - 1) & 1:
            lo += 1
        else:
            raise AssertionError("sub-polygon without a 2-chord")


def descend_two_chords(g: Graph) -> IndependentPair | Fan:
    """Constructive form of the 2-chord dichotomy for order >= 7.

    Start from a chord of maximum length.  If some chord is independent
    of it, descend inside the two disjoint arcs cut off by the pair to a
    2-chord in each.  Otherwise look for an independent pair among all
    chords; if none exists all chords share one vertex and g is a fan.
    """
    cyc = _require_outerplanar(g)
    n = g.n
    if n < 7:
        raise GraphError("dichotomy needs order at least 7")
    pos = {v: i for i, v in enumerate(cyc)}
    chords = sorted(chord_classes(g), key=lambda c: (-c.length, c.edge))
    pair = None
    for i, c in enumerate(chords):
        for d in chords[i + 1:]:
            if not set(c.edge) & set(d.edge):
                pair = (c.edge, d.edge)
                break
        if pair:
            break
    if pair is None:
        common = set(chords[0].edge)
        for c in chords[1:]:
            common &= set(c.edge)
        (hub,) = common
        return Fan(hub)
    arcs = []
    for e, f in (pair, pair[::-1]):
        a, b = sorted((pos[e[0]], pos[e[1]]))
        inner = cyc[a:b + 1]
        if pos[f[0]] in range(a, b + 1):
            inner = cyc[b:] + cyc[:a + 1]
        arcs.append(inner)
    e1 = _two_chord_in_arc(g.adj, arcs[0])
    e2 = _two_chord_in_arc(g.adj, arcs[1])
    return IndependentPair(*sorted((e1, e2)))


def dichotomy(g: Graph) -> Dichotomy:
    """Independent 2-chord pair (lexicographically least) or fan hub."""
    found = descend_two_chords(g)
    if isinstance(found, Fan):
        return found
    twos = sorted(c.edge for c in chord_classes(g) if c.length == 2)
    for i, e in enumerate(twos):
        for f in twos[i + 1:]:
            if not set(e) & set(f):
                return IndependentPair(e, f)
    raise AssertionError("descent found a pair but none is independent")


def is_fan(g: Graph, hub: int) -> bool:
    """True if ``hub`` is universal and the rest induces a path."""
    full = (1 << g.n) - 1
    if g.adj[hub - 1] != full ^ (1 << (hub - 1)):
        return False
    rest = delete_vertex(g, hub)
    degs = sorted(r.bit_count() for r in rest.adj)
    return is_connected(rest) and rest.size == rest.n - 1 and (rest.n < 2 or degs[-1] <= 2)


# -- fixtures ---------------------------------------------------------------

# Complement of an order-11 maximal planar graph; its complement has no
# K_7 minor but contracts to K_{3,3,1,1}.
SEC7_COMPLEMENT_EDGES = [
    (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (1, 8),
    (2, 4), (2, 7), (2, 11), (3, 6), (3, 10), (3, 11),
    (4, 6), (4, 7), (4, 8), (5, 8), (5, 9), (5, 11),
    (6, 9), (6, 10), (6, 11), (7, 9), (7, 10), (7, 11),
    (8, 9), (8, 10), (8, 11),
]


def fixture(name: str) -> Graph:
    if name == "sec7_complement":
        return Graph.from_edges(11, SEC7_COMPLEMENT_EDGES)
    if name == "sec7_planar":
        return complement(Graph.from_edges(11, SEC7_COMPLEMENT_EDGES))
    raise KeyError(f"unknown fixture {name!r}")


FIXTURES = ("sec7_complement", "sec7_planar")
