"""Simple undirected graphs on vertices 1..n with the minor operations.

Adjacency is stored as one bitmask per vertex (bit ``i - 1`` stands for
vertex ``i``), so edge tests are a shift and a mask.  Every operation
returns a new graph; nothing is mutated in place.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

CANON_CAP = 16


class GraphError(ValueError):
    """Raised for invalid vertices, missing edges or malformed input."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the 0-based positions of the set bits of ``mask``."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple graph.

    ``adj[i]`` is the neighbour bitmask of vertex ``i + 1``.  ``labels``
    optionally maps each current vertex to the set of original labels
    merged into it; equality and hashing ignore it.
    """

    n: int
    adj: tuple[int, ...]
    labels: tuple[frozenset[int], ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphError("adjacency length does not match order")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full or row >> i & 1:
                raise GraphError(f"bad adjacency row for vertex {i + 1}")
            for j in iter_bits(row):
                if not self.adj[j] >> i & 1:
                    raise GraphError("adjacency is not symmetric")
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("label map length does not match order")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels=None) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n) or u == v:
                raise GraphError(f"invalid edge ({u}, {v}) for order {n}")
            rows[u - 1] |= 1 << (v - 1)
            rows[v - 1] |= 1 << (u - 1)
        return cls(n, tuple(rows), labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.size})"

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def size(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for i, row in enumerate(self.adj):
            for j in iter_bits(row >> (i + 1)):
                out.append((i + 1, i + j + 2))
        return out

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return bool(self.adj[u - 1] >> (v - 1) & 1)

    def original(self, v: int) -> frozenset[int]:
        """Original labels merged into current vertex ``v``."""
        self._check(v)
        if self.labels is None:
            return frozenset((v,))
        return self.labels[v - 1]

    def index_of(self, label: int) -> int:
        """Current vertex whose label set contains original ``label``."""
        if self.labels is None:
            self._check(label)
            return label
        for i, ls in enumerate(self.labels):
            if label in ls:
                return i + 1
        raise GraphError(f"original label {label} is not present")

    def _check(self, v: int) -> None:
        if not isinstance(v, int) or not 1 <= v <= self.n:
            raise GraphError(f"vertex {v!r} not in 1..{self.n}")

    def _label_list(self) -> list[frozenset[int]]:
        if self.labels is None:
            return [frozenset((i,)) for i in self.vertices]
        return list(self.labels)


# -- constructors -----------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << i) for i in range(n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def join(g: Graph, h: Graph) -> Graph:
    """g + h: disjoint union plus every edge between the two parts."""
    edges = list(g.edges())
    edges += [(u + g.n, v + g.n) for u, v in h.edges()]
    edges += [(u, v + g.n) for u in g.vertices for v in h.vertices]
    return Graph.from_edges(g.n + h.n, edges)


def complete_multipartite(*parts: int) -> Graph:
    offsets, total = [], 0
    for p in parts:
        offsets.append(total)
        total += p
    edges = []
    for a, b in combinations(range(len(parts)), 2):
        for i in range(parts[a]):
            for j in range(parts[b]):
                edges.append((offsets[a] + i + 1, offsets[b] + j + 1))
    return Graph.from_edges(total, edges)


# -- queries ----------------------------------------------------------------

def neighbors(g: Graph, v: int) -> frozenset[int]:
    g._check(v)
    return frozenset(i + 1 for i in iter_bits(g.adj[v - 1]))


def degree(g: Graph, v: int) -> int:
    g._check(v)
    return g.adj[v - 1].bit_count()


def component_masks(g: Graph) -> list[int]:
    """Vertex bitmasks of the connected components, in order of least vertex."""
    seen, comps = 0, []
    for i in range(g.n):
        if seen >> i & 1:
            continue
        comp = frontier = 1 << i
        while frontier:
            nxt = 0
            for j in iter_bits(frontier):
                nxt |= g.adj[j]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return len(component_masks(g)) <= 1


def mask_connected(adj: tuple[int, ...] | list[int], mask: int) -> bool:
    """True if the vertices in ``mask`` induce a connected subgraph."""
    if not mask:
        return False
    reach = frontier = mask & -mask
    while frontier:
        nxt = 0
        for j in iter_bits(frontier):
            nxt |= adj[j]
        frontier = nxt & mask & ~reach
        reach |= frontier
    return reach == mask


# -- minor operations -------------------------------------------------------

def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full ^ row ^ (1 << i) for i, row in enumerate(g.adj)),
                 g.labels)


def add_edge(g: Graph, u: int, v: int) -> Graph:
    g._check(u)
    g._check(v)
    if u == v:
        raise GraphError("self-loops are not allowed")
    rows = list(g.adj)
    rows[u - 1] |= 1 << (v - 1)
    rows[v - 1] |= 1 << (u - 1)
    return Graph(g.n, tuple(rows), g.labels)


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    if not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    rows = list(g.adj)
    rows[u - 1] &= ~(1 << (v - 1))
    rows[v - 1] &= ~(1 << (u - 1))
    return Graph(g.n, tuple(rows), g.labels)


def _drop_bit(row: int, i: int) -> int:
    low = row & ((1 << i) - 1)
    return low | (row >> (i + 1)) << i


def delete_vertex(g: Graph, v: int) -> Graph:
    """Remove ``v``; vertices above it shift down by one."""
    g._check(v)
    i = v - 1
    rows = tuple(_drop_bit(row, i) for k, row in enumerate(g.adj) if k != i)
    labels = g._label_list()
    del labels[i]
    return Graph(g.n - 1, rows, tuple(labels))


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Merge the endpoints of edge (u, v) into the smaller index.

    Parallel edges are coalesced.  The label map of the merged vertex is
    the union of both label sets, so the result can always be read back
    in terms of the original vertices.
    """
    if not g.has_edge(u, v):
        raise GraphError(f"cannot contract non-edge ({u}, {v})")
    keep, gone = min(u, v) - 1, max(u, v) - 1
    rows = list(g.adj)
    merged = (rows[keep] | rows[gone]) & ~(1 << keep) & ~(1 << gone)
    rows[keep] = merged
    for j in iter_bits(merged):
        rows[j] |= 1 << keep
    labels = g._label_list()
    labels[keep] = labels[keep] | labels[gone]
    del labels[gone]
    del rows[gone]
    rows = [_drop_bit(row, gone) for row in rows]
    return Graph(g.n - 1, tuple(rows), tuple(labels))


def subdivide_edge(g: Graph, u: int, v: int, k: int) -> Graph:
    """Replace edge (u, v) by a u-v path with ``k`` new internal vertices.

    New vertices take indices n+1..n+k in order from ``u`` to ``v``.
    """
    if k < 0:
        raise GraphError("subdivision count must be non-negative")
    if not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    if k == 0:
        return g
    edges = [e for e in g.edges() if e != (min(u, v), max(u, v))]
    chain = [u] + list(range(g.n + 1, g.n + k + 1)) + [v]
    edges += list(zip(chain, chain[1:]))
    labels = None
    if g.labels is not None:
        top = max((max(ls) for ls in g.labels if ls), default=0)
        labels = g.labels + tuple(frozenset((top + i,)) for i in range(1, k + 1))
    return Graph.from_edges(g.n + k, edges, labels)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on ``vertices``, renumbered 1.. in increasing order."""
    keep = sorted(set(vertices))
    for v in keep:
        g._check(v)
    pos = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        row = 0
        for w in iter_bits(g.adj[v - 1]):
            if w + 1 in pos:
                row |= 1 << pos[w + 1]
        rows.append(row)
    labels = tuple(g.original(v) for v in keep)
    return Graph(len(keep), tuple(rows), labels)


def relabel(g: Graph, perm: dict[int, int] | list[int]) -> Graph:
    """Rename vertex ``v`` to ``perm[v]`` (a permutation of 1..n)."""
    if isinstance(perm, list):
        perm = {i + 1: p for i, p in enumerate(perm)}
    if sorted(perm) != list(g.vertices) or sorted(perm.values()) != list(g.vertices):
        raise GraphError("relabeling is not a permutation of the vertices")
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def has_subgraph_clique(g: Graph, t: int) -> list[int] | None:
    """Lexicographically first t-clique of ``g`` (as 1-based vertices)."""
    if t == 0:
        return []

    def grow(clique: list[int], cand: int) -> list[int] | None:
        if len(clique) == t:
            return clique
        for j in iter_bits(cand):
            if len(clique) + (cand >> j).bit_count() < t:
                return None
            found = grow(clique + [j], cand & g.adj[j] & ~((2 << j) - 1))
            if found is not None:
                return found
        return None

    found = grow([], (1 << g.n) - 1)
    return None if found is None else [j + 1 for j in found]


# -- canonical form ---------------------------------------------------------

def _refine(adj: tuple[int, ...], cells: list[int]) -> list[int]:
    """Equitable refinement of an ordered partition (cells are bitmasks).

    Cells split by the vector of neighbour counts into every cell; the
    new pieces are ordered by that vector, so the result depends only on
    the isomorphism type of (graph, partition).
    """
    while True:
        out = []
        for cell in cells:
            if cell & (cell - 1) == 0:
                out.append(cell)
                continue
            sig: dict[tuple[int, ...], int] = {}
            for v in iter_bits(cell):
                key = tuple((adj[v] & c).bit_count() for c in cells)
                sig[key] = sig.get(key, 0) | 1 << v
            out.extend(sig[k] for k in sorted(sig))
        if len(out) == len(cells):
            return out
        cells = out


def _leaf_code(adj: tuple[int, ...], order: list[int]) -> int:
    n = len(order)
    code = 0
    for a in range(n):
        row = adj[order[a]]
        for b in range(a + 1, n):
            code = code << 1 | (row >> order[b] & 1)
    return code


def canonical_code(g: Graph, cap: int = CANON_CAP) -> tuple[int, int]:
    """Isomorphism-invariant key: equal codes iff the graphs are isomorphic.

    Colour refinement plus individualisation, keeping the largest
    upper-triangle adjacency word over all leaves.  Branches are pruned
    by discovered automorphisms that fix the current individualised
    prefix pointwise, which keeps symmetric graphs cheap.
    """
    if g.n > cap:
        raise GraphError(f"order {g.n} exceeds canonical form cap {cap}")
    n, adj = g.n, g.adj
    if n <= 1:
        return (n, 0)
    best_code = -1
    best_order: list[int] = []
    autos: list[list[int]] = []

    def search(cells: list[int], prefix: list[int]) -> None:
        nonlocal best_code, best_order
        cells = _refine(adj, cells)
        if len(cells) == n:
            order = [c.bit_length() - 1 for c in cells]
            code = _leaf_code(adj, order)
            if code > best_code:
                best_code, best_order = code, order
            elif code == best_code:
                perm = [0] * n
                for a, b in zip(best_order, order):
                    perm[a] = b
                autos.append(perm)
            return
        k = next(i for i, c in enumerate(cells) if c & (c - 1))
        target = cells[k]
        done = 0
        for v in iter_bits(target):
            if done >> v & 1:
                continue
            search(cells[:k] + [1 << v, target & ~(1 << v)] + cells[k + 1:],
                   prefix + [v])
            done |= _orbit(v, prefix, autos)

    search([(1 << n) - 1], [])
    return (n, best_code)


def _orbit(v: int, prefix: list[int], autos: list[list[int]]) -> int:
    """Orbit of v under found automorphisms that fix ``prefix`` pointwise."""
    gens = [p for p in autos if all(p[x] == x for x in prefix)]
    orbit = frontier = 1 << v
    while frontier:
        nxt = 0
        for x in iter_bits(frontier):
            for p in gens:
                nxt |= 1 << p[x]
        frontier = nxt & ~orbit
        orbit |= frontier
    return orbit


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.size != h.size:
        return False
    return canonical_code(g, cap=max(CANON_CAP, g.n)) == canonical_code(h, cap=max(CANON_CAP, h.n))


# -- graph6 -----------------------------------------------------------------

def encode_graph6(g: Graph) -> str:
    """graph6 text for ``g`` (no header, no newline)."""
    n = g.n
    if n < 63:
        out = [chr(n + 63)]
    elif n < 258048:
        out = ["~"] + [chr(((n >> s) & 63) + 63) for s in (12, 6, 0)]
    else:
        raise GraphError("order too large for graph6")
    bits = []
    for j in range(1, n):
        row = g.adj[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits += [0] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = val << 1 | b
        out.append(chr(val + 63))
    return "".join(out)


def decode_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s or any(not 63 <= ord(c) <= 126 for c in s):
        raise GraphError(f"malformed graph6 string {text!r}")
    vals = [ord(c) - 63 for c in s]
    if vals[0] == 63:
        if len(vals) < 4 or vals[1] == 63:
            raise GraphError(f"unsupported graph6 size prefix in {text!r}")
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        vals = vals[4:]
    else:
        n = vals[0]
        vals = vals[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(vals) != need:
        raise GraphError(f"graph6 body has {len(vals)} bytes, expected {need}")
    bits = [(v >> s) & 1 for v in vals for s in range(5, -1, -1)]
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i + 1, j + 1))
            k += 1
    if any(bits[k:]):
        raise GraphError("nonzero padding bits in graph6 string")
    return Graph.from_edges(n, edges)


# -- JSON -------------------------------------------------------------------

def to_json_obj(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def from_json_obj(obj: dict) -> Graph:
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed JSON graph: {exc}") from None
    for u, v in edges:
        if u >= v:
            raise GraphError(f"JSON edge [{u}, {v}] must satisfy u < v")
    return Graph.from_edges(n, edges)


def parse_graph(text: str) -> Graph:
    """Accept either a JSON graph object or a graph6 line."""
    s = text.strip()
    if s.startswith("{"):
        try:
            obj = json.loads(s)
        except json.JSONDecodeError as exc:
            raise GraphError(f"malformed JSON graph: {exc}") from None
        return from_json_obj(obj)
    return decode_graph6(s)
