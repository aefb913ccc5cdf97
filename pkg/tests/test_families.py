from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from nspminor import families as fam
from nspminor.graph import (
    Graph,
    GraphError,
    canonical_code,
    complete_graph,
    complete_multipartite,
    decode_graph6,
    encode_graph6,
    relabel,
)
from nspminor.search import has_minor

from oracles import (
    all_polygon_triangulations,
    count_up_to_isomorphism,
    partitions_at_most_three,
    to_nx,
)


def _shuffled(g, seed):
    perm = list(g.vertices)
    random.Random(seed).shuffle(perm)
    return relabel(g, perm)


def test_wheel_shape():
    w = fam.wheel(9)
    assert w.size == 16
    assert w.adj[8].bit_count() == 8
    assert sorted(r.bit_count() for r in w.adj[:8]) == [3] * 8


def test_wheel_too_small():
    with pytest.raises(GraphError):
        fam.Wheel(3)


def test_prism_shape():
    g = fam.elongated_prism(2, 1, 0)
    assert g.n == 9 and g.size == 12
    degs = sorted(r.bit_count() for r in g.adj)
    assert degs == [2, 2, 2] + [3] * 6
    assert g.has_edge(1, 2) and g.has_edge(4, 6)


def test_prism_spec_sorts():
    assert fam.Prism(0, 3, 1).subdivisions == (3, 1, 0)
    assert fam.Prism(0, 3, 1).order == 10


@pytest.mark.parametrize("order", range(6, 21))
def test_prism_counts_match_partition_oracle(order):
    specs = fam.enumerate_prisms(order)
    assert sorted(s.subdivisions for s in specs) == sorted(partitions_at_most_three(order - 6))


def test_prism_members_pairwise_distinct():
    specs = fam.enumerate_prisms(14)
    assert len({canonical_code(fam.build(s)) for s in specs}) == len(specs)


@pytest.mark.parametrize("n", range(4, 12))
def test_outerplanar_counts_match_dedupe_oracle(n, frozen):
    expected = frozen["outerplanar_counts"][str(n)]
    assert len(fam.enumerate_max_outerplanar(n)) == expected
    assert count_up_to_isomorphism(all_polygon_triangulations(n)) == expected


def test_outerplanar_enumeration_cap():
    with pytest.raises(GraphError):
        fam.enumerate_max_outerplanar(14)


def test_triangulation_validation():
    with pytest.raises(GraphError):
        fam.MaxOuterplanar(5, frozenset({(1, 3)}))           # too few chords
    with pytest.raises(GraphError):
        fam.MaxOuterplanar(6, frozenset({(1, 4), (2, 5), (3, 6)}))  # crossing


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_outerplanar_members_exclude_k4_and_k23(n):
    for spec in fam.enumerate_max_outerplanar(n):
        g = fam.max_outerplanar(spec)
        assert g.size == 2 * n - 3
        assert not has_minor(g, complete_graph(4)).found
        assert not has_minor(g, complete_multipartite(2, 3)).found
        apex = to_nx(g)
        apex.add_edges_from((0, v) for v in g.vertices)
        assert nx.check_planarity(apex)[0]


def test_boundary_cycle_is_hamiltonian():
    for spec in fam.enumerate_max_outerplanar(9):
        g = fam.max_outerplanar(spec)
        cyc = fam.boundary_cycle(g)
        assert sorted(cyc) == list(g.vertices)
        assert all(g.has_edge(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1]))


def _all_members(order):
    out = [fam.Wheel(order)]
    if order >= 6:
        out += fam.enumerate_prisms(order)
    if order <= 10:
        out += fam.enumerate_max_outerplanar(order)
    return out


@pytest.mark.parametrize("order", range(7, 11))
def test_classify_recovers_spec_after_relabel_and_graph6(order):
    for i, spec in enumerate(_all_members(order)):
        g = _shuffled(fam.build(spec), i)
        found = fam.classify(decode_graph6(encode_graph6(g)))
        assert found is not None
        assert type(found) is type(spec)
        assert canonical_code(fam.build(found)) == canonical_code(fam.build(spec))


def test_classify_rejects_other_graphs():
    assert fam.classify(complete_graph(5)) is None
    assert fam.classify(fam.fixture("sec7_planar")) is None
    g = fam.elongated_prism(2, 2, 0)
    assert fam.classify(Graph.from_edges(g.n, g.edges()[1:])) is None


@settings(max_examples=40)
@given(st.integers(7, 12), st.integers(0, 10 ** 6))
def test_classify_structural_agrees_with_minor_tests(n, seed):
    """A triangulated polygon is recognised; adding any chord breaks it,
    and the excluded-minor test agrees."""
    specs = fam.enumerate_max_outerplanar(n)
    rng = random.Random(seed)
    g = fam.max_outerplanar(rng.choice(specs))
    assert isinstance(fam.classify(g), fam.MaxOuterplanar)
    missing = [(u, v) for u in g.vertices for v in range(u + 1, n + 1) if not g.has_edge(u, v)]
    u, v = rng.choice(missing)
    h = Graph.from_edges(n, g.edges() + [(u, v)])
    assert fam.outerplanar_spec(h) is None
    assert has_minor(h, complete_graph(4)).found or has_minor(h, complete_multipartite(2, 3)).found


def test_fan_dichotomy():
    for n in range(7, 14):
        g = fam.max_outerplanar(fam.fan(n))
        d = fam.dichotomy(g)
        assert isinstance(d, fam.Fan) and fam.is_fan(g, d.hub)


def test_dichotomy_finds_independent_pair():
    # 2-chords here: (1,3), (4,6), (4,8)
    spec = fam.MaxOuterplanar(8, frozenset({(1, 3), (1, 4), (4, 8), (4, 7), (4, 6)}))
    d = fam.dichotomy(fam.max_outerplanar(spec))
    assert d == fam.IndependentPair((1, 3), (4, 6))


def test_dichotomy_order_too_small():
    with pytest.raises(GraphError):
        fam.dichotomy(fam.max_outerplanar(fam.fan(6)))


def test_chord_classes_lengths():
    g = fam.max_outerplanar(fam.fan(7))
    lengths = sorted(c.length for c in fam.chord_classes(g))
    assert lengths == [2, 2, 3, 3]


def test_spec_json_roundtrip():
    for spec in (fam.Wheel(9), fam.Prism(3, 1, 0), fam.fan(8)):
        assert fam.spec_from_json_obj(spec.to_json_obj()) == spec
    with pytest.raises(GraphError):
        fam.spec_from_json_obj({"family": "cube"})
    with pytest.raises(GraphError):
        fam.spec_from_json_obj({"family": "wheel"})


def test_fixtures():
    assert fam.fixture("sec7_complement").size == 28
    with pytest.raises(KeyError):
        fam.fixture("nope")
