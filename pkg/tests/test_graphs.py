import itertools
import json
import random

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import categorical_multiedge_match

from gwloc.errors import GraphCapExceededError, InvalidArgumentError
from gwloc.graphs import (
    Edge,
    FixedGraph,
    Vertex,
    count_graphs,
    enumerate_graphs,
    enumerate_skeletons,
)


def G(r, vertices, edges, n=0):
    vs = [Vertex(*v) if isinstance(v, tuple) else Vertex(v) for v in vertices]
    return FixedGraph(r, tuple(vs), tuple(Edge(*e) for e in edges), n)


# --- independent brute force --------------------------------------------------


def _nx(graph):
    h = nx.MultiGraph()
    for i, v in enumerate(graph.vertices):
        h.add_node(i, key=(v.label, v.genus, tuple(sorted(v.legs))))
    for e in graph.edges:
        h.add_edge(e.u, e.v, degree=e.degree)
    return h


def brute_force(g, n, r, d):
    """Enumerate raw structures and dedupe with networkx isomorphism tests."""
    reps = []
    em = categorical_multiedge_match("degree", None)
    for V in range(1, d + 2):
        pairs = list(itertools.combinations(range(V), 2))
        for E in range(1, d + 1):
            for chosen in itertools.combinations_with_replacement(pairs, E):
                h0 = nx.MultiGraph()
                h0.add_nodes_from(range(V))
                h0.add_edges_from(chosen)
                if not nx.is_connected(h0):
                    continue
                b1 = E - V + 1
                if b1 > g:
                    continue
                for labels in itertools.product(range(r + 1), repeat=V):
                    if any(labels[u] == labels[v] for u, v in chosen):
                        continue
                    for genera in itertools.product(range(g + 1), repeat=V):
                        if sum(genera) + b1 != g:
                            continue
                        for degs in itertools.product(range(1, d + 1), repeat=E):
                            if sum(degs) != d:
                                continue
                            for legmap in itertools.product(range(V), repeat=n):
                                legs = [tuple(m + 1 for m in range(n) if legmap[m] == i) for i in range(V)]
                                gr = FixedGraph(
                                    r,
                                    tuple(Vertex(labels[i], genera[i], legs[i]) for i in range(V)),
                                    tuple(Edge(u, v, k) for (u, v), k in zip(chosen, degs)),
                                    n,
                                )
                                h = _nx(gr)
                                if not any(
                                    nx.is_isomorphic(h, o, node_match=lambda a, b: a["key"] == b["key"], edge_match=em)
                                    for o in reps
                                ):
                                    reps.append(h)
    return len(reps)


@pytest.mark.parametrize(
    "g,n,r,d",
    [(0, 0, 1, 1), (0, 0, 1, 2), (0, 0, 1, 3), (1, 0, 1, 1), (1, 0, 1, 2), (0, 1, 1, 2), (0, 2, 1, 2), (0, 0, 2, 2), (0, 2, 2, 1), (1, 1, 1, 2), (1, 0, 2, 2)],
)
def test_enumeration_matches_brute_force(g, n, r, d):
    assert len(enumerate_graphs(g, n, r, d)) == brute_force(g, n, r, d)


def test_small_examples():
    one = enumerate_graphs(0, 0, 1, 1)
    assert len(one) == 1 and one[0].edges[0].degree == 1
    assert len(enumerate_graphs(0, 0, 1, 2)) == 3
    two = enumerate_graphs(1, 0, 1, 1)
    assert len(two) == 2
    assert sorted(v.label for gr in two for v in gr.vertices if v.genus == 1) == [0, 1]


def test_r1_counts_d123():
    # single edge; deg-(2,1) path with either center label; 4-vertex path; two stars
    assert [len(enumerate_graphs(0, 0, 1, d)) for d in (1, 2, 3)] == [1, 3, 6]


@pytest.mark.parametrize("g,n,r,d", [(0, 0, 1, 3), (1, 0, 1, 2), (1, 2, 2, 2), (0, 3, 2, 2)])
def test_genus_invariant_per_graph(g, n, r, d):
    for gr in enumerate_graphs(g, n, r, d):
        assert gr.b1 + sum(v.genus for v in gr.vertices) == g
        assert gr.d == d and gr.n == n


def test_automorphism_orders():
    assert G(1, [0, 1], [(0, 1, 2)]).automorphism_order() == 2
    assert G(1, [0, 1, 0], [(0, 1, 1), (1, 2, 1)]).automorphism_order() == 2
    assert G(1, [(0, 0, (1,)), 1], [(0, 1, 1)], n=1).automorphism_order() == 1
    # two parallel degree-1 edges form the cycle: edge swap only
    assert G(1, [0, 1], [(0, 1, 1), (0, 1, 1)]).automorphism_order() == 2
    # star with three degree-1 teeth
    assert G(1, [0, 1, 1, 1], [(0, 1, 1), (0, 2, 1), (0, 3, 1)]).automorphism_order() == 6


def _brute_aut(graph):
    V = len(graph.vertices)
    count = 0
    edges = sorted((e.u, e.v, e.degree) for e in graph.edges)
    for p in itertools.permutations(range(V)):
        if any(graph.vertices[p[i]] != graph.vertices[i] for i in range(V)):
            continue
        mapped = sorted((min(p[u], p[v]), max(p[u], p[v]), k) for u, v, k in edges)
        if mapped == edges:
            count += 1
    return count * graph.edge_symmetry


@pytest.mark.parametrize("g,n,r,d", [(0, 0, 1, 4), (1, 0, 1, 3), (0, 2, 2, 2), (1, 1, 2, 2)])
def test_automorphisms_match_brute_force(g, n, r, d):
    for gr in enumerate_graphs(g, n, r, d):
        assert gr.graph_automorphisms() == _brute_aut(gr)


def test_canonical_form_properties():
    a = G(1, [0, 1, 0], [(0, 1, 1), (1, 2, 1)])
    b = G(1, [0, 1, 0], [(1, 2, 1), (0, 1, 1)])
    c = G(1, [1, 0, 1], [(0, 1, 1), (1, 2, 1)])
    assert a.canonical_form() == b.canonical_form()
    assert a.canonical_form() != c.canonical_form()
    assert isinstance(a.canonical_form(), bytes)
    same = G(1, [(0, 0, (1, 2)), 1], [(0, 1, 1)], n=2)
    swapped = G(1, [(0, 0, (2, 1)), 1], [(0, 1, 1)], n=2)
    apart = G(1, [(0, 0, (1,)), (1, 0, (2,))], [(0, 1, 1)], n=2)
    apart2 = G(1, [(0, 0, (2,)), (1, 0, (1,))], [(0, 1, 1)], n=2)
    assert same.canonical_form() == G(1, [(0, 0, (1, 2)), 1], [(0, 1, 1)], n=2).canonical_form()
    assert apart.canonical_form() != apart2.canonical_form()


def test_relabeled_presentations_share_canonical_form():
    rng = random.Random(3)
    for gr in enumerate_graphs(1, 2, 2, 2):
        V = len(gr.vertices)
        for _ in range(5):
            perm = list(range(V))
            rng.shuffle(perm)
            inv = {old: new for new, old in enumerate(perm)}
            vs = tuple(gr.vertices[old] for old in perm)
            es = list(gr.edges)
            rng.shuffle(es)
            es = tuple(Edge(inv[e.u], inv[e.v], e.degree) for e in es)
            assert FixedGraph(gr.r, vs, es, gr.n).canonical_form() == gr.canonical_form()


def test_moduli_dimension():
    assert G(1, [0, 1], [(0, 1, 1)]).moduli_dimension() == 0
    assert G(1, [(0, 1), 1], [(0, 1, 1)]).moduli_dimension() == 1
    star = G(1, [(0, 0, (1,)), 1, 1, 1], [(0, 1, 1), (0, 2, 1), (0, 3, 1)], n=1)
    assert star.moduli_dimension() == 1


def test_invalid_graphs():
    with pytest.raises(InvalidArgumentError):
        G(1, [0, 0], [(0, 1, 1)])
    with pytest.raises(InvalidArgumentError):
        G(1, [0, 1, 0], [(0, 1, 1)])
    with pytest.raises(InvalidArgumentError):
        G(1, [(0, 0, (2,)), 1], [(0, 1, 1)], n=1)
    with pytest.raises(InvalidArgumentError):
        enumerate_graphs(0, 0, 0, 1)


def test_cap_is_enforced():
    with pytest.raises(GraphCapExceededError):
        enumerate_graphs(0, 3, 2, 2, cap=10)


def test_json_roundtrip():
    for gr in enumerate_graphs(1, 1, 1, 2):
        back = FixedGraph.from_dict(json.loads(gr.to_json()))
        assert back == gr
        assert back.automorphism_order() == gr.automorphism_order()


@pytest.mark.parametrize("g,n,r,d", [(0, 3, 2, 2), (1, 2, 1, 2), (0, 4, 1, 3)])
def test_burnside_count_matches_enumeration(g, n, r, d):
    assert sum(count_graphs(sk, n) for sk in enumerate_skeletons(g, r, d)) == len(enumerate_graphs(g, n, r, d))
