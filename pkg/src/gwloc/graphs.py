"""Marked graphs indexing the torus-fixed loci of stable maps to P^r.

A graph has vertices labelled by fixed points 0..r (with a genus each),
edges carrying covering degrees, and numbered legs attached to vertices.
Enumeration works in two stages: leg-free *skeletons* are generated and
deduplicated by a canonical form, then leg assignments are taken modulo
the skeleton's automorphism group.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from math import factorial, prod
from typing import Iterator, Sequence

from .errors import GraphCapExceededError, InvalidArgumentError

DEFAULT_GRAPH_CAP = 10**7


@dataclass(frozen=True)
class Vertex:
    label: int
    genus: int = 0
    legs: tuple[int, ...] = ()


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    degree: int


@dataclass(frozen=True)
class Flag:
    edge: int
    vertex: int
    near: int  # i(F)
    far: int  # j(F)
    degree: int


@dataclass(frozen=True, eq=False)
class FixedGraph:
    r: int
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    n: int = 0

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self,
            "edges",
            tuple(Edge(min(e.u, e.v), max(e.u, e.v), e.degree) for e in self.edges),
        )
        self.validate()

    # -- invariants ------------------------------------------------------
    def validate(self):
        V = len(self.vertices)
        if V == 0 or not self.edges:
            raise InvalidArgumentError("a fixed graph needs at least one edge")
        for vx in self.vertices:
            if not 0 <= vx.label <= self.r:
                raise InvalidArgumentError(f"vertex label {vx.label} outside 0..{self.r}")
            if vx.genus < 0:
                raise InvalidArgumentError("negative vertex genus")
        for e in self.edges:
            if not (0 <= e.u < V and 0 <= e.v < V) or e.u == e.v:
                raise InvalidArgumentError(f"bad edge endpoints {e}")
            if e.degree < 1:
                raise InvalidArgumentError("edge degrees must be >= 1")
            if self.vertices[e.u].label == self.vertices[e.v].label:
                raise InvalidArgumentError("adjacent vertices must carry distinct labels")
        legs = sorted(m for vx in self.vertices for m in vx.legs)
        if legs != list(range(1, self.n + 1)):
            raise InvalidArgumentError(f"legs {legs} do not partition 1..{self.n}")
        if not _connected(V, [(e.u, e.v) for e in self.edges]):
            raise InvalidArgumentError("graph is not connected")

    @property
    def d(self) -> int:
        return sum(e.degree for e in self.edges)

    @property
    def b1(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    @property
    def g(self) -> int:
        return self.b1 + sum(v.genus for v in self.vertices)

    def valence(self, i: int) -> int:
        return sum((e.u == i) + (e.v == i) for e in self.edges)

    def flags(self) -> list[Flag]:
        out = []
        for k, e in enumerate(self.edges):
            lu, lv = self.vertices[e.u].label, self.vertices[e.v].label
            out.append(Flag(k, e.u, lu, lv, e.degree))
            out.append(Flag(k, e.v, lv, lu, e.degree))
        return out

    def flags_at(self, i: int) -> list[Flag]:
        return [f for f in self.flags() if f.vertex == i]

    def moduli_dimension(self) -> int:
        """Dimension of the product of vertex moduli spaces."""
        total = 0
        for i, vx in enumerate(self.vertices):
            total += max(0, 3 * vx.genus - 3 + self.valence(i) + len(vx.legs))
        return total

    def strip_legs(self) -> "FixedGraph":
        vs = tuple(Vertex(v.label, v.genus) for v in self.vertices)
        return FixedGraph(self.r, vs, self.edges, 0)

    # -- symmetry --------------------------------------------------------
    @cached_property
    def _symmetry(self):
        return _symmetries(self)

    def canonical_form(self) -> bytes:
        return self._symmetry[0]

    @cached_property
    def vertex_automorphisms(self) -> tuple[tuple[int, ...], ...]:
        """Vertex permutations induced by automorphisms (legs fixed pointwise)."""
        return self._symmetry[1]

    @cached_property
    def edge_symmetry(self) -> int:
        """Number of automorphisms acting trivially on vertices (parallel edges)."""
        counts: dict[Edge, int] = {}
        for e in self.edges:
            counts[e] = counts.get(e, 0) + 1
        return prod(factorial(c) for c in counts.values())

    def graph_automorphisms(self) -> int:
        return len(self.vertex_automorphisms) * self.edge_symmetry

    def automorphism_order(self) -> int:
        """|A_Gamma| = |Aut(Gamma)| * prod of edge degrees."""
        return self.graph_automorphisms() * prod(e.degree for e in self.edges)

    # -- serialization ---------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "d": self.d,
            "g": self.g,
            "n": self.n,
            "vertices": [
                {"label": v.label, "genus": v.genus, "legs": list(v.legs)}
                for v in self.vertices
            ],
            "edges": [[e.u, e.v, e.degree] for e in self.edges],
            "automorphism_order": self.automorphism_order(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FixedGraph":
        vs = [Vertex(v["label"], v.get("genus", 0), tuple(v.get("legs", ()))) for v in data["vertices"]]
        es = [Edge(*e) for e in data["edges"]]
        n = data.get("n", sum(len(v.legs) for v in vs))
        return cls(data["r"], tuple(vs), tuple(es), n)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __eq__(self, other):
        if not isinstance(other, FixedGraph):
            return NotImplemented
        return self.r == other.r and self.canonical_form() == other.canonical_form()

    def __hash__(self):
        return hash((self.r, self.canonical_form()))

    def __repr__(self):
        vs = ",".join(
            f"{v.label}" + (f"g{v.genus}" if v.genus else "") + (f"{list(v.legs)}" if v.legs else "")
            for v in self.vertices
        )
        es = ",".join(f"{e.u}-{e.v}:{e.degree}" for e in self.edges)
        return f"FixedGraph(r={self.r}; {vs}; {es})"


def _connected(V: int, pairs) -> bool:
    parent = list(range(V))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in pairs:
        parent[find(u)] = find(v)
    return len({find(x) for x in range(V)}) == 1


def _vertex_invariant(graph: FixedGraph, i: int):
    vx = graph.vertices[i]
    nbrs = []
    for e in graph.edges:
        if e.u == i:
            nbrs.append((e.degree, graph.vertices[e.v].label))
        elif e.v == i:
            nbrs.append((e.degree, graph.vertices[e.u].label))
    return (vx.label, vx.genus, vx.legs, tuple(sorted(nbrs)))


def _symmetries(graph: FixedGraph):
    """Canonical encoding and the vertex automorphism group, in one pass.

    Vertices are first sorted into classes by a local invariant; only
    orderings that respect the classes are tried.
    """
    V = len(graph.vertices)
    inv = [_vertex_invariant(graph, i) for i in range(V)]
    keys = sorted(set(inv))
    classes = [[i for i in range(V) if inv[i] == k] for k in keys]

    best = None
    best_orders = []
    for choice in itertools.product(*(itertools.permutations(c) for c in classes)):
        order = [i for block in choice for i in block]
        pos = [0] * V
        for p, i in enumerate(order):
            pos[i] = p
        edges = tuple(
            sorted((min(pos[e.u], pos[e.v]), max(pos[e.u], pos[e.v]), e.degree) for e in graph.edges)
        )
        enc = edges
        if best is None or enc < best:
            best, best_orders = enc, [order]
        elif enc == best:
            best_orders.append(order)
    vdata = tuple(inv[i][:3] for i in best_orders[0])
    code = repr((graph.r, vdata, best)).encode()
    # any two optimal orderings differ by an automorphism
    base = best_orders[0]
    autos = []
    for order in best_orders:
        perm = [0] * V
        for a, b in zip(base, order):
            perm[a] = b
        autos.append(tuple(perm))
    autos.sort()
    return code, tuple(autos)


def canonical_form(graph: FixedGraph) -> bytes:
    return graph.canonical_form()


def automorphism_order(graph: FixedGraph) -> int:
    return graph.automorphism_order()


def moduli_dimension(graph: FixedGraph) -> int:
    return graph.moduli_dimension()


# --- enumeration -----------------------------------------------------------


def _multigraphs(V: int, E: int) -> Iterator[tuple[tuple[int, int], ...]]:
    pairs = list(itertools.combinations(range(V), 2))
    if V == 1:
        return
    for chosen in itertools.combinations_with_replacement(pairs, E):
        if _connected(V, chosen):
            yield chosen


def _colorings(V: int, pairs, r: int):
    adj = [set() for _ in range(V)]
    for u, v in pairs:
        adj[u].add(v)
        adj[v].add(u)
    labels = [None] * V

    def rec(i):
        if i == V:
            yield tuple(labels)
            return
        for c in range(r + 1):
            if all(labels[j] != c for j in adj[i] if j < i):
                labels[i] = c
                yield from rec(i + 1)
        labels[i] = None

    yield from rec(0)


def _positive_compositions(total: int, parts: int):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _positive_compositions(total - first, parts - 1):
            yield (first,) + rest


def _weak_compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def _validate_request(g, n, r, d):
    for name, val, low in (("g", g, 0), ("n", n, 0), ("r", r, 1), ("d", d, 1)):
        if not isinstance(val, int) or val < low:
            raise InvalidArgumentError(f"{name} must be an integer >= {low}, got {val!r}")


def enumerate_skeletons(g: int, r: int, d: int, cap: int = DEFAULT_GRAPH_CAP) -> list[FixedGraph]:
    """Leg-free fixed graphs of total genus ``g`` and degree ``d`` in P^r, one per class."""
    _validate_request(g, 0, r, d)
    seen: dict[bytes, FixedGraph] = {}
    for V in range(1, d + 2):
        for E in range(max(1, V - 1), min(d, V - 1 + g) + 1):
            b1 = E - V + 1
            for pairs in _multigraphs(V, E):
                for labels in _colorings(V, pairs, r):
                    for genera in _weak_compositions(g - b1, V):
                        vs = tuple(Vertex(labels[i], genera[i]) for i in range(V))
                        for degs in _positive_compositions(d, E):
                            es = tuple(Edge(u, v, k) for (u, v), k in zip(pairs, degs))
                            gr = FixedGraph(r, vs, es, 0)
                            code = gr.canonical_form()
                            if code not in seen:
                                seen[code] = gr
                                if len(seen) > cap:
                                    raise GraphCapExceededError(cap)
    return [seen[k] for k in sorted(seen)]


def leg_orbits(skeleton: FixedGraph, n: int) -> Iterator[tuple[int, ...]]:
    """Leg maps {1..n} -> vertices, one per orbit of the skeleton's automorphisms."""
    V = len(skeleton.vertices)
    group = [p for p in skeleton.vertex_automorphisms if any(p[i] != i for i in range(V))]
    for a in itertools.product(range(V), repeat=n):
        if all(tuple(p[x] for x in a) >= a for p in group):
            yield a


def attach_legs(skeleton: FixedGraph, assignment: Sequence[int]) -> FixedGraph:
    legs: list[list[int]] = [[] for _ in skeleton.vertices]
    for m, v in enumerate(assignment, start=1):
        legs[v].append(m)
    vs = tuple(
        Vertex(vx.label, vx.genus, tuple(legs[i])) for i, vx in enumerate(skeleton.vertices)
    )
    return FixedGraph(skeleton.r, vs, skeleton.edges, len(assignment))


def enumerate_graphs(g: int, n: int, r: int, d: int, cap: int = DEFAULT_GRAPH_CAP) -> list[FixedGraph]:
    """All marked fixed graphs for M_{g,n}(P^r, d), one per isomorphism class.

    Raises :class:`GraphCapExceededError` once more than ``cap`` graphs have
    been produced.
    """
    _validate_request(g, n, r, d)
    out: list[FixedGraph] = []
    for sk in enumerate_skeletons(g, r, d, cap):
        for a in leg_orbits(sk, n):
            out.append(attach_legs(sk, a))
            if len(out) > cap:
                raise GraphCapExceededError(cap)
    return out


def count_graphs(skeleton: FixedGraph, n: int) -> int:
    """Number of marked graphs with ``n`` legs over a skeleton (Burnside)."""
    V = len(skeleton.vertices)
    group = skeleton.vertex_automorphisms
    total = 0
    for p in group:
        fixed = sum(1 for i in range(V) if p[i] == i)
        total += fixed**n
    return total // len(group)
