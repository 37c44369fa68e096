"""Per-graph contributions to equivariant integrals over M_{g,n}(P^r, d).

For a fixed graph the contribution is

    1/|A| * prod_legs lambda_{i(m)}^{l_m} * prod_edges edge_factor
          * prod_vertices  integral over M_{g(v), val+legs} of the vertex integrand

with the vertex integrand assembled from ``flag_factor`` series and the
Hodge polynomial from ``vertex_factor``.  Everything is evaluated at numeric
torus weights; the total over all graphs does not depend on them.
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Iterator, Sequence

from .errors import InvalidArgumentError, NonGenericWeightsError, UnsupportedGenusError
from .exact import compositions
from .graphs import FixedGraph, Flag
from .integrals import IntegralCache, VertexIntegrand, default_cache, integral_g0_closed, vertex_integral

log = logging.getLogger(__name__)

# Hodge polynomials are coefficient tuples in the genus-1 class lambda,
# truncated after the linear term (lambda^2 = 0 on M_{1,n}).
HodgePoly = tuple

_PRIMES = (1009, 1013, 1019, 1021, 1031, 1033, 1039, 1049, 1051, 1061, 1063, 1069)


@dataclass(frozen=True)
class WeightVector:
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if len(vals) < 2:
            raise InvalidArgumentError("need at least two torus weights")
        if len(set(vals)) != len(vals):
            raise NonGenericWeightsError(f"torus weights must be distinct: {vals}")
        object.__setattr__(self, "values", vals)

    @property
    def r(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def scaled(self, c) -> "WeightVector":
        return WeightVector(tuple(c * v for v in self.values))

    def permuted(self, perm: Sequence[int]) -> "WeightVector":
        return WeightVector(tuple(self.values[p] for p in perm))

    def tangent_product(self, i: int) -> Fraction:
        """prod_{j != i} (lambda_i - lambda_j): the tangent weights at p_i."""
        return prod((self.values[i] - v for j, v in enumerate(self.values) if j != i), start=Fraction(1))

    def as_strings(self) -> list[str]:
        return [str(v) for v in self.values]


def default_weights(r: int) -> WeightVector:
    """Distinct primes of alternating sign."""
    if r + 1 > len(_PRIMES):
        raise InvalidArgumentError(f"r={r} is larger than supported")
    return WeightVector(tuple(p if i % 2 == 0 else -p for i, p in enumerate(_PRIMES[: r + 1])))


def weight_stream(r: int, seed: int = 0) -> Iterator[WeightVector]:
    """Deterministic sequence of weight vectors: the default first, then random ones."""
    yield default_weights(r)
    rng = random.Random(seed)
    while True:
        vals = set()
        while len(vals) < r + 1:
            v = rng.randint(-5000, 5000)
            if v:
                vals.add(v)
        yield WeightVector(tuple(sorted(vals, key=lambda _: rng.random())))


# --- building blocks ----------------------------------------------------------


def flag_weight(flag: Flag, w: WeightVector) -> Fraction:
    """omega_F = (lambda_{i(F)} - lambda_{j(F)}) / d_e."""
    return (w[flag.near] - w[flag.far]) / flag.degree


def edge_factor(i: int, j: int, degree: int, w: WeightVector) -> Fraction:
    """Edge part of 1/e(N^vir) for a degree-``degree`` cover of the line p_i p_j."""
    diff = w[i] - w[j]
    if diff == 0:
        raise NonGenericWeightsError("coincident weights on an edge")
    value = Fraction((-1) ** degree * degree ** (2 * degree), factorial(degree) ** 2) / diff ** (2 * degree)
    for a in range(degree + 1):
        b = degree - a
        for k in range(len(w)):
            if k in (i, j):
                continue
            den = Fraction(a * w[i] + b * w[j], degree) - w[k]
            if den == 0:
                raise NonGenericWeightsError(f"edge weight vanishes for a={a}, k={k}")
            value /= den
    return value


def vertex_factor(label: int, genus: int, w: WeightVector) -> HodgePoly:
    """prod_{j != i} c_{1/(l_i - l_j)}(E^dual) (l_i - l_j)^(g-1) as a polynomial in lambda."""
    if genus == 0:
        return (1 / w.tangent_product(label),)
    if genus == 1:
        s = sum((1 / (w[label] - v) for j, v in enumerate(w.values) if j != label), start=Fraction(0))
        return (Fraction(1), -s)
    raise UnsupportedGenusError(f"vertex genus {genus} needs Hodge integrals beyond genus 1")


def flag_factor(flag: Flag, w: WeightVector, order: int) -> list[Fraction]:
    """Coefficients of psi_F^k, k <= order, in prod_{j != i}(l_i - l_j) / (omega_F - psi_F)."""
    om = flag_weight(flag, w)
    t = w.tangent_product(flag.near)
    return [t / om ** (k + 1) for k in range(order + 1)]


def _polymul(p: HodgePoly, q: HodgePoly) -> HodgePoly:
    out = [Fraction(0), Fraction(0)]
    for i, a in enumerate(p[:2]):
        for j, b in enumerate(q[:2]):
            if i + j <= 1:
                out[i + j] += a * b
    return tuple(out) if out[1] else (out[0],)


def vertex_term(
    label: int,
    genus: int,
    omegas: Sequence[Fraction],
    legs: int,
    w: WeightVector,
    numerator: HodgePoly = (Fraction(1),),
    cache: IntegralCache | None = None,
    expand_genus0: bool = False,
) -> Fraction:
    """Integral of the vertex integrand over M_{genus, len(omegas)+legs}.

    Includes the tangent weights attached to each flag, the Hodge polynomial
    of the vertex, and an optional extra ``numerator`` polynomial in lambda.
    """
    val = len(omegas)
    t = w.tangent_product(label)
    hodge = _polymul(vertex_factor(label, genus, w), numerator)
    if any(om == 0 for om in omegas):
        raise NonGenericWeightsError("zero flag weight")
    if genus == 0:
        n = val + legs
        if expand_genus0 and n >= 3:
            inner = _expand(0, omegas, legs, 0, cache)
        else:
            inner = integral_g0_closed(omegas, legs)
        return t**val * hodge[0] * inner
    total = Fraction(0)
    for p, c in enumerate(hodge):
        if c:
            total += c * _expand(genus, omegas, legs, p, cache)
    return t**val * total


def _expand(genus, omegas, legs, lam, cache):
    """sum over psi monomials of prod omega^(-a-1) * <prod psi^a, lambda^lam>."""
    n = len(omegas) + legs
    deg = 3 * genus - 3 + n - lam
    if deg < 0:
        return Fraction(0)
    inv = [1 / om for om in omegas]
    total = Fraction(0)
    bare = (0,) * legs
    for a in compositions(deg, len(omegas)):
        val = vertex_integral(VertexIntegrand(genus, a + bare, lam), cache)
        if val:
            total += val * prod((x ** (k + 1) for x, k in zip(inv, a)), start=Fraction(1))
    return total


def _vertex_omegas(graph: FixedGraph, w: WeightVector) -> list[list[Fraction]]:
    out: list[list[Fraction]] = [[] for _ in graph.vertices]
    for f in graph.flags():
        out[f.vertex].append(flag_weight(f, w))
    return out


def edges_product(graph: FixedGraph, w: WeightVector) -> Fraction:
    return prod(
        (edge_factor(graph.vertices[e.u].label, graph.vertices[e.v].label, e.degree, w) for e in graph.edges),
        start=Fraction(1),
    )


def virtual_dimension(g: int, n: int, r: int, d: int) -> int:
    return (r + 1) * d + (r - 3) * (1 - g) + n


def graph_contribution(
    graph: FixedGraph,
    w: WeightVector,
    insertions: Sequence[int] = (),
    cache: IntegralCache | None = None,
    expand_genus0: bool = False,
) -> Fraction:
    """Contribution of one marked graph to I_{g,d}(H^{l_1}, ..., H^{l_n})."""
    if len(insertions) != graph.n:
        raise InvalidArgumentError(f"graph has {graph.n} legs but {len(insertions)} insertions given")
    if len(w) != graph.r + 1:
        raise InvalidArgumentError("weight vector does not match the target dimension")
    leg_vertex = {}
    for i, vx in enumerate(graph.vertices):
        for m in vx.legs:
            leg_vertex[m] = i
    value = Fraction(1)
    for m, l in enumerate(insertions, start=1):
        value *= w[graph.vertices[leg_vertex[m]].label] ** l
    if value == 0:
        return value
    value *= edges_product(graph, w)
    for i, (vx, oms) in enumerate(zip(graph.vertices, _vertex_omegas(graph, w))):
        value *= vertex_term(vx.label, vx.genus, oms, len(vx.legs), w, cache=cache, expand_genus0=expand_genus0)
        if value == 0:
            return value
    return value / graph.automorphism_order()


def skeleton_contribution(
    skeleton: FixedGraph,
    w: WeightVector,
    insertions: Sequence[int] = (),
    cache: IntegralCache | None = None,
) -> Fraction:
    """Sum of ``graph_contribution`` over all leg attachments to a leg-free graph.

    Uses sum_{orbits} 1/|Stab| f = 1/|Aut| sum_{all leg maps} f, and groups
    identical insertions so the leg maps collapse to count vectors with
    multinomial weights.
    """
    if skeleton.n:
        raise InvalidArgumentError("skeleton must be leg-free")
    types = sorted(Counter(insertions).items())
    V = len(skeleton.vertices)
    oms = _vertex_omegas(skeleton, w)
    labels = [vx.label for vx in skeleton.vertices]

    memo: dict = {}

    def vertex_part(i, ks):
        key = (i, ks)
        if key not in memo:
            nlegs = sum(ks)
            weight = Fraction(1)
            for (l, _), k in zip(types, ks):
                weight *= Fraction(w[labels[i]] ** (l * k), factorial(k))
            if weight:
                weight *= vertex_term(labels[i], skeleton.vertices[i].genus, oms[i], nlegs, w, cache=cache)
            memo[key] = weight
        return memo[key]

    # DP over vertices; state = remaining count of each insertion type
    layer = {tuple(c for _, c in types): Fraction(1)}
    for i in range(V):
        nxt: dict = {}
        last = i == V - 1
        for remaining, acc in layer.items():
            for ks in _sub_vectors(remaining, exact=last):
                part = vertex_part(i, ks)
                if part:
                    rest = tuple(a - b for a, b in zip(remaining, ks))
                    nxt[rest] = nxt.get(rest, 0) + acc * part
        layer = nxt
    total = layer.get(tuple(0 for _ in types), Fraction(0))
    if total == 0:
        return total
    total *= prod(factorial(c) for _, c in types)
    total *= edges_product(skeleton, w)
    return total / skeleton.automorphism_order()


def _sub_vectors(bounds, exact=False):
    if exact:
        yield tuple(bounds)
        return
    if not bounds:
        yield ()
        return
    for k in range(bounds[0] + 1):
        for rest in _sub_vectors(bounds[1:]):
            yield (k,) + rest
