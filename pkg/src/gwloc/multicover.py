"""Multiple-cover contributions of a (-1,-1) rational curve in a Calabi-Yau 3-fold.

Two independent routes are provided:

* ``multicover_graphsum`` localizes the integral of c_top(R^1 pi_* mu^* N),
  N = O(-1) + O(-1), on M_{g,0}(P^1, d) and sums over fixed graphs;
* the partition sums (``mast_sum`` and its lambda/psi halves, ``manin_sum``,
  ``s_beta``, the generating series) evaluate the comb-graph formula that
  remains after choosing the torus weights (0, -1).

Lift convention: the fiber of O(-1) at p_i has weight -lambda_i, so
H^1(C_e, f^*O(-1)) on a degree-d_e edge has the d_e - 1 weights
-(a lambda_i + b lambda_j)/d_e with a, b >= 1, a + b = d_e.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Sequence

from .errors import InvalidArgumentError, MissingHodgeIntegralError, UnsupportedGenusError
from .exact import aut_order, bernoulli, compositions, partitions_of, series_log1p
from .graphs import FixedGraph, enumerate_skeletons
from .hodge import HodgeTable
from .integrals import IntegralCache, integral_g0, integral_g1, integral_g1_lambda
from .localization import WeightVector, _vertex_omegas, default_weights, edges_product, vertex_term

SUMMANDS = 2  # N = O(-1) + O(-1)
MANIN_WEIGHTS = (0, -1)


@dataclass(frozen=True)
class ObstructionWeights:
    """Torus weights of R^1 pi_* f^*O(-1) on one fixed locus, for one summand."""

    edge_weights: tuple[tuple[Fraction, ...], ...]
    vertex_fibers: tuple[Fraction, ...]
    vertex_genera: tuple[int, ...]
    vertex_valences: tuple[int, ...]

    @property
    def rank(self) -> int:
        """Rank of the obstruction bundle summed over both O(-1) summands."""
        per = sum(len(ws) for ws in self.edge_weights)
        per += sum(g + val - 1 for g, val in zip(self.vertex_genera, self.vertex_valences))
        return SUMMANDS * per

    def edge_part(self) -> Fraction:
        return prod((prod(ws, start=Fraction(1)) for ws in self.edge_weights), start=Fraction(1)) ** SUMMANDS

    def vertex_poly(self, i: int) -> tuple:
        """Euler class at vertex ``i`` as a polynomial in its lambda class (both summands).

        The normalization sequence leaves, per summand, the fiber at p_{i(v)}
        once per flag minus once per vertex, plus E^dual twisted by the fiber.
        """
        fiber = self.vertex_fibers[i]
        g = self.vertex_genera[i]
        base = fiber ** (self.vertex_valences[i] - 1)
        if g == 0:
            one = (base,)
        elif g == 1:
            one = (base * fiber, -base)
        else:
            raise UnsupportedGenusError("obstruction classes are native for vertex genus <= 1")
        if len(one) == 1:
            return (one[0] ** SUMMANDS,)
        # (c0 + c1 lambda)^2 with lambda^2 = 0
        return (one[0] ** 2, 2 * one[0] * one[1])


def obstruction_euler(graph: FixedGraph, w: WeightVector) -> ObstructionWeights:
    """Obstruction-bundle weights on the fixed locus of ``graph`` (target P^1)."""
    if graph.r != 1:
        raise InvalidArgumentError("multiple-cover obstruction is defined for P^1 targets")
    edges = []
    for e in graph.edges:
        li, lj = w[graph.vertices[e.u].label], w[graph.vertices[e.v].label]
        edges.append(tuple(-Fraction(a * li + (e.degree - a) * lj, e.degree) for a in range(1, e.degree)))
    return ObstructionWeights(
        tuple(edges),
        tuple(-w[v.label] for v in graph.vertices),
        tuple(v.genus for v in graph.vertices),
        tuple(graph.valence(i) for i in range(len(graph.vertices))),
    )


def multicover_contribution(graph: FixedGraph, w: WeightVector, cache: IntegralCache | None = None) -> Fraction:
    """1/|A| * integral over M_Gamma of e(Ob) / e(N^vir) for one graph."""
    ob = obstruction_euler(graph, w)
    value = ob.edge_part()
    if value == 0:
        return value
    value *= edges_product(graph, w)
    for i, (vx, oms) in enumerate(zip(graph.vertices, _vertex_omegas(graph, w))):
        num = ob.vertex_poly(i)
        if not any(num):
            return Fraction(0)
        value *= vertex_term(vx.label, vx.genus, oms, 0, w, numerator=num, cache=cache)
        if value == 0:
            return value
    return value / graph.automorphism_order()


def multicover_graphs(g: int, d: int) -> list[FixedGraph]:
    if g not in (0, 1):
        raise UnsupportedGenusError("graph sums are native for genus 0 and 1 only")
    if d < 1:
        raise InvalidArgumentError("degree must be >= 1")
    return enumerate_skeletons(g, 1, d)


def multicover_graphsum(
    g: int,
    d: int,
    weights: WeightVector | Sequence | None = None,
    workers: int = 1,
    cache: IntegralCache | None = None,
) -> Fraction:
    """Localized value of the degree-``d`` genus-``g`` multiple-cover integral."""
    from .parallel import parallel_sum

    w = _as_weights(weights)
    graphs = multicover_graphs(g, d)
    return parallel_sum(multicover_contribution, graphs, (w,), workers=workers, cache=cache)


def _as_weights(weights) -> WeightVector:
    if weights is None:
        return default_weights(1)
    if isinstance(weights, WeightVector):
        return weights
    return WeightVector(tuple(Fraction(x) for x in weights))


# --- partition sums ----------------------------------------------------------


def _prefactor(m, d: int) -> Fraction:
    return Fraction((-1) ** (d - m.length), aut_order(m) * m.product())


def _psi_part(m) -> Fraction:
    """Integral over M_{1,L} of 1/prod(1 - m_i psi_i)."""
    L = m.length
    total = Fraction(0)
    for a in compositions(L, L):
        total += prod(x**k for x, k in zip(m.parts, a)) * integral_g1(a)
    return total


def _lambda_part(m) -> Fraction:
    """Integral over M_{1,L} of lambda/prod(1 - m_i psi_i)."""
    L = m.length
    total = Fraction(0)
    for a in compositions(L - 1, L):
        total += prod(x**k for x, k in zip(m.parts, a)) * integral_g1_lambda(a)
    return total


def _check_degree(d):
    if not isinstance(d, int) or d < 1:
        raise InvalidArgumentError(f"degree must be a positive integer, got {d!r}")


def lemma_lambda_sum(d: int) -> Fraction:
    """The lambda half of the genus-1 partition sum; equals 1/(24d)."""
    _check_degree(d)
    return sum((_prefactor(m, d) * _lambda_part(m) for m in partitions_of(d)), start=Fraction(0))


def lemma_psi_sum(d: int) -> Fraction:
    """The psi half g_d of the genus-1 partition sum; equals 1/(24d)."""
    _check_degree(d)
    return sum((_prefactor(m, d) * _psi_part(m) for m in partitions_of(d)), start=Fraction(0))


def mast_sum(d: int) -> Fraction:
    """Genus-1 degree-d contribution from the comb-graph partition formula."""
    _check_degree(d)
    return sum(
        (_prefactor(m, d) * (_psi_part(m) + _lambda_part(m)) for m in partitions_of(d)),
        start=Fraction(0),
    )


def manin_sum(d: int) -> Fraction:
    """sum over m |- d of (-1)^L d^L / (Aut(m) prod m_i); equals (-1)^d."""
    _check_degree(d)
    return sum(
        (Fraction((-1) ** m.length * d**m.length, aut_order(m) * m.product()) for m in partitions_of(d)),
        start=Fraction(0),
    )


def s_beta(beta: int) -> Fraction:
    """Coefficient s_beta of psi(t), evaluated with genus-0 intersection numbers."""
    _check_degree(beta)
    total = Fraction(0)
    for m in partitions_of(beta):
        L = m.length
        integral = Fraction(0)
        for a in compositions(L, L):
            integral += prod(x**k for x, k in zip(m.parts, a)) * integral_g0(a + (0, 0, 0))
        total += Fraction((-1) ** L, aut_order(m) * m.product()) * integral
    return total


def psi_series(order: int) -> list[Fraction]:
    """[1, s_1, ..., s_order]."""
    if order < 1:
        raise InvalidArgumentError("order must be >= 1")
    return [Fraction(1)] + [s_beta(b) for b in range(1, order + 1)]


def gamma_series(order: int) -> list[Fraction]:
    """Coefficients [0, c_1, ..., c_order] of gamma(t) = sum (-1)^a g_a t^a."""
    if order < 1:
        raise InvalidArgumentError("order must be >= 1")
    return [Fraction(0)] + [(-1) ** a * lemma_psi_sum(a) for a in range(1, order + 1)]


def gamma_series_from_psi(order: int) -> list[Fraction]:
    """gamma(t) recomputed as (1/24) log psi(t)."""
    psi = psi_series(order)
    return [c / 24 for c in series_log1p([Fraction(0)] + psi[1:], order)]


def log1p_over_24(order: int) -> list[Fraction]:
    """Coefficients of -log(1+t)/24: (-1)^k / (24 k)."""
    return [Fraction(0)] + [Fraction((-1) ** k, 24 * k) for k in range(1, order + 1)]


# --- higher genus --------------------------------------------------------------


def euler_characteristic_Mg(g: int) -> Fraction:
    """Orbifold Euler characteristic B_{2g} / (2g (2g - 2)) of M_g."""
    return bernoulli(2 * g) / (2 * g * (2 * g - 2))


def conjecture_value(g: int, d: int) -> Fraction:
    """|B_{2g}| d^{2g-3} / (2g (2g-2)!), cross-checked against the chi(M_g) form."""
    if not isinstance(g, int) or g < 2:
        raise InvalidArgumentError("the conjectural formula is stated for g >= 2")
    _check_degree(d)
    value = abs(bernoulli(2 * g)) * Fraction(d) ** (2 * g - 3) / (2 * g * factorial(2 * g - 2))
    other = conjecture_value_chi(g, d)
    if value != other:
        raise ArithmeticError(f"closed forms disagree at g={g}, d={d}: {value} vs {other}")
    return value


def conjecture_value_chi(g: int, d: int) -> Fraction:
    return abs(euler_characteristic_Mg(g)) * Fraction(d) ** (2 * g - 3) / factorial(2 * g - 3)


def mast2_required_records(g: int, d: int) -> list[tuple]:
    """Hodge integrals (g, psi exponents, (k,)) needed by ``mast2_sum``."""
    needed = set()
    for m in partitions_of(d):
        L = m.length
        for k in range(g + 1):
            deg = 3 * g - 3 + L - k
            if deg < 0:
                continue
            for a in compositions(deg, L):
                needed.add((g, tuple(sorted(a)), (k,) if k else ()))
    return sorted(needed)


def mast2_sum(g: int, d: int, hodge_table: HodgeTable | None = None) -> Fraction:
    """Partition formula with integrand (1 + c_1(E) + ... + c_g(E)) / prod(1 - m_i psi_i).

    Genus 1 is evaluated natively; genus >= 2 reads every integral from
    ``hodge_table`` and raises :class:`MissingHodgeIntegralError` listing the
    absent records.
    """
    _check_degree(d)
    if g < 1:
        raise InvalidArgumentError("mast2_sum needs g >= 1")
    if g == 1 and hodge_table is None:
        return mast_sum(d)
    if hodge_table is None:
        raise MissingHodgeIntegralError(HodgeTable.format_key(k) for k in mast2_required_records(g, d))
    missing = [k for k in mast2_required_records(g, d) if hodge_table.get(*k) is None]
    if missing:
        raise MissingHodgeIntegralError(HodgeTable.format_key(k) for k in missing)
    total = Fraction(0)
    for m in partitions_of(d):
        L = m.length
        integral = Fraction(0)
        for k in range(g + 1):
            deg = 3 * g - 3 + L - k
            if deg < 0:
                continue
            for a in compositions(deg, L):
                integral += prod(x**e for x, e in zip(m.parts, a)) * hodge_table.get(g, a, (k,) if k else ())
        total += _prefactor(m, d) * integral
    return total
