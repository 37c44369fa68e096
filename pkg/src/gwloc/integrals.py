"""Intersection numbers of psi classes and lambda on M_{0,n} and M_{1,n}.

Conventions: ``a`` is the tuple of psi exponents, one per marked point.
Genus-1 descendant numbers are extracted from

    <exp sum z_i s_i>_1 = (1/24) log <s_0^3 exp sum z_i s_i>_0

by truncated multivariate series arithmetic; ``string_dilaton_oracle``
recomputes the same numbers by recursion only and is kept independent of
that path for testing.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Sequence

from .errors import InvalidArgumentError, NonGenericWeightsError, UnsupportedGenusError

__all__ = [
    "VertexIntegrand",
    "IntegralCache",
    "integral_g0",
    "integral_g0_closed",
    "integral_g1",
    "integral_g1_lambda",
    "vertex_integral",
    "string_dilaton_oracle",
    "default_cache",
]


def _check_exponents(a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(a)
    if any((not isinstance(x, int)) or x < 0 for x in a):
        raise InvalidArgumentError(f"psi exponents must be non-negative integers: {a}")
    return a


def integral_g0(a: Sequence[int]) -> Fraction:
    """Integral over M_{0,n} of prod psi_i^{a_i}: (n-3)!/prod a_i! in top degree."""
    a = _check_exponents(a)
    n = len(a)
    if n < 3:
        raise InvalidArgumentError(f"M_(0,{n}) is unstable; need n >= 3")
    if sum(a) != n - 3:
        return Fraction(0)
    return Fraction(factorial(n - 3), prod(factorial(x) for x in a))


def integral_g0_closed(omegas: Sequence[Fraction], extra_points: int = 0) -> Fraction:
    """Integral over M_{0,n} of prod_F 1/(w_F - psi_F), as a closed form.

    ``omegas`` are the weights of the points carrying a psi series; the
    ``extra_points`` further markings carry no class.  The value

        (prod 1/w_F) * (sum 1/w_F)^(n-3),   n = len(omegas) + extra_points

    is used for every n >= 1; for n = 1 and n = 2 it is the continuation
    that gives w_F and 1/(w_1 + w_2) for the unstable genus-0 vertices.
    """
    ws = [Fraction(w) for w in omegas]
    n = len(ws) + extra_points
    if extra_points < 0 or n < 1:
        raise InvalidArgumentError("need at least one point")
    if any(w == 0 for w in ws):
        raise NonGenericWeightsError("zero weight in genus-0 vertex integral")
    if not ws:
        return Fraction(1 if n == 3 else 0) if n >= 3 else _unstable_no_weights(n)
    inv = [1 / w for w in ws]
    s = sum(inv)
    if s == 0 and n < 3:
        raise NonGenericWeightsError("sum of inverse flag weights vanishes")
    return prod(inv) * s ** (n - 3)


def _unstable_no_weights(n):
    raise InvalidArgumentError(f"unstable vertex with {n} bare point(s) has no integral")


# --- genus 1 via the logarithm of the genus-0 potential ---------------------


def _g0_potential_coeff(values: tuple[int, ...], s: tuple[int, ...]) -> Fraction:
    """Coefficient of prod z_v^{s_v} in <s_0^3 exp sum z_v s_v>_0."""
    npts = sum(s)
    if sum(v * k for v, k in zip(values, s)) != npts:
        return Fraction(0)
    num = factorial(npts)
    den = 1
    for v, k in zip(values, s):
        den *= factorial(v) ** k * factorial(k)
    return Fraction(num, den)


def _box(bounds: tuple[int, ...]):
    if not bounds:
        yield ()
        return
    for k in range(bounds[0] + 1):
        for rest in _box(bounds[1:]):
            yield (k,) + rest


def _mul_trunc(x: dict, y: dict, bounds: tuple[int, ...]) -> dict:
    out: dict = {}
    for ex, cx in x.items():
        for ey, cy in y.items():
            e = tuple(a + b for a, b in zip(ex, ey))
            if all(a <= b for a, b in zip(e, bounds)):
                out[e] = out.get(e, 0) + cx * cy
    return {e: c for e, c in out.items() if c}


@lru_cache(maxsize=None)
def _g1_from_log(values: tuple[int, ...], mults: tuple[int, ...]) -> Fraction:
    zero = (0,) * len(values)
    x = {}
    for s in _box(mults):
        if s == zero:
            continue
        c = _g0_potential_coeff(values, s)
        if c:
            x[s] = c
    # log(1 + X) truncated: X^k vanishes beyond total degree sum(mults)
    target = mults
    total = Fraction(0)
    power = {zero: Fraction(1)}
    for k in range(1, sum(mults) + 1):
        power = _mul_trunc(power, x, mults)
        if not power:
            break
        c = power.get(target, 0)
        if c:
            total += (1 if k % 2 else -1) * Fraction(c) / k
    return total / 24 * prod(factorial(m) for m in mults)


def integral_g1(a: Sequence[int]) -> Fraction:
    """Integral over M_{1,n} of prod psi_i^{a_i}."""
    a = _check_exponents(a)
    n = len(a)
    if n < 1:
        raise InvalidArgumentError("M_(1,0) is not used; need n >= 1")
    if sum(a) != n:
        return Fraction(0)
    counts = Counter(a)
    values = tuple(sorted(counts))
    return _g1_from_log(values, tuple(counts[v] for v in values))


def integral_g1_lambda(a: Sequence[int]) -> Fraction:
    """Integral over M_{1,n} of lambda * prod psi_i^{a_i}.

    lambda = delta_0/12 and the boundary divisor delta_0 is the Z/2 quotient
    of M_{0,n+2}, so this is (1/24) times a genus-0 number with two extra
    bare points.
    """
    a = _check_exponents(a)
    if len(a) < 1:
        raise InvalidArgumentError("need n >= 1")
    if sum(a) != len(a) - 1:
        return Fraction(0)
    return integral_g0(a + (0, 0)) / 24


# --- dispatch and memo -------------------------------------------------------


@dataclass(frozen=True)
class VertexIntegrand:
    genus: int
    psi_exponents: tuple[int, ...]
    lambda_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "psi_exponents", _check_exponents(self.psi_exponents))
        if self.genus < 0 or self.lambda_power < 0:
            raise InvalidArgumentError("genus and lambda power must be non-negative")
        if self.genus == 0 and self.lambda_power:
            raise InvalidArgumentError("the Hodge class vanishes in genus 0")

    @property
    def degree(self) -> int:
        return sum(self.psi_exponents) + self.lambda_power

    @property
    def dimension(self) -> int:
        return 3 * self.genus - 3 + len(self.psi_exponents)

    def key(self) -> tuple:
        return (self.genus, tuple(sorted(self.psi_exponents)), self.lambda_power)


@dataclass
class IntegralCache:
    """Thread-safe memo of vertex integrals keyed by ``VertexIntegrand.key()``.

    Each worker process gets its own instance; new entries are shipped back
    with results and merged into the parent (``merge``).
    """

    entries: dict = field(default_factory=dict)
    hits: int = 0
    misses: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    _fresh: dict = field(default_factory=dict, repr=False)

    def get(self, key):
        with self._lock:
            value = self.entries.get(key)
            if value is None:
                self.misses += 1
            else:
                self.hits += 1
            return value

    def put(self, key, value):
        with self._lock:
            if key not in self.entries:
                self._fresh[key] = value
            self.entries[key] = value

    def merge(self, other: dict):
        with self._lock:
            for k, v in other.items():
                self.entries.setdefault(k, v)

    def take_fresh(self) -> dict:
        with self._lock:
            fresh, self._fresh = self._fresh, {}
            return fresh

    def __len__(self):
        return len(self.entries)


default_cache = IntegralCache()


def vertex_integral(v: VertexIntegrand, cache: IntegralCache | None = None) -> Fraction:
    """Exact integral of one vertex integrand; 0 on dimension mismatch."""
    if v.genus >= 2:
        raise UnsupportedGenusError(
            f"genus {v.genus} vertex integrals are not computed natively; "
            "supply a Hodge table (see mast2_sum)"
        )
    n = len(v.psi_exponents)
    if v.genus == 0 and n < 3:
        raise InvalidArgumentError(f"M_(0,{n}) is unstable")
    if v.genus == 1 and n < 1:
        raise InvalidArgumentError("M_(1,0) is unstable")
    if v.degree != v.dimension:
        return Fraction(0)
    # lambda is pulled back from M_{1,1}, so lambda^2 = 0 in genus 1
    if v.lambda_power >= 2:
        return Fraction(0)
    cache = default_cache if cache is None else cache
    key = v.key()
    hit = cache.get(key)
    if hit is not None:
        return hit
    a = key[1]
    if v.genus == 0:
        value = integral_g0(a)
    elif v.lambda_power:
        value = integral_g1_lambda(a)
    else:
        value = integral_g1(a)
    cache.put(key, value)
    return value


@lru_cache(maxsize=None)
def _oracle(g: int, a: tuple[int, ...]) -> Fraction:
    n = len(a)
    if sum(a) != 3 * g - 3 + n:
        return Fraction(0)
    if g == 0 and n == 3:
        return Fraction(1)
    if g == 1 and n == 1:
        return Fraction(1, 24)
    if 0 in a:
        i = a.index(0)
        rest = a[:i] + a[i + 1 :]
        total = Fraction(0)
        for j, x in enumerate(rest):
            if x > 0:
                lowered = rest[:j] + (x - 1,) + rest[j + 1 :]
                total += _oracle(g, tuple(sorted(lowered)))
        return total
    if 1 in a:
        i = a.index(1)
        rest = a[:i] + a[i + 1 :]
        return (2 * g - 2 + len(rest)) * _oracle(g, rest)
    return Fraction(0)


def string_dilaton_oracle(g: int, a: Iterable[int]) -> Fraction:
    """Recompute a genus-0/1 psi integral by the string and dilaton equations only."""
    if g not in (0, 1):
        raise UnsupportedGenusError("the oracle covers genus 0 and 1 only")
    a = _check_exponents(a)
    return _oracle(g, tuple(sorted(a)))
