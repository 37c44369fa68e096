"""Exact scalar arithmetic and the combinatorial helpers built on it.

Every number in gwloc is a :class:`fractions.Fraction` (aliased here as
``Rational``); floats never enter a computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterator, Sequence

from .errors import InvalidArgumentError

Rational = Fraction


def to_rational(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidArgumentError(f"not a rational: {x!r}") from exc
    raise InvalidArgumentError(f"cannot convert {type(x).__name__} to a rational")


def format_rational(x: Fraction) -> str:
    """Render as ``p/q`` (or ``p`` when integral)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    # sum_{k=0}^{m} C(m+1, k) B_k = 0 for m >= 1, B_0 = 1 (so B_1 = -1/2)
    table = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(comb(m + 1, k) * table[k] for k in range(m))
        table.append(-s / (m + 1))
    return tuple(table)


def bernoulli(n: int) -> Fraction:
    """Return the even Bernoulli number B_n (B_2 = 1/6, B_4 = -1/30, ...).

    Only even ``n >= 2`` is accepted; these are the values that enter the
    genus-g multiple-cover formula, whose sign is taken care of by ``abs``.
    """
    if not isinstance(n, int) or n < 2 or n % 2:
        raise InvalidArgumentError(f"bernoulli() needs an even n >= 2, got {n!r}")
    return _bernoulli_table(n)[n]


def bernoulli_all(n: int) -> tuple[Fraction, ...]:
    """B_0..B_n under the B_1 = -1/2 convention (used by the recurrence test)."""
    if n < 0:
        raise InvalidArgumentError("n must be non-negative")
    return _bernoulli_table(n)[: n + 1]


@dataclass(frozen=True, order=True)
class Partition:
    """A partition of ``total`` with non-increasing positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise InvalidArgumentError("a partition needs at least one part")
        if any((not isinstance(p, int)) or p < 1 for p in parts):
            raise InvalidArgumentError(f"parts must be positive integers: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidArgumentError(f"parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "Partition":
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def product(self) -> int:
        return prod(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def _partitions(d: int, largest: int) -> Iterator[tuple[int, ...]]:
    if d == 0:
        yield ()
        return
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions(d - first, first):
            yield (first,) + rest


@lru_cache(maxsize=64)
def _partitions_cached(d: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _partitions(d, d))


def partitions_of(d: int) -> tuple[Partition, ...]:
    """All partitions of ``d`` in lexicographically descending order."""
    if not isinstance(d, int) or d < 1:
        raise InvalidArgumentError(f"partitions_of() needs d >= 1, got {d!r}")
    return _partitions_cached(d)


def aut_order(m: Partition) -> int:
    """Order of the stabilizer of ``m`` under permutation of its parts."""
    counts: dict[int, int] = {}
    for p in m.parts:
        counts[p] = counts.get(p, 0) + 1
    return prod(factorial(c) for c in counts.values())


def multinomial(ks: Sequence[int]) -> int:
    """(k_1 + ... + k_n)! / (k_1! ... k_n!)."""
    out, total = 1, 0
    for k in ks:
        total += k
        out *= comb(total, k)
    return out


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` non-negative entries."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def series_log1p(coeffs: Sequence[Fraction], order: int) -> list[Fraction]:
    """Coefficients of log(1 + X(t)) up to t^order, X given without constant term.

    ``coeffs[k]`` is the coefficient of t^k; ``coeffs[0]`` must be zero.
    """
    if coeffs and coeffs[0] != 0:
        raise InvalidArgumentError("series_log1p expects X(0) = 0")
    x = [Fraction(0)] * (order + 1)
    for k, c in enumerate(coeffs[: order + 1]):
        x[k] = Fraction(c)
    out = [Fraction(0)] * (order + 1)
    power = [Fraction(1)] + [Fraction(0)] * order
    for k in range(1, order + 1):
        nxt = [Fraction(0)] * (order + 1)
        for i, a in enumerate(power):
            if a:
                for j in range(1, order + 1 - i):
                    if x[j]:
                        nxt[i + j] += a * x[j]
        power = nxt
        sign = 1 if k % 2 else -1
        for i in range(order + 1):
            if power[i]:
                out[i] += sign * power[i] / k
    return out
