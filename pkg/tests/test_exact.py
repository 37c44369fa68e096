from fractions import Fraction
from math import comb, factorial, prod

import pytest
from hypothesis import given, strategies as st

from gwloc.errors import InvalidArgumentError
from gwloc.exact import (
    Partition,
    aut_order,
    bernoulli,
    bernoulli_all,
    compositions,
    format_rational,
    multinomial,
    partitions_of,
    series_log1p,
    to_rational,
)


def partition_count(n):
    # p(n) by the standard largest-part recurrence, independent of partitions_of
    table = [[0] * (n + 1) for _ in range(n + 1)]
    for k in range(n + 1):
        table[0][k] = 1
    for m in range(1, n + 1):
        for k in range(1, n + 1):
            table[m][k] = table[m][k - 1] + (table[m - k][k] if k <= m else 0)
    return table[n][n]


@pytest.mark.parametrize("n, expected", [(2, Fraction(1, 6)), (4, Fraction(-1, 30)), (12, Fraction(-691, 2730))])
def test_bernoulli_values(n, expected):
    assert bernoulli(n) == expected


@pytest.mark.parametrize("bad", [0, 1, 3, -2, 7])
def test_bernoulli_rejects_odd_or_nonpositive(bad):
    with pytest.raises(InvalidArgumentError):
        bernoulli(bad)


def test_bernoulli_recurrence_to_20():
    B = bernoulli_all(21)
    for n in range(1, 21):
        assert sum(comb(n + 1, k) * B[k] for k in range(n + 1)) == 0


def test_bernoulli_agrees_with_sympy():
    sympy = pytest.importorskip("sympy")
    for n in range(2, 31, 2):
        assert bernoulli(n) == Fraction(str(sympy.bernoulli(n)))


def test_partitions_small():
    assert [p.parts for p in partitions_of(1)] == [(1,)]
    assert [p.parts for p in partitions_of(3)] == [(3,), (2, 1), (1, 1, 1)]


def test_partitions_d8_count():
    assert len(partitions_of(8)) == 22


@pytest.mark.parametrize("d", range(1, 16))
def test_partitions_are_distinct_and_complete(d):
    parts = partitions_of(d)
    assert len(parts) == partition_count(d)
    assert len({p.parts for p in parts}) == len(parts)
    assert all(p.total == d for p in parts)
    assert [p.parts for p in parts] == sorted((p.parts for p in parts), reverse=True)


@pytest.mark.parametrize("bad", [0, -3])
def test_partitions_reject_nonpositive(bad):
    with pytest.raises(InvalidArgumentError):
        partitions_of(bad)


@pytest.mark.parametrize(
    "parts, expected", [((2, 1), 1), ((1, 1, 1), 6), ((2, 2, 1, 1, 1), 12)]
)
def test_aut_order(parts, expected):
    assert aut_order(Partition(parts)) == expected


def test_partition_validation():
    with pytest.raises(InvalidArgumentError):
        Partition((1, 2))
    with pytest.raises(InvalidArgumentError):
        Partition((2, 0))
    assert Partition.from_parts([1, 3, 2]).parts == (3, 2, 1)


@pytest.mark.parametrize("d", range(1, 13))
def test_exp_log_identity(d):
    # coefficient of t^d in exp(sum t^k/k) = 1/(1-t) is 1
    total = sum(Fraction(1, aut_order(m) * m.product()) for m in partitions_of(d))
    assert total == 1


@given(st.fractions(), st.fractions())
def test_rational_add_sub_roundtrip(a, b):
    assert (a + b) - b == a
    assert Fraction(a.numerator, a.denominator) == a


def test_rational_parsing_and_format():
    assert to_rational("3/6") == Fraction(1, 2)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 30)) == "-1/30"
    with pytest.raises(InvalidArgumentError):
        to_rational("1/0")


def test_multinomial_and_compositions():
    assert multinomial([2, 1, 1]) == factorial(4) // 2
    comps = list(compositions(3, 3))
    assert len(comps) == comb(5, 2)
    assert all(sum(c) == 3 for c in comps)


def test_series_log1p_matches_log1p():
    # log(1 + t) = t - t^2/2 + t^3/3 - ...
    got = series_log1p([0, 1], 6)
    assert got == [0] + [Fraction((-1) ** (k + 1), k) for k in range(1, 7)]
