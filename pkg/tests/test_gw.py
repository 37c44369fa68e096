import itertools
from fractions import Fraction

import pytest

import gwloc.gw as gwmod
from gwloc.errors import DimensionMismatchError, InvalidArgumentError, NonGenericWeightsError, UnsupportedGenusError
from gwloc.gw import (
    InvariantQuery,
    gw_invariant,
    plane_curve_count,
    plane_curve_query,
    wdvv_oracle,
    weight_independence_check,
)
from gwloc.localization import WeightVector, default_weights


def test_smoke_degree_one_p1():
    assert gw_invariant(InvariantQuery(0, 1, 1, ())).value == 1


def test_line_through_two_points():
    assert gw_invariant(InvariantQuery(0, 1, 2, (2, 2))).value == 1


def test_plane_cubics_through_eight_points():
    assert gw_invariant(InvariantQuery(0, 3, 2, (2,) * 8)).value == 12


@pytest.mark.parametrize("d, expected", [(1, 1), (2, 1), (3, 12), (4, 620), (5, 87304)])
def test_wdvv_oracle(d, expected):
    assert wdvv_oracle(d) == expected


def test_plane_curve_counts():
    assert plane_curve_count(0, 1) == 1
    assert plane_curve_count(0, 2) == 1
    assert plane_curve_count(0, 3) == 12


def test_genus_one_plane_counts():
    # no line through 3 general points, no conic through 6, one cubic through 9
    assert plane_curve_count(1, 1) == 0
    assert plane_curve_count(1, 2) == 0
    assert plane_curve_count(1, 3) == 1


def test_lines_in_p3():
    assert gw_invariant(InvariantQuery(0, 1, 3, (3, 3))).value == 1
    assert gw_invariant(InvariantQuery(0, 1, 3, (2, 2, 2, 2))).value == 2
    assert gw_invariant(InvariantQuery(0, 1, 3, (3, 2, 2))).value == 1


def test_insertion_order_does_not_matter():
    base = gw_invariant(InvariantQuery(0, 1, 3, (3, 2, 2)), method="graphs").value
    for perm in set(itertools.permutations((3, 2, 2))):
        assert gw_invariant(InvariantQuery(0, 1, 3, perm), method="graphs").value == base


def test_integrality_of_rational_plane_counts():
    for d in (1, 2, 3):
        v = plane_curve_count(0, d)
        assert v.denominator == 1 and v >= 0


def test_query_validation():
    with pytest.raises(DimensionMismatchError):
        InvariantQuery(0, 1, 2, (2, 2, 2))
    with pytest.raises(InvalidArgumentError):
        InvariantQuery(0, 1, 2, (3, 2))
    with pytest.raises(UnsupportedGenusError):
        InvariantQuery(2, 1, 2, (2,) * 4)
    with pytest.raises(InvalidArgumentError):
        InvariantQuery(0, 0, 2, ())


def test_weight_independence_check_reports_values():
    rep = weight_independence_check(InvariantQuery(0, 1, 2, (2, 2)), k=3)
    assert rep.consistent and rep.values == [1, 1, 1] and len(rep.weights) == 3


def test_weight_independence_check_genus_one():
    # P^1 has no genus-1 query with matching degrees (vdim = 2d + n > n), so use P^2
    rep = weight_independence_check(InvariantQuery(1, 2, 2, (2,) * 6), k=3)
    assert rep.consistent and rep.values[0] == 0


def test_mismatched_dimension_rejected_before_trials():
    with pytest.raises(DimensionMismatchError):
        weight_independence_check(InvariantQuery(0, 1, 2, (2, 2, 2)), k=3)


def test_trials_agree():
    res = gw_invariant(plane_curve_query(0, 2), trials=3, seed=4)
    assert res.value == 1 and len(res.weight_vectors_used) == 3


def test_explicit_nongeneric_weights_raise():
    # 2 l_0 = l_1 + l_2 makes a valence-2 vertex at p_0 singular for conics
    w = WeightVector((Fraction(0), Fraction(-1), Fraction(1)))
    with pytest.raises(NonGenericWeightsError):
        gw_invariant(plane_curve_query(0, 2), weights=w)


def test_resampling_skips_nongeneric_weights(monkeypatch):
    bad = WeightVector((Fraction(0), Fraction(-1), Fraction(1)))

    def stream(r, seed=0):
        yield bad
        yield default_weights(r)

    monkeypatch.setattr(gwmod, "weight_stream", stream)
    res = gw_invariant(plane_curve_query(0, 2))
    assert res.value == 1
    assert res.weight_vectors_used == [list(default_weights(2).values)]


def test_graph_count_and_record():
    res = gw_invariant(InvariantQuery(0, 1, 2, (2, 2)), method="graphs")
    res2 = gw_invariant(InvariantQuery(0, 1, 2, (2, 2)))
    assert res.graph_count == res2.graph_count
    rec = res.to_record()
    assert rec["value"] == "1" and "elapsed_ms" not in rec and "cache_hits" not in rec
    assert {"elapsed_ms", "cache_hits"} <= set(res.to_record(timing=True))


def test_dump_per_graph_values_sum_to_total():
    res = gw_invariant(plane_curve_query(0, 2), method="graphs", dump=True)
    assert sum(Fraction(p["value"]) for p in res.per_graph) == res.value


@pytest.mark.slow
def test_plane_quartics():
    assert plane_curve_count(0, 4) == 620
