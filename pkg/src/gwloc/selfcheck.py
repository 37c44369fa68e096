"""The acceptance criteria as runnable checks.

Each check returns a list of ``(label, ok, detail)`` triples.  Used by the
``selfcheck`` CLI command and by ``tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .exact import compositions, format_rational
from .gw import InvariantQuery, gw_invariant, plane_curve_count, plane_curve_query, wdvv_oracle
from .integrals import integral_g0, integral_g1, string_dilaton_oracle
from .localization import WeightVector, weight_stream
from .multicover import (
    conjecture_value,
    conjecture_value_chi,
    gamma_series,
    lemma_lambda_sum,
    lemma_psi_sum,
    log1p_over_24,
    manin_sum,
    mast_sum,
    multicover_graphsum,
    s_beta,
)

F = Fraction


def _eq(label, got, want):
    return (label, got == want, f"got {format_rational(got)}, want {format_rational(want)}")


def c1_genus0_multicover(extended=True):
    return [_eq(f"multicover_graphsum(0,{d})", multicover_graphsum(0, d), F(1, d**3)) for d in range(1, 5)]


def c2_mast(extended=True):
    return [_eq(f"mast_sum({d})", mast_sum(d), F(1, 12 * d)) for d in range(1, 9)]


def c3_genus1_graphsum(extended=True):
    out = []
    weights = list(itertools.islice(weight_stream(1, seed=11), 3))
    for d in range(1, 4):
        for k, w in enumerate(weights):
            out.append(_eq(f"multicover_graphsum(1,{d}) weights#{k}", multicover_graphsum(1, d, w), F(1, 12 * d)))
    return out


def c4_lemmas(extended=True):
    out = []
    for d in range(1, 9):
        out.append(_eq(f"lemma_lambda_sum({d})", lemma_lambda_sum(d), F(1, 24 * d)))
        out.append(_eq(f"lemma_psi_sum({d})", lemma_psi_sum(d), F(1, 24 * d)))
    return out


def c5_manin(extended=True):
    out = [_eq(f"manin_sum({d})", manin_sum(d), F((-1) ** d)) for d in range(1, 11)]
    out += [_eq(f"s_beta({b})", s_beta(b), F((-1) ** b)) for b in range(1, 9)]
    return out


def c6_gamma(extended=True):
    got, want = gamma_series(10), log1p_over_24(10)
    return [_eq(f"gamma coefficient t^{k}", got[k], want[k]) for k in range(1, 11)]


def c7_plane_rational(extended=True):
    degrees = range(1, 5) if extended else range(1, 4)
    out = []
    for d in degrees:
        oracle = wdvv_oracle(d)
        out.append(_eq(f"plane_curve_count(0,{d}) vs WDVV", plane_curve_count(0, d), F(oracle)))
    return out


def c8_plane_cubic_genus1(extended=True):
    return [_eq("plane_curve_count(1,3)", plane_curve_count(1, 3), F(1))]


def c9_smoke(extended=True):
    return [_eq("gw_invariant(g=0,d=1,r=1)", gw_invariant(InvariantQuery(0, 1, 1, ())).value, F(1))]


def c10_conjecture(extended=True):
    out = [
        _eq("conjecture_value(2,1)", conjecture_value(2, 1), F(1, 240)),
        _eq("conjecture_value(2,2)", conjecture_value(2, 2), F(1, 480)),
        _eq("conjecture_value(3,1)", conjecture_value(3, 1), F(1, 3024)),
    ]
    for g in range(2, 7):
        for d in range(1, 6):
            out.append(_eq(f"Bernoulli form = chi(M_g) form at g={g}, d={d}", conjecture_value(g, d), conjecture_value_chi(g, d)))
    return out


def _permutations_check(label, compute, r, base_weights):
    out = []
    values = {}
    for k, w in enumerate(base_weights):
        values[f"w#{k}"] = compute(w)
    perm = list(range(r + 1))[::-1]
    values["w#0 permuted"] = compute(base_weights[0].permuted(perm))
    values["w#0 scaled by -3/2"] = compute(base_weights[0].scaled(F(-3, 2)))
    first = values["w#0"]
    for name, v in values.items():
        out.append((f"{label} {name}", v == first, f"{format_rational(v)} vs {format_rational(first)}"))
    return out


def c11_properties(extended=True):
    out = []
    # psi-integral oracle equivalence, exhaustive for n <= 7
    bad = 0
    checked = 0
    for g in (0, 1):
        for n in range(1, 8):
            if g == 0 and n < 3:
                continue
            for a in compositions(3 * g - 3 + n, n):
                closed = integral_g0(a) if g == 0 else integral_g1(a)
                checked += 1
                if closed != string_dilaton_oracle(g, a):
                    bad += 1
    out.append(("psi integrals: closed form vs string/dilaton (g<=1, n<=7)", bad == 0, f"{checked} checked, {bad} mismatches"))

    gw_queries = [InvariantQuery(0, 1, 1, ())] + [plane_curve_query(0, d) for d in (1, 2, 3)] + [plane_curve_query(1, 3)]
    if extended:
        gw_queries.append(plane_curve_query(0, 4))
    for q in gw_queries:
        ws = list(itertools.islice(weight_stream(q.r, seed=5), 3))
        out += _permutations_check(
            f"gw{q.to_dict()}", lambda w, q=q: gw_invariant(q, weights=w).value, q.r, ws
        )
    for g in (0, 1):
        for d in (1, 2, 3):
            ws = list(itertools.islice(weight_stream(1, seed=7), 3))
            out += _permutations_check(
                f"multicover_graphsum({g},{d})", lambda w, g=g, d=d: multicover_graphsum(g, d, w), 1, ws
            )
    # single worker vs multi worker
    for q in (plane_curve_query(0, 3), plane_curve_query(1, 3)):
        one = json.dumps(gw_invariant(q, workers=1, trials=2).to_record(), sort_keys=True)
        two = json.dumps(gw_invariant(q, workers=2, trials=2).to_record(), sort_keys=True)
        out.append((f"workers=1 vs workers=2 output for {q.to_dict()}", one == two, "byte comparison"))
    for g, d in ((0, 3), (1, 3)):
        a, b = multicover_graphsum(g, d, workers=1), multicover_graphsum(g, d, workers=2)
        out.append((f"multicover_graphsum({g},{d}) workers=1 vs 2", a == b, f"{a} vs {b}"))
    return out


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    run: Callable


CRITERIA = [
    Criterion(1, "genus-0 multiple cover 1/d^3, d=1..4", c1_genus0_multicover),
    Criterion(2, "genus-1 partition form 1/(12d), d=1..8", c2_mast),
    Criterion(3, "genus-1 graph form 1/(12d), d=1..3, 3 weight vectors", c3_genus1_graphsum),
    Criterion(4, "lemma halves 1/(24d), d=1..8", c4_lemmas),
    Criterion(5, "Manin identities", c5_manin),
    Criterion(6, "gamma(t) = -log(1+t)/24 to order 10", c6_gamma),
    Criterion(7, "rational plane curves vs WDVV", c7_plane_rational),
    Criterion(8, "genus-1 plane cubics through 9 points", c8_plane_cubic_genus1),
    Criterion(9, "smoke: degree-1 maps to P^1", c9_smoke),
    Criterion(10, "higher-genus closed form evaluator", c10_conjecture),
    Criterion(11, "property suites", c11_properties),
]


def run_all(extended: bool = True, emit=print) -> bool:
    all_ok = True
    for crit in CRITERIA:
        results = crit.run(extended=extended)
        ok = all(r[1] for r in results)
        all_ok &= ok
        emit(f"[{'PASS' if ok else 'FAIL'}] criterion {crit.number}: {crit.title}")
        for label, good, detail in results:
            if not good:
                emit(f"    FAIL {label}: {detail}")
    return all_ok
