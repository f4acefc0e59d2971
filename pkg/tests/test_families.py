import csv
import io
import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from icl.coloring import (
    fractional_chromatic,
    local_chromatic,
    max_clique_size,
)
from icl.config import CapExceeded
from icl.families import (
    CSV_COLUMNS,
    RATIO_BOUND,
    UniversalParams,
    odd_even_tournament,
    random_digraph,
    ratio_sweep,
    sweep_csv,
    universal_alpha,
    universal_alpha_argmax,
    universal_digraph,
    universal_ratio,
)
from icl.graphs import complement, shadow

# ---------------------------------------------------------------------------
# odd/even tournament
# ---------------------------------------------------------------------------


def test_oddeven_n2():
    assert odd_even_tournament(2).sorted_edges() == [(1, 0)]


def test_oddeven_rules():
    g = odd_even_tournament(7)
    label = lambda v: v + 1
    for i, j in g.edges:
        a, b = label(i), label(j)
        if a % 2 == b % 2:
            assert a < b
        else:
            assert a > b


@pytest.mark.parametrize("n", range(2, 13))
def test_oddeven_is_tournament(n):
    g = odd_even_tournament(n)
    for i, j in itertools.combinations(range(n), 2):
        assert ((i, j) in g.edges) != ((j, i) in g.edges)


def test_oddeven_out_degree_bound():
    for n in range(2, 51):
        g = odd_even_tournament(n)
        assert max(g.out_degree(v) for v in range(n)) <= n // 2 + 1


def test_oddeven_rejects_small():
    with pytest.raises(ValueError):
        odd_even_tournament(1)


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_oddeven_gap(n):
    g = odd_even_tournament(n)
    assert local_chromatic(g).local_value <= n // 2 + 1
    assert fractional_chromatic(shadow(g))[0] == n


# ---------------------------------------------------------------------------
# universal digraphs
# ---------------------------------------------------------------------------


def test_universal_3_2_unrolled():
    ug = universal_digraph(UniversalParams(3, 2))
    assert len(ug.labels) == 6
    assert ug.labels == tuple(sorted(ug.labels))
    for i, (x, A) in enumerate(ug.labels):
        for j, (y, B) in enumerate(ug.labels):
            assert ((i, j) in ug.digraph.edges) == (y[0] == A[0])


def test_universal_params_validation():
    for bad in [(3, 1, 1), (3, 4, 1), (5, 3, 3), (5, 3, 0)]:
        with pytest.raises(ValueError):
            UniversalParams(*bad)
    assert UniversalParams(6, 4, 2).num_vertices == math.comb(6, 2) * math.comb(4, 2)


def test_universal_cap():
    with pytest.raises(CapExceeded):
        universal_digraph(UniversalParams(30, 5))


def test_universal_shadow_definition():
    p = UniversalParams(5, 3, 2)
    ug = universal_digraph(p)
    sh = shadow(ug.digraph)
    for i, (X, A) in enumerate(ug.labels):
        for j, (Y, B) in enumerate(ug.labels):
            if i < j:
                expected = set(Y) <= set(A) or set(X) <= set(B)
                assert sh.has_edge(i, j) == expected


def small_params(limit=60):
    for m in range(2, 12):
        for k in range(2, m + 1):
            p = UniversalParams(m, k)
            if p.num_vertices <= limit:
                yield p


def independence_number(g):
    return max_clique_size(complement(g).adj_masks)


@pytest.mark.parametrize("params", list(small_params()), ids=str)
def test_alpha_and_local_on_small_universal(params):
    ug = universal_digraph(params)
    assert independence_number(shadow(ug.digraph)) == universal_alpha(params)
    assert local_chromatic(ug.digraph, cap=params.num_vertices).local_value == params.k


def test_u42_alpha_brute_force():
    ug = universal_digraph(UniversalParams(4, 2))
    sh = shadow(ug.digraph)
    best = max(
        len(s)
        for k in range(1, 13)
        for s in itertools.combinations(range(12), k)
        if not any(sh.has_edge(a, b) for a, b in itertools.combinations(s, 2))
    )
    assert best == 4 == universal_alpha(UniversalParams(4, 2))


def test_fractional_chromatic_matches_vertex_transitive_formula():
    for params in [UniversalParams(4, 2), UniversalParams(5, 2), UniversalParams(5, 3)]:
        ug = universal_digraph(params)
        assert fractional_chromatic(shadow(ug.digraph), cap=ug.digraph.n)[0] == universal_ratio(params).chi_f


@given(st.integers(2, 30), st.integers(2, 8))
def test_alpha_formula_against_direct_max(m, k):
    if k > m:
        return
    p = UniversalParams(m, k)
    vals = [q * math.comb(m - q, k - 1) for q in range(1, m - k + 2)]
    assert universal_alpha(p) == max(vals)
    assert vals[universal_alpha_argmax(p) - 1] == max(vals)


def test_alpha_m_equals_k():
    for k in range(2, 8):
        assert universal_alpha(UniversalParams(k, k)) == 1


def test_alpha_r_fold_lower_bound():
    p = UniversalParams(6, 4, 2)
    assert universal_alpha(p) == universal_alpha(UniversalParams(6, 4)) * math.comb(3, 1)
    ug = universal_digraph(p)
    assert independence_number(shadow(ug.digraph)) >= universal_alpha(p)
    assert not universal_ratio(p).exact


# ---------------------------------------------------------------------------
# ratios
# ---------------------------------------------------------------------------


def test_ratio_m4_k2():
    rep = universal_ratio(UniversalParams(4, 2))
    assert rep.chi_f == 3 and rep.ratio == Fraction(3, 2)
    assert rep.num_vertices == 12 and rep.alpha == 4


@pytest.mark.parametrize("k", range(2, 10))
def test_ratio_m_equals_k(k):
    rep = universal_ratio(UniversalParams(k, k))
    assert rep.chi_f == k and rep.ratio == 1


def test_reported_constant_instances():
    r281 = universal_ratio(UniversalParams(281, 9))
    r289 = universal_ratio(UniversalParams(289, 9))
    assert abs(float(r281.ratio) - 2.5244) <= 1e-4
    assert abs(float(r289.ratio) - 2.5244) > 1e-4
    assert universal_alpha_argmax(UniversalParams(281, 9)) == 31


def test_chi_f_closed_form():
    for m, k in [(10, 3), (40, 5), (289, 9)]:
        p = UniversalParams(m, k)
        rep = universal_ratio(p)
        assert rep.chi_f == Fraction(m * math.comb(m - 1, k - 1), universal_alpha(p))


def test_bound_constant():
    assert RATIO_BOUND == pytest.approx(9.236320123663, abs=1e-12)


def test_sweep_k2_small_m():
    for rep in ratio_sweep(range(2, 9), [2]):
        assert rep.ratio <= Fraction(rep.params.m, 2) <= 4


def test_sweep_k9_bound_and_consistency():
    reps = ratio_sweep(range(100, 401), [9])
    assert len(reps) == 301 and all(r.bound_ok for r in reps)
    single = universal_ratio(UniversalParams(289, 9))
    assert next(r for r in reps if r.params.m == 289) == single


def test_sweep_skips_invalid_and_orders():
    reps = ratio_sweep(range(2, 6), range(2, 6))
    keys = [(r.params.k, r.params.m) for r in reps]
    assert keys == sorted(keys)
    assert all(r.params.k <= r.params.m for r in reps)


def test_sweep_csv_round_trip():
    reps = ratio_sweep(range(3, 8), [2, 3], r=1)
    rows = list(csv.DictReader(io.StringIO(sweep_csv(reps))))
    assert list(rows[0]) == CSV_COLUMNS
    for row, rep in zip(rows, reps):
        assert Fraction(row["chi_f"]) == rep.chi_f
        assert int(row["alpha"]) == rep.alpha
        assert float(row["ratio"]) == pytest.approx(float(rep.ratio), rel=1e-11)
        assert row["bound_ok"] == "True"


def test_random_digraph_deterministic():
    a = random_digraph(7, 0.4, 11)
    assert a == random_digraph(7, 0.4, 11)
    assert all(i != j for i, j in a.edges)
    assert random_digraph(6, 0.0, 1).edges == frozenset()
    assert len(random_digraph(6, 1.0, 1).edges) == 30

