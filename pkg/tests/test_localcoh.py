import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complexes
from oracles import cech_multigraded
from segrereg.betti import graded_betti, regularity_from_betti
from segrereg.localcoh import (
    check_assumption,
    degree_set,
    gap_index_k,
    lc_coarse_dim,
    lc_coarse_dim_paper,
    lc_multigraded_dim,
    lc_multigraded_dim_dual_betti,
    multigraded_discrepancies,
    summarize,
)
from segrereg.simplicial import QQ, FieldSpec, build_complex, empty_complex, simplex


def nonpositive_vectors(n, total):
    """All a ≤ 0 in Z^n with Σ|a_l| = total."""
    for combo in itertools.combinations_with_replacement(range(n), total):
        a = [0] * n
        for v in combo:
            a[v] -= 1
        yield a


class TestWorkedExamples:
    def test_two_points_multigraded(self, two_points):
        assert lc_multigraded_dim(two_points, QQ, 1, [0, 0]) == 1
        assert lc_multigraded_dim(two_points, QQ, 1, [-3, 0]) == 1
        assert lc_multigraded_dim(two_points, QQ, 1, [-1, -1]) == 0

    def test_two_points_coarse(self, two_points):
        assert [lc_coarse_dim(two_points, QQ, 1, j) for j in range(4)] == [1, 2, 2, 2]

    def test_hollow_triangle_top(self, hollow_triangle):
        assert [lc_coarse_dim(hollow_triangle, QQ, 2, j) for j in range(4)] == [1, 3, 6, 9]
        assert degree_set(hollow_triangle, QQ, 1) is None

    def test_degree_set_two_points(self, two_points):
        s = degree_set(two_points, QQ, 1)
        assert s.zero_degree_present and s.tail_threshold == 1
        assert s.end == 0 and not s.has_gap and s.infinite_tail

    def test_summaries(self, two_points, hollow_triangle):
        s = summarize(two_points)
        assert (s.depth, s.dim, s.end(1), s.reg) == (1, 1, 0, 1)
        s = summarize(hollow_triangle)
        assert (s.depth, s.dim, s.end(2), s.reg) == (2, 2, 0, 2)
        s = summarize(simplex(3))
        assert (s.depth, s.dim, s.end(3), s.reg) == (3, 3, -3, 0)

    def test_empty_complex_rejected(self):
        with pytest.raises(ValueError):
            summarize(empty_complex(2))

    def test_positive_multidegree_rejected(self, two_points):
        with pytest.raises(ValueError):
            lc_multigraded_dim(two_points, QQ, 1, [1, 0])
        with pytest.raises(ValueError):
            lc_coarse_dim(two_points, QQ, 1, -1)


class TestAssumption:
    def test_two_points_satisfied(self, two_points):
        assert check_assumption(two_points).satisfied

    def test_simplex_satisfied(self):
        assert check_assumption(simplex(3)).satisfied

    def test_disjoint_edges_depth_violation(self):
        report = check_assumption(build_complex(4, [[1, 2], [3, 4]]))
        assert not report.satisfied
        assert any("depth 1 < min(2, dim 2)" in v for v in report.violations)

    def test_gap_detected(self):
        # two disjoint triangles: H^1 nonzero only in degree 0
        delta = build_complex(6, [[1, 2, 3], [4, 5, 6]])
        s = degree_set(delta, QQ, 1)
        assert s.zero_degree_present and not s.infinite_tail
        assert not check_assumption(delta).satisfied

    def test_finite_support_reported(self):
        moebius = build_complex(5, [[1, 2, 3], [1, 2, 4], [1, 3, 5], [2, 4, 5], [3, 4, 5]])
        report = check_assumption(moebius)
        assert any("finitely many" in v for v in report.violations)


class TestDualBettiDiagnostics:
    def test_coarse_literal_values(self, two_points):
        assert [lc_coarse_dim_paper(two_points, QQ, 1, j) for j in (1, 2)] == [4, 7]
        assert [lc_coarse_dim(two_points, QQ, 1, j) for j in (1, 2)] == [2, 2]

    def test_multigraded_discrepancy_at_nonface(self, two_points):
        assert lc_multigraded_dim_dual_betti(two_points, QQ, 1, [-1, -1]) == 1
        assert multigraded_discrepancies(two_points) == [
            {"i": 1, "support": [1, 2], "dual_betti": 1, "exact": 0}
        ]

    @given(complexes(max_n=4))
    def test_dual_betti_form_only_differs_at_the_full_nonface(self, delta):
        if delta.is_empty:
            return
        for m in multigraded_discrepancies(delta):
            assert m["support"] == list(range(1, delta.n + 1))
            # the simplex has an empty dual, whose Betti table is empty
            assert m["i"] == (delta.n if delta.is_simplex else delta.n - 1)

    def test_literal_coarse_formula_with_jmin(self, two_points):
        with pytest.raises(ValueError):
            lc_coarse_dim_paper(two_points, QQ, 1, 0)


@settings(max_examples=40, deadline=None)
@given(complexes(max_n=3), st.sampled_from([0, 2]))
def test_multigraded_against_cech_complex(delta, p):
    field = FieldSpec(p)
    facets = [sorted(f) for f in delta.facets]
    for a in itertools.product(range(-2, 1), repeat=delta.n):
        for i in range(delta.n + 1):
            assert lc_multigraded_dim(delta, field, i, a) == cech_multigraded(delta.n, facets, i, a, p)


@settings(max_examples=15, deadline=None)
@given(complexes(max_n=3))
def test_cech_vanishes_off_nonpositive_degrees(delta):
    facets = [sorted(f) for f in delta.facets]
    for a in itertools.product(range(-2, 3), repeat=delta.n):
        if any(x > 0 for x in a):
            for i in range(delta.n + 1):
                assert cech_multigraded(delta.n, facets, i, a) == 0


@settings(max_examples=30)
@given(complexes(max_n=4))
def test_coarse_is_multigraded_sum(delta):
    for i in range(delta.n + 1):
        for j in range(0, 5):
            total = sum(lc_multigraded_dim(delta, QQ, i, a) for a in nonpositive_vectors(delta.n, j))
            assert lc_coarse_dim(delta, QQ, i, j) == total


@given(complexes())
def test_degree_set_matches_dimensions(delta):
    if delta.is_empty:
        return
    for i in range(delta.krull_dim + 1):
        s = degree_set(delta, QQ, i)
        for j in range(11):
            dim = lc_coarse_dim(delta, QQ, i, j)
            if s is None:
                assert dim == 0
            else:
                assert (-j in s.support()) == (dim > 0)
                assert s.dim(j) == dim and s(-j) == dim
        if s is not None:
            assert s(1) == 0 and s.end <= 0


@given(complexes())
def test_summary_invariants(delta):
    if delta.is_empty:
        return
    s = summarize(delta)
    assert s.dim == delta.krull_dim
    assert all(s.end(i) <= 0 for i in s.nonzero_indices)
    table = graded_betti(delta)
    assert s.reg == regularity_from_betti(table)
    assert s.depth == delta.n - table.projective_dimension()


@given(complexes())
def test_gap_index_soundness(delta):
    if delta.is_empty:
        return
    for i in summarize(delta).nonzero_indices:
        k = gap_index_k(delta, QQ, i)
        if k is not None and k >= 1:
            s = degree_set(delta, QQ, i)
            assert not s.has_gap and s.infinite_tail
