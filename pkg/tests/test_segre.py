import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from segrereg.degrees import NEG_INF, POS_INF
from segrereg.profile import ModuleProfile, cm_profile, profile_from_complex, veronese_transform
from segrereg.segre import (
    HypothesisError,
    candidate_set,
    cox_materov,
    decompose_cohomology,
    e_u_end,
    e_u_nonzero,
    gamma,
    prepare,
    regularity_segre,
    regularity_segre_cm,
    regularity_segre_veronese_cm,
    support,
    veronese_cm_profiles,
    weight,
)
from segrereg.simplicial import build_complex


@st.composite
def profiles(draw, min_dim=1, max_dim=4):
    d = draw(st.integers(min_dim, max_dim))
    low = min(2, d)
    nonzero = sorted({d} | set(draw(st.lists(st.integers(low, d), max_size=2))))
    ends = {j: draw(st.integers(-6, 2)) for j in nonzero}
    if d == 1:
        nonzero, ends = [1], {1: ends[1]}
    flags = st.sampled_from([True, False, None])
    no_gaps = {j: draw(flags) for j in nonzero}
    unbounded = {j: (draw(flags) if no_gaps[j] is not False else False) for j in nonzero}
    return ModuleProfile(d, nonzero[0], draw(st.integers(-2, 2)), ends, no_gaps, unbounded)


@st.composite
def factor_lists(draw, max_len=3):
    ps = draw(st.lists(profiles(), min_size=1, max_size=max_len))
    # dimension-1 profiles are Cohen-Macaulay by construction, so folding applies
    return ps


def cm_tuple(pairs):
    return [cm_profile(d, r) for d, r in pairs]


class TestExamples:
    def test_p1_x_p1(self):
        report = regularity_segre(cm_tuple([(2, 0), (2, 0)]))
        assert report.reg == 1 and report.exact

    def test_worked_pair(self, two_points, hollow_triangle):
        report = regularity_segre([profile_from_complex(two_points), profile_from_complex(hollow_triangle)])
        assert report.reg == 2 and report.exact
        assert report.gamma == {(0, 2): 2, (1, 0): 1, (1, 2): 2}
        assert report.cohomology == {1: [((1, 0), 0)], 2: [((0, 2), 0), ((1, 2), 0)]}

    def test_single_factor(self):
        p = ModuleProfile(3, 2, 0, {2: 1, 3: -1}, {2: True, 3: True}, {2: True, 3: True})
        assert regularity_segre([p]).reg == p.reg == 3

    def test_closed_forms(self):
        assert regularity_segre_cm([(2, 0), (2, 0)]) == 1
        assert regularity_segre_cm([(3, 0), (2, 0)]) == 1
        assert regularity_segre_cm([(1, 1), (2, 2)]) == 2
        assert regularity_segre_veronese_cm([(2, 0, 0, 2), (2, 0, 0, 2)]) == 2
        assert regularity_segre_veronese_cm([(2, 0, 0, 3)]) == 1
        assert cox_materov([(2, 0, 1), (2, 0, 1)]) == 1
        assert cox_materov([(2, 0, 2), (2, 0, 2)]) == 2
        assert cox_materov([(2, 0, 3)]) == 1

    def test_oracle_free_parts(self, two_points, hollow_triangle):
        ps = [profile_from_complex(two_points), profile_from_complex(hollow_triangle)]
        assert gamma((1, 2), ps) == 2 and gamma((0, 0), ps) == POS_INF
        assert e_u_nonzero((1, 2), ps) and e_u_end((1, 2), ps) == 0
        with pytest.raises(ValueError):
            gamma((0, 1), ps)
        assert support((0, 3, 1)) == (1, 2) and weight((0, 3, 1)) == 2


class TestHypotheses:
    def test_depth(self):
        bad = ModuleProfile(2, 1, 0, {1: 0, 2: 0}, {1: True, 2: True}, {1: True, 2: True})
        with pytest.raises(HypothesisError):
            regularity_segre([bad, cm_profile(2, 0)])

    def test_empty(self):
        with pytest.raises(ValueError):
            regularity_segre([])

    def test_folds_dimension_one(self):
        ps = [cm_profile(1, 0), cm_profile(2, 0), cm_profile(1, 2)]
        factors, groups = prepare(ps)
        assert groups == [(0, 2), (1,)] and factors[0].reg == 2
        report = regularity_segre(ps)
        assert report.to_json()["folded"] == [[1, 3], [2]]
        assert report.reg == regularity_segre_cm([(1, 0), (2, 0), (1, 2)])

    def test_closed_form_validation(self):
        with pytest.raises(ValueError):
            regularity_segre_cm([(0, 0)])
        with pytest.raises(ValueError):
            regularity_segre_veronese_cm([(2, 0, 0, 0)])
        with pytest.raises(ValueError):
            cox_materov([])


class TestReport:
    def test_json_shape(self, two_points, hollow_triangle):
        report = regularity_segre([profile_from_complex(two_points), profile_from_complex(hollow_triangle)])
        data = json.loads(json.dumps(report.to_json()))
        assert set(data) == {"reg", "exact", "violations", "cohomology", "witnesses", "gamma"}
        assert data["cohomology"][0] == {"j": 1, "terms": [{"u": [1, 0], "end": 0}]}
        assert data["witnesses"] == [[0, 2], [1, 2]]

    def test_bound_without_evaluators(self):
        p = ModuleProfile(2, 2, 0, {2: -1}, {2: True}, {2: False})
        report = regularity_segre([p, cm_profile(2, 0)])
        assert not report.exact and report.status == "upper bound" and report.cohomology is None


def gamma_recursion_holds(ps):
    factors, _ = prepare(ps)
    for u in candidate_set(factors) + [tuple(0 for _ in factors)]:
        g = gamma(u, factors)
        for k, p in enumerate(factors):
            if u[k]:
                continue
            for lam in p.nonzero_indices:
                if lam == 0:
                    continue
                v = u[:k] + (lam,) + u[k + 1:]
                expected = min(g + lam - 1, p.end(lam) + lam + weight(u))
                if gamma(v, factors) != expected:
                    return False
    return True


@given(factor_lists())
def test_gamma_recursion_random(ps):
    assert gamma_recursion_holds(ps)


@given(factor_lists())
def test_bound_dominates_every_contribution(ps):
    report = regularity_segre(ps)
    for j, terms in decompose_cohomology(ps).items():
        for u, end in terms:
            assert report.reg >= j + end
    assert report.reg == max(report.gamma.values())
    assert all(report.gamma[u] == report.reg for u in report.witnesses)


@given(factor_lists(), st.randoms())
def test_permutation_invariance(ps, rnd):
    perm = list(range(len(ps)))
    rnd.shuffle(perm)
    a = regularity_segre(ps)
    b = regularity_segre([ps[k] for k in perm])
    assert (a.reg, a.exact) == (b.reg, b.exact)


def test_specialization_grid():
    values = [(d, r) for d in range(1, 5) for r in range(-2, 4)]
    for size in (1, 2):
        for pairs in itertools.product(values, repeat=size):
            if sum(d == 1 for d, _ in pairs) > 1:
                continue
            assert regularity_segre_cm(pairs) == regularity_segre(cm_tuple(pairs)).reg


def test_cox_materov_equals_shifted_veronese_form():
    cells = [(d, m, n) for d in (2, 3) for m in range(-1, 3) for n in range(1, 4)]
    for a, b in itertools.product(cells, repeat=2):
        t = [a, b]
        assert cox_materov(t) == regularity_segre_veronese_cm([(d, 0, m, n) for d, m, n in t])
        assert cox_materov(t) == regularity_segre(veronese_cm_profiles([(d, 0, m, n) for d, m, n in t])).reg


@given(st.lists(st.tuples(st.integers(1, 4), st.integers(-2, 3)), min_size=1, max_size=3))
def test_several_dim1_factors_closed_form_matches_folding(pairs):
    assert regularity_segre_cm(pairs) == regularity_segre(cm_tuple(pairs)).reg


@given(st.lists(st.tuples(st.integers(2, 4), st.integers(-2, 3)), min_size=1, max_size=3))
def test_top_degree_is_product_dimension(pairs):
    terms = decompose_cohomology(cm_tuple(pairs))
    top = max(j for j, ts in terms.items() if ts)
    assert top == sum(d for d, _ in pairs) - len(pairs) + 1


def test_hand_built_bound_case_rejects_exactness():
    # unbounded_below deliberately false
    p = ModuleProfile(2, 2, 0, {2: -2}, {2: True}, {2: False})
    report = regularity_segre([p, cm_profile(2, 0)])
    assert not report.exact
    assert "H^2 unbounded-below false" in report.violations[0]


def test_exact_supports_used_when_every_factor_has_evaluators(hollow_triangle):
    moebius = build_complex(5, [[1, 2, 3], [1, 2, 4], [1, 3, 5], [2, 4, 5], [3, 4, 5]])
    p = veronese_transform(profile_from_complex(moebius), 2, 0)
    report = regularity_segre([p, profile_from_complex(hollow_triangle)])
    assert not report.exact and report.cohomology is not None
    assert max(report.big_gamma.values()) <= report.reg
    assert all(end != NEG_INF for terms in report.cohomology.values() for _, end in terms)
