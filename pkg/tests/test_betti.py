import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complexes
from oracles import is_face, koszul_betti
from segrereg.betti import graded_betti, regularity_from_betti
from segrereg.simplicial import FieldSpec, build_complex, empty_complex, irrelevant_complex, simplex

from test_simplicial import RP2


def subsets(n):
    return [frozenset(s) for k in range(n + 1) for s in itertools.combinations(range(1, n + 1), k)]


def test_two_points(two_points):
    table = graded_betti(two_points)
    assert table.entries == {(0, frozenset()): 1, (1, frozenset({1, 2})): 1}
    assert regularity_from_betti(table) == 1
    assert table.projective_dimension() == 1


def test_koszul_resolution_of_the_residue_field():
    table = graded_betti(irrelevant_complex(3))
    assert table.entries == {(len(s), s): 1 for s in subsets(3)}
    assert table.coarse() == {(0, 0): 1, (1, 1): 3, (2, 2): 3, (3, 3): 1}
    assert regularity_from_betti(table) == 0


def test_hollow_triangle(hollow_triangle):
    table = graded_betti(hollow_triangle)
    assert table.coarse() == {(0, 0): 1, (1, 3): 1}
    assert regularity_from_betti(table) == 2


def test_polynomial_ring():
    table = graded_betti(simplex(3))
    assert table.entries == {(0, frozenset()): 1}
    assert regularity_from_betti(table) == 0


def test_zero_ring_has_no_regularity():
    with pytest.raises(ValueError):
        regularity_from_betti(graded_betti(empty_complex(2)))


def test_projective_plane_characteristic_two():
    # the extra homology over GF(2) adds a resolution step
    assert graded_betti(RP2, FieldSpec(2)).projective_dimension() == graded_betti(RP2).projective_dimension() + 1


def test_render_and_json(two_points):
    table = graded_betti(two_points)
    assert "total:" in table.render()
    data = table.to_json()
    assert data["coarse"] == [{"i": 0, "j": 0, "rank": 1}, {"i": 1, "j": 2, "rank": 1}]


@settings(max_examples=40)
@given(complexes(max_n=4), st.sampled_from([0, 2]))
def test_against_koszul_complex(delta, p):
    table = graded_betti(delta, FieldSpec(p))
    facets = [sorted(f) for f in delta.facets]
    for sigma in subsets(delta.n):
        for i in range(len(sigma) + 1):
            assert table[i, sigma] == koszul_betti(delta.n, facets, i, sigma, p)


@given(complexes())
def test_multigraded_euler_characteristic(delta):
    # Σ_i (-1)^i β_{i,σ} is the σ-coefficient of the Hilbert series numerator
    table = graded_betti(delta)
    for sigma in subsets(delta.n):
        lhs = sum((-1) ** i * table[i, sigma] for i in range(delta.n + 1))
        rhs = sum(
            (-1) ** (len(sigma) - len(f))
            for k in range(len(sigma) + 1)
            for f in itertools.combinations(sorted(sigma), k)
            if f in delta
        )
        assert lhs == rhs


@given(complexes())
def test_first_syzygies_are_minimal_nonfaces(delta):
    if delta.is_empty:
        return
    table = graded_betti(delta)
    for sigma in subsets(delta.n):
        minimal = sigma not in delta and all(sigma - {v} in delta for v in sigma)
        assert table[1, sigma] == (1 if minimal else 0)


@given(complexes())
def test_supported_on_squarefree_degrees_with_bounded_pd(delta):
    table = graded_betti(delta)
    for (i, sigma), r in table.entries.items():
        assert r > 0 and 0 <= i <= len(sigma) <= delta.n
    if not delta.is_empty:
        assert table[0, frozenset()] == 1


@given(complexes(max_n=4))
def test_entries_depend_only_on_the_restriction(delta):
    # an isolated new vertex leaves the σ-entries avoiding it unchanged
    if delta.is_empty:
        return
    bigger = build_complex(delta.n + 1, [sorted(f) for f in delta.facets] + [[delta.n + 1]])
    small, large = graded_betti(delta), graded_betti(bigger)
    for sigma in subsets(delta.n):
        for i in range(len(sigma) + 1):
            assert small[i, sigma] == large[i, sigma]
