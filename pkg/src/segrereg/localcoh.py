"""Graded structure of the local cohomology of Stanley-Reisner rings.

For a ≤ 0 in Z^n with F = Supp(a), Hochster's formula gives

    dim_K H^i_m(K[Δ])_a = dim_K H̃_{i-|F|-1}(lk_Δ F; K)   if F ∈ Δ, else 0,

and all other multidegrees vanish.  Summing over the C(j-1, |F|-1) vectors
of support F and total degree -j gives closed-form coarse dimensions.

The dual-Betti expressions β_{i+1-|F|,[n]∖F}(K[Δ*]) are kept alongside as
`*_dual_betti` diagnostics; they agree with the link form except when F = [n] ∉ Δ,
and the coarse binomial version does not match the multigraded sum.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .betti import BettiTable, graded_betti
from .degrees import NEG_INF, DegreeSet, GradedEvaluator
from .simplicial import (
    QQ,
    FieldSpec,
    SimplicialComplex,
    alexander_dual,
    link,
    reduced_homology_ranks,
)


@lru_cache(maxsize=4096)
def _face_contributions(delta: SimplicialComplex, field: FieldSpec) -> dict[int, tuple[int, ...]]:
    """i -> (c_0, ..., c_n) with c_h = Σ_{F∈Δ,|F|=h} rank H̃_{i-h-1}(lk F)."""
    table: dict[int, list[int]] = {}
    for face in delta.faces():
        h = len(face)
        for k, r in reduced_homology_ranks(link(delta, face), field).nonzero().items():
            i = k + h + 1
            table.setdefault(i, [0] * (delta.n + 1))[h] += r
    return {i: tuple(c) for i, c in sorted(table.items())}


def lc_multigraded_dim(
    delta: SimplicialComplex, field: FieldSpec, i: int, a: Sequence[int]
) -> int:
    """dim_K H^i_m(K[Δ])_a for a multidegree a with all entries ≤ 0."""
    if len(a) != delta.n:
        raise ValueError(f"multidegree must have {delta.n} entries, got {len(a)}")
    if any(x > 0 for x in a):
        raise ValueError(f"multidegree entries must be <= 0, got {list(a)}")
    face = frozenset(l + 1 for l, x in enumerate(a) if x)
    if face not in delta:
        return 0
    return reduced_homology_ranks(link(delta, face), field)[i - len(face) - 1]


def lc_coarse_dim(delta: SimplicialComplex, field: FieldSpec, i: int, j: int) -> int:
    """dim_K H^i_m(K[Δ])_{-j}, for j ≥ 0."""
    if j < 0:
        raise ValueError(f"j must be nonnegative, got {j}")
    coeffs = _face_contributions(delta, field).get(i)
    if coeffs is None:
        return 0
    if j == 0:
        return coeffs[0]
    return sum(math.comb(j - 1, h - 1) * c for h, c in enumerate(coeffs) if 1 <= h <= j and c)


@lru_cache(maxsize=1024)
def _dual_betti(delta: SimplicialComplex, field: FieldSpec) -> BettiTable:
    return graded_betti(alexander_dual(delta), field)


def lc_multigraded_dim_dual_betti(
    delta: SimplicialComplex, field: FieldSpec, i: int, a: Sequence[int]
) -> int:
    """β_{i+1-|F|,[n]∖F}(K[Δ*]) with F = Supp(a), without the F ∈ Δ restriction."""
    if any(x > 0 for x in a):
        raise ValueError(f"multidegree entries must be <= 0, got {list(a)}")
    face = frozenset(l + 1 for l, x in enumerate(a) if x)
    rest = frozenset(range(1, delta.n + 1)) - face
    return _dual_betti(delta, field)[i + 1 - len(face), rest]


def lc_coarse_dim_dual_betti(delta: SimplicialComplex, field: FieldSpec, i: int, j: int) -> int:
    """Σ_{h=1}^{min(j,n)} C(n,h) C(h+j-1,j) β_{i+1-h,n-h}(K[Δ*]), evaluated literally."""
    if j <= 0:
        raise ValueError(f"j must be positive, got {j}")
    n = delta.n
    dual = _dual_betti(delta, field)
    return sum(
        math.comb(n, h) * math.comb(h + j - 1, j) * dual.coarse_entry(i + 1 - h, n - h)
        for h in range(1, min(j, n) + 1)
    )


# public name used by the CLI output contract
lc_coarse_dim_paper = lc_coarse_dim_dual_betti


def gap_index_k(delta: SimplicialComplex, field: FieldSpec, i: int) -> int | None:
    """Smallest 0 ≤ h ≤ n with coarse β_{i+1-h,n-h}(K[Δ*]) ≠ 0, or None."""
    dual = _dual_betti(delta, field)
    n = delta.n
    return next((h for h in range(n + 1) if dual.coarse_entry(i + 1 - h, n - h)), None)


def multigraded_discrepancies(delta: SimplicialComplex, field: FieldSpec = QQ) -> list[dict]:
    """Supports F where the dual-Betti form and the link form disagree."""
    out = []
    ground = range(1, delta.n + 1)
    for size in range(delta.n + 1):
        for face in itertools.combinations(ground, size):
            a = [-1 if l in face else 0 for l in ground]
            for i in range(delta.n + 1):
                dual = lc_multigraded_dim_dual_betti(delta, field, i, a)
                exact = lc_multigraded_dim(delta, field, i, a)
                if dual != exact:
                    out.append({"i": i, "support": list(face), "dual_betti": dual, "exact": exact})
    return out


@dataclass(frozen=True)
class CohomologyDegreeSet:
    """Exact nonvanishing degrees of a nonzero H^i_m(K[Δ]).

    The support is {0 if zero_degree_present} ∪ {-j : j ≥ tail_threshold}.
    """

    index: int
    zero_degree_present: bool
    tail_threshold: int | None
    coefficients: tuple[int, ...] = field(repr=False)

    def dim(self, j: int) -> int:
        """Dimension in degree -j."""
        if j < 0:
            return 0
        if j == 0:
            return self.coefficients[0]
        return sum(
            math.comb(j - 1, h - 1) * c for h, c in enumerate(self.coefficients) if 1 <= h <= j and c
        )

    def __call__(self, t: int) -> int:
        """Dimension in degree t."""
        return self.dim(-t)

    def support(self) -> DegreeSet:
        tail = -self.tail_threshold if self.tail_threshold is not None else None
        return DegreeSet(points=frozenset([0]) if self.zero_degree_present else frozenset(), tail=tail)

    @property
    def end(self) -> int:
        return self.support().max()

    @property
    def has_gap(self) -> bool:
        return self.zero_degree_present and self.tail_threshold is not None and self.tail_threshold >= 2

    @property
    def infinite_tail(self) -> bool:
        return self.tail_threshold is not None

    def evaluator(self) -> GradedEvaluator:
        return GradedEvaluator(self.support(), self.__call__)

    def to_json(self, window: int = 5) -> dict:
        return {
            "i": self.index,
            "end": self.end,
            "zero_degree": self.zero_degree_present,
            "tail_from": self.tail_threshold,
            "dims": {str(-j): self.dim(j) for j in range(window + 1)},
        }


def degree_set(delta: SimplicialComplex, field: FieldSpec, i: int) -> CohomologyDegreeSet | None:
    """Exact degree description of H^i_m(K[Δ]); None when the module is zero."""
    if i < 0:
        raise ValueError(f"cohomological index must be nonnegative, got {i}")
    coeffs = _face_contributions(delta, field).get(i)
    if coeffs is None:
        return None
    tail = next((h for h in range(1, len(coeffs)) if coeffs[h]), None)
    return CohomologyDegreeSet(i, bool(coeffs[0]), tail, coeffs)


@dataclass(frozen=True)
class CohomologySummary:
    complex: SimplicialComplex
    field: FieldSpec
    sets: dict[int, CohomologyDegreeSet | None]

    def end(self, i: int):
        s = self.sets.get(i)
        return NEG_INF if s is None else s.end

    @property
    def nonzero_indices(self) -> list[int]:
        return [i for i, s in self.sets.items() if s is not None]

    @property
    def depth(self) -> int:
        return min(self.nonzero_indices)

    @property
    def dim(self) -> int:
        return max(self.nonzero_indices)

    def r(self, i: int):
        return self.end(i) + i

    @property
    def reg(self) -> int:
        return max(self.r(i) for i in self.nonzero_indices)


def summarize(delta: SimplicialComplex, field: FieldSpec = QQ) -> CohomologySummary:
    if delta.is_empty:
        raise ValueError("the empty complex gives the zero ring; it has no local cohomology")
    sets = {i: degree_set(delta, field, i) for i in range(delta.krull_dim + 1)}
    return CohomologySummary(delta, field, sets)


@dataclass(frozen=True)
class AssumptionReport:
    """Per-index gap data plus the depth and dimension hypotheses."""

    summary: CohomologySummary
    indices: list[dict]
    violations: list[str]

    @property
    def satisfied(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"satisfied": self.satisfied, "indices": self.indices, "violations": self.violations}


def check_assumption(delta: SimplicialComplex, field: FieldSpec = QQ) -> AssumptionReport:
    summary = summarize(delta, field)
    d, depth = summary.dim, summary.depth
    violations = []
    if d < 1:
        violations.append(f"dim K[Δ] = {d} < 1")
    if depth < min(2, d):
        violations.append(f"depth {depth} < min(2, dim {d})")
    indices = []
    for i in summary.nonzero_indices:
        s = summary.sets[i]
        k = gap_index_k(delta, field, i)
        entry = {
            "i": i,
            "no_gaps": not s.has_gap,
            "infinite_tail": s.infinite_tail,
            "k": k,
        }
        indices.append(entry)
        if s.has_gap:
            violations.append(f"H^{i} has a gap: nonzero in degree 0 and from degree -{s.tail_threshold} down")
        if not s.infinite_tail:
            violations.append(f"H^{i} is nonzero in only finitely many degrees")
    return AssumptionReport(summary, indices, violations)
