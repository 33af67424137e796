"""Brute-force regularity of Segre products from exact degree sets.

The oracle works on concrete modules whose graded pieces and local
cohomology are known exactly: Stanley-Reisner rings (through Hochster's
formula) and graded free modules ⊕ S(-a) over a polynomial ring S, each
optionally replaced by a shifted Veronese transform.  It intersects
supports literally and never uses γ_u, gap flags, or the closed forms.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .betti import graded_betti, regularity_from_betti
from .degrees import (
    NEG_INF,
    DegreeSet,
    FactorEvaluators,
    GradedEvaluator,
    direct_sum,
    intersect_all,
    segre,
)
from .localcoh import summarize
from .simplicial import QQ, FieldSpec, SimplicialComplex, hilbert_dim


class OracleHypothesisError(ValueError):
    """The factors violate the dimension/depth hypotheses of the decomposition."""


@dataclass(frozen=True)
class StanleyReisnerFactor:
    complex: SimplicialComplex
    field: FieldSpec = QQ
    veronese: int = 1
    shift: int = 0

    def evaluators(self) -> FactorEvaluators:
        delta = self.complex
        summary = summarize(delta, self.field)
        ray = 0 if delta.krull_dim >= 1 else None
        points = frozenset() if ray is not None else frozenset([0])
        module = GradedEvaluator(
            DegreeSet(points=points, ray=ray), lambda t: hilbert_dim(delta, t) if t >= 0 else 0
        )
        cohomology = {i: s.evaluator() for i, s in summary.sets.items() if s is not None}
        return FactorEvaluators(module, cohomology).veronese(self.veronese, self.shift)

    def describe(self) -> str:
        tag = f"K[{self.complex}]"
        return _veronese_tag(tag, self.veronese, self.shift)


def _free_module(d: int, a: int) -> GradedEvaluator:
    return GradedEvaluator(DegreeSet(ray=a), lambda t: math.comb(t - a + d - 1, d - 1) if t >= a else 0)


def _free_top_cohomology(d: int, a: int) -> GradedEvaluator:
    # H^d(S)_t ≅ dual of S_{-t-d}; twisting by -a shifts by a
    return GradedEvaluator(
        DegreeSet(tail=a - d), lambda t: math.comb(a - t - 1, d - 1) if t <= a - d else 0
    )


@dataclass(frozen=True)
class FreeFactor:
    """⊕_a S(-a) with S a polynomial ring in `dim` variables."""

    dim: int
    shifts: tuple[int, ...] = (0,)
    veronese: int = 1
    shift: int = 0

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"polynomial ring dimension must be >= 1, got {self.dim}")
        if not self.shifts:
            raise ValueError("free module needs at least one summand")

    def evaluators(self) -> FactorEvaluators:
        d = self.dim
        module = direct_sum(_free_module(d, a) for a in self.shifts)
        top = direct_sum(_free_top_cohomology(d, a) for a in self.shifts)
        return FactorEvaluators(module, {d: top}).veronese(self.veronese, self.shift)

    def describe(self) -> str:
        summands = " ⊕ ".join(f"S({-a})" if a else "S" for a in self.shifts)
        return _veronese_tag(f"[{summands}, dim S={self.dim}]", self.veronese, self.shift)


def _veronese_tag(tag, n, shift):
    if n == 1 and shift == 0:
        return tag
    return f"{tag}[{shift}]^<{n}>"


def polynomial_ring(dim: int, twist: int = 0, veronese: int = 1) -> FreeFactor:
    """S[twist]^<veronese>, whose degree-k piece is S_{veronese*k + twist}."""
    return FreeFactor(dim, (0,), veronese, twist)


def cm_model(dim: int, reg: int, sigma: int = 0) -> FreeFactor:
    """A concrete Cohen-Macaulay module with the given dim, reg and initial degree."""
    if sigma > reg:
        raise ValueError(f"initial degree {sigma} exceeds regularity {reg}")
    return FreeFactor(dim, tuple(sorted({sigma, reg})))


def segre_graded_dim(evaluators: Iterable[GradedEvaluator], t: int) -> int:
    return math.prod(ev(t) for ev in evaluators)


def exact_e_u_end(u: Sequence[int], factors: Sequence[FactorEvaluators | None]):
    """max{t : every factor E_{i,u_i} is nonzero in degree t}, or -inf."""
    if len(u) != len(factors):
        raise ValueError("u and factor list have different lengths")
    supports = []
    for x, f in zip(u, factors):
        if f is None:
            raise ValueError("factor has no exact description of its nonvanishing degrees")
        supports.append(f.term(x).support)
    return intersect_all(supports).max()


def _fold_pair(a: FactorEvaluators, b: FactorEvaluators) -> FactorEvaluators:
    """Segre product of two one-dimensional factors of depth 1 (Künneth, j = 1)."""
    h1 = direct_sum([
        segre([a.module, b.term(1)]),
        segre([a.term(1), b.module]),
        segre([a.term(1), b.term(1)]),
    ])
    return FactorEvaluators(segre([a.module, b.module]), {1: h1})


def _resolve(factors) -> list[FactorEvaluators]:
    out = []
    for f in factors:
        out.append(f if isinstance(f, FactorEvaluators) else f.evaluators())
    return out


def _prepare(factors) -> list[FactorEvaluators]:
    evs = _resolve(factors)
    if not evs:
        raise ValueError("at least one factor is required")
    for k, ev in enumerate(evs, 1):
        d, depth = ev.dim, ev.depth
        if d < 1:
            raise OracleHypothesisError(f"factor {k}: dimension {d} < 1")
        if depth < min(2, d):
            raise OracleHypothesisError(f"factor {k}: depth {depth} < min(2, dim {d})")
    out: list[FactorEvaluators] = []
    slot = None
    for ev in evs:
        if ev.dim == 1 and slot is not None:
            out[slot] = _fold_pair(out[slot], ev)
            continue
        if ev.dim == 1:
            slot = len(out)
        out.append(ev)
    return out


def oracle_decomposition(factors) -> dict[int, list[tuple[tuple[int, ...], int]]]:
    """j -> [(u, end E_u)] over nonzero u with E_u ≠ 0, from exact supports."""
    evs = _prepare(factors)
    top = sum(ev.dim for ev in evs) - len(evs) + 1
    out = {j: [] for j in range(1, top + 1)}
    for u in itertools.product(*(range(ev.dim + 1) for ev in evs)):
        if not any(u):
            continue
        end = exact_e_u_end(u, evs)
        if end != NEG_INF:
            out[sum(x - 1 for x in u if x) + 1].append((u, end))
    return out


def regularity_oracle(factors) -> int:
    """reg = max over nonvanishing E_u of 1 + w(u) + end E_u."""
    terms = oracle_decomposition(factors)
    return max(j + end for j, ts in terms.items() for _, end in ts)


@dataclass(frozen=True)
class CrosscheckReport:
    complex: SimplicialComplex
    reg_betti: int
    reg_lc: int
    depth_lc: int
    depth_ab: int
    disagreements: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.disagreements

    def to_json(self) -> dict:
        return {
            "complex": self.complex.to_json(),
            "reg_betti": self.reg_betti,
            "reg_local_cohomology": self.reg_lc,
            "depth_local_cohomology": self.depth_lc,
            "depth_auslander_buchsbaum": self.depth_ab,
            "match": self.passed,
            "disagreements": self.disagreements,
        }


def crosscheck(delta: SimplicialComplex, field: FieldSpec = QQ) -> CrosscheckReport:
    """Betti-table regularity and depth against the local cohomology route."""
    table = graded_betti(delta, field)
    summary = summarize(delta, field)
    reg_b = regularity_from_betti(table)
    depth_ab = delta.n - table.projective_dimension()
    bad = []
    if reg_b != summary.reg:
        bad.append(f"reg: Betti {reg_b} vs local cohomology {summary.reg}")
    if depth_ab != summary.depth:
        bad.append(f"depth: Auslander-Buchsbaum {depth_ab} vs local cohomology {summary.depth}")
    return CrosscheckReport(delta, reg_b, summary.reg, summary.depth, depth_ab, bad)
