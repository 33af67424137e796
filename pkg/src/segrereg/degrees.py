"""Extended integers, exact subsets of Z, and graded dimension evaluators.

The infinities are sentinels for "zero module" (end = -inf) and for modules
that are nonzero in all large degrees (end = +inf); finite values are always
Python ints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

NEG_INF = -math.inf
POS_INF = math.inf


def ext_to_json(x):
    if x == NEG_INF:
        return "-inf"
    if x == POS_INF:
        return "inf"
    return int(x)


def ext_from_json(value):
    if value in ("-inf", None):
        return NEG_INF
    if value == "inf":
        return POS_INF
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"expected an integer or '-inf', got {value!r}")
    return value


def ext_str(x) -> str:
    return str(ext_to_json(x))


def floor_div(a: int, n: int) -> int:
    return a // n


def ceil_div(a: int, n: int) -> int:
    return -((-a) // n)


@dataclass(frozen=True)
class DegreeSet:
    """A subset of Z of the form P ∪ (-inf, tail] ∪ [ray, inf) with P finite.

    The representation is normalized on construction, so equal sets compare
    equal.
    """

    points: frozenset = frozenset()
    tail: int | None = None
    ray: int | None = None

    def __post_init__(self):
        pts = set(self.points)
        tail, ray = self.tail, self.ray
        if tail is not None:
            pts = {p for p in pts if p > tail}
            while tail + 1 in pts:
                pts.remove(tail + 1)
                tail += 1
        if ray is not None:
            pts = {p for p in pts if p < ray}
            while ray - 1 in pts:
                pts.remove(ray - 1)
                ray -= 1
        if tail is not None and ray is not None and ray <= tail + 1:
            pts, tail, ray = set(), 0, 1
        object.__setattr__(self, "points", frozenset(pts))
        object.__setattr__(self, "tail", tail)
        object.__setattr__(self, "ray", ray)

    @classmethod
    def interval(cls, lo: int | None, hi: int | None) -> "DegreeSet":
        """[lo, hi] with None meaning unbounded on that side."""
        if lo is None and hi is None:
            return cls(tail=0, ray=1)
        if lo is None:
            return cls(tail=hi)
        if hi is None:
            return cls(ray=lo)
        return cls(points=frozenset(range(lo, hi + 1)))

    def __contains__(self, t: int) -> bool:
        return (
            t in self.points
            or (self.tail is not None and t <= self.tail)
            or (self.ray is not None and t >= self.ray)
        )

    def __bool__(self) -> bool:
        return bool(self.points) or self.tail is not None or self.ray is not None

    def max(self):
        if self.ray is not None:
            return POS_INF
        candidates = list(self.points) + ([self.tail] if self.tail is not None else [])
        return max(candidates, default=NEG_INF)

    def min(self):
        if self.tail is not None:
            return NEG_INF
        candidates = list(self.points) + ([self.ray] if self.ray is not None else [])
        return min(candidates, default=POS_INF)

    def _atoms(self) -> list["DegreeSet"]:
        atoms = []
        if self.points:
            atoms.append(DegreeSet(points=self.points))
        if self.tail is not None:
            atoms.append(DegreeSet(tail=self.tail))
        if self.ray is not None:
            atoms.append(DegreeSet(ray=self.ray))
        return atoms

    @staticmethod
    def _meet_atoms(a: "DegreeSet", b: "DegreeSet") -> "DegreeSet":
        if a.points:
            return DegreeSet(points=frozenset(p for p in a.points if p in b))
        if b.points:
            return DegreeSet(points=frozenset(p for p in b.points if p in a))
        if a.tail is not None and b.tail is not None:
            return DegreeSet(tail=min(a.tail, b.tail))
        if a.ray is not None and b.ray is not None:
            return DegreeSet(ray=max(a.ray, b.ray))
        lo = a.ray if a.ray is not None else b.ray
        hi = a.tail if a.tail is not None else b.tail
        return DegreeSet(points=frozenset(range(lo, hi + 1)))

    def __and__(self, other: "DegreeSet") -> "DegreeSet":
        out = DegreeSet()
        for a in self._atoms():
            for b in other._atoms():
                out = out | self._meet_atoms(a, b)
        return out

    def __or__(self, other: "DegreeSet") -> "DegreeSet":
        tails = [t for t in (self.tail, other.tail) if t is not None]
        rays = [r for r in (self.ray, other.ray) if r is not None]
        return DegreeSet(
            points=self.points | other.points,
            tail=max(tails) if tails else None,
            ray=min(rays) if rays else None,
        )

    def preimage(self, n: int, shift: int = 0) -> "DegreeSet":
        """{k : n*k + shift ∈ self}, the support of the shifted n-th Veronese."""
        if n < 1:
            raise ValueError(f"Veronese degree must be >= 1, got {n}")
        pts = frozenset((p - shift) // n for p in self.points if (p - shift) % n == 0)
        tail = floor_div(self.tail - shift, n) if self.tail is not None else None
        ray = ceil_div(self.ray - shift, n) if self.ray is not None else None
        return DegreeSet(points=pts, tail=tail, ray=ray)

    def is_interval(self) -> bool:
        """True when the set has no gaps (including the empty set)."""
        if self.tail is not None and self.ray is not None:
            return self.ray == self.tail + 1
        if self.tail is not None or self.ray is not None:
            return not self.points
        if not self.points:
            return True
        return max(self.points) - min(self.points) + 1 == len(self.points)

    def unbounded_below(self) -> bool:
        """Nonzero in every degree up to its (finite or infinite) maximum."""
        return self.tail is not None and self.is_interval()

    def __str__(self):
        parts = []
        if self.tail is not None:
            parts.append(f"(-inf, {self.tail}]")
        parts.extend(str(p) for p in sorted(self.points))
        if self.ray is not None:
            parts.append(f"[{self.ray}, inf)")
        return " ∪ ".join(parts) if parts else "∅"


EMPTY = DegreeSet()


def intersect_all(sets: Iterable[DegreeSet]) -> DegreeSet:
    out = DegreeSet.interval(None, None)
    for s in sets:
        out = out & s
    return out


@dataclass(frozen=True)
class GradedEvaluator:
    """Exact graded dimensions of a (possibly infinite) graded vector space.

    `support` is the exact set of degrees where the space is nonzero; `dim`
    may be None when only the support is known.
    """

    support: DegreeSet
    dim: Callable[[int], int] | None = field(default=None, compare=False)

    def __call__(self, t: int) -> int:
        if self.dim is None:
            raise ValueError("no exact dimension function attached to this evaluator")
        return self.dim(t)

    @property
    def end(self):
        return self.support.max()

    def veronese(self, n: int, shift: int = 0) -> "GradedEvaluator":
        if n == 1 and shift == 0:
            return self
        dim = None if self.dim is None else (lambda k, f=self.dim: f(n * k + shift))
        return GradedEvaluator(self.support.preimage(n, shift), dim)


ZERO = GradedEvaluator(EMPTY, lambda t: 0)


def direct_sum(parts: Iterable[GradedEvaluator]) -> GradedEvaluator:
    parts = list(parts)
    support = EMPTY
    for p in parts:
        support = support | p.support
    if any(p.dim is None for p in parts):
        return GradedEvaluator(support)
    return GradedEvaluator(support, lambda t: sum(p.dim(t) for p in parts))


def segre(parts: Iterable[GradedEvaluator]) -> GradedEvaluator:
    """Segre product: degree-t piece is the tensor product of the degree-t pieces."""
    parts = list(parts)
    support = intersect_all(p.support for p in parts)
    if any(p.dim is None for p in parts):
        return GradedEvaluator(support)
    return GradedEvaluator(support, lambda t: math.prod(p.dim(t) for p in parts))


@dataclass(frozen=True)
class FactorEvaluators:
    """A graded module and its local cohomology modules, as exact evaluators."""

    module: GradedEvaluator
    cohomology: Mapping[int, GradedEvaluator]

    def term(self, j: int) -> GradedEvaluator:
        """E_j: the module itself for j = 0, else H^j (zero when absent)."""
        if j == 0:
            return self.module
        return self.cohomology.get(j, ZERO)

    def nonzero_indices(self) -> list[int]:
        return sorted(j for j, ev in self.cohomology.items() if ev.support)

    @property
    def depth(self) -> int:
        idx = self.nonzero_indices()
        return idx[0] if idx else POS_INF

    @property
    def dim(self) -> int:
        idx = self.nonzero_indices()
        return idx[-1] if idx else NEG_INF

    def veronese(self, n: int, shift: int = 0) -> "FactorEvaluators":
        return FactorEvaluators(
            self.module.veronese(n, shift),
            {j: ev.veronese(n, shift) for j, ev in self.cohomology.items()},
        )
