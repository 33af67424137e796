"""Multigraded Betti numbers of Stanley-Reisner rings via Hochster's formula.

    β_{i,σ}(K[Δ]) = dim_K H̃_{|σ|-i-1}(Δ_σ; K)

The multigraded table is the source of truth; the coarse table sums it over
subsets of equal size.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping

from .simplicial import (
    QQ,
    FieldSpec,
    SimplicialComplex,
    check_vertex_cap,
    reduced_homology_ranks,
    restrict,
)


@dataclass(frozen=True)
class BettiTable:
    complex: SimplicialComplex
    field: FieldSpec
    entries: Mapping[tuple[int, frozenset], int]

    def __getitem__(self, key: tuple[int, frozenset]) -> int:
        i, sigma = key
        return self.entries.get((i, frozenset(sigma)), 0)

    @property
    def n(self) -> int:
        return self.complex.n

    def coarse(self) -> dict[tuple[int, int], int]:
        """β_{i,j} = Σ_{|σ|=j} β_{i,σ}."""
        out: dict[tuple[int, int], int] = defaultdict(int)
        for (i, sigma), rank in self.entries.items():
            out[i, len(sigma)] += rank
        return dict(sorted(out.items()))

    def coarse_entry(self, i: int, j: int) -> int:
        if i < 0 or j < 0:
            return 0
        return sum(r for (a, s), r in self.entries.items() if a == i and len(s) == j)

    def projective_dimension(self) -> int:
        return max(i for i, _ in self.entries)

    def sorted_entries(self) -> list[tuple[int, tuple[int, ...], int]]:
        return sorted(
            ((i, tuple(sorted(s)), r) for (i, s), r in self.entries.items()),
            key=lambda e: (e[0], len(e[1]), e[1]),
        )

    def to_json(self) -> dict:
        return {
            "entries": [{"i": i, "sigma": list(s), "rank": r} for i, s, r in self.sorted_entries()],
            "coarse": [{"i": i, "j": j, "rank": r} for (i, j), r in self.coarse().items()],
        }

    def render(self) -> str:
        """Macaulay2-style coarse table: row j-i, column i."""
        coarse = self.coarse()
        if not coarse:
            return "(zero table)"
        pd = max(i for i, _ in coarse)
        rows = sorted({j - i for i, j in coarse})
        width = max(len(str(r)) for r in coarse.values()) + 1
        head = "      " + "".join(f"{i:>{width}}" for i in range(pd + 1))
        lines = [head, "total:" + "".join(
            f"{sum(r for (a, _), r in coarse.items() if a == i):>{width}}" for i in range(pd + 1))]
        for row in rows:
            cells = []
            for i in range(pd + 1):
                r = coarse.get((i, i + row))
                cells.append(f"{r if r else '.':>{width}}")
            lines.append(f"{row:>5}:" + "".join(cells))
        return "\n".join(lines)


def graded_betti(
    delta: SimplicialComplex, field: FieldSpec = QQ, max_vertices: int | None = None
) -> BettiTable:
    check_vertex_cap(delta.n, max_vertices)
    entries = {}
    ground = range(1, delta.n + 1)
    for size in range(delta.n + 1):
        for sigma in itertools.combinations(ground, size):
            sigma = frozenset(sigma)
            ranks = reduced_homology_ranks(restrict(delta, sigma), field)
            for k, r in ranks.nonzero().items():
                entries[size - k - 1, sigma] = r
    return BettiTable(delta, field, entries)


def regularity_from_betti(table: BettiTable) -> int:
    """reg = max{|σ| - i : β_{i,σ} ≠ 0}."""
    if not table.entries:
        raise ValueError("regularity of the zero ring (empty Betti table) is undefined")
    return max(len(sigma) - i for i, sigma in table.entries)
