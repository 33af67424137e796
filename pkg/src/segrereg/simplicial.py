"""Finite simplicial complexes on [n] and exact reduced homology over a field.

Faces are frozensets of vertex labels 1..n.  A complex is stored by its
facets; the empty complex has no faces at all, while the irrelevant complex
{∅} has the single facet ∅.
"""

from __future__ import annotations

import contextlib
import contextvars
import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

DEFAULT_MAX_VERTICES = 16
MAX_VERTICES_ENV = "SEGREREG_MAX_VERTICES"


class VertexCapError(ValueError):
    """Raised when an exhaustive 2^n computation is requested beyond the cap."""


_cap_override: contextvars.ContextVar[int | None] = contextvars.ContextVar("vertex_cap", default=None)


@contextlib.contextmanager
def using_vertex_cap(cap: int | None):
    """Temporarily set the vertex cap for exhaustive subset computations."""
    token = _cap_override.set(cap)
    try:
        yield
    finally:
        _cap_override.reset(token)


def max_vertices(override: int | None = None) -> int:
    """Cap from the explicit override, then `using_vertex_cap`, then the environment."""
    if override is not None:
        return override
    if _cap_override.get() is not None:
        return _cap_override.get()
    env = os.environ.get(MAX_VERTICES_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{MAX_VERTICES_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_MAX_VERTICES


def check_vertex_cap(n: int, override: int | None = None) -> None:
    cap = max_vertices(override)
    if n > cap:
        raise VertexCapError(
            f"complex has {n} vertices, above the configured maximum of {cap} "
            f"(raise it with --max-vertices or {MAX_VERTICES_ENV})"
        )


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: characteristic 0 (rationals) or a prime p."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not _is_prime(c):
            raise ValueError(f"field characteristic must be 0 or a prime, got {c}")

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = FieldSpec(0)


def matrix_rank(matrix: Sequence[Sequence[int]], field: FieldSpec = QQ) -> int:
    """Rank of an integer matrix over `field`, by exact Gaussian elimination."""
    p = field.characteristic
    if p:
        rows = [[x % p for x in row] for row in matrix]
    else:
        rows = [[Fraction(x) for x in row] for row in matrix]
    rows = [row for row in rows if any(row)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        inv = pow(prow[col], -1, p) if p else 1 / prow[col]
        for r in range(rank + 1, len(rows)):
            f = rows[r][col]
            if not f:
                continue
            f = f * inv
            row = rows[r]
            if p:
                rows[r] = [(a - f * b) % p for a, b in zip(row, prow)]
            else:
                rows[r] = [a - f * b for a, b in zip(row, prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _maximal(faces: Iterable[frozenset]) -> tuple[frozenset, ...]:
    # larger faces first, so each face only needs checking against kept ones
    unique = sorted(set(faces), key=len, reverse=True)
    kept: list[frozenset] = []
    for f in unique:
        if not any(f <= g for g in kept):
            kept.append(f)
    return tuple(sorted(kept, key=lambda f: (len(f), sorted(f))))


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex on the vertex set {1..n}, stored by its facets."""

    n: int
    facets: tuple[frozenset, ...]

    def __contains__(self, face) -> bool:
        face = frozenset(face)
        return any(face <= f for f in self.facets)

    @property
    def is_empty(self) -> bool:
        return not self.facets

    @property
    def is_irrelevant(self) -> bool:
        return self.facets == (frozenset(),)

    @property
    def is_simplex(self) -> bool:
        return self.facets == (frozenset(range(1, self.n + 1)),)

    @property
    def dimension(self) -> int:
        """Topological dimension: max facet size minus one (-2 for the empty complex)."""
        return max((len(f) for f in self.facets), default=-1) - 1

    @property
    def krull_dim(self) -> int:
        """dim K[Δ], the largest facet size."""
        return self.dimension + 1

    @cached_property
    def faces_by_size(self) -> dict[int, tuple[tuple[int, ...], ...]]:
        found: dict[int, set] = {}
        for facet in self.facets:
            verts = sorted(facet)
            for k in range(len(verts) + 1):
                found.setdefault(k, set()).update(itertools.combinations(verts, k))
        return {k: tuple(sorted(found[k])) for k in sorted(found)}

    def faces(self) -> Iterator[frozenset]:
        for group in self.faces_by_size.values():
            for f in group:
                yield frozenset(f)

    def f_vector(self) -> list[int]:
        """Face counts by size, starting with the empty face."""
        return [len(self.faces_by_size.get(k, ())) for k in range(self.krull_dim + 1)]

    def vertices(self) -> list[int]:
        return [f[0] for f in self.faces_by_size.get(1, ())]

    def to_json(self) -> dict:
        return {"n": self.n, "facets": [sorted(f) for f in self.facets]}

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialComplex":
        if not isinstance(data, dict) or "n" not in data or "facets" not in data:
            raise ValueError('complex JSON must have the form {"n": int, "facets": [[...], ...]}')
        n, facets = data["n"], data["facets"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise ValueError("complex field 'n' must be an integer")
        if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
            raise ValueError("complex field 'facets' must be a list of lists")
        return build_complex(n, facets)

    def __str__(self):
        if self.is_empty:
            return f"<empty complex on [{self.n}]>"
        body = ", ".join("{" + ",".join(map(str, sorted(f))) + "}" for f in self.facets)
        return f"<{body} on [{self.n}]>"


def build_complex(n: int, faces: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Complex on [n] generated by `faces` (duplicates and non-maximal faces allowed)."""
    if not isinstance(n, int) or n <= 0:
        raise ValueError(f"vertex count must be a positive integer, got {n!r}")
    canon = []
    for face in faces:
        face = frozenset(face)
        for v in face:
            if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= n:
                raise ValueError(f"vertex {v!r} out of range 1..{n}")
        canon.append(face)
    return SimplicialComplex(n, _maximal(canon))


def simplex(n: int) -> SimplicialComplex:
    return build_complex(n, [range(1, n + 1)])


def empty_complex(n: int) -> SimplicialComplex:
    return build_complex(n, [])


def irrelevant_complex(n: int) -> SimplicialComplex:
    return build_complex(n, [[]])


def alexander_dual(delta: SimplicialComplex, max_vertices: int | None = None) -> SimplicialComplex:
    """Δ* = {F : [n]∖F ∉ Δ}; its facets are complements of minimal nonfaces of Δ."""
    check_vertex_cap(delta.n, max_vertices)
    ground = frozenset(range(1, delta.n + 1))
    minimal_nonfaces = []
    for k in range(delta.n + 1):
        for g in itertools.combinations(sorted(ground), k):
            g = frozenset(g)
            if g in delta:
                continue
            if all(g - {v} in delta for v in g):
                minimal_nonfaces.append(g)
    return SimplicialComplex(delta.n, _maximal(ground - g for g in minimal_nonfaces))


def link(delta: SimplicialComplex, face: Iterable[int]) -> SimplicialComplex:
    """lk F = {G : G ∩ F = ∅, G ∪ F ∈ Δ}, kept on the ambient vertex set [n]."""
    face = frozenset(face)
    if face not in delta:
        raise ValueError(f"link of a non-face {sorted(face)}")
    return SimplicialComplex(delta.n, _maximal(f - face for f in delta.facets if face <= f))


def restrict(delta: SimplicialComplex, subset: Iterable[int]) -> SimplicialComplex:
    """Induced subcomplex Δ_σ = {G ∈ Δ : G ⊆ σ}."""
    subset = frozenset(subset)
    return SimplicialComplex(delta.n, _maximal(f & subset for f in delta.facets))


@dataclass(frozen=True)
class HomologyRanks:
    """Ranks of reduced homology; ranks[0] is degree -1."""

    ranks: tuple[int, ...]

    def __getitem__(self, degree: int) -> int:
        k = degree + 1
        if 0 <= k < len(self.ranks):
            return self.ranks[k]
        return 0

    def nonzero(self) -> dict[int, int]:
        return {k - 1: r for k, r in enumerate(self.ranks) if r}

    def euler_characteristic(self) -> int:
        return sum((-1) ** (k - 1) * r for k, r in enumerate(self.ranks))

    def __iter__(self):
        return iter(range(-1, len(self.ranks) - 1))


def boundary_matrix(delta: SimplicialComplex, size: int) -> list[list[int]]:
    """Augmented boundary map from faces with `size` vertices to faces with size-1."""
    sources = delta.faces_by_size.get(size, ())
    targets = delta.faces_by_size.get(size - 1, ())
    index = {f: r for r, f in enumerate(targets)}
    mat = [[0] * len(sources) for _ in targets]
    for c, face in enumerate(sources):
        for pos in range(len(face)):
            mat[index[face[:pos] + face[pos + 1:]]][c] = -1 if pos % 2 else 1
    return mat


@lru_cache(maxsize=65536)
def reduced_homology_ranks(delta: SimplicialComplex, field: FieldSpec = QQ) -> HomologyRanks:
    """rank H̃_i(Δ; K) for i = -1..dim Δ, via the augmented chain complex."""
    if delta.is_empty:
        return HomologyRanks(())
    top = delta.krull_dim
    counts = delta.f_vector()
    # rank of ∂ out of faces of each size; size 0 maps to nothing
    brank = [0] + [matrix_rank(boundary_matrix(delta, s), field) for s in range(1, top + 1)] + [0]
    ranks = tuple(counts[s] - brank[s] - brank[s + 1] for s in range(top + 1))
    return HomologyRanks(ranks)


def hilbert_dim(delta: SimplicialComplex, k: int) -> int:
    """dim_K K[Δ]_k = Σ_{F∈Δ} C(k-1, |F|-1), the empty face counting only at k = 0."""
    if k < 0:
        raise ValueError(f"degree must be nonnegative, got {k}")
    if delta.is_empty:
        return 0
    if k == 0:
        return 1
    return sum(
        len(group) * math.comb(k - 1, size - 1)
        for size, group in delta.faces_by_size.items()
        if 1 <= size <= k
    )


def iter_complexes(n: int, up_to_isomorphism: bool = True) -> Iterator[SimplicialComplex]:
    """Every simplicial complex on [n] (including the empty and irrelevant ones).

    With `up_to_isomorphism`, one representative per orbit of the symmetric
    group acting on the vertex labels.
    """
    masks = sorted(range(1 << n), key=lambda m: (bin(m).count("1"), m))

    def antichains(start, chosen):
        yield chosen
        for k in range(start, len(masks)):
            m = masks[k]
            if all(m & c != m and m & c != c for c in chosen):
                yield from antichains(k + 1, chosen + (m,))

    def to_complex(chain):
        faces = [[v + 1 for v in range(n) if m >> v & 1] for m in chain]
        return SimplicialComplex(n, _maximal(frozenset(f) for f in faces))

    if not up_to_isomorphism:
        for chain in antichains(0, ()):
            yield to_complex(chain)
        return

    tables = []
    for perm in itertools.permutations(range(n)):
        tables.append([sum(1 << perm[v] for v in range(n) if m >> v & 1) for m in range(1 << n)])
    seen = set()
    for chain in antichains(0, ()):
        key = min(tuple(sorted(t[m] for m in chain)) for t in tables)
        if key not in seen:
            seen.add(key)
            yield to_complex(chain)
