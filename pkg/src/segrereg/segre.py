"""Regularity of Segre products from per-factor regularity profiles.

For factors M_1..M_s with d_i = dim M_i ≥ 1 and depth M_i ≥ min(2, d_i), and
u ∈ C = Π{0..d_i}, let Supp u = {i : u_i ≠ 0} and w(u) = Σ_{Supp u}(u_i - 1).
The cohomology H^j of the Segre product splits as ⊕ E_u over u ≠ 0 with
w(u) = j - 1, where E_u is the Segre product of H^{u_i}(M_i) (u_i > 0) and
M_i (u_i = 0).  The regularity is bounded by

    max over u in C_2 of  γ_u = 1 + w(u) + min_{i ∈ Supp u} end H^{u_i}(M_i),

with equality when every nonzero H^j(M_i) has no gaps and is nonzero in
infinitely many degrees.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .degrees import NEG_INF, POS_INF, ceil_div, ext_to_json, intersect_all
from .profile import ModuleProfile, cm_profile, fold_dim1_cm, veronese_transform

Vector = tuple[int, ...]


class HypothesisError(ValueError):
    """The factors violate the dimension/depth hypotheses of the decomposition."""


def support(u: Vector) -> tuple[int, ...]:
    return tuple(i for i, x in enumerate(u) if x)


def weight(u: Vector) -> int:
    return sum(x - 1 for x in u if x)


def check_hypotheses(profiles: Sequence[ModuleProfile]) -> None:
    if not profiles:
        raise ValueError("at least one factor is required")
    for k, p in enumerate(profiles, 1):
        if p.dim < 1:
            raise HypothesisError(f"factor {k}: dimension {p.dim} < 1")
        if p.depth < min(2, p.dim):
            raise HypothesisError(f"factor {k}: depth {p.depth} < min(2, dim {p.dim})")


def prepare(profiles: Sequence[ModuleProfile]) -> tuple[list[ModuleProfile], list[tuple[int, ...]]]:
    """Check hypotheses and fold all one-dimensional factors into one.

    Returns the engine factors and, for each, the original factor indices it
    stands for.
    """
    check_hypotheses(profiles)
    out: list[ModuleProfile] = []
    groups: list[tuple[int, ...]] = []
    slot = None
    for k, p in enumerate(profiles):
        if p.dim == 1:
            if not p.is_cm:
                raise HypothesisError(f"factor {k + 1}: dimension-1 factor is not Cohen-Macaulay")
            if slot is not None:
                out[slot] = fold_dim1_cm(out[slot], p)
                groups[slot] += (k,)
                continue
            slot = len(out)
        out.append(p)
        groups.append((k,))
    return out, groups


def candidate_set(profiles: Sequence[ModuleProfile]) -> list[Vector]:
    """C_2 ∖ {0}: nonzero u with H^{u_i}(M_i) ≠ 0 for every i in Supp u."""
    ranges = [[0] + [j for j in range(1, p.dim + 1) if p.end(j) != NEG_INF] for p in profiles]
    return [u for u in itertools.product(*ranges) if any(u)]


def _in_c2(u: Vector, profiles) -> bool:
    return len(u) == len(profiles) and all(
        0 <= x <= p.dim and (x == 0 or p.end(x) != NEG_INF) for x, p in zip(u, profiles)
    )


def gamma(u: Vector, profiles: Sequence[ModuleProfile]):
    """γ_u; +inf for u = 0 (min over an empty support)."""
    if not _in_c2(u, profiles):
        raise ValueError(f"u = {list(u)} is not in C_2 (some required cohomology vanishes)")
    m = min((profiles[i].end(u[i]) for i in support(u)), default=POS_INF)
    return 1 + weight(u) + m


def e_u_nonzero(u: Vector, profiles: Sequence[ModuleProfile]) -> bool:
    """min_{i∈Supp u} end H^{u_i} ≥ max_{j∉Supp u} σ_j (empty max is -inf)."""
    supp = support(u)
    lo = max((p.sigma for j, p in enumerate(profiles) if j not in supp), default=NEG_INF)
    hi = min((profiles[i].end(u[i]) for i in supp), default=POS_INF)
    return hi != NEG_INF and hi >= lo


def e_u_end(u: Vector, profiles: Sequence[ModuleProfile]):
    if not e_u_nonzero(u, profiles):
        raise ValueError(f"E_u vanishes for u = {list(u)}")
    return min(profiles[i].end(u[i]) for i in support(u))


def _exact_end(u: Vector, profiles: Sequence[ModuleProfile]):
    """end(E_u) straight from the attached exact supports."""
    return intersect_all(p.hilbert.term(x).support for x, p in zip(u, profiles)).max()


def _decompose(profiles, exact_supports: bool) -> dict[int, list[tuple[Vector, int]]]:
    top = sum(p.dim for p in profiles) - len(profiles) + 1
    out: dict[int, list[tuple[Vector, int]]] = {j: [] for j in range(1, top + 1)}
    ranges = [range(p.dim + 1) for p in profiles]
    for u in itertools.product(*ranges):
        if not any(u):
            continue
        if exact_supports:
            end = _exact_end(u, profiles)
            if end == NEG_INF:
                continue
        else:
            if not _in_c2(u, profiles) or not e_u_nonzero(u, profiles):
                continue
            end = e_u_end(u, profiles)
        out[weight(u) + 1].append((u, end))
    return out


def decompose_cohomology(profiles: Sequence[ModuleProfile]) -> dict[int, list[tuple[Vector, int]]]:
    """j -> [(u, end E_u)] for the nonvanishing summands of H^j of the product."""
    factors, _ = prepare(profiles)
    return _decompose(factors, exact_supports=False)


@dataclass(frozen=True)
class SegreReport:
    reg: int
    exact: bool
    violations: list[str]
    cohomology: dict[int, list[tuple[Vector, int]]] | None
    witnesses: list[Vector]
    gamma: dict[Vector, int]
    groups: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def big_gamma(self) -> dict[Vector, int]:
        """Γ_u = 1 + w(u) + end E_u over the nonvanishing E_u."""
        if self.cohomology is None:
            return {}
        return {u: 1 + weight(u) + end for terms in self.cohomology.values() for u, end in terms}

    @property
    def status(self) -> str:
        return "exact" if self.exact else "upper bound"

    def to_json(self) -> dict:
        cohomology = None
        if self.cohomology is not None:
            cohomology = [
                {"j": j, "terms": [{"u": list(u), "end": ext_to_json(e)} for u, e in terms]}
                for j, terms in self.cohomology.items()
            ]
        out = {
            "reg": self.reg,
            "exact": self.exact,
            "violations": list(self.violations),
            "cohomology": cohomology,
            "witnesses": [list(u) for u in self.witnesses],
            "gamma": [{"u": list(u), "value": v} for u, v in self.gamma.items()],
        }
        if any(len(g) > 1 for g in self.groups):
            out["folded"] = [[k + 1 for k in g] for g in self.groups]
        return out


def regularity_segre(profiles: Sequence[ModuleProfile]) -> SegreReport:
    """Regularity of M_1 ⊗ ... ⊗ M_s (Segre product).

    `exact` is True when every factor's gap/tail flags are verified; the value
    is otherwise an upper bound.
    """
    factors, groups = prepare(profiles)
    violations = []
    for g, p in zip(groups, factors):
        label = "+".join(str(k + 1) for k in g)
        violations.extend(f"factor {label}: {v}" for v in p.assumption_violations())
    exact = not violations
    gammas = {u: gamma(u, factors) for u in candidate_set(factors)}
    reg = max(gammas.values())
    witnesses = [u for u, v in gammas.items() if v == reg]
    if exact:
        cohomology = _decompose(factors, exact_supports=False)
    elif all(p.hilbert is not None for p in factors):
        cohomology = _decompose(factors, exact_supports=True)
    else:
        cohomology = None
    return SegreReport(reg, exact, violations, cohomology, witnesses, gammas, groups)


def _closed_form(entries: Sequence[tuple[int, int]]) -> int:
    """max over nonempty index sets T of 1 + Σ_T b_l - max_T a_l."""
    best = NEG_INF
    for size in range(1, len(entries) + 1):
        for combo in itertools.combinations(entries, size):
            best = max(best, 1 + sum(b for b, _ in combo) - max(a for _, a in combo))
    return best


def regularity_segre_cm(pairs: Sequence[tuple[int, int]]) -> int:
    """Segre product of Cohen-Macaulay modules given as (dim, reg) pairs."""
    if not pairs:
        raise ValueError("at least one factor is required")
    for d, _ in pairs:
        if d < 1:
            raise ValueError(f"dimension must be >= 1, got {d}")
    return _closed_form([(d - 1, d - r) for d, r in pairs])


def regularity_segre_veronese_cm(tuples: Sequence[tuple[int, int, int, int]]) -> int:
    """Segre product of shifted Veronese transforms M_i[τ_i]^<n_i>, from (dim, reg, τ, n)."""
    if not tuples:
        raise ValueError("at least one factor is required")
    entries = []
    for d, r, tau, n in tuples:
        if n < 1:
            raise ValueError(f"Veronese degree must be >= 1, got {n}")
        if d < 1:
            raise ValueError(f"dimension must be >= 1, got {d}")
        entries.append((d - 1, ceil_div(d - r + tau, n)))
    return _closed_form(entries)


def cox_materov(tuples: Sequence[tuple[int, int, int]]) -> int:
    """Segre product of S_i[m_i]^<n_i> for polynomial rings S_i, from (dim S_i, m_i, n_i)."""
    if not tuples:
        raise ValueError("at least one factor is required")
    entries = []
    for d, m, n in tuples:
        if n < 1:
            raise ValueError(f"Veronese degree must be >= 1, got {n}")
        if d < 1:
            raise ValueError(f"dimension must be >= 1, got {d}")
        entries.append((d - 1, ceil_div(d - 1 + m + 1, n)))
    return _closed_form(entries)


def veronese_cm_profiles(tuples: Sequence[tuple[int, int, int, int]]) -> list[ModuleProfile]:
    """cm_profile(d, reg) followed by the (τ, n) Veronese transform, per factor."""
    return [veronese_transform(cm_profile(d, r), n, tau) for d, r, tau, n in tuples]
