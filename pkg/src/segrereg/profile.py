"""Regularity profiles: the per-factor data consumed by the Segre engine."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping

from .degrees import (
    NEG_INF,
    DegreeSet,
    FactorEvaluators,
    GradedEvaluator,
    ZERO,
    ceil_div,
    ext_from_json,
    ext_to_json,
)
from .localcoh import summarize
from .simplicial import QQ, FieldSpec, SimplicialComplex, hilbert_dim


@dataclass(frozen=True, eq=True)
class ModuleProfile:
    """Krull dimension, depth, initial degree and local cohomology ends of one module.

    `no_gaps` and `unbounded_below` map a cohomological index to True, False,
    or None (unknown); only nonvanishing indices are meaningful.
    """

    dim: int
    depth: int
    sigma: int
    ends: Mapping[int, float]
    no_gaps: Mapping[int, bool | None] = field(default_factory=dict)
    unbounded_below: Mapping[int, bool | None] = field(default_factory=dict)
    hilbert: FactorEvaluators | None = field(default=None, compare=False, repr=False)
    heuristic: bool = False

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"profile dimension must be >= 1, got {self.dim}")
        ends = {j: self.ends.get(j, NEG_INF) for j in range(self.dim + 1)}
        extra = [j for j in self.ends if j not in ends and self.ends[j] != NEG_INF]
        if extra:
            raise ValueError(f"cohomology ends given outside 0..{self.dim}: {extra}")
        if ends[self.dim] == NEG_INF:
            raise ValueError(f"top local cohomology H^{self.dim} must be nonzero")
        nonzero = [j for j, e in ends.items() if e != NEG_INF]
        if self.depth != nonzero[0]:
            raise ValueError(f"depth {self.depth} disagrees with the first nonzero cohomology H^{nonzero[0]}")
        for j in nonzero:
            if self.unbounded_below.get(j) and self.no_gaps.get(j) is False:
                raise ValueError(f"H^{j} cannot be unbounded below and have gaps")
        object.__setattr__(self, "ends", ends)

    def end(self, j: int):
        return self.ends.get(j, NEG_INF)

    @property
    def nonzero_indices(self) -> list[int]:
        return [j for j, e in self.ends.items() if e != NEG_INF]

    @property
    def reg(self) -> int:
        return max(e + j for j, e in self.ends.items() if e != NEG_INF)

    @property
    def is_cm(self) -> bool:
        return self.nonzero_indices == [self.dim]

    def assumption_violations(self) -> list[str]:
        """Reasons the gap/tail hypothesis is not verified for this profile."""
        out = []
        if self.heuristic:
            out.append("ends come from a heuristic (non-Cohen-Macaulay) Veronese transform")
        if self.sigma > self.reg:
            out.append(f"initial degree {self.sigma} exceeds reg {self.reg}; no finitely generated module fits")
        for j in self.nonzero_indices:
            if not self.no_gaps.get(j):
                state = "unknown" if self.no_gaps.get(j) is None else "false"
                out.append(f"H^{j} no-gaps {state}")
            if not self.unbounded_below.get(j):
                state = "unknown" if self.unbounded_below.get(j) is None else "false"
                out.append(f"H^{j} unbounded-below {state}")
        return out

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "depth": self.depth,
            "sigma": self.sigma,
            "ends": {str(j): ext_to_json(e) for j, e in self.ends.items() if j >= 1},
            "no_gaps": {str(j): self.no_gaps.get(j) for j in self.nonzero_indices},
            "unbounded_below": {str(j): self.unbounded_below.get(j) for j in self.nonzero_indices},
            "reg": self.reg,
            **({"heuristic": True} if self.heuristic else {}),
        }


def _flags_from(evaluators: FactorEvaluators, d: int):
    ends, no_gaps, unbounded = {}, {}, {}
    for j in range(d + 1):
        support = evaluators.cohomology.get(j, ZERO).support
        ends[j] = support.max()
        if support:
            no_gaps[j] = support.is_interval()
            unbounded[j] = support.unbounded_below()
    return ends, no_gaps, unbounded


def profile_from_complex(delta: SimplicialComplex, field: FieldSpec = QQ) -> ModuleProfile:
    """Profile of K[Δ] with exact evaluators attached."""
    summary = summarize(delta, field)
    d = summary.dim
    if d < 1:
        raise ValueError(f"K[Δ] has dimension {d}; profiles need dimension >= 1")
    module = GradedEvaluator(DegreeSet(ray=0), lambda t: hilbert_dim(delta, t) if t >= 0 else 0)
    cohomology = {i: s.evaluator() for i, s in summary.sets.items() if s is not None}
    evaluators = FactorEvaluators(module, cohomology)
    ends, no_gaps, unbounded = _flags_from(evaluators, d)
    return ModuleProfile(d, summary.depth, 0, ends, no_gaps, unbounded, evaluators)


def cm_profile(dim: int, reg: int, sigma: int = 0) -> ModuleProfile:
    """Cohen-Macaulay shorthand: only H^dim is nonzero, ending at reg - dim."""
    if dim < 1:
        raise ValueError(f"profile dimension must be >= 1, got {dim}")
    return ModuleProfile(dim, dim, sigma, {dim: reg - dim}, {dim: True}, {dim: True})


def veronese_transform(profile: ModuleProfile, n: int, shift: int = 0) -> ModuleProfile:
    """Profile of M[shift]^<n>, whose degree-k piece is M_{nk+shift}.

    With exact evaluators attached the new ends and flags are read off the
    transformed supports.  Otherwise ends map to floor((end - shift)/n), the
    flags are kept, and non-Cohen-Macaulay inputs are marked heuristic.
    """
    if n < 1:
        raise ValueError(f"Veronese degree must be >= 1, got {n}")
    if n == 1 and shift == 0:
        return profile
    sigma = ceil_div(profile.sigma - shift, n)
    if profile.hilbert is not None:
        evaluators = profile.hilbert.veronese(n, shift)
        ends, no_gaps, unbounded = _flags_from(evaluators, profile.dim)
        depth = min(j for j, e in ends.items() if e != NEG_INF)
        return ModuleProfile(profile.dim, depth, sigma, ends, no_gaps, unbounded, evaluators)
    ends = {j: (e - shift) // n if e != NEG_INF else e for j, e in profile.ends.items()}
    return replace(
        profile,
        sigma=sigma,
        ends=ends,
        heuristic=profile.heuristic or not profile.is_cm,
    )


def fold_dim1_cm(p: ModuleProfile, q: ModuleProfile) -> ModuleProfile:
    """Segre product of two one-dimensional Cohen-Macaulay modules."""
    for x in (p, q):
        if x.dim != 1 or not x.is_cm:
            raise ValueError("fold_dim1_cm needs two Cohen-Macaulay profiles of dimension 1")
    return cm_profile(1, max(p.reg, q.reg), max(p.sigma, q.sigma))


def _int_keys(data, name) -> dict:
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValueError(f"profile field {name!r} must be an object keyed by index")
    try:
        return {int(k): v for k, v in data.items()}
    except ValueError:
        raise ValueError(f"profile field {name!r} has a non-integer key") from None


def profile_from_json(data: dict) -> ModuleProfile:
    """Parse the full profile form or the {"cm": {...}} shorthand."""
    if not isinstance(data, dict):
        raise ValueError("profile JSON must be an object")
    if "cm" in data:
        cm = data["cm"]
        try:
            return cm_profile(int(cm["dim"]), int(cm["reg"]), int(cm.get("sigma", 0)))
        except (KeyError, TypeError):
            raise ValueError('cm shorthand needs {"cm": {"dim": int, "reg": int, "sigma": int}}') from None
    for key in ("dim", "ends"):
        if key not in data:
            raise ValueError(f"profile JSON is missing {key!r}")
    d = data["dim"]
    if not isinstance(d, int) or isinstance(d, bool):
        raise ValueError("profile 'dim' must be an integer")
    ends = {j: ext_from_json(v) for j, v in _int_keys(data["ends"], "ends").items()}
    nonzero = sorted(j for j, e in ends.items() if e != NEG_INF)
    if not nonzero:
        raise ValueError("profile has no nonzero local cohomology")
    depth = data.get("depth", nonzero[0])
    flags = {}
    for name in ("no_gaps", "unbounded_below"):
        raw = _int_keys(data.get(name), name)
        if any(v is not None and not isinstance(v, bool) for v in raw.values()):
            raise ValueError(f"profile field {name!r} must map to true/false/null")
        flags[name] = raw
    return ModuleProfile(
        d,
        depth,
        int(data.get("sigma", 0)),
        ends,
        flags["no_gaps"],
        flags["unbounded_below"],
        heuristic=bool(data.get("heuristic", False)),
    )
