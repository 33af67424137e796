"""Castelnuovo-Mumford regularity of Segre-Veronese products.

Exact Stanley-Reisner inputs go through Hochster's formulas; every closed
form is checked against a brute-force oracle on exact degree sets.
"""

from .betti import BettiTable, graded_betti, regularity_from_betti
from .degrees import NEG_INF, POS_INF, DegreeSet
from .localcoh import check_assumption, degree_set, lc_coarse_dim, lc_multigraded_dim, summarize
from .oracle import FreeFactor, StanleyReisnerFactor, cm_model, crosscheck, polynomial_ring, regularity_oracle
from .profile import ModuleProfile, cm_profile, profile_from_complex, profile_from_json, veronese_transform
from .segre import (
    HypothesisError,
    SegreReport,
    cox_materov,
    regularity_segre,
    regularity_segre_cm,
    regularity_segre_veronese_cm,
)
from .simplicial import QQ, FieldSpec, SimplicialComplex, alexander_dual, build_complex, link, reduced_homology_ranks

__all__ = [name for name in dir() if not name.startswith("_")]
