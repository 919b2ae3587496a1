"""Bounding the number of characters in a block via generalized decomposition numbers.

The pipeline goes from a subsection description (p, n, Cartan matrix,
inertial unit group and its action on Brauer characters) to the refined
orthogonality matrix M. Lattice reduction then shrinks M, and an exact
search finds the largest k with M = Q^T Q. Closed-form model groups serve
as oracles throughout.
"""

from .cyclotomic import CycInt, PrimePowerModulus, UnitSubgroup, subgroup_from_generator, subgroup_from_generators
from .errors import CapExceeded
from .gram import GramMatrix, NotPSD
from .gram_search import Decomposition, all_max_decompositions, max_k, quick_upper_bound
from .intbasis import FixedFieldBasis, build_basis, express, verify_basis
from .lattice import congruent, lll, prune, smith_normal_form
from .models import (
    brauer_diff,
    conjugacy_count,
    cyclic_cartan,
    finallem_bound,
    k0_semidirect,
    l2_major_bound,
    metacyclic_q,
    navarro_check,
    semidirect_model,
)
from .ortho import ActionCartanMismatch, SubsectionSpec, build_m, build_m_stable
from .qforms import QuadraticForm, bound_outer, bound_stable, dynkin_a, tensor, weighted_sum

__version__ = "0.1.0"

__all__ = [
    "ActionCartanMismatch",
    "CapExceeded",
    "CycInt",
    "Decomposition",
    "FixedFieldBasis",
    "GramMatrix",
    "NotPSD",
    "PrimePowerModulus",
    "QuadraticForm",
    "SubsectionSpec",
    "UnitSubgroup",
    "all_max_decompositions",
    "bound_outer",
    "bound_stable",
    "brauer_diff",
    "build_basis",
    "build_m",
    "build_m_stable",
    "congruent",
    "conjugacy_count",
    "cyclic_cartan",
    "dynkin_a",
    "express",
    "finallem_bound",
    "k0_semidirect",
    "l2_major_bound",
    "lll",
    "max_k",
    "metacyclic_q",
    "navarro_check",
    "prune",
    "quick_upper_bound",
    "semidirect_model",
    "smith_normal_form",
    "subgroup_from_generator",
    "subgroup_from_generators",
    "tensor",
    "verify_basis",
    "weighted_sum",
]
