"""Sumset-distinct sets modulo N: checking, enumeration, canonical forms, constructions."""

from .enumeration import Enumeration, EnumerationCheckpoint, count_all, enumerate_all
from .equivalence import (
    OrbitDescriptor,
    apply_dilation,
    apply_signs,
    are_equivalent,
    canonical_form,
    min_orbit_sum,
    res_collapse,
)
from .errors import ModsumError
from .gfbound import GfEvaluation, epsilon_growth_check, eval_g, verify_magnitude_bound
from .modring import Modulus, euler_phi, mod_inverse, reduce_res, units, v2
from .subsetsum import (
    MissingPattern,
    ResidueSet,
    SumsetBitmap,
    compute_sumset,
    is_sumset_distinct,
    missing_residues,
    oracle_sumset_multiplicities,
)

__version__ = "0.1.0"

__all__ = [
    "Enumeration",
    "EnumerationCheckpoint",
    "GfEvaluation",
    "MissingPattern",
    "ModsumError",
    "Modulus",
    "OrbitDescriptor",
    "ResidueSet",
    "SumsetBitmap",
    "apply_dilation",
    "apply_signs",
    "are_equivalent",
    "canonical_form",
    "compute_sumset",
    "count_all",
    "enumerate_all",
    "epsilon_growth_check",
    "euler_phi",
    "eval_g",
    "is_sumset_distinct",
    "min_orbit_sum",
    "missing_residues",
    "mod_inverse",
    "oracle_sumset_multiplicities",
    "reduce_res",
    "res_collapse",
    "units",
    "v2",
    "verify_magnitude_bound",
]
