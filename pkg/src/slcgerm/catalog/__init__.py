"""Catalog of class-qG singularities and their invariants."""
from .graphs import ResolutionGraph, resolution_graph
from .invariants import (
    GammaSolution,
    PointInvariants,
    alpha3,
    alpha4,
    evaluate,
    gamma_system_T4,
    gamma_system_T4_printed,
    point_invariants,
)
from .oracle import OracleReport, confirm_known_typo, oracle_beta_delta, verify_point_invariants
from .types import (
    INF,
    DegCusp1,
    DegCusp2,
    DegCusp3,
    DegCusp4,
    NormalCrossing,
    Pinch,
    Slt,
    census_class,
    cusp4,
    mult_embdim,
    normal_form,
    smoothing_target,
    t1_presentation,
    torsion_profile,
)

__all__ = [
    "DegCusp1",
    "DegCusp2",
    "DegCusp3",
    "DegCusp4",
    "GammaSolution",
    "INF",
    "NormalCrossing",
    "OracleReport",
    "Pinch",
    "PointInvariants",
    "ResolutionGraph",
    "Slt",
    "alpha3",
    "alpha4",
    "census_class",
    "confirm_known_typo",
    "cusp4",
    "evaluate",
    "gamma_system_T4",
    "gamma_system_T4_printed",
    "mult_embdim",
    "normal_form",
    "oracle_beta_delta",
    "point_invariants",
    "resolution_graph",
    "smoothing_target",
    "t1_presentation",
    "torsion_profile",
    "verify_point_invariants",
]
