"""Desk-scale computations with modular data, fusion rings, Frobenius algebra
objects and NIM-reps."""

from .scalars import PhaseQ, approx_eq, get_tolerance, set_tolerance, tolerance
from .fusion_ring import FusionRing, check_ring_axioms, fusion_matrix, regular_nimrep
from .modular_data import (ModularDatum, drinfeld_double_abelian, drinfeld_double_z2, monodromy_charge,
                           quantum_dim, simple_currents, su2_level, validate, verlinde_fusion)
from .cohomology import AbelianGroup, Cocycle2, coboundary_equiv, cohomology_classes, is_cocycle
from .frobenius import AlgebraPresentation, function_algebra, twisted_group_algebra
from .nimrep import NimRep, from_su2_graph, reconstruct_algebra, physical_m0, branching, verify
from .report import ValidationReport

__version__ = "0.1.0"

__all__ = [
    "PhaseQ", "approx_eq", "get_tolerance", "set_tolerance", "tolerance",
    "FusionRing", "check_ring_axioms", "fusion_matrix", "regular_nimrep",
    "ModularDatum", "drinfeld_double_abelian", "drinfeld_double_z2", "monodromy_charge", "quantum_dim",
    "simple_currents", "su2_level", "validate", "verlinde_fusion",
    "AbelianGroup", "Cocycle2", "coboundary_equiv", "cohomology_classes", "is_cocycle",
    "AlgebraPresentation", "function_algebra", "twisted_group_algebra",
    "NimRep", "from_su2_graph", "reconstruct_algebra", "physical_m0", "branching", "verify",
    "ValidationReport",
]
