"""Residual points, mass functions and discrete-series signs for affine Hecke
algebras with unequal parameters (types G2, F4 and the three-parameter C_n)."""

from .linform import LinForm
from .rootdata import RootSystem, Subsystem, build_root_system, pseudo_levi_subsystems
from .weylgrp import WeylGroup, elliptic_summary, enumerate_group
from .residual import GenericResidualPoint, all_generic_residual_points, enumerate_generic_residual_points
from .massfn import MassFunction, evaluate_regularized, mass_function, reeder_m, sign_graded
from .cnfamily import Bipartition, build_module, fdeg_C, restrict_to_weyl
from .tables import load_tables, match_rows, reconcile

__version__ = "0.1.0"

__all__ = [
    "LinForm", "RootSystem", "Subsystem", "build_root_system", "pseudo_levi_subsystems",
    "WeylGroup", "elliptic_summary", "enumerate_group",
    "GenericResidualPoint", "all_generic_residual_points", "enumerate_generic_residual_points",
    "MassFunction", "evaluate_regularized", "mass_function", "reeder_m", "sign_graded",
    "Bipartition", "build_module", "fdeg_C", "restrict_to_weyl",
    "load_tables", "match_rows", "reconcile",
]
