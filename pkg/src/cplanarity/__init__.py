"""Clustered planarity testing for embedded flat clustered graphs."""

from .cgraph import CGraph, check_condition_ii
from .cyclestar import CycleStar, contract_to_cycle_star, enumerate_cycle_stars, stellate
from .decision import Decision, Witness
from .embed import Cycle, EmbeddedGraph, build_embedded_graph, merge_along_cycle
from .errors import CPlanarityError
from .estimator import CPlanarityTester, ThreeConnectedTransformer
from .gadgets import make_three_connected
from .mso import emit_mso2, naive_model_check
from .oracle import brute_force_cplanar, verify_witness
from .saturate import apply_saturation, candidate_saturating_edges
from .separator import cycle_separator, nested_cycle_separator
from .solver import SolverOptions, test_cplanarity

__version__ = "0.1.0"

__all__ = [
    "CGraph",
    "CPlanarityError",
    "CPlanarityTester",
    "Cycle",
    "CycleStar",
    "Decision",
    "EmbeddedGraph",
    "SolverOptions",
    "ThreeConnectedTransformer",
    "Witness",
    "apply_saturation",
    "brute_force_cplanar",
    "build_embedded_graph",
    "candidate_saturating_edges",
    "check_condition_ii",
    "contract_to_cycle_star",
    "cycle_separator",
    "emit_mso2",
    "enumerate_cycle_stars",
    "make_three_connected",
    "merge_along_cycle",
    "naive_model_check",
    "nested_cycle_separator",
    "stellate",
    "test_cplanarity",
    "verify_witness",
]
