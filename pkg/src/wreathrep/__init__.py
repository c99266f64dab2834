"""State-closed representations of C_p wr Z^d from similarity pairs."""

from .automaton import MealyAutomaton, compare_to_reference, export_dot, incidence_matrix
from .constructions import RunConfig, classical_lamplighter, degree_p, theorem2, theorem3, theorem4
from .kernels import BACKEND
from .laurent import LaurentPoly, LaurentRing, parse_poly
from .lattice import Lattice
from .similarity import SimilarityPair, check_simplicity_degree_p, check_skew_condition
from .tree import RepContext, act_on_vertex, decompose, is_trivial_action, kernel_scan, portrait, state_closure
from .wreath import Permutation, WreathElement, parse_element

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Lattice",
    "LaurentPoly",
    "LaurentRing",
    "MealyAutomaton",
    "Permutation",
    "RepContext",
    "RunConfig",
    "SimilarityPair",
    "WreathElement",
    "act_on_vertex",
    "check_simplicity_degree_p",
    "check_skew_condition",
    "classical_lamplighter",
    "compare_to_reference",
    "decompose",
    "degree_p",
    "export_dot",
    "incidence_matrix",
    "is_trivial_action",
    "kernel_scan",
    "parse_element",
    "parse_poly",
    "portrait",
    "state_closure",
    "theorem2",
    "theorem3",
    "theorem4",
]
