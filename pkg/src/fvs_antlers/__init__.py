"""Antler decompositions for Feedback Vertex Set."""

from .antler_finder import (AntlerSequence, extract_antler, find_and_apply, reduce_all,
                            solve_by_antler_complexity, w_chi)
from .coloring import Color, Coloring2, Coloring3
from .errors import (FamilyConstructionError, FvsError, GraphDomainError, GraphParseError,
                     NotFoundError, RefusalError)
from .estimator import AntlerFVSSolver, AntlerReducer
from .exact import find_flower, fvs_bounded, fvs_bruteforce, fvs_exact, tree_flower
from .fvc_finder import f_r, find_fvc_colored, find_reducible_fvc
from .io import parse_graph, serialize_graph, to_dot
from .multigraph import MultiGraph
from .reducer import ReductionStep, ReductionTrace, apply_operation
from .structures import Antler, Certificate, Fvc, verify_antler, verify_certificate, verify_fvc
from .universal import build_universal, verify_universal

__version__ = "0.1.0"

__all__ = [
    "AntlerFVSSolver", "AntlerReducer", "AntlerSequence", "Antler", "Certificate", "Color",
    "Coloring2", "Coloring3", "FamilyConstructionError", "FvsError", "Fvc",
    "GraphDomainError", "GraphParseError", "MultiGraph", "NotFoundError", "RefusalError",
    "ReductionStep", "ReductionTrace", "apply_operation", "build_universal", "extract_antler",
    "f_r", "find_and_apply", "find_flower", "find_fvc_colored", "find_reducible_fvc",
    "fvs_bounded", "fvs_bruteforce", "fvs_exact", "parse_graph", "reduce_all",
    "serialize_graph", "solve_by_antler_complexity", "to_dot", "tree_flower",
    "verify_antler", "verify_certificate", "verify_fvc", "verify_universal", "w_chi",
]
