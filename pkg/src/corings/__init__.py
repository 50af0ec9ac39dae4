"""Exact corings, comodules and their solvers over Q or F_p."""
from .algebra import Algebra, AlgebraMap, FiniteGroup, Issue, build_group, build_named_algebra, check_algebra
from .bimodule import Bimodule, check_bimodule, check_separable_bimodule, regular_bimodule, vector_space
from .comatrix import build_generalized_comatrix, comatrix_context, identity_context, verify_context
from .comodule import Bicomodule, Comodule, check_bicomodule, check_comodule, cotensor, regular_comodule
from .coring import (Coring, CoringMorphism, check_coring, check_coring_morphism, comatrix_coring,
                     grouplike_coring, matrix_coring, tensor_coring, trivial_coring)
from .duals import ConvolutionAlgebra, dual_algebra, end_ring_iso
from .entwining import EntwiningStructure, check_entwining, takeuchi_coring
from .graded import GSet, GradedModule, build_graded_coring, graded_cointegral
from .linalg import GF, QQ, Matrix, SolveVerdict, Subspace, field_from_name
from .picard import induced_bicomodule, is_inner, picard_compose
from .solvers import check_frobenius_coring, find_cointegral, find_cosplit

__version__ = "0.1.0"

__all__ = [
    "Algebra", "AlgebraMap", "FiniteGroup", "Issue", "build_group", "build_named_algebra", "check_algebra",
    "Bimodule", "check_bimodule", "check_separable_bimodule", "regular_bimodule", "vector_space",
    "build_generalized_comatrix", "comatrix_context", "identity_context", "verify_context",
    "Bicomodule", "Comodule", "check_bicomodule", "check_comodule", "cotensor", "regular_comodule",
    "Coring", "CoringMorphism", "check_coring", "check_coring_morphism", "comatrix_coring",
    "grouplike_coring", "matrix_coring", "tensor_coring", "trivial_coring",
    "ConvolutionAlgebra", "dual_algebra", "end_ring_iso",
    "EntwiningStructure", "check_entwining", "takeuchi_coring",
    "GSet", "GradedModule", "build_graded_coring", "graded_cointegral",
    "GF", "QQ", "Matrix", "SolveVerdict", "Subspace", "field_from_name",
    "induced_bicomodule", "is_inner", "picard_compose",
    "check_frobenius_coring", "find_cointegral", "find_cosplit",
]
