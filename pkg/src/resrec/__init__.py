"""Determinant recursions of banded Laplacian minors and resistance distance
in straight linear k-trees."""

from .binet import BinetForm, classify_roots, eval_binet, find_roots, fit_binet
from .exactnum import det_fraction_free, poly_mul, poly_primitive
from .expander import EquationSystem, expand_once, run_procedure
from .graphfam import DetSequence, FamilySpec, build_laplacian, delete, oracle_sequence
from .recsolve import (
    LinearRecurrence,
    SisterSequence,
    eliminate,
    extend_backward,
    factor_annihilates,
    minimal_polynomial,
    y_to_X,
)
from .resistance import (
    ResistanceModel,
    resistance_exact,
    resistance_recurrence,
    verify_conjecture,
)
from .stencil import MatrixFamily, canonicalize, equals, member, minor_family

__version__ = "0.1.0"
