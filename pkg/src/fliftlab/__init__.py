"""fliftlab: decides F-purity and F-liftability of isolated hypersurface
and complete-intersection singularities over prime fields, with
machine-checkable certificates.
"""

from .fp_poly import (AmbientMismatchError, DegreeGuardError, FpPolyError,
                      NotPrimeError, ParseError, Poly, PolyRing,
                      UnknownVariableError, format_poly, parse_poly,
                      partial_derivative)
from .groebner import (GREVLEX, LEX, GroebnerBasis, ModuleGroebnerBasis,
                       ModuleVector, MonomialOrder, buchberger,
                       ideal_membership, is_zero_dimensional,
                       module_buchberger, module_membership, normal_form,
                       quotient_dimension, supported_only_at_origin)
from .frobsplit import (FrobeniusDecomposition, SplittingData, apply_sigma,
                        bracket_power, build_splitting, delta1,
                        delta1_integer_oracle, fedder_fpure_test,
                        frobenius_decompose, trace_u)
from .criteria import (Certificate, LiftabilityReport, classify,
                       classify_complete_intersection, classify_hypersurface,
                       isolated_singularity_check, residual_polynomial)
from .catalog import (ExpectedRecord, FamilySpec, TableInstance,
                      enumerate_table_rows, expected_classification,
                      export_manifest, make_cusp_ci, make_cusp_hypersurface,
                      make_rdp)
from .report import report_from_dict, report_to_dict, report_to_json

__version__ = "0.1.0"

__all__ = [
    "AmbientMismatchError", "Certificate", "DegreeGuardError",
    "ExpectedRecord", "FamilySpec", "FpPolyError", "FrobeniusDecomposition",
    "GREVLEX", "GroebnerBasis", "LEX", "LiftabilityReport",
    "ModuleGroebnerBasis", "ModuleVector", "MonomialOrder", "NotPrimeError",
    "ParseError", "Poly", "PolyRing", "SplittingData", "TableInstance",
    "UnknownVariableError", "apply_sigma", "bracket_power", "buchberger",
    "build_splitting", "classify", "classify_complete_intersection",
    "classify_hypersurface", "delta1", "delta1_integer_oracle",
    "enumerate_table_rows", "expected_classification", "export_manifest",
    "fedder_fpure_test", "format_poly", "frobenius_decompose",
    "ideal_membership", "isolated_singularity_check", "is_zero_dimensional",
    "make_cusp_ci", "make_cusp_hypersurface", "make_rdp",
    "module_buchberger", "module_membership", "normal_form", "parse_poly",
    "partial_derivative", "quotient_dimension", "report_from_dict",
    "report_to_dict", "report_to_json", "residual_polynomial",
    "supported_only_at_origin", "trace_u",
]
