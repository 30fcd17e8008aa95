"""Exact symbolic kernel for matrix differential operators on the circle.

The package computes in the Lie algebra spanned by words t^i D^j E[p,q]
(D = t d/dt, E[p,q] the N x N matrix units), in its universal central
extension, and in the intermediate-series module families, entirely over
arbitrary-precision rationals with one formal parameter.
"""

from .algebra import (
    AlgebraElement,
    FallingElement,
    Monomial,
    bracket_falling_direct,
    canonical_product,
    central_bracket,
    cocycle_psi,
    degree,
    embed_scalar,
    from_falling,
    homogeneous_components,
    plain_bracket,
    sigma,
    to_falling,
)
from .exact import (
    DimensionError,
    Poly,
    Rational,
    SquareMatrixPoly,
    falling_factorial,
    falling_to_power_coeffs,
    gen_binomial,
    jordan_shifted_power,
    power_to_falling_coeffs,
)
from .expr import (
    ParseError,
    element_to_json,
    falling_element_to_json,
    format_element,
    format_falling_element,
    format_module_vector,
    format_poly,
    module_vector_to_json,
    parse_element,
    parse_expression,
    parse_module_vector,
    poly_to_json,
)
from .reps import (
    Family,
    ModuleParams,
    ModuleVector,
    WeightRecord,
    act,
    grade_index,
    is_highest_weight_vector,
    is_lowest_weight_vector,
    pairing,
    residue_slice,
    slot_of_grade,
    weight_of,
)
from .verify import (
    CheckResult,
    Report,
    SuiteConfig,
    available_checks,
    run_suite,
    sample_element,
    sample_falling_element,
    sample_module_vector,
    sample_monomial,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "CheckResult",
    "DimensionError",
    "FallingElement",
    "Family",
    "ModuleParams",
    "ModuleVector",
    "Monomial",
    "ParseError",
    "Poly",
    "Rational",
    "Report",
    "SquareMatrixPoly",
    "SuiteConfig",
    "WeightRecord",
    "act",
    "available_checks",
    "bracket_falling_direct",
    "canonical_product",
    "central_bracket",
    "cocycle_psi",
    "degree",
    "element_to_json",
    "embed_scalar",
    "falling_element_to_json",
    "falling_factorial",
    "falling_to_power_coeffs",
    "format_element",
    "format_falling_element",
    "format_module_vector",
    "format_poly",
    "from_falling",
    "gen_binomial",
    "grade_index",
    "homogeneous_components",
    "is_highest_weight_vector",
    "is_lowest_weight_vector",
    "jordan_shifted_power",
    "module_vector_to_json",
    "pairing",
    "parse_element",
    "parse_expression",
    "parse_module_vector",
    "plain_bracket",
    "poly_to_json",
    "power_to_falling_coeffs",
    "residue_slice",
    "run_suite",
    "sample_element",
    "sample_falling_element",
    "sample_module_vector",
    "sample_monomial",
    "sigma",
    "slot_of_grade",
    "to_falling",
    "weight_of",
]
