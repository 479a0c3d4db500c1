"""Boolean-cube checks, the multilinear cube inverse and its support structure."""

from ipslab.hypercube.inverse import (
    CubeCheck,
    CubeInverse,
    boolean_inverse,
    coeff_on_support,
    cube_values,
    is_unsat_on_cube,
    modular_inverse_table,
    modular_inverse_values,
    sample_unsat_on_cube,
    subcube_inverse,
    values_on_cube,
)
from ipslab.hypercube.support import (
    ContainmentReport,
    ZeroRuleResult,
    ZeroScanReport,
    check_incomparable,
    check_support_containment,
    check_zero_coeff_rule,
    scan_zero_coefficients,
)

__all__ = [
    "ContainmentReport",
    "CubeCheck",
    "CubeInverse",
    "ZeroRuleResult",
    "ZeroScanReport",
    "boolean_inverse",
    "check_incomparable",
    "check_support_containment",
    "check_zero_coeff_rule",
    "coeff_on_support",
    "cube_values",
    "is_unsat_on_cube",
    "modular_inverse_table",
    "modular_inverse_values",
    "sample_unsat_on_cube",
    "scan_zero_coefficients",
    "subcube_inverse",
    "values_on_cube",
]
