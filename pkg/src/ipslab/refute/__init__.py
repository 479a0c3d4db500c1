"""Linear IPS certificates: building, lifting, verifying and functional reading."""

from ipslab.refute.certificate import LinRefutation
from ipslab.refute.functional import (
    elem_sym_inverse_structure,
    functional_check_mult_ips,
)
from ipslab.refute.lifting import lift_sparse_refutation
from ipslab.refute.subset_sum import (
    build_subset_sum_refutation,
    certificate_from_inverse,
    subset_sum_inverse_coefficients,
)
from ipslab.refute.verify import (
    CertificateVerifier,
    Verdict,
    create_verifier,
    verify_exact,
    verify_randomized,
)

__all__ = [
    "CertificateVerifier",
    "LinRefutation",
    "Verdict",
    "build_subset_sum_refutation",
    "certificate_from_inverse",
    "create_verifier",
    "elem_sym_inverse_structure",
    "functional_check_mult_ips",
    "lift_sparse_refutation",
    "subset_sum_inverse_coefficients",
    "verify_exact",
    "verify_randomized",
]
