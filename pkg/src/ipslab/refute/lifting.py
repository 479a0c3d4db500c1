"""Lifting the subset-sum certificate to sparse axioms by monomial substitution.

``f = sum_i c_i m_i + c_0`` with positive integer ``c_i`` is the image of
``z_1 + ... + z_s - beta`` (``s = sum_i c_i``, ``beta = -c_0``) under
``z -> m``, each ``m_i`` repeated ``c_i`` times. Substituting into the
subset-sum certificate gives ``g~(m) f + sum_k h_k(m) (m_k^2 - m_k) = 1``;
the Boolean part is re-expressed over the ``x_j`` by dividing ``1 - g~ f``.
"""

from fractions import Fraction
import logging

from ipslab.algebra.fields import Field, RationalField
from ipslab.algebra.polynomials import SparsePoly
from ipslab.errors import InvalidParameterError, UnsupportedShapeError
from ipslab.refute.certificate import LinRefutation
from ipslab.refute.subset_sum import (
    build_subset_sum_refutation,
    certificate_from_inverse,
)

logger = logging.getLogger(__name__)


def lift_sparse_refutation(f: SparsePoly, field: Field | None = None) -> LinRefutation:
    """Certificate for a sparse axiom with positive integer coefficients over Q.

    Args:
        f: The sparse axiom.
        field: The field the caller works over; must be the field of *f*.

    Raises:
        InvalidParameterError: If *field* differs from the field of *f*.
        UnsupportedShapeError: If *f* is not over Q, has a non-positive or
            non-integer coefficient, or its shift lands on a cube value.
    """
    if field is not None and field.spec != f.field.spec:
        raise InvalidParameterError(
            f"Axiom is over {f.field.spec!r} but lifting was asked for {field.spec!r}"
        )
    if not isinstance(f.field, RationalField):
        raise UnsupportedShapeError(
            f"Lifting needs an axiom over Q, got {f.field.spec!r}"
        )
    monomials = []
    ordered = sorted(
        f.terms.items(), key=lambda item: (item[0].degree, item[0].exponents)
    )
    for m, c in ordered:
        if m.is_one():
            continue
        if Fraction(c).denominator != 1 or c <= 0:
            raise UnsupportedShapeError(
                f"Coefficient {f.field.format(c)!r} of {f.variables.format_monomial(m)!r} "
                "is not a positive integer"
            )
        monomials += [m] * int(c)
    s = len(monomials)
    beta = -f.constant_term()
    if beta.denominator == 1 and 0 <= beta <= s:
        raise UnsupportedShapeError(
            f"Shift {beta} is a cube value of the lifted subset sum"
        )
    base = build_subset_sum_refutation(
        s, int(beta) if beta.denominator == 1 else beta, f.field
    )
    table = f.variables
    images = {
        k: SparsePoly.monomial(f.field, table, m) for k, m in enumerate(monomials)
    }
    g = base.g.substitute(images, target=table)
    refutation = certificate_from_inverse(f, g)
    logger.info(
        "Lifted a %d-variable subset-sum certificate onto %d monomials",
        s,
        len(set(monomials)),
    )
    return refutation
