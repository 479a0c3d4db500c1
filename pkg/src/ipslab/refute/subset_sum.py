"""The explicit subset-sum certificate and the converse of the functional method.

The cube inverse of ``x1 + ... + xn - beta`` is symmetric and multilinear:
``g = sum_i alpha_i e_{n,i}`` with ``alpha_i = -i! / prod_{j=0}^{i} (beta - j)``.
"""

import logging
from math import factorial
from typing import Any

from ipslab.algebra.fields import Field
from ipslab.algebra.polynomials import SparsePoly
from ipslab.config import config_int
from ipslab.errors import InternalInvariantError, InvalidParameterError
from ipslab.hypercube.inverse import boolean_inverse
from ipslab.instances.base import resolve_beta
from ipslab.instances.subset_sum import elementary_symmetric, gen_subset_sum
from ipslab.refute.certificate import LinRefutation
from ipslab.refute.verify import verify_exact

logger = logging.getLogger(__name__)


def subset_sum_inverse_coefficients(n: int, beta: Any, field: Field) -> list[Any]:
    """``alpha_0, ..., alpha_n`` of the subset-sum inverse in the e-basis.

    Raises:
        InvalidParameterError: If some ``beta - j`` (``0 <= j <= n``) vanishes.
    """
    value = resolve_beta(field, beta)
    alphas = []
    denominator = field.one()
    for i in range(n + 1):
        step = field.sub(value, field.from_int(i))
        if field.is_zero(step):
            raise InvalidParameterError(
                f"beta={field.format(value)!r} hits the cube value {i}",
                valid=["beta not in 0..n"],
            )
        denominator = field.mul(denominator, step)
        alphas.append(field.neg(field.div(field.from_int(factorial(i)), denominator)))
    return alphas


def certificate_from_inverse(f: SparsePoly, g: SparsePoly) -> LinRefutation:
    """Turn any ``g`` with ``g * f = 1`` on the cube into a verified certificate.

    ``h`` comes from dividing ``1 - g*f`` by the Boolean axioms; the remainder
    is multilinear and vanishes on the cube, hence is 0.

    Raises:
        InvalidParameterError: If ``g * f`` is not 1 on the cube.
        InternalInvariantError: If the assembled certificate does not verify.
    """
    witnesses, remainder = (1 - g * f).reduce_boolean()
    if not remainder.is_zero():
        raise InvalidParameterError("g does not invert the axiom on the Boolean cube")
    refutation = LinRefutation(
        axiom=f, g=g, h={v: h for v, h in witnesses.items() if not h.is_zero()}
    )
    if not verify_exact(refutation):
        raise InternalInvariantError(
            "Certificate assembled by Boolean division does not verify"
        )
    return refutation


def build_subset_sum_refutation(
    n: int, beta: Any, field: Field, *, validation_limit: int | None = None
) -> LinRefutation:
    """Closed-form certificate for ``x1 + ... + xn - beta`` in characteristic 0.

    Up to ``inverse-validation-limit`` variables the closed form is checked
    against the interpolated inverse first.

    Raises:
        InvalidParameterError: Outside characteristic 0 or for beta in 0..n.
        InternalInvariantError: If the closed form disagrees with interpolation.
    """
    if field.characteristic != 0:
        raise InvalidParameterError(
            f"Explicit subset-sum certificates need characteristic 0, got {field.spec!r}"
        )
    instance = gen_subset_sum(n, beta, field)
    f = instance.require_axiom()
    table = f.variables
    alphas = subset_sum_inverse_coefficients(n, beta, field)
    g = SparsePoly.zero(field, table)
    for i, alpha in enumerate(alphas):
        g = g + elementary_symmetric(field, table, range(n), i).scale(alpha)
    if n <= config_int("inverse-validation-limit", validation_limit):
        if g != boolean_inverse(f).g:
            raise InternalInvariantError(
                f"Closed-form subset-sum inverse disagrees with interpolation at n={n}"
            )
    refutation = certificate_from_inverse(f, g)
    logger.debug("Built subset-sum certificate for n=%d", n)
    return refutation
