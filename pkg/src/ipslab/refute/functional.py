"""The functional view of a certificate and structure checks on cube inverses."""

from itertools import combinations
import logging
from math import comb
from typing import Any

from ipslab.algebra.fields import Field
from ipslab.algebra.monomials import Monomial, vars_mask
from ipslab.algebra.polynomials import SparsePoly
from ipslab.errors import InternalInvariantError, InvalidParameterError
from ipslab.hypercube.inverse import boolean_inverse, values_on_cube
from ipslab.instances.base import resolve_beta
from ipslab.instances.subset_sum import gen_elem_sym_axiom
from ipslab.refute.certificate import LinRefutation
from ipslab.refute.verify import verify_exact
from ipslab.schemas.certificate import ElemSymStructure, FunctionalCheckReport

logger = logging.getLogger(__name__)


def functional_check_mult_ips(
    refutation: LinRefutation, *, max_vars: int | None = None
) -> FunctionalCheckReport:
    """Extract ``g = P(X, 1, 0)`` and compare it with ``1/f`` on the cube.

    Cube agreement is checked exhaustively over the joint support of ``f``
    and ``g``; coefficient-wise equality with the canonical inverse can only
    hold when ``g`` is multilinear.
    """
    f, g = refutation.axiom, refutation.g
    verified = bool(verify_exact(refutation))
    support = sorted(set(f.support_vars()) | set(g.support_vars()))
    f_values = values_on_cube(f, support, max_vars=max_vars)
    g_values = values_on_cube(g, support, max_vars=max_vars)
    fd = f.field
    one = fd.one()
    agrees = all(fd.mul(a, b) == one for a, b in zip(f_values, g_values))
    multilinear = g.is_multilinear()
    equal = multilinear and agrees and g == boolean_inverse(f, max_vars=max_vars).g
    return FunctionalCheckReport(
        verified=verified,
        multilinear=multilinear,
        cube_points=len(f_values),
        cube_agrees=agrees,
        coefficientwise_equal=equal,
        g_terms=len(g),
        g_degree=None if g.is_zero() else g.degree(),
    )


def _layer_coefficients(g: SparsePoly, n: int) -> tuple[list[Any], bool]:
    """The common coefficient of each degree layer, and whether all are constant."""
    fd = g.field
    layers = []
    symmetric = True
    for i in range(n + 1):
        values = {
            g.coefficient(Monomial.from_mask(vars_mask(subset)))
            for subset in combinations(range(n), i)
        }
        symmetric &= len(values) == 1
        layers.append(next(iter(values)) if len(values) == 1 else fd.zero())
    return layers, symmetric


def elem_sym_inverse_structure(
    n: int, d: int, beta: Any, field: Field, *, max_n: int = 16
) -> ElemSymStructure:
    """Coefficients of the inverse of ``e_{n,d} - beta`` in the ``e_{n,i}`` basis.

    A symmetric multilinear polynomial is ``sum_i c_i e_{n,i}`` where ``c_i``
    is its coefficient on any degree-``i`` monomial, so the basis change reads
    the layers off directly.

    Raises:
        InvalidParameterError: Outside characteristic 0, for ``n > max_n`` or
            beta below C(n, d).
        InternalInvariantError: If the interpolated inverse is not symmetric.
    """
    if field.characteristic != 0:
        raise InvalidParameterError(
            "The elementary-symmetric check runs in characteristic 0"
        )
    if n > max_n:
        raise InvalidParameterError(f"n={n!r} exceeds the limit {max_n}")
    value = resolve_beta(field, beta)
    if value < comb(n, d):
        raise InvalidParameterError(f"beta={value} is below C({n}, {d})")
    f = gen_elem_sym_axiom(n, d, field, value).require_axiom()
    g = boolean_inverse(f).g
    alphas, symmetric = _layer_coefficients(g, n)
    if not symmetric:
        raise InternalInvariantError(
            f"Inverse of e_{{{n},{d}}} - beta is not symmetric"
        )
    beta_prime = alphas[0]
    pattern_ok = (
        not field.is_zero(beta_prime)
        and all(field.is_zero(a) for a in alphas[1:d])
        and all(not field.is_zero(a) for a in alphas[d:])
    )
    if not pattern_ok:
        logger.warning("Coefficient pattern of the e_{%d,%d} inverse is violated", n, d)
    return ElemSymStructure(
        n=n,
        d=d,
        beta=field.format(value),
        alphas=[field.format(a) for a in alphas],
        beta_prime=field.format(beta_prime),
        symmetric=symmetric,
        pattern_ok=pattern_ok,
    )
