"""Multilinearizing a sum of ROABPs together with Boolean-axiom witnesses."""

from dataclasses import dataclass
import logging

from ipslab.algebra.polynomials import SparsePoly, combine_boolean
from ipslab.errors import InternalInvariantError
from ipslab.roabp.model import SumRoabp

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MultilinearizedSum:
    """``extract(original) = extract(roabp) + sum_v witnesses[v] * (x_v^2 - x_v)``."""

    roabp: SumRoabp
    witnesses: dict[int, SparsePoly]


def multilinearize_sum_with_witnesses(
    a: SumRoabp, *, max_vars: int | None = None, max_width: int | None = None
) -> MultilinearizedSum:
    """Multilinearize member-wise and recover ``h_v`` by Boolean division.

    Each member's witnesses come from dividing its extracted polynomial by
    ``x_v^2 - x_v`` in ascending id order; they are summed over members and
    the identity is rechecked exactly before returning.

    Raises:
        InternalInvariantError: If a division remainder or the final identity
            does not match.
    """
    field, table = a.field, a.variables
    b = a.multilinearize()
    witnesses = {v: SparsePoly.zero(field, table) for v in range(len(table))}
    for original, clamped in zip(a.members, b.members):
        f = original.extract(max_vars=max_vars, max_width=max_width)
        parts, remainder = f.reduce_boolean()
        if remainder != clamped.extract(max_vars=max_vars, max_width=max_width):
            raise InternalInvariantError(
                "Boolean remainder of a summand differs from its multilinearized program"
            )
        for v, h in parts.items():
            witnesses[v] = witnesses[v] + h
    lhs = a.extract(max_vars=max_vars, max_width=max_width)
    rhs = b.extract(max_vars=max_vars, max_width=max_width) + combine_boolean(
        field, table, witnesses
    )
    if lhs != rhs:
        raise InternalInvariantError(
            "f != mult(f) + sum h_v (x_v^2 - x_v) after division"
        )
    logger.debug("Multilinearized %d summands with verified witnesses", len(a.members))
    return MultilinearizedSum(roabp=b, witnesses=witnesses)
