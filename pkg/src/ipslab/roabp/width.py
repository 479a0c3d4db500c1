"""Width lower bounds from partial derivative matrices at prefix cuts."""

from collections.abc import Sequence
import logging

from ipslab.algebra.polynomials import SparsePoly
from ipslab.config import config_int
from ipslab.errors import InvalidParameterError, SizeGuardError
from ipslab.measures.pdmatrix import pd_matrix, rank_exact

logger = logging.getLogger(__name__)


def cut_ranks(
    f: SparsePoly,
    order: Sequence[int],
    *,
    max_vars: int | None = None,
    max_side: int | None = None,
) -> list[int]:
    """``rank M_{Y_i, Z_i}(f)``, ``Y_i`` the first ``i`` variables of *order*.

    *max_vars* bounds the order (``roabp-max-vars``); every cut is a PD
    matrix and stays under ``pd-max-side`` unless *max_side* is given.
    """
    if not f.is_multilinear():
        raise InvalidParameterError("Width bounds need a multilinear polynomial")
    ids = list(order)
    if sorted(ids) != sorted(set(ids)) or set(f.support_vars()) - set(ids):
        raise InvalidParameterError(
            f"Order {ids!r} must list every support variable once"
        )
    limit = config_int("roabp-max-vars", max_vars)
    if len(ids) > limit:
        raise SizeGuardError(
            f"Width bound over {len(ids)} variables exceeds the limit {limit}"
        )
    side = config_int("pd-max-side", max_side)
    return [
        rank_exact(pd_matrix(f, ids[:i], ids[i:], max_side=side))
        for i in range(1, len(ids) + 1)
    ]


def width_lower_bound(
    f: SparsePoly,
    order: Sequence[int],
    *,
    max_vars: int | None = None,
    max_side: int | None = None,
) -> int:
    """Any ROABP in *order* computing *f* has at least this width."""
    ranks = cut_ranks(f, order, max_vars=max_vars, max_side=max_side)
    bound = max(ranks, default=0)
    logger.debug("Cut ranks %s, width bound %d", ranks, bound)
    return bound
