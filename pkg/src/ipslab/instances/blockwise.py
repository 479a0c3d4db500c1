"""The blockwise binary-encoding family.

``X`` is split into ``N = n / log n`` blocks of ``L = log n`` variables. For
every block ``X_i`` and every ``S ⊆ X_i`` the axiom has the term
``prod_{j in S} x_j * y_{t(S)}``, where ``t(S)`` reads the indicator vector of
``S`` as a binary number (first variable of the block is the lowest bit).
Degree is ``L + 1``. The ``S = ∅`` terms of all blocks collapse onto ``y0``
with coefficient ``N``; when the characteristic divides ``N`` the merged term
keeps coefficient 1 instead of vanishing.
"""

import logging

from ipslab.algebra.fields import Field
from ipslab.algebra.monomials import Monomial, VarPartition, VarTable
from ipslab.algebra.polynomials import SparsePoly
from ipslab.errors import InvalidParameterError
from ipslab.instances.base import Instance, InstanceDescriptor, default_beta

logger = logging.getLogger(__name__)


def valid_blockwise_sizes(limit: int = 1 << 16) -> list[int]:
    """All ``n = 2^L <= limit`` with ``L`` dividing ``n``."""
    sizes = []
    level = 1
    while (1 << level) <= limit:
        if (1 << level) % level == 0:
            sizes.append(1 << level)
        level += 1
    return sizes


def blockwise_variables(n: int) -> VarTable:
    return VarTable.of([f"x{i}" for i in range(1, n + 1)] + [f"y{j}" for j in range(n)])


def gen_blockwise_binary(n: int, field: Field, *, inclusive: bool = True) -> Instance:
    """Generate the blockwise instance of size *n* over *field*.

    Args:
        n: Number of x-variables; a power of two whose exponent divides it.
        field: Q (shift 1) or an extension field (shift z).
        inclusive: Let ``S`` range over all subsets of each block; when False
            only nonempty proper subsets are used.

    Returns:
        The instance; its partition is ``X1, ..., XN, Y``.

    Raises:
        InvalidParameterError: If *n* is not a valid size.
    """
    valid = valid_blockwise_sizes()
    if n not in valid:
        raise InvalidParameterError(
            f"Blockwise size {n!r} is invalid: n must be 2^L with L dividing n",
            valid=valid,
        )
    levels = n.bit_length() - 1
    table = blockwise_variables(n)
    y_base = n
    beta, note = default_beta(field, 1)
    blocks = []
    terms: list[tuple[Monomial, object]] = []
    for block in range(n // levels):
        xs = [block * levels + j for j in range(levels)]
        blocks.append(xs)
        for subset in range(1, 1 << levels):
            if not inclusive and subset == (1 << levels) - 1:
                continue
            mask = 1 << (y_base + subset)
            for j in range(levels):
                if subset >> j & 1:
                    mask |= 1 << xs[j]
            terms.append((Monomial.from_mask(mask), field.one()))
    notes = [note]
    if inclusive:
        y0_coeff = field.from_int(len(blocks))
        if field.is_zero(y0_coeff):
            # N copies of y0 vanish when p | N; a unit keeps y0 in the support.
            y0_coeff = field.one()
            notes.append(
                f"the {len(blocks)} empty-set terms are merged into one y0 term "
                f"with coefficient 1 (characteristic {field.characteristic} "
                f"divides {len(blocks)})"
            )
            logger.info(
                "Blockwise n=%d: y0 kept with unit coefficient over %s", n, field.spec
            )
        terms.append((Monomial.from_mask(1 << y_base), y0_coeff))
    terms.append((Monomial.one(), beta))
    f = SparsePoly.from_terms(field, table, terms)
    partition = VarPartition.of(
        [*blocks, range(y_base, 2 * n)],
        [*(f"X{i + 1}" for i in range(len(blocks))), "Y"],
    )
    descriptor = InstanceDescriptor(
        family="blockwise",
        params={"n": n, "inclusive": inclusive},
        field=field,
        beta=beta,
        variables=table,
        partition=partition,
        notes=[
            *notes,
            "subsets include the empty set and the full block"
            if inclusive
            else "subsets are nonempty proper subsets of each block",
        ],
    )
    return Instance(axiom=f, descriptor=descriptor)
