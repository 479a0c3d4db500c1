"""Explicit small ROABPs: elementary symmetric polynomials, the subset-sum inverse."""

from collections.abc import Sequence
from typing import Any

from ipslab.algebra.fields import Field
from ipslab.algebra.monomials import VarTable
from ipslab.errors import InvalidParameterError
from ipslab.refute.subset_sum import subset_sum_inverse_coefficients
from ipslab.roabp.generators import roabp_variables
from ipslab.roabp.model import Layer, Roabp


def _counting_roabp(
    field: Field, variables: VarTable, n: int, top: int, weights: Sequence[Any]
) -> Roabp:
    """Width ``top + 1`` program whose state counts the variables set so far.

    The output is ``sum_j weights[j] * e_{n,j}``.
    """
    one, zero = field.one(), field.zero()
    states = top + 1
    layers: list[Layer] = []
    for j in range(n):
        rows = [0] if j == 0 else range(states)
        if j == n - 1:
            layer = tuple(
                ((weights[s], weights[s + 1] if s < top else zero),) for s in rows
            )
        else:
            layer = tuple(
                tuple(
                    (one,) if c == s else (zero, one) if c == s + 1 else ()
                    for c in range(states)
                )
                for s in rows
            )
        layers.append(layer)
    return Roabp(field, variables, tuple(range(n)), tuple(layers))


def elem_sym_roabp(
    n: int, d: int, field: Field, variables: VarTable | None = None
) -> Roabp:
    """Width-``(d+1)`` ROABP for ``e_{n,d}`` in the natural order."""
    if not 0 <= d <= n or n < 1:
        raise InvalidParameterError(
            f"Need 0 <= d <= n and n >= 1, got d={d!r}, n={n!r}"
        )
    table = variables or roabp_variables(n)
    weights = [field.one() if j == d else field.zero() for j in range(d + 1)]
    return _counting_roabp(field, table, n, d, weights)


def subset_sum_inverse_roabp(
    n: int, beta: Any, field: Field, variables: VarTable | None = None
) -> Roabp:
    """Width-``(n+1)`` ROABP for the cube inverse of ``x1 + ... + xn - beta``."""
    table = variables or roabp_variables(n)
    alphas = subset_sum_inverse_coefficients(n, beta, field)
    return _counting_roabp(field, table, n, n, alphas)
