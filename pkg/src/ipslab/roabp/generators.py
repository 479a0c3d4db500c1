"""Seeded random ROABPs for experiments and property checks."""

from collections.abc import Sequence
import random

from ipslab.algebra.fields import Field
from ipslab.algebra.monomials import VarTable
from ipslab.errors import InvalidParameterError
from ipslab.roabp.model import Roabp, SumRoabp
from ipslab.utils.seeds import derive_seed


def roabp_variables(n: int) -> VarTable:
    return VarTable.of(f"x{i}" for i in range(1, n + 1))


def random_roabp(
    field: Field,
    variables: VarTable,
    *,
    width: int | Sequence[int] = 2,
    degree: int = 1,
    coeff_range: int = 3,
    seed: int = 0,
    order: Sequence[int] | None = None,
) -> Roabp:
    """A random ROABP with coefficients uniform in ``[-coeff_range, coeff_range]``.

    Args:
        width: A uniform inner width, or the explicit profile ``w_1..w_{n-1}``.
        degree: Label degree (1 gives a multilinear program).
        order: Variable order; a seeded shuffle when omitted.
    """
    rng = random.Random(seed)
    n = len(variables)
    if isinstance(width, int):
        inner = [width] * (n - 1)
    else:
        inner = list(width)
        if len(inner) != n - 1:
            raise InvalidParameterError(
                f"Width profile needs {n - 1} entries, got {len(inner)}"
            )
    widths = [1, *inner, 1]
    if order is None:
        sigma = list(range(n))
        rng.shuffle(sigma)
    else:
        sigma = list(order)
    layers = []
    for j in range(n):
        layers.append(
            tuple(
                tuple(
                    tuple(
                        field.from_int(rng.randint(-coeff_range, coeff_range))
                        for _ in range(degree + 1)
                    )
                    for _ in range(widths[j + 1])
                )
                for _ in range(widths[j])
            )
        )
    return Roabp(field, variables, tuple(sigma), tuple(layers))


def random_sum_roabp(
    field: Field,
    variables: VarTable,
    t: int,
    *,
    width: int | Sequence[int] = 2,
    degree: int = 1,
    coeff_range: int = 3,
    seed: int = 0,
) -> SumRoabp:
    """``t`` independent random summands, each with its own seeded order."""
    return SumRoabp(
        tuple(
            random_roabp(
                field,
                variables,
                width=width,
                degree=degree,
                coeff_range=coeff_range,
                seed=derive_seed(seed, "member", i),
            )
            for i in range(t)
        )
    )
