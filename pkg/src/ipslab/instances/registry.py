"""Family registry - creates an instance from a family tag and parameters.

Mirrors the strategy factory: a name -> builder table and one ``create_*``
entry point. Unknown names raise with the list of known families.
"""

from collections.abc import Callable
import logging
from typing import Any

from ipslab.algebra.fields import Field
from ipslab.errors import InvalidParameterError
from ipslab.instances.base import Instance
from ipslab.instances.blockwise import gen_blockwise_binary
from ipslab.instances.setmultilinear import gen_setmultilinear_constdeg
from ipslab.instances.subset_sum import (
    gen_elem_sym_axiom,
    gen_quadratic_subset_sum,
    gen_scaled_quadratic,
    gen_subset_sum,
)
from ipslab.instances.vector_invariant import gen_vector_invariant

logger = logging.getLogger(__name__)


def _blockwise(field: Field, n: int, inclusive: bool = True, **_: Any) -> Instance:
    return gen_blockwise_binary(n, field, inclusive=inclusive)


def _smconst(
    field: Field, n: int, c: int = 4, seed: int | None = None, **_: Any
) -> Instance:
    return gen_setmultilinear_constdeg(n, c, field, seed=seed)


def _subset(field: Field, n: int, beta: Any = None, **_: Any) -> Instance:
    return gen_subset_sum(n, n + 1 if beta is None else beta, field)


def _quadratic(field: Field, n: int, beta: Any = None, **_: Any) -> Instance:
    return gen_quadratic_subset_sum(n, field, beta)


def _scaled(
    field: Field, n: int, seed: int | None = None, rule: str = "sum-roabp", **_: Any
) -> Instance:
    return gen_scaled_quadratic(
        n, field, seed=seed or 0, rule=rule  # type: ignore[arg-type]
    )


def _vecinv(field: Field, n: int, beta: Any = None, **_: Any) -> Instance:
    return gen_vector_invariant(n, 2 if beta is None else beta, field)


def _esym(field: Field, n: int, d: int = 1, beta: Any = None, **_: Any) -> Instance:
    return gen_elem_sym_axiom(n, d, field, beta)


_FAMILIES: dict[str, Callable[..., Instance]] = {
    "blockwise": _blockwise,
    "smconst": _smconst,
    "subset": _subset,
    "quadratic": _quadratic,
    "scaled": _scaled,
    "vecinv": _vecinv,
    "esym": _esym,
}


def family_names() -> list[str]:
    return sorted(_FAMILIES)


def create_instance(family: str, field: Field, **params: Any) -> Instance:
    """Build an instance of *family* over *field*.

    Args:
        family: One of :func:`family_names`.
        field: Field of the instance.
        **params: Family parameters (``n`` always; ``c``, ``d``, ``beta``,
            ``seed``, ``rule``, ``inclusive`` where they apply). ``None`` values
            fall back to the family default.

    Raises:
        InvalidParameterError: If *family* is unknown.
    """
    if family not in _FAMILIES:
        raise InvalidParameterError(f"Unknown family {family!r}", valid=family_names())
    given = {k: v for k, v in params.items() if v is not None}
    logger.debug("Creating %s instance with %r over %s", family, given, field.spec)
    return _FAMILIES[family](field, **given)
