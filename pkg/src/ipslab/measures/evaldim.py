"""Evaluation dimension: the span of partial substitutions of a polynomial."""

from collections.abc import Iterable, Sequence
import itertools
import logging
from typing import Any

from ipslab.algebra.polynomials import SparsePoly
from ipslab.errors import InvalidParameterError
from ipslab.measures.rank import create_rank_strategy
from ipslab.utils.seeds import derive_rng

logger = logging.getLogger(__name__)


def eval_dim_lower_bound(
    f: SparsePoly,
    x_vars: Iterable[int],
    y_vars: Iterable[int],
    sample_set: Sequence[Any],
    *,
    samples: int | None = None,
    seed: int = 0,
) -> int:
    """Dimension of ``span{ f(X, b) : b }`` for points ``b`` of ``S^|Y|``.

    All points are used when *samples* is None, otherwise that many seeded
    random points. Ints in *sample_set* are mapped into the field.
    """
    xs, ys = set(x_vars), sorted(set(y_vars))
    if xs & set(ys):
        raise InvalidParameterError(
            f"X and Y parts overlap in {sorted(xs & set(ys))!r}"
        )
    if f.is_zero():
        return 0
    field = f.field
    values = [field.from_int(s) if isinstance(s, int) else s for s in sample_set]
    if samples is None:
        points: Iterable[tuple[Any, ...]] = itertools.product(values, repeat=len(ys))
    else:
        rng = derive_rng(seed, "evaldim")
        points = (tuple(rng.choice(values) for _ in ys) for _ in range(samples))
    vectors = []
    for point in points:
        vectors.append(f.partial_evaluate(dict(zip(ys, point))).terms)
    columns = sorted(
        {m for v in vectors for m in v}, key=lambda m: (m.degree, m.exponents)
    )
    if not columns:
        return 0
    zero = field.zero()
    rows = [[v.get(m, zero) for m in columns] for v in vectors]
    dim = create_rank_strategy(field).rank(rows)
    logger.debug("Evaluation dimension over %d points: %d", len(rows), dim)
    return dim
