"""Subset-sum style axioms: plain, quadratic, scaled and elementary-symmetric."""

from collections.abc import Sequence
from itertools import combinations
import logging
from math import comb
import random
from typing import Any, Literal

from ipslab.algebra.fields import ExtensionField, Field
from ipslab.algebra.monomials import Monomial, VarPartition, VarTable
from ipslab.algebra.polynomials import SparsePoly
from ipslab.errors import InvalidParameterError
from ipslab.instances.base import (
    Instance,
    InstanceDescriptor,
    default_beta,
    resolve_beta,
)

logger = logging.getLogger(__name__)

ThresholdRule = Literal["rank-bound", "sum-roabp"]


def subset_variables(n: int) -> VarTable:
    return VarTable.of(f"x{i}" for i in range(1, n + 1))


def gen_subset_sum(n: int, beta: Any, field: Field) -> Instance:
    """``x1 + ... + xn - beta``. A satisfiable integer beta only logs a warning."""
    if n < 1:
        raise InvalidParameterError(f"Subset-sum size {n!r} must be positive")
    table = subset_variables(n)
    value = resolve_beta(field, beta)
    if field.characteristic == 0 and value.denominator == 1 and 0 <= value <= n:
        logger.warning(
            "Subset-sum beta=%s is satisfiable on the cube for n=%d", value, n
        )
    terms = [(Monomial.from_mask(1 << v), field.one()) for v in range(n)]
    terms.append((Monomial.one(), field.neg(value)))
    descriptor = InstanceDescriptor(
        family="subset",
        params={"n": n},
        field=field,
        beta=value,
        variables=table,
        partition=VarPartition.of([range(n)], ["X"]),
    )
    return Instance(SparsePoly.from_terms(field, table, terms), descriptor)


def quadratic_variables(n: int) -> tuple[VarTable, list[tuple[int, int]]]:
    """``x0..x_{2n-1}`` followed by ``t_{i,j}`` for ``i < j`` in lexicographic order."""
    pairs = list(combinations(range(2 * n), 2))
    names = [f"x{i}" for i in range(2 * n)] + [f"t_{{{i},{j}}}" for i, j in pairs]
    return VarTable.of(names), pairs


def _quadratic(
    n: int,
    field: Field,
    beta: Any,
    alphas: Sequence[Any] | None,
) -> tuple[SparsePoly, VarTable, VarPartition]:
    table, pairs = quadratic_variables(n)
    t_base = 2 * n
    terms = []
    for index, (i, j) in enumerate(pairs):
        coeff = field.one() if alphas is None else alphas[index]
        mask = 1 << i | 1 << j | 1 << (t_base + index)
        terms.append((Monomial.from_mask(mask), coeff))
    terms.append((Monomial.one(), field.neg(beta)))
    partition = VarPartition.of([range(t_base), range(t_base, len(table))], ["X", "T"])
    return SparsePoly.from_terms(field, table, terms), table, partition


def gen_quadratic_subset_sum(n: int, field: Field, beta: Any = None) -> Instance:
    """``sum_{i<j} t_{i,j} x_i x_j - beta`` over ``2n`` x-variables.

    The default shift is ``2 * C(2n, 2)`` in characteristic 0 and z over an
    extension field.
    """
    if n < 1:
        raise InvalidParameterError(f"Quadratic subset-sum size {n!r} must be positive")
    notes = []
    if beta is None:
        value, note = default_beta(field, 2 * comb(2 * n, 2))
        notes.append(note)
    else:
        value = resolve_beta(field, beta)
    f, table, partition = _quadratic(n, field, value, None)
    descriptor = InstanceDescriptor(
        family="quadratic",
        params={"n": n},
        field=field,
        beta=value,
        variables=table,
        partition=partition,
        notes=notes,
    )
    return Instance(f, descriptor)


def threshold_k(n: int, p: int, rule: ThresholdRule = "sum-roabp") -> int:
    """Smallest ``k`` with ``p^k`` above the field-size threshold of *rule*.

    ``rank-bound`` uses ``C(2n, n) * 2^{2n}``; ``sum-roabp`` uses ``C(2n, 2) * 2^{2n}``.
    """
    if rule == "rank-bound":
        bound = comb(2 * n, n) * 4**n
    elif rule == "sum-roabp":
        bound = comb(2 * n, 2) * 4**n
    else:
        raise InvalidParameterError(
            f"Unknown threshold rule {rule!r}", valid=["rank-bound", "sum-roabp"]
        )
    k = 1
    while p**k <= bound:
        k += 1
    return k


def gen_scaled_quadratic(
    n: int,
    field: Field,
    *,
    alphas: Sequence[Any] | None = None,
    seed: int = 0,
    rule: ThresholdRule = "sum-roabp",
) -> Instance:
    """``sum_{i<j} alpha_{i,j} t_{i,j} x_i x_j - z`` over an extension field.

    ``alphas`` default to seeded uniform draws from the prime field, which sits
    inside every field of the tower, so no cube value can reach ``z``.

    Raises:
        InvalidParameterError: If *field* is not an extension field or *alphas*
            has the wrong length.
    """
    if not isinstance(field, ExtensionField):
        raise InvalidParameterError(
            f"Scaled quadratic family needs an extension field, got {field.spec!r}",
            valid=["Fpk:p=<p>,k=<k>"],
        )
    count = comb(2 * n, 2)
    if alphas is None:
        rng = random.Random(seed)
        values = [field.from_int(rng.randrange(field.p)) for _ in range(count)]
    else:
        values = [resolve_beta(field, a) for a in alphas]
        if len(values) != count:
            raise InvalidParameterError(f"Expected {count} alphas, got {len(values)}")
    beta, note = default_beta(field, 0)
    f, table, partition = _quadratic(n, field, beta, values)
    base_k = threshold_k(n, field.p, rule)
    notes = [
        note,
        f"threshold rule {rule!r}: base degree k={base_k}, ambient degree {base_k + 1}",
    ]
    if field.k != base_k + 1:
        notes.append(f"ambient degree {field.k} differs from the threshold rule")
    descriptor = InstanceDescriptor(
        family="scaled",
        params={"n": n, "seed": seed, "rule": rule, "threshold_k": base_k},
        field=field,
        beta=beta,
        variables=table,
        partition=partition,
        alphas=values,
        notes=notes,
    )
    return Instance(f, descriptor)


def elementary_symmetric(
    field: Field, variables: VarTable, var_ids: Sequence[int], d: int
) -> SparsePoly:
    """``e_d`` of *var_ids* by the column dynamic program ``E_j += E_{j-1} * x``."""
    columns = [SparsePoly.constant(field, variables, field.one())] + [
        SparsePoly.zero(field, variables) for _ in range(d)
    ]
    for v in var_ids:
        x = SparsePoly.var(field, variables, v)
        for j in range(d, 0, -1):
            if not columns[j - 1].is_zero():
                columns[j] = columns[j] + columns[j - 1] * x
    return columns[d]


def gen_elem_sym_axiom(n: int, d: int, field: Field, beta: Any = None) -> Instance:
    """``e_{n,d}(x1..xn) - beta``; default ``beta = C(n, d) + 1``."""
    if not 1 <= d <= n:
        raise InvalidParameterError(f"Need 1 <= d <= n, got d={d!r}, n={n!r}")
    table = subset_variables(n)
    value = resolve_beta(field, comb(n, d) + 1 if beta is None else beta)
    if field.characteristic == 0 and any(value == comb(k, d) for k in range(n + 1)):
        logger.warning("beta=%s is a cube value of e_{%d,%d}", value, n, d)
    e = elementary_symmetric(field, table, range(n), d)
    f = e - SparsePoly.constant(field, table, value)
    descriptor = InstanceDescriptor(
        family="esym",
        params={"n": n, "d": d},
        field=field,
        beta=value,
        variables=table,
        partition=VarPartition.of([range(n)], ["X"]),
    )
    return Instance(f, descriptor)
