"""The constant-degree set-multilinear family.

Rows ``X_1, ..., X_c`` of ``n^2 / c`` variables each are cut into ``K`` column
groups of width ``b = n^{2/c}``; group ``k`` holds
``X^(k) = X_{1,k} ⊔ ... ⊔ X_{c,k}``, which has exactly ``b^c = n^2``
set-multilinear monomials. A bijection ``pi_k`` sends them to the ``n^2``
variables ``y_{i,j}``, and the axiom is ``sum_k sum_m m * pi_k(m) + beta`` of
degree ``c + 1``.
"""

from dataclasses import dataclass
import itertools
import logging
import random

from ipslab.algebra.fields import Field
from ipslab.algebra.monomials import Monomial, VarPartition, VarTable
from ipslab.algebra.polynomials import SparsePoly
from ipslab.errors import InvalidParameterError
from ipslab.instances.base import Instance, InstanceDescriptor, default_beta
from ipslab.utils.seeds import derive_seed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConstDegShape:
    n: int
    c: int
    width: int
    row_length: int
    groups: int

    @property
    def sparsity(self) -> int:
        return self.groups * self.n * self.n


def constdeg_shape(n: int, c: int) -> ConstDegShape | None:
    """The block sizes for ``(n, c)``, or None when an integrality check fails."""
    if c <= 3 or n < 2:
        return None
    width = round(n ** (2 / c))
    if width < 1 or width**c != n * n:
        return None
    if (n * n) % c or (n * n) % (width * c):
        return None
    return ConstDegShape(n, c, width, n * n // c, n * n // (width * c))


def list_valid_constdeg(max_n: int = 256) -> list[tuple[int, int]]:
    """Every ``(n, c)`` with ``n <= max_n`` that passes the integrality checks."""
    valid = []
    for n in range(2, max_n + 1):
        for c in range(4, 2 * n.bit_length() + 1):
            if constdeg_shape(n, c) is not None:
                valid.append((n, c))
    return valid


def constdeg_variables(shape: ConstDegShape) -> VarTable:
    xs = [
        f"x_{{{i},{j}}}"
        for i in range(1, shape.c + 1)
        for j in range(1, shape.row_length + 1)
    ]
    ys = [
        f"y_{{{i},{j}}}" for i in range(1, shape.n + 1) for j in range(1, shape.n + 1)
    ]
    return VarTable.of(xs + ys)


def gen_setmultilinear_constdeg(
    n: int, c: int, field: Field, *, seed: int | None = None
) -> Instance:
    """Generate the set-multilinear instance for ``(n, c)``.

    Args:
        n: Size parameter; ``|Y| = n^2``.
        c: Degree parameter, ``c > 3``.
        field: Q (shift 1) or an extension field (shift z).
        seed: When given, each ``pi_k`` is a seeded random bijection instead of
            the lexicographic-rank one.

    Raises:
        InvalidParameterError: If ``n^{2/c}``, ``n^2/c`` or ``n^{2(1-1/c)}/c`` is
            not an integer.
    """
    shape = constdeg_shape(n, c)
    if shape is None:
        raise InvalidParameterError(
            f"(n, c) = ({n!r}, {c!r}) fails the integrality checks",
            valid=list_valid_constdeg(64),
        )
    table = constdeg_variables(shape)
    beta, note = default_beta(field, 1)

    def x_id(i: int, j: int) -> int:
        return i * shape.row_length + j

    y_base = shape.c * shape.row_length
    y_count = n * n

    terms: list[tuple[Monomial, object]] = []
    blocks = []
    pi_tables = []
    for k in range(shape.groups):
        columns = range(k * shape.width, (k + 1) * shape.width)
        blocks.append([x_id(i, j) for i in range(shape.c) for j in columns])
        targets = list(range(y_count))
        if seed is not None:
            random.Random(derive_seed(seed, "pi", k)).shuffle(targets)
        pi = {}
        choices = itertools.product(range(shape.width), repeat=shape.c)
        for rank, choice in enumerate(choices):
            mask = 0
            for i, j in enumerate(choice):
                mask |= 1 << x_id(i, k * shape.width + j)
            y = y_base + targets[rank]
            terms.append((Monomial.from_mask(mask | 1 << y), field.one()))
            pi[table.format_monomial(Monomial.from_mask(mask))] = table.name(y)
        pi_tables.append(pi)
    terms.append((Monomial.one(), beta))
    f = SparsePoly.from_terms(field, table, terms)
    partition = VarPartition.of(
        [*blocks, range(y_base, y_base + y_count)],
        [*(f"X{k + 1}" for k in range(shape.groups)), "Y"],
    )
    logger.info(
        "Generated set-multilinear instance n=%d c=%d: %d terms over %d variables",
        n, c, len(f), len(table),
    )
    descriptor = InstanceDescriptor(
        family="smconst",
        params={"n": n, "c": c, "seed": seed},
        field=field,
        beta=beta,
        variables=table,
        partition=partition,
        pi_tables=pi_tables,
        notes=[
            note,
            "pi_k is a seeded random bijection"
            if seed is not None
            else "pi_k is the lexicographic-rank bijection onto row-major y",
        ],
    )
    return Instance(axiom=f, descriptor=descriptor)
