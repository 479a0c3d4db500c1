"""The vector-invariant product family, kept factored.

``g = prod_{i<j<k<l} (1 - t_{ijkl} + t_{ijkl} (x_i x_l - x_j x_k)) - beta`` over
``4n`` x-variables. Each factor takes values in ``{-1, 0, 1}`` on the cube, so
any ``beta`` outside that set makes the axiom unsatisfiable. Expansion is only
allowed up to ``vecinv-max-factors`` factors.
"""

from collections.abc import Mapping
from dataclasses import dataclass
from itertools import combinations
import logging
from math import comb
from typing import Any

from ipslab.algebra.fields import Field
from ipslab.algebra.monomials import VarPartition, VarTable
from ipslab.algebra.polynomials import SparsePoly
from ipslab.config import config_int
from ipslab.errors import InvalidParameterError, MissingVariableError, SizeGuardError
from ipslab.instances.base import Instance, InstanceDescriptor, resolve_beta

logger = logging.getLogger(__name__)

Quad = tuple[int, int, int, int]


@dataclass(frozen=True)
class VectorInvariant:
    """Evaluation-first representation of the product axiom."""

    field: Field
    variables: VarTable
    quads: tuple[Quad, ...]
    t_vars: tuple[int, ...]
    beta: Any

    def factor_value(self, index: int, values: Mapping[int, Any]) -> Any:
        f = self.field
        i, j, k, l = self.quads[index]
        t = values[self.t_vars[index]]
        cross = f.sub(f.mul(values[i], values[l]), f.mul(values[j], values[k]))
        return f.add(f.sub(f.one(), t), f.mul(t, cross))

    def evaluate(self, point: Mapping[Any, Any]) -> Any:
        values = {
            (self.variables.id(k) if isinstance(k, str) else k): v
            for k, v in point.items()
        }
        names = self.variables.names
        missing = [names[v] for v in range(len(names)) if v not in values]
        if missing:
            raise MissingVariableError(f"Point does not assign {missing[0]!r}")
        product = self.field.one()
        for index in range(len(self.quads)):
            product = self.field.mul(product, self.factor_value(index, values))
        return self.field.sub(product, self.beta)

    def evaluate_mask(self, mask: int) -> Any:
        f = self.field
        values = {v: f.from_int(mask >> v & 1) for v in range(len(self.variables))}
        return self.evaluate(values)

    def factor_poly(self, index: int) -> SparsePoly:
        f, table = self.field, self.variables
        i, j, k, l = self.quads[index]
        x = {v: SparsePoly.var(f, table, v) for v in (i, j, k, l)}
        t = SparsePoly.var(f, table, self.t_vars[index])
        one = SparsePoly.constant(f, table, f.one())
        return one - t + t * (x[i] * x[l] - x[j] * x[k])

    def expand(self, max_factors: int | None = None) -> SparsePoly:
        """Multiply out the product.

        Raises:
            SizeGuardError: If there are more factors than the guard allows.
        """
        limit = config_int("vecinv-max-factors", max_factors)
        if len(self.quads) > limit:
            raise SizeGuardError(
                f"Expanding {len(self.quads)} vector-invariant factors exceeds the limit {limit}"
            )
        product = SparsePoly.constant(self.field, self.variables, self.field.one())
        for index in range(len(self.quads)):
            product = product * self.factor_poly(index)
        return product - SparsePoly.constant(self.field, self.variables, self.beta)


def vector_invariant_variables(n: int) -> tuple[VarTable, list[Quad]]:
    quads = list(combinations(range(4 * n), 4))
    names = [f"x{i}" for i in range(1, 4 * n + 1)]
    names += ["t_{" + ",".join(str(v + 1) for v in q) + "}" for q in quads]
    return VarTable.of(names), quads


def gen_vector_invariant(
    n: int, beta: Any, field: Field, *, max_factors: int | None = None
) -> Instance:
    """Generate the vector-invariant axiom on ``4n`` x-variables.

    The axiom is expanded when it has at most ``vecinv-max-factors`` factors;
    otherwise ``Instance.axiom`` is None and ``Instance.factored`` evaluates it.

    Raises:
        InvalidParameterError: If the characteristic is 2 or 3, or beta is
            in {-1, 0, 1}.
    """
    if n < 1:
        raise InvalidParameterError(f"Vector-invariant size {n!r} must be positive")
    if field.characteristic in (2, 3):
        raise InvalidParameterError(
            f"Vector-invariant family needs characteristic 0 or at least 5, got {field.spec!r}"
        )
    value = resolve_beta(field, beta)
    if any(value == field.from_int(s) for s in (-1, 0, 1)):
        raise InvalidParameterError(
            f"beta={field.format(value)!r} is a cube value of the product",
            valid=["not -1, 0, 1"],
        )
    table, quads = vector_invariant_variables(n)
    t_base = 4 * n
    factored = VectorInvariant(
        field=field,
        variables=table,
        quads=tuple(quads),
        t_vars=tuple(range(t_base, t_base + len(quads))),
        beta=value,
    )
    limit = config_int("vecinv-max-factors", max_factors)
    axiom = factored.expand(limit) if len(quads) <= limit else None
    if axiom is None:
        logger.info("Keeping %d vector-invariant factors unexpanded", len(quads))
    descriptor = InstanceDescriptor(
        family="vecinv",
        params={"n": n, "factors": comb(4 * n, 4)},
        field=field,
        beta=value,
        variables=table,
        partition=VarPartition.of(
            [range(t_base), range(t_base, len(table))], ["X", "T"]
        ),
        notes=["expanded" if axiom is not None else "factored; evaluation only"],
    )
    return Instance(axiom, descriptor, factored=factored)
