"""Read-once oblivious algebraic branching programs and their sums.

Layer ``j`` reads ``x_{order[j]}`` and is a ``w_{j-1} x w_j`` matrix of
univariate labels; a label is the ascending coefficient tuple
``(c0, c1, ...)`` of ``c0 + c1 x + ...``. The program computes the single
entry of the product of the label matrices.
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
import logging
from typing import Any

from ipslab.algebra.fields import Field
from ipslab.algebra.monomials import Monomial, VarTable
from ipslab.algebra.polynomials import SparsePoly
from ipslab.config import config_int
from ipslab.errors import InvalidParameterError, MissingVariableError, SizeGuardError

logger = logging.getLogger(__name__)

Label = tuple[Any, ...]
Layer = tuple[tuple[Label, ...], ...]


def _trim(label: Sequence[Any], field: Field) -> Label:
    values = list(label)
    while values and field.is_zero(values[-1]):
        values.pop()
    return tuple(values)


@dataclass(frozen=True)
class Roabp:
    """One ROABP over ``variables``; ``order`` lists every variable id once."""

    field: Field
    variables: VarTable
    order: tuple[int, ...]
    layers: tuple[Layer, ...]

    def __post_init__(self) -> None:
        if sorted(self.order) != list(range(len(self.variables))):
            raise InvalidParameterError(
                f"Order {self.order!r} is not a permutation of the {len(self.variables)} variables"
            )
        if len(self.layers) != len(self.order):
            raise InvalidParameterError(
                f"Expected {len(self.order)} layers, got {len(self.layers)}"
            )
        previous = 1
        for j, layer in enumerate(self.layers):
            ragged = len({len(row) for row in layer}) != 1
            if len(layer) != previous or not layer or ragged:
                raise InvalidParameterError(f"Layer {j} has inconsistent shape")
            previous = len(layer[0])
        if previous != 1:
            raise InvalidParameterError("The last layer must have a single column")
        trimmed = tuple(
            tuple(tuple(_trim(label, self.field) for label in row) for row in layer)
            for layer in self.layers
        )
        object.__setattr__(self, "layers", trimmed)
        degree_limit = config_int("roabp-max-label-degree")
        if self.label_degree > degree_limit:
            raise SizeGuardError(
                f"Label degree {self.label_degree!r} exceeds the limit {degree_limit}"
            )

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def widths(self) -> list[int]:
        """``w_0, ..., w_n`` with ``w_0 = w_n = 1``."""
        return [1] + [len(layer[0]) for layer in self.layers]

    @property
    def width(self) -> int:
        return max(self.widths)

    @property
    def label_degree(self) -> int:
        return max(
            (len(label) - 1 for layer in self.layers for row in layer for label in row),
            default=0,
        )

    def is_multilinear(self) -> bool:
        return self.label_degree <= 1

    def _fold(
        self, start: list[Any], layers: Sequence[Layer], read: Any, add: Any
    ) -> list[Any]:
        vector = start
        for j, layer in enumerate(layers):
            cols = len(layer[0])
            out = [None] * cols
            for r, row in enumerate(layer):
                if vector[r] is None:
                    continue
                for c, label in enumerate(row):
                    if not label:
                        continue
                    term = read(j, vector[r], label)
                    out[c] = term if out[c] is None else add(out[c], term)
            vector = out
        return vector

    def evaluate(self, point: Mapping[Any, Any]) -> Any:
        """Matrix-product fold of the labels evaluated at *point*."""
        f = self.field
        values = {
            (self.variables.id(k) if isinstance(k, str) else k): v
            for k, v in point.items()
        }
        for v in self.order:
            if v not in values:
                raise MissingVariableError(
                    f"Point does not assign {self.variables.name(v)!r}"
                )

        def read(j: int, acc: Any, label: Label) -> Any:
            x = values[self.order[j]]
            value = f.zero()
            for c in reversed(label):
                value = f.add(f.mul(value, x), c)
            return f.mul(acc, value)

        result = self._fold([f.one()], self.layers, read, f.add)[0]
        return f.zero() if result is None else result

    def label_poly(self, j: int, label: Label) -> SparsePoly:
        v = self.order[j]
        return SparsePoly(
            self.field,
            self.variables,
            {Monomial(((v, e),) if e else ()): c for e, c in enumerate(label)},
        )

    def extract(
        self, *, max_vars: int | None = None, max_width: int | None = None
    ) -> SparsePoly:
        """The polynomial computed, by the same fold with symbolic labels.

        Raises:
            SizeGuardError: Past ``roabp-max-vars`` or ``roabp-max-width``.
        """
        var_limit = config_int("roabp-max-vars", max_vars)
        width_limit = config_int("roabp-max-width", max_width)
        if self.n > var_limit or self.width > width_limit:
            raise SizeGuardError(
                f"Extracting n={self.n}, width={self.width} exceeds the limits "
                f"({var_limit}, {width_limit})"
            )
        one = SparsePoly.constant(self.field, self.variables, self.field.one())
        result = self._fold(
            [one],
            self.layers,
            lambda j, acc, label: acc * self.label_poly(j, label),
            lambda a, b: a + b,
        )[0]
        return SparsePoly.zero(self.field, self.variables) if result is None else result

    def multilinearize(self) -> "Roabp":
        """Replace each label ``c0 + sum_k c_k x^k`` by ``c0 + (sum_k c_k) x``."""
        f = self.field

        def clamp(label: Label) -> Label:
            if len(label) <= 2:
                return label
            upper = f.zero()
            for c in label[1:]:
                upper = f.add(upper, c)
            return (label[0], upper)

        layers = tuple(
            tuple(tuple(clamp(label) for label in row) for row in layer)
            for layer in self.layers
        )
        return Roabp(self.field, self.variables, self.order, layers)

    def segment_polynomial(self, start: int, stop: int) -> SparsePoly:
        """Product of the labels of layers ``start..stop-1`` for a width-1 program."""
        if self.width != 1:
            raise InvalidParameterError(
                "Segment polynomials are defined for width-1 programs"
            )
        product = SparsePoly.constant(self.field, self.variables, self.field.one())
        for j in range(start, stop):
            product = product * self.label_poly(j, self.layers[j][0][0])
        return product


@dataclass(frozen=True)
class SumRoabp:
    """A sum of ROABPs over one variable table; orders may differ."""

    members: tuple[Roabp, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise InvalidParameterError("A sum of ROABPs needs at least one member")
        first = self.members[0]
        for member in self.members[1:]:
            if member.field != first.field or member.variables != first.variables:
                raise InvalidParameterError(
                    "All summands must share field and variables"
                )

    @property
    def field(self) -> Field:
        return self.members[0].field

    @property
    def variables(self) -> VarTable:
        return self.members[0].variables

    @property
    def total_width(self) -> int:
        return sum(m.width for m in self.members)

    def evaluate(self, point: Mapping[Any, Any]) -> Any:
        total = self.field.zero()
        for member in self.members:
            total = self.field.add(total, member.evaluate(point))
        return total

    def extract(self, **guards: int | None) -> SparsePoly:
        total = SparsePoly.zero(self.field, self.variables)
        for member in self.members:
            total = total + member.extract(**guards)
        return total

    def multilinearize(self) -> "SumRoabp":
        return SumRoabp(tuple(m.multilinearize() for m in self.members))
