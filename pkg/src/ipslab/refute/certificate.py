"""Linear IPS certificates ``P(X, y, z) = g * y + sum_j h_j * z_j``."""

from collections.abc import Mapping
from dataclasses import dataclass, field
import logging
from typing import Any

from ipslab.algebra.fields import Field
from ipslab.algebra.monomials import Monomial, vars_mask
from ipslab.algebra.polynomials import SparsePoly, combine_boolean
from ipslab.algebra.serialization import poly_from_model, poly_to_model
from ipslab.errors import (
    InvalidParameterError,
    UnsupportedShapeError,
    VariableMismatchError,
)
from ipslab.schemas.certificate import CertificateModel

logger = logging.getLogger(__name__)

Y_NAME = "y"


def z_name(x_name: str) -> str:
    return f"z_{{{x_name}}}"


@dataclass(frozen=True)
class LinRefutation:
    """Certificate data: the axiom, its coefficient ``g`` and the Boolean ``h``.

    ``h`` maps variable ids of the axiom's table to polynomials; missing ids are 0.
    """

    axiom: SparsePoly
    g: SparsePoly
    h: Mapping[int, SparsePoly] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for part in (self.g, *self.h.values()):
            if part.field != self.axiom.field or part.variables != self.axiom.variables:
                raise VariableMismatchError(
                    "Certificate polynomials must share the axiom's field and variables"
                )

    @property
    def field(self) -> Field:
        return self.axiom.field

    def identity(self) -> SparsePoly:
        """``g * f + sum_j h_j (x_j^2 - x_j)``."""
        return self.g * self.axiom + combine_boolean(
            self.field, self.axiom.variables, self.h
        )

    def residual(self) -> SparsePoly:
        return self.identity() - 1

    def degree_bound(self) -> int:
        """Total degree bound of the identity, used to size random evaluation."""
        degrees = [0]
        if not self.g.is_zero() and not self.axiom.is_zero():
            degrees.append(self.g.degree() + self.axiom.degree())
        degrees += [h.degree() + 2 for h in self.h.values() if not h.is_zero()]
        return max(degrees)

    def placeholder_poly(self) -> SparsePoly:
        """``P = g * y + sum_j h_j * z_j`` over X, ``y`` and the ``z_{x}``."""
        names = self.axiom.variables.names
        table = self.axiom.variables.extend([Y_NAME, *(z_name(n) for n in names)])
        p = self.g.with_variables(table) * SparsePoly.var(self.field, table, Y_NAME)
        for v, h in sorted(self.h.items()):
            z = SparsePoly.var(self.field, table, z_name(names[v]))
            p = p + h.with_variables(table) * z
        return p

    @classmethod
    def from_placeholder_poly(cls, p: SparsePoly, axiom: SparsePoly) -> "LinRefutation":
        """Read ``g`` and ``h`` back from an explicit placeholder polynomial.

        Raises:
            UnsupportedShapeError: If ``deg_y P > 1``, ``P(X, 0, 0) != 0``, a
                term is nonlinear in the ``z`` placeholders or mixes ``y`` and ``z``.
        """
        table = p.variables
        names = axiom.variables.names
        y = table.id(Y_NAME)
        z_ids = {
            table.id(z_name(n)): v
            for v, n in enumerate(names)
            if z_name(n) in table.index
        }
        x_mask = vars_mask(table.id(n) for n in names)
        g_terms: dict[Monomial, Any] = {}
        h_terms: dict[int, dict[Monomial, Any]] = {}
        for m, c in p.terms.items():
            x_part, rest = m.split(x_mask)
            if rest.is_one():
                raise UnsupportedShapeError(
                    "P(X, 0, 0) is not 0: a term has no placeholder"
                )
            if rest.degree != 1:
                raise UnsupportedShapeError(
                    f"Term {table.format_monomial(m)!r} is not linear in the placeholders"
                )
            placeholder = rest.exponents[0][0]
            local = Monomial(
                (axiom.variables.id(table.name(v)), e) for v, e in x_part.exponents
            )
            if placeholder == y:
                g_terms[local] = c
            elif placeholder in z_ids:
                h_terms.setdefault(z_ids[placeholder], {})[local] = c
            else:
                raise InvalidParameterError(
                    f"Unknown placeholder {table.name(placeholder)!r}"
                )
        fd, xt = axiom.field, axiom.variables
        return cls(
            axiom=axiom,
            g=SparsePoly(fd, xt, g_terms),
            h={v: SparsePoly(fd, xt, terms) for v, terms in h_terms.items()},
        )

    def to_model(self) -> CertificateModel:
        zero = SparsePoly.zero(self.field, self.axiom.variables)
        return CertificateModel(
            field=self.field.spec,
            axiom=poly_to_model(self.axiom),
            g=poly_to_model(self.g),
            h=[
                poly_to_model(self.h.get(v, zero))
                for v in range(len(self.axiom.variables))
            ],
        )

    @classmethod
    def from_model(cls, model: CertificateModel) -> "LinRefutation":
        axiom = poly_from_model(model.axiom)
        g = poly_from_model(model.g).with_variables(axiom.variables)
        if len(model.h) not in (0, len(axiom.variables)):
            raise InvalidParameterError(
                f"Expected {len(axiom.variables)} Boolean coefficients, got {len(model.h)}"
            )
        h = {
            v: poly_from_model(hm).with_variables(axiom.variables)
            for v, hm in enumerate(model.h)
        }
        if g.field != axiom.field or any(p.field != axiom.field for p in h.values()):
            raise InvalidParameterError(
                f"Certificate polynomials are not all over {model.field!r}"
            )
        return cls(axiom=axiom, g=g, h={v: p for v, p in h.items() if not p.is_zero()})
