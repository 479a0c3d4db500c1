"""Conversion between :class:`SparsePoly` and the JSON polynomial format."""

import json
from pathlib import Path
from typing import Any

from ipslab.algebra.fields import ExtensionField, Field, create_field
from ipslab.algebra.monomials import Monomial, VarTable
from ipslab.algebra.polynomials import SparsePoly
from ipslab.schemas.polynomial import PolynomialModel, TermModel


def field_from_spec(spec: str, modulus: list[int] | None = None) -> Field:
    """Resolve a field spec, honouring an explicit extension modulus."""
    field = create_field(spec)
    extension = isinstance(field, ExtensionField)
    if modulus and extension and tuple(modulus) != field.modulus:
        return ExtensionField(field.p, field.k, tuple(modulus))
    return field


def poly_to_model(f: SparsePoly) -> PolynomialModel:
    """Serialize with terms in ascending graded order (degree, then exponents)."""
    names = f.variables.names
    ordered = sorted(
        f.terms.items(), key=lambda item: (item[0].degree, item[0].exponents)
    )
    terms = [
        TermModel(coeff=f.field.format(c), mono={names[v]: e for v, e in m.exponents})
        for m, c in ordered
    ]
    modulus = getattr(f.field, "modulus", None)
    return PolynomialModel(
        field=f.field.spec,
        modulus=list(modulus) if modulus else None,
        vars=list(names),
        terms=terms,
    )


def poly_from_model(model: PolynomialModel) -> SparsePoly:
    field = field_from_spec(model.field, model.modulus)
    table = VarTable.of(model.vars)
    terms = (
        (
            Monomial.from_dict({table.id(v): e for v, e in t.mono.items()}),
            field.parse(t.coeff),
        )
        for t in model.terms
    )
    return SparsePoly.from_terms(field, table, terms)


def poly_to_dict(f: SparsePoly) -> dict[str, Any]:
    return poly_to_model(f).model_dump(exclude_none=True)


def poly_from_dict(data: dict[str, Any]) -> SparsePoly:
    return poly_from_model(PolynomialModel.model_validate(data))


def dump_poly(f: SparsePoly, path: Path) -> None:
    path.write_text(json.dumps(poly_to_dict(f), indent=2) + "\n")


def load_poly(path: Path) -> SparsePoly:
    return poly_from_model(PolynomialModel.model_validate_json(path.read_text()))
