"""Conversion between ROABPs and their JSON models."""

from pathlib import Path

from pydantic import ValidationError

from ipslab.algebra.monomials import VarTable
from ipslab.algebra.serialization import field_from_spec
from ipslab.roabp.model import Roabp, SumRoabp
from ipslab.schemas.roabp import LayerModel, RoabpModel, SumRoabpModel


def roabp_to_model(a: Roabp) -> RoabpModel:
    fmt = a.field.format
    modulus = getattr(a.field, "modulus", None)
    return RoabpModel(
        field=a.field.spec,
        modulus=list(modulus) if modulus else None,
        vars=list(a.variables.names),
        order=[a.variables.name(v) for v in a.order],
        layers=[
            LayerModel(
                rows=len(layer),
                cols=len(layer[0]),
                labels=[[[fmt(c) for c in label] for label in row] for row in layer],
            )
            for layer in a.layers
        ],
    )


def roabp_from_model(model: RoabpModel) -> Roabp:
    field = field_from_spec(model.field, model.modulus)
    table = VarTable.of(model.vars if model.vars is not None else model.order)
    layers = tuple(
        tuple(
            tuple(tuple(field.parse(str(c)) for c in label) for label in row)
            for row in layer.labels
        )
        for layer in model.layers
    )
    return Roabp(field, table, tuple(table.ids(model.order)), layers)


def sum_to_model(a: SumRoabp) -> SumRoabpModel:
    return SumRoabpModel(members=[roabp_to_model(m) for m in a.members])


def sum_from_model(model: SumRoabpModel) -> SumRoabp:
    return SumRoabp(tuple(roabp_from_model(m) for m in model.members))


def load_sum(path: Path) -> SumRoabp:
    """Read a sum of ROABPs; a file holding a single ROABP is a one-member sum."""
    text = path.read_text()
    try:
        return sum_from_model(SumRoabpModel.model_validate_json(text))
    except ValidationError:
        return SumRoabp((roabp_from_model(RoabpModel.model_validate_json(text)),))


def dump_sum(a: SumRoabp, path: Path) -> None:
    path.write_text(sum_to_model(a).model_dump_json(indent=2, exclude_none=True) + "\n")
