"""Common containers for generated axiom instances."""

from dataclasses import dataclass, field
from typing import Any

from ipslab.algebra.fields import ExtensionField, Field
from ipslab.algebra.monomials import VarPartition, VarTable
from ipslab.algebra.polynomials import SparsePoly
from ipslab.errors import InvalidParameterError
from ipslab.schemas.polynomial import InstanceDescriptorModel


@dataclass(frozen=True)
class InstanceDescriptor:
    """How an instance was generated: family, sizes, beta and block structure."""

    family: str
    params: dict[str, Any]
    field: Field
    beta: Any
    variables: VarTable
    partition: VarPartition | None = None
    pi_tables: list[dict[str, str]] = field(default_factory=list)
    alphas: list[Any] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_model(self) -> InstanceDescriptorModel:
        blocks = self.partition.names(self.variables) if self.partition else []
        labels = (
            [self.partition.label(i) for i in range(len(self.partition.blocks))]
            if self.partition
            else []
        )
        return InstanceDescriptorModel(
            family=self.family,
            params=self.params,
            field=self.field.spec,
            beta=self.field.format(self.beta),
            blocks=blocks,
            block_labels=labels,
            pi_tables=self.pi_tables,
            alphas=[self.field.format(a) for a in self.alphas],
            notes=self.notes,
        )


@dataclass(frozen=True)
class Instance:
    """A generated axiom. ``axiom`` is None only for unexpanded factored families."""

    axiom: SparsePoly | None
    descriptor: InstanceDescriptor
    factored: Any = None

    @property
    def partition(self) -> VarPartition | None:
        return self.descriptor.partition

    def require_axiom(self) -> SparsePoly:
        if self.axiom is None:
            raise InvalidParameterError(
                f"Family {self.descriptor.family!r} instance is kept factored; expand it first"
            )
        return self.axiom


def default_beta(field: Field, char0_value: int) -> tuple[Any, str]:
    """The shift a family uses by default, with a note describing the rule.

    Characteristic 0 takes the family's integer value; an extension field
    takes the class of z, which lies in no proper subfield. A prime field
    cannot house such a shift.
    """
    if field.characteristic == 0:
        return field.from_int(char0_value), f"beta = {char0_value} (characteristic 0)"
    if isinstance(field, ExtensionField):
        return field.generator(), (
            f"beta = z in F_{field.p}^{field.k} (modulus {list(field.modulus)}), "
            f"outside every proper subfield"
        )
    raise InvalidParameterError(
        f"Field {field.spec!r} has no element outside its prime field; "
        "use an extension field (Fpk:p=..,k=..) or pass beta explicitly",
        valid=["Q", "Fpk:p=<p>,k=<k>"],
    )


def resolve_beta(field: Field, beta: Any) -> Any:
    """Accept an int, a field value or a text form for *beta*."""
    if isinstance(beta, int):
        return field.from_int(beta)
    if isinstance(beta, str):
        return field.parse(beta)
    return beta
