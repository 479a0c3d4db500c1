"""JSON schemas for polynomials and instance descriptors."""

from typing import Any

from pydantic import BaseModel, Field


class TermModel(BaseModel):
    """One term of a sparse polynomial."""

    coeff: str = Field(
        description='Coefficient in the field\'s text form: "num/den", "3" or "[c0,c1,...]".'
    )
    mono: dict[str, int] = Field(
        default_factory=dict,
        description="Variable name -> positive exponent; empty for the constant term.",
    )


class PolynomialModel(BaseModel):
    """A sparse polynomial with its field and variable universe."""

    field: str = Field(
        description='Field spec string, e.g. "Q", "Fp:65537", "Fpk:p=2,k=2".'
    )
    modulus: list[int] | None = Field(
        default=None,
        description="Ascending modulus coefficients of an extension field (echoed back).",
    )
    vars: list[str] = Field(
        description="Ordered variable universe; position is the variable id."
    )
    terms: list[TermModel] = Field(
        default_factory=list,
        description="Nonzero terms in ascending graded order; empty for the zero polynomial.",
    )


class InstanceDescriptorModel(BaseModel):
    """Sidecar describing how an axiom instance was generated."""

    family: str = Field(
        description="Family tag, e.g. blockwise, smconst, subset, quadratic."
    )
    params: dict[str, Any] = Field(
        default_factory=dict, description="Size parameters (n, c, d, p, k, ...)."
    )
    field: str = Field(description="Spec of the field the instance lives in.")
    beta: str = Field(description="The shift beta in the field's text form.")
    blocks: list[list[str]] = Field(
        default_factory=list, description="Variable blocks of the family's partition."
    )
    block_labels: list[str] = Field(
        default_factory=list, description="One label per block."
    )
    pi_tables: list[dict[str, str]] = Field(
        default_factory=list,
        description="For the set-multilinear family: X-monomial -> Y-variable per k.",
    )
    alphas: list[str] = Field(
        default_factory=list,
        description="Scaling vector for the scaled quadratic family.",
    )
    notes: list[str] = Field(
        default_factory=list, description="Readings and rules the generator applied."
    )
