"""Exact fields, monomials and sparse polynomials."""

from ipslab.algebra.fields import (
    ExtensionField,
    Field,
    PrimeField,
    RationalField,
    convert,
    create_field,
    find_irreducible,
)
from ipslab.algebra.monomials import (
    Monomial,
    MonomialOrder,
    VarPartition,
    VarTable,
    mask_bits,
    vars_mask,
)
from ipslab.algebra.polynomials import SparsePoly, boolean_axiom, combine_boolean

__all__ = [
    "ExtensionField",
    "Field",
    "Monomial",
    "MonomialOrder",
    "PrimeField",
    "RationalField",
    "SparsePoly",
    "VarPartition",
    "VarTable",
    "boolean_axiom",
    "combine_boolean",
    "convert",
    "create_field",
    "find_irreducible",
    "mask_bits",
    "vars_mask",
]
