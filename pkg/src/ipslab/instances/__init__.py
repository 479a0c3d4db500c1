"""Deterministic generators for the axiom families."""

from ipslab.instances.base import Instance, InstanceDescriptor
from ipslab.instances.blockwise import gen_blockwise_binary, valid_blockwise_sizes
from ipslab.instances.registry import create_instance, family_names
from ipslab.instances.setmultilinear import (
    constdeg_shape,
    gen_setmultilinear_constdeg,
    list_valid_constdeg,
)
from ipslab.instances.subset_sum import (
    elementary_symmetric,
    gen_elem_sym_axiom,
    gen_quadratic_subset_sum,
    gen_scaled_quadratic,
    gen_subset_sum,
    threshold_k,
)
from ipslab.instances.vector_invariant import VectorInvariant, gen_vector_invariant

__all__ = [
    "Instance",
    "InstanceDescriptor",
    "VectorInvariant",
    "constdeg_shape",
    "create_instance",
    "elementary_symmetric",
    "family_names",
    "gen_blockwise_binary",
    "gen_elem_sym_axiom",
    "gen_quadratic_subset_sum",
    "gen_scaled_quadratic",
    "gen_setmultilinear_constdeg",
    "gen_subset_sum",
    "gen_vector_invariant",
    "list_valid_constdeg",
    "threshold_k",
    "valid_blockwise_sizes",
]
