"""ROABPs and their sums: evaluation, extraction, multilinearization, width bounds."""

from ipslab.roabp.constructions import elem_sym_roabp, subset_sum_inverse_roabp
from ipslab.roabp.generators import random_roabp, random_sum_roabp, roabp_variables
from ipslab.roabp.model import Roabp, SumRoabp
from ipslab.roabp.serialization import load_sum, roabp_from_model, roabp_to_model
from ipslab.roabp.weakness import (
    SegmentDecomposition,
    segment_decomposition,
    segment_product_ranks,
    weakness_experiment,
)
from ipslab.roabp.width import cut_ranks, width_lower_bound
from ipslab.roabp.witnesses import MultilinearizedSum, multilinearize_sum_with_witnesses

__all__ = [
    "MultilinearizedSum",
    "Roabp",
    "SegmentDecomposition",
    "SumRoabp",
    "cut_ranks",
    "elem_sym_roabp",
    "load_sum",
    "multilinearize_sum_with_witnesses",
    "random_roabp",
    "random_sum_roabp",
    "roabp_from_model",
    "roabp_to_model",
    "roabp_variables",
    "segment_decomposition",
    "segment_product_ranks",
    "subset_sum_inverse_roabp",
    "weakness_experiment",
    "width_lower_bound",
]
