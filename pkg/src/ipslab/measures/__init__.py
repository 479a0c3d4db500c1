"""Complexity measures: TM-based algebraic rank, PD rank and evaluation dimension."""

from ipslab.measures.degree import degree_experiment
from ipslab.measures.evaldim import eval_dim_lower_bound
from ipslab.measures.function_field import (
    modular_pd_rank,
    rank_over_function_field,
    symbolic_rank,
)
from ipslab.measures.independence import IndependentSet, monomials_alg_independent
from ipslab.measures.kalorkoti import (
    alg_rank_lower_bound_via_TM,
    coefficient_trailing_monomials,
    kalorkoti_bound,
    targeted_block_bound,
)
from ipslab.measures.partitions import (
    balanced_frequency,
    balanced_partitions,
    marginal_frequencies,
    random_balanced_partition,
)
from ipslab.measures.pdmatrix import PDMatrix, pd_matrix, rank_exact
from ipslab.measures.rank import RankStrategy, create_rank_strategy, rank_mod_p

__all__ = [
    "IndependentSet",
    "PDMatrix",
    "RankStrategy",
    "alg_rank_lower_bound_via_TM",
    "balanced_frequency",
    "balanced_partitions",
    "coefficient_trailing_monomials",
    "create_rank_strategy",
    "degree_experiment",
    "eval_dim_lower_bound",
    "kalorkoti_bound",
    "marginal_frequencies",
    "modular_pd_rank",
    "monomials_alg_independent",
    "pd_matrix",
    "random_balanced_partition",
    "rank_exact",
    "rank_mod_p",
    "rank_over_function_field",
    "symbolic_rank",
    "targeted_block_bound",
]
