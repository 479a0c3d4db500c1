"""Tests for TM bounds, PD matrices, rank strategies and partition sampling."""

from fractions import Fraction
import random

import pytest

from ipslab.algebra import (
    ExtensionField,
    Monomial,
    MonomialOrder,
    PrimeField,
    RationalField,
    SparsePoly,
    VarPartition,
    VarTable,
)
from ipslab.errors import InvalidParameterError, SizeGuardError, VariableMismatchError
from ipslab.hypercube import boolean_inverse
from ipslab.hypercube.inverse import modular_cube_values
from ipslab.instances import gen_blockwise_binary
from ipslab.measures import (
    IndependentSet,
    alg_rank_lower_bound_via_TM,
    balanced_frequency,
    balanced_partitions,
    create_rank_strategy,
    degree_experiment,
    eval_dim_lower_bound,
    kalorkoti_bound,
    marginal_frequencies,
    modular_pd_rank,
    monomials_alg_independent,
    pd_matrix,
    random_balanced_partition,
    rank_exact,
    rank_mod_p,
    rank_over_function_field,
    symbolic_rank,
    targeted_block_bound,
)
from ipslab.measures.rank import BareissRank, GaussRank, ModularRank, bareiss_rank

XY = VarTable.of(["x1", "x2", "y0", "y1"])
XYT = VarTable.of(["x1", "x2", "y0", "y1", "t"])


def _vars(field, table: VarTable) -> dict[str, SparsePoly]:
    return {name: SparsePoly.var(field, table, name) for name in table.names}


# ============================================================================
# Trailing-monomial bounds
# ============================================================================


def test_tm_bound_skips_constant_coefficients(qq: RationalField) -> None:
    """Test the X-block bound of x1 y0 + x1 y1 + x2 y1 + 1."""
    v = _vars(qq, XY)
    f = v["x1"] * v["y0"] + v["x1"] * v["y1"] + v["x2"] * v["y1"] + 1
    order = MonomialOrder.from_prefixes(XY, "X>Y")

    bound = alg_rank_lower_bound_via_TM(f, [0, 1], order, label="X")

    assert bound.bound == 2
    assert bound.tm_set == ["y0", "y1"]
    assert bound.coefficients == 2
    assert bound.constant == 1
    assert bound.mode == "full"


def test_tm_bound_drops_repeated_trailing_monomials(qq: RationalField) -> None:
    """Test that the Y-block TMs x1, x1 count once."""
    v = _vars(qq, XY)
    f = v["x1"] * v["y0"] + v["x1"] * v["y1"] + v["x2"] * v["y1"] + 1
    order = MonomialOrder.from_prefixes(XY, "X>Y")

    bound = alg_rank_lower_bound_via_TM(f, [2, 3], order)

    assert bound.bound == 1
    assert bound.coefficients == 2


def test_tm_bound_rejects_foreign_block(qq: RationalField) -> None:
    """Test that block ids must index the polynomial's variables."""
    f = SparsePoly.var(qq, XY, "x1")

    with pytest.raises(VariableMismatchError):
        alg_rank_lower_bound_via_TM(f, [7], MonomialOrder.from_prefixes(XY, "X>Y"))


def test_kalorkoti_sum_on_blockwise_axiom(qq: RationalField) -> None:
    """Test per-block bounds 4, 4, 2 on the n = 4 blockwise axiom itself."""
    instance = gen_blockwise_binary(4, qq)
    f = instance.require_axiom()
    assert instance.partition is not None

    order = MonomialOrder.from_prefixes(f.variables, "X>Y")
    report = kalorkoti_bound(f, instance.partition, order)

    assert [b.label for b in report.blocks] == ["X1", "X2", "Y"]
    assert [b.bound for b in report.blocks] == [4, 4, 2]
    assert sorted(report.blocks[0].tm_set) == ["y0", "y1", "y2", "y3"]
    assert report.total == 10
    assert report.order == "X>Y"


def test_targeted_bound_matches_full_inverse(qq: RationalField) -> None:
    """Test that sub-cube queries find the same TM as decomposing the inverse."""
    table = VarTable.of(["x1", "x2", "x3"])
    x = [SparsePoly.var(qq, table, i) for i in range(3)]
    f = x[0] + 2 * x[1] + 3 * x[2] - 7
    order = MonomialOrder.from_prefixes(table, "X")

    targeted = targeted_block_bound(f, [0], order, label="X1")
    full = alg_rank_lower_bound_via_TM(boolean_inverse(f).g, [0], order, label="X1")

    assert targeted.mode == "targeted"
    assert targeted.tm_set == full.tm_set == ["x2"]
    assert targeted.bound == full.bound == 1


def test_targeted_bound_needs_multilinear_axiom(qq: RationalField) -> None:
    """Test that a non-multilinear axiom is refused."""
    f = SparsePoly.var(qq, XY, "x1") ** 2 - 3

    with pytest.raises(InvalidParameterError, match="multilinear"):
        targeted_block_bound(f, [0], MonomialOrder.from_prefixes(XY, "X>Y"))


def test_monomial_independence(qq: RationalField) -> None:
    """Test independence through exponent vectors."""
    x1, x2, x1x2 = (XY.parse_monomial(m) for m in ("x1", "x2", "x1*x2"))

    assert not monomials_alg_independent([x1, x2, x1x2])
    assert monomials_alg_independent([x1x2, x2])
    chosen = IndependentSet()
    assert chosen.add(x1x2)
    assert chosen.add(x1)
    assert not chosen.add(x2)
    assert len(chosen) == 2


# ============================================================================
# PD matrices and rank
# ============================================================================


def test_pd_matrix_prunes_zero_rows(qq: RationalField) -> None:
    """Test the logical and materialized shapes of M_{X,Y}(x1 y0 + x2 y1)."""
    v = _vars(qq, XY)
    matrix = pd_matrix(v["x1"] * v["y0"] + v["x2"] * v["y1"], [0, 1], [2, 3])

    assert matrix.logical_shape == (4, 4)
    assert matrix.shape == (2, 2)
    assert matrix.pruned
    assert rank_exact(matrix) == 2


def test_pd_matrix_of_product_has_rank_one(f101: PrimeField) -> None:
    """Test that (x1 + x2)(y0 + y1) has rank 1 over F_p."""
    v = _vars(f101, XY)
    f = (v["x1"] + v["x2"]) * (v["y0"] + v["y1"])

    assert rank_exact(pd_matrix(f, [0, 1], [2, 3])) == 1


def test_pd_matrix_validates_parts(qq: RationalField) -> None:
    """Test overlap, stray variable and side-length errors."""
    v = _vars(qq, XY)
    f = v["x1"] * v["y0"] + v["x2"] * v["y1"]

    with pytest.raises(InvalidParameterError, match="overlap"):
        pd_matrix(f, [0, 1], [1, 2, 3])
    with pytest.raises(VariableMismatchError, match="x2"):
        pd_matrix(f, [0], [2, 3])
    with pytest.raises(SizeGuardError):
        pd_matrix(f, [0, 1], [2, 3], max_side=1)


def test_rank_strategy_per_field(
    qq: RationalField, f101: PrimeField, f4: ExtensionField
) -> None:
    """Test that each field type gets its elimination strategy."""
    assert isinstance(create_rank_strategy(qq), BareissRank)
    assert isinstance(create_rank_strategy(f101), ModularRank)
    assert isinstance(create_rank_strategy(f4), GaussRank)


def test_rank_depends_on_characteristic(qq: RationalField) -> None:
    """Test [[1, 2], [3, 4]]: rank 2 over Q, rank 1 mod 2."""
    matrix = [[1, 2], [3, 4]]
    rationals = [[Fraction(a) for a in row] for row in matrix]

    assert create_rank_strategy(qq).rank(rationals) == 2
    assert rank_mod_p(matrix, 2) == 1
    assert rank_mod_p(matrix, 101) == 2
    assert bareiss_rank([[1, 2], [2, 4]]) == 1


def test_rank_over_q_clears_denominators(qq: RationalField) -> None:
    """Test rational rows that are proportional."""
    rows = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3), Fraction(2)]]

    assert create_rank_strategy(qq).rank(rows) == 1


def test_gauss_rank_over_extension(f4: ExtensionField) -> None:
    """Test [[1, z], [z, z^2]] has rank 1 over F_4."""
    z = f4.generator()
    rows = [[f4.one(), z], [z, f4.mul(z, z)]]

    assert create_rank_strategy(f4).rank(rows) == 1


def test_rank_mod_p_rejects_large_prime() -> None:
    """Test the int64 limit on the modulus."""
    with pytest.raises(InvalidParameterError, match="too large"):
        rank_mod_p([[1]], 4_294_967_311)


# ============================================================================
# Evaluation dimension and function-field rank
# ============================================================================


def test_eval_dim_matches_pd_rank(qq: RationalField) -> None:
    """Test that evaluation dimension is bounded by the PD rank, here with equality."""
    v = _vars(qq, XY)
    f = v["x1"] * v["y0"] + v["x2"] * v["y1"] + v["x1"] * v["x2"] * v["y0"] * v["y1"]

    dim = eval_dim_lower_bound(f, [0, 1], [2, 3], [0, 1])
    sampled = eval_dim_lower_bound(f, [0, 1], [2, 3], [0, 1], samples=20, seed=4)

    assert dim == 3
    assert sampled <= dim
    assert dim <= rank_exact(pd_matrix(f, [0, 1], [2, 3]))


@pytest.mark.parametrize("seed", range(50))
def test_eval_dim_never_exceeds_pd_rank(qq: RationalField, seed: int) -> None:
    """Test eval-dim over {0, 1} <= rank M_{X,Y} on random bipartitioned polynomials."""
    rng = random.Random(seed)
    nx, ny = rng.randint(1, 8), rng.randint(1, 8)
    names = [f"x{i}" for i in range(1, nx + 1)] + [f"y{j}" for j in range(ny)]
    table = VarTable.of(names)
    terms = [
        (
            Monomial.from_mask(rng.randrange(1 << (nx + ny))),
            qq.from_int(rng.randint(-4, 4)),
        )
        for _ in range(rng.randint(1, 16))
    ]
    f = SparsePoly.from_terms(qq, table, terms)
    xs, ys = list(range(nx)), list(range(nx, nx + ny))

    dim = eval_dim_lower_bound(f, xs, ys, [0, 1])

    assert dim <= rank_exact(pd_matrix(f, xs, ys))


def test_eval_dim_rejects_overlap(qq: RationalField) -> None:
    """Test that X and Y must be disjoint."""
    with pytest.raises(InvalidParameterError, match="overlap"):
        eval_dim_lower_bound(SparsePoly.var(qq, XY, "x1"), [0, 1], [1, 2], [0, 1])


def test_function_field_rank(qq: RationalField) -> None:
    """Test that t x1 y0 + x2 y1 has rank 2 over Q(t) by both routes."""
    v = _vars(qq, XYT)
    g = v["t"] * v["x1"] * v["y0"] + v["x2"] * v["y1"]

    result = rank_over_function_field(
        g, [0, 1], [2, 3], [4], trials=3, prime=101, seed=1
    )

    assert result.prime == 101
    assert len(result.trials) == 3
    assert result.rank == 2
    assert symbolic_rank(g, [0, 1], [2, 3], [4]) == 2


def test_function_field_rank_discards_single_trials(qq: RationalField) -> None:
    """Test that a denominator vanishing mod p drops only the affected trials."""
    v = _vars(qq, XYT)
    half = SparsePoly.constant(qq, XYT, Fraction(1, 2))
    g = half * v["t"] * v["x1"] * v["y0"] + v["x2"] * v["y1"]

    result = rank_over_function_field(
        g, [0, 1], [2, 3], [4], trials=16, prime=2, seed=3
    )

    assert result.trials
    assert result.discarded > 0
    assert len(result.trials) + result.discarded == 16
    assert set(result.trials) == {1}
    assert result.rank == 1


def test_function_field_rank_rejects_shared_t(qq: RationalField) -> None:
    """Test that T must be disjoint from Y and Z."""
    g = SparsePoly.var(qq, XYT, "t")

    with pytest.raises(InvalidParameterError):
        rank_over_function_field(g, [0, 1], [2, 4], [4])


def test_symbolic_rank_guards(qq: RationalField, f101: PrimeField) -> None:
    """Test the Q-only and T-count guards of the sympy route."""
    table = VarTable.of(["x1", "t1", "t2", "t3", "t4"])
    g = SparsePoly.var(qq, table, "x1")

    with pytest.raises(SizeGuardError):
        symbolic_rank(g, [0], [], [1, 2, 3, 4])
    with pytest.raises(InvalidParameterError, match="needs Q"):
        symbolic_rank(g.to_field(f101), [0], [], [1])


def test_modular_pd_rank_from_value_table(qq: RationalField) -> None:
    """Test that fixing t through the value table gives rank 2, or 1 at t = 0."""
    v = _vars(qq, XYT)
    g = v["t"] * v["x1"] * v["y0"] + v["x2"] * v["y1"]
    support, values = modular_cube_values(g, 101)

    assert modular_pd_rank(values, support, [0, 1], [2, 3], {4: 3}, 101) == 2
    assert modular_pd_rank(values, support, [0, 1], [2, 3], {4: 0}, 101) == 1


# ============================================================================
# Partitions and sampling experiments
# ============================================================================


def test_random_balanced_partition_is_seeded() -> None:
    """Test halves, disjointness and reproducibility."""
    y, z = random_balanced_partition(range(6), 1)

    assert len(y) == len(z) == 3
    assert sorted(y + z) == list(range(6))
    assert random_balanced_partition(range(6), 1) == (y, z)
    with pytest.raises(InvalidParameterError, match="even"):
        random_balanced_partition(range(5), 1)


def test_balanced_partitions_up_to_swap() -> None:
    """Test the three balanced bipartitions of four variables."""
    parts = list(balanced_partitions(range(4)))

    assert parts == [([0, 1], [2, 3]), ([0, 2], [1, 3]), ([0, 3], [1, 2])]


def test_marginal_frequencies_are_near_half() -> None:
    """Test that every variable joins Y about half the time."""
    freqs = marginal_frequencies(range(6), samples=600, seed=0)

    assert set(freqs) == set(range(6))
    assert all(abs(f - 0.5) < 0.15 for f in freqs.values())


def test_balanced_frequency_report() -> None:
    """Test the unconditioned sampler against C(4, 2) / 16."""
    report = balanced_frequency(4, samples=2000, seed=0)

    assert report.expected == pytest.approx(0.375)
    assert abs(report.frequency - report.expected) < 0.05
    with pytest.raises(InvalidParameterError):
        balanced_frequency(5, samples=10)


def test_degree_experiment_respects_bound() -> None:
    """Test the degree experiment on a small extension field."""
    field = ExtensionField(5, 2)

    report = degree_experiment(2, field, sample_size=5, trials=6, seed=0)

    assert report.trials == 6
    assert 0 <= report.failures <= 6
    assert report.bound == pytest.approx(16 / 5)
    assert report.satisfied


def test_degree_experiment_validates_inputs(qq: RationalField) -> None:
    """Test the field type and sample-set checks."""
    with pytest.raises(InvalidParameterError, match="extension field"):
        degree_experiment(2, qq, sample_size=3, trials=1)  # type: ignore[arg-type]
    with pytest.raises(InvalidParameterError, match="between 1 and p"):
        degree_experiment(2, ExtensionField(5, 2), sample_size=6, trials=1)


def test_partition_blocks_feed_kalorkoti(qq: RationalField) -> None:
    """Test a hand-built partition with default labels."""
    v = _vars(qq, XY)
    f = v["x1"] * v["y0"] + v["x1"] * v["y1"] + v["x2"] * v["y1"] + 1

    report = kalorkoti_bound(
        f, VarPartition.of([[0, 1], [2, 3]]), MonomialOrder.from_prefixes(XY, "X>Y")
    )

    assert [b.label for b in report.blocks] == ["X1", "X2"]
    assert report.total == 3
