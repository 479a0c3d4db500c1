"""Tests for the end-to-end experiment pipelines."""

import pytest

from ipslab.algebra import ExtensionField, PrimeField, RationalField, create_field
from ipslab.cli.pipelines import (
    run_blockwise,
    run_constdeg,
    run_hard_rank,
    run_weakness,
)
from ipslab.config import default_prime
from ipslab.errors import InvalidParameterError, SizeGuardError
from ipslab.schemas.reports import BlockwiseReport, ConstDegReport, HardRankReport
from ipslab.schemas.roabp import WeaknessPipelineReport

# ============================================================================
# Blockwise lower bound
# ============================================================================


def test_blockwise_pipeline_full_mode_n4(qq: RationalField) -> None:
    """Test the full pipeline at n = 4: every X block has TMs y0..y3."""
    output = run_blockwise(4, qq)
    report = output.report

    assert isinstance(report, BlockwiseReport)
    assert report.mode == "full"
    assert report.containment_ok
    assert report.zero_rule is not None
    assert not report.zero_rule.violations
    x_blocks = [b for b in report.measure.blocks if b.label.startswith("X")]
    assert [b.bound for b in x_blocks] == [4, 4]
    assert all(sorted(b.tm_set) == ["y0", "y1", "y2", "y3"] for b in x_blocks)
    assert report.tm_independent == [True, True]
    assert report.measure.total >= 9
    assert report.target == 8.0


def test_blockwise_pipeline_same_verdicts_over_f4(
    qq: RationalField, f4: ExtensionField
) -> None:
    """Test that F_4 gives the same X-block TM sets and independence verdicts as Q."""
    over_q = run_blockwise(4, qq).report
    over_f4 = run_blockwise(4, f4).report

    def x_tm_sets(report: BlockwiseReport) -> list[list[str]]:
        blocks = report.measure.blocks
        return [sorted(b.tm_set) for b in blocks if b.label.startswith("X")]

    assert over_f4.field == "Fpk:p=2,k=2"
    assert x_tm_sets(over_f4) == x_tm_sets(over_q) == [["y0", "y1", "y2", "y3"]] * 2
    assert over_f4.tm_independent == over_q.tm_independent == [True, True]
    assert over_f4.containment_ok
    assert over_f4.measure.total >= 9


def test_blockwise_pipeline_rows(qq: RationalField) -> None:
    """Test the CSV rows: one per block plus the summary quantities."""
    rows = run_blockwise(4, qq, seed=3).rows

    quantities = [row.quantity for row in rows]
    assert quantities[:3] == ["alg_rank_tm[X1]", "alg_rank_tm[X2]", "alg_rank_tm[Y]"]
    assert quantities[3:] == ["kalorkoti_sum", "containment", "zero_rule_violations"]
    assert all(row.seed == 3 and row.family == "blockwise" for row in rows)


def test_blockwise_pipeline_targeted_mode(qq: RationalField) -> None:
    """Test that a small exhaustive limit switches to sub-cube queries."""
    report = run_blockwise(4, qq, samples=16, max_vars=4).report

    assert report.mode == "targeted"
    assert [b.mode for b in report.measure.blocks] == ["targeted", "targeted"]
    assert [b.bound for b in report.measure.blocks] == [4, 4]
    assert report.zero_rule is not None
    assert report.zero_rule.scanned == 16


# ============================================================================
# Set-multilinear family
# ============================================================================


@pytest.mark.slow
def test_constdeg_smallest_instance(qq: RationalField) -> None:
    """Test that each column group at (n, c) = (4, 4) gets bound n^2 = 16."""
    output = run_constdeg(4, 4, qq)
    report = output.report

    assert isinstance(report, ConstDegReport)
    assert [b.bound for b in report.measure.blocks] == [16, 16]
    assert report.tm_matches_pi == [True, True]
    assert report.measure.total == 32
    assert all(row.satisfied for row in output.rows if row.bound is not None)


# ============================================================================
# Hard inverses
# ============================================================================


def test_quadratic_n1_rank(qq: RationalField) -> None:
    """Test the single balanced partition of the n = 1 quadratic instance."""
    output = run_hard_rank("quadratic", 1, qq, trials=3, seed=0)
    report = output.report

    assert isinstance(report, HardRankReport)
    assert len(report.partitions) == 1
    assert report.min_rank == 2
    assert report.target == 2
    assert report.satisfied
    assert output.rows[-1].quantity == "min_rank"


@pytest.mark.slow
def test_quadratic_n2_rank(qq: RationalField) -> None:
    """Test full rank 4 on all three balanced partitions at n = 2."""
    report = run_hard_rank("quadratic", 2, qq, trials=3, seed=0).report

    assert len(report.partitions) == 3
    assert report.min_rank == 4
    assert report.satisfied


def test_scaled_widens_prime_field() -> None:
    """Test that a prime field is widened to the threshold extension."""
    report = run_hard_rank("scaled", 1, PrimeField(2), trials=2, seed=0).report

    assert report.field == "Fpk:p=2,k=4"
    assert report.prime == 2
    assert len(report.partitions) == 1


def test_hard_rank_size_guards(qq: RationalField) -> None:
    """Test the per-family size limits and the truncation restriction."""
    with pytest.raises(SizeGuardError):
        run_hard_rank("quadratic", 4, qq)
    with pytest.raises(SizeGuardError):
        run_hard_rank("vecinv", 2, qq)
    with pytest.raises(InvalidParameterError, match="Truncation"):
        run_hard_rank("quadratic", 3, qq, truncate_degree=2)


def test_truncated_inverse_rank_is_reported(qq: RationalField) -> None:
    """Test that truncating g keeps the pipeline running with a lower or equal rank."""
    full = run_hard_rank("quadratic", 1, qq, trials=2).report
    truncated = run_hard_rank("quadratic", 1, qq, trials=2, truncate_degree=0).report

    assert truncated.min_rank <= full.min_rank
    assert not truncated.satisfied


# ============================================================================
# Weakness
# ============================================================================


def test_weakness_pipeline_small(qq: RationalField) -> None:
    """Test a four-variable run of the weakness pipeline."""
    output = run_weakness(
        qq, n=4, t=2, width=2, q=2, r=2, trials=3, seed=1, samples=400
    )
    report = output.report

    assert isinstance(report, WeaknessPipelineReport)
    assert report.weakness.all_hold
    assert report.balanced.n == 4
    assert report.marginal_ok
    assert len(output.rows) == 3 + 4
    assert output.rows[-1].quantity == "marginal_max_deviation"


@pytest.mark.slow
def test_weakness_pipeline_full_size() -> None:
    """Test t = 2 width-4 summands on 16 variables, q = r = 4, over 200 trials."""
    field = create_field(f"Fp:{default_prime()}")

    report = run_weakness(
        field, n=16, t=2, width=4, q=4, r=4, trials=200, seed=7
    ).report

    assert len(report.weakness.trials) == 200
    assert all(trial.holds for trial in report.weakness.trials)
    assert report.weakness.all_hold
    assert report.marginal_ok
