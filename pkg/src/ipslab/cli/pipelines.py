"""End-to-end experiments that chain generators, inverses and measures.

Each pipeline returns its report model together with the plot-ready CSV rows.
Reports carry raw quantities and the exact inequalities they were compared
against; they never claim more than was computed.
"""

from dataclasses import dataclass
import logging
from math import log2, sqrt
from typing import Literal

from pydantic import BaseModel

from ipslab.algebra.fields import ExtensionField, Field, PrimeField, RationalField
from ipslab.algebra.monomials import Monomial, MonomialOrder, VarPartition, vars_mask
from ipslab.algebra.polynomials import SparsePoly
from ipslab.config import config_int, default_prime
from ipslab.errors import InternalInvariantError, InvalidParameterError, SizeGuardError
from ipslab.hypercube import (
    boolean_inverse,
    check_support_containment,
    check_zero_coeff_rule,
    modular_inverse_values,
    scan_zero_coefficients,
)
from ipslab.instances import (
    Instance,
    gen_blockwise_binary,
    gen_quadratic_subset_sum,
    gen_scaled_quadratic,
    gen_setmultilinear_constdeg,
    gen_vector_invariant,
    threshold_k,
)
from ipslab.measures import (
    balanced_frequency,
    balanced_partitions,
    kalorkoti_bound,
    marginal_frequencies,
    modular_pd_rank,
    random_balanced_partition,
    rank_over_function_field,
    targeted_block_bound,
)
from ipslab.measures.kalorkoti import build_measure_report
from ipslab.roabp import (
    SumRoabp,
    random_sum_roabp,
    roabp_variables,
    weakness_experiment,
)
from ipslab.schemas.reports import (
    BlockwiseReport,
    ConstDegReport,
    HardRankReport,
    PartitionRank,
    ZeroRuleSummary,
)
from ipslab.schemas.roabp import WeaknessPipelineReport
from ipslab.utils.report_csv import CsvRow
from ipslab.utils.seeds import derive_rng, derive_seed

logger = logging.getLogger(__name__)

HardFamily = Literal["quadratic", "scaled", "vecinv"]


@dataclass(frozen=True)
class PipelineOutput:
    report: BaseModel
    rows: list[CsvRow]


def _x_blocks(partition: VarPartition) -> list[tuple[str, list[int]]]:
    return [
        (partition.label(i), sorted(block))
        for i, block in enumerate(partition.blocks)
        if partition.label(i).startswith("X")
    ]


# ============================================================================
# Blockwise family
# ============================================================================


def _sampled_zero_rule(f: SparsePoly, samples: int, seed: int) -> ZeroRuleSummary:
    """Check the zero rule on random small monomials over the support of *f*."""
    rng = derive_rng(seed, "zero-rule")
    support = f.support_vars()
    forced = 0
    violations = []
    for _ in range(samples):
        size = rng.randint(1, min(4, len(support)))
        m = Monomial.from_mask(vars_mask(rng.sample(support, size)))
        try:
            result = check_zero_coeff_rule(f, m)
        except InternalInvariantError:
            violations.append(f.variables.format_monomial(m))
            forced += 1
            continue
        forced += result.is_forced_zero
    return ZeroRuleSummary(scanned=samples, forced_zero=forced, violations=violations)


def run_blockwise(
    n: int,
    field: Field,
    *,
    seed: int = 0,
    samples: int = 64,
    max_vars: int | None = None,
) -> PipelineOutput:
    """Blockwise lower-bound ingredients: containment, zero rule and TM bounds.

    The full inverse is interpolated when the support fits the exhaustive
    limit; otherwise every quantity comes from targeted sub-cube queries and
    only the X blocks are measured.
    """
    instance = gen_blockwise_binary(n, field)
    f = instance.require_axiom()
    partition = instance.partition
    assert partition is not None
    order = MonomialOrder.from_prefixes(f.variables, "X>Y")
    containment = check_support_containment(f)
    x_labels = {label for label, _ in _x_blocks(partition)}
    if len(f.support_vars()) <= config_int("max-vars", max_vars):
        mode: Literal["full", "targeted"] = "full"
        scan = scan_zero_coefficients(f, max_vars=max_vars)
        zero_rule = ZeroRuleSummary(
            scanned=scan.scanned,
            forced_zero=scan.forced_zero,
            violations=scan.violations,
        )
        g = boolean_inverse(f, max_vars=max_vars).g
        measure = kalorkoti_bound(g, partition, order)
    else:
        mode = "targeted"
        zero_rule = _sampled_zero_rule(f, samples, seed)
        blocks = [
            targeted_block_bound(f, ids, order, label=label)
            for label, ids in _x_blocks(partition)
        ]
        measure = build_measure_report(blocks, order)
    tm_independent = [
        b.bound == b.coefficients for b in measure.blocks if b.label in x_labels
    ]
    report = BlockwiseReport(
        n=n,
        field=field.spec,
        mode=mode,
        containment_ok=containment.all_present and containment.all_match,
        zero_rule=zero_rule,
        tm_independent=tm_independent,
        measure=measure,
        target=n * n / log2(n),
    )
    logger.info(
        "Blockwise pipeline n=%d (%s): Kalorkoti sum %d", n, mode, measure.total
    )
    rows = [
        CsvRow("blockwise", n, field.spec, seed, f"alg_rank_tm[{b.label}]", b.bound)
        for b in measure.blocks
    ]
    rows += [
        CsvRow(
            "blockwise", n, field.spec, seed, "kalorkoti_sum",
            measure.total, report.target, measure.total >= report.target,
        ),
        CsvRow(
            "blockwise", n, field.spec, seed, "containment",
            report.containment_ok, None, report.containment_ok,
        ),
        CsvRow(
            "blockwise", n, field.spec, seed, "zero_rule_violations",
            len(zero_rule.violations), 0, not zero_rule.violations,
        ),
    ]
    return PipelineOutput(report, rows)


# ============================================================================
# Set-multilinear family
# ============================================================================


def run_constdeg(
    n: int, c: int, field: Field, *, seed: int | None = None
) -> PipelineOutput:
    """Targeted TM bound per column group; each should be ``n^2``.

    Only degree-1 cofactors are searched: the part ``m = 1`` has no cofactor
    below degree ``c + 1`` and is skipped.
    """
    instance = gen_setmultilinear_constdeg(n, c, field, seed=seed)
    f = instance.require_axiom()
    partition = instance.partition
    assert partition is not None
    order = MonomialOrder.from_prefixes(f.variables, "X>Y")
    pi_tables = instance.descriptor.pi_tables
    blocks = []
    matches = []
    for k, (label, ids) in enumerate(_x_blocks(partition)):
        bound = targeted_block_bound(f, ids, order, label=label, max_degree=1)
        blocks.append(bound)
        matches.append(set(bound.tm_set) == set(pi_tables[k].values()))
    measure = build_measure_report(blocks, order)
    report = ConstDegReport(
        n=n, c=c, field=field.spec, tm_matches_pi=matches, measure=measure
    )
    logger.info(
        "constdeg n=%d c=%d: %d blocks, sum %d", n, c, len(blocks), measure.total
    )
    rows = [
        CsvRow(
            "smconst", n, field.spec, seed, f"alg_rank_tm[{b.label}]",
            b.bound, n * n, b.bound >= n * n,
        )
        for b in blocks
    ]
    rows.append(CsvRow("smconst", n, field.spec, seed, "kalorkoti_sum", measure.total))
    return PipelineOutput(report, rows)


# ============================================================================
# Hard inverses over F(T)
# ============================================================================


def _truncate(g: SparsePoly, degree: int) -> SparsePoly:
    kept = {m: c for m, c in g.terms.items() if m.degree <= degree}
    return SparsePoly(g.field, g.variables, kept)


def _exact_ranks(
    instance: Instance,
    *,
    trials: int | None,
    prime: int | None,
    seed: int,
    truncate_degree: int | None,
    max_vars: int | None,
) -> tuple[list[PartitionRank], int | None]:
    f = instance.require_axiom()
    partition = instance.partition
    assert partition is not None
    x_vars, t_vars = (sorted(b) for b in partition.blocks)
    g = boolean_inverse(f, max_vars=max_vars).g
    if truncate_degree is not None:
        g = _truncate(g, truncate_degree)
        logger.info(
            "Truncated the inverse to degree %d: %d terms", truncate_degree, len(g)
        )
    names = f.variables.name
    results = []
    used_prime = None
    for i, (ys, zs) in enumerate(balanced_partitions(x_vars)):
        rank = rank_over_function_field(
            g,
            ys,
            zs,
            t_vars,
            trials=trials,
            prime=prime,
            seed=derive_seed(seed, "partition", i),
        )
        used_prime = rank.prime
        results.append(
            PartitionRank(
                y=[names(v) for v in ys], z=[names(v) for v in zs], rank=rank.rank,
                trials=rank.trials,
            )
        )
    return results, used_prime


def _modular_ranks(
    instance: Instance,
    *,
    trials: int | None,
    prime: int | None,
    seed: int,
    samples: int,
    max_vars: int | None,
) -> tuple[list[PartitionRank], int]:
    f = instance.require_axiom()
    partition = instance.partition
    assert partition is not None
    x_vars, t_vars = (sorted(b) for b in partition.blocks)
    if isinstance(f.field, PrimeField):
        p = f.field.p
    elif isinstance(f.field, RationalField):
        p = prime or default_prime()
    else:
        raise InvalidParameterError(
            f"Modular rank needs Q or a prime field, got {f.field.spec!r}",
            valid=["Q", "Fp:<p>"],
        )
    count = config_int("rank-trials", trials)
    support, values = modular_inverse_values(f, p, max_vars=max_vars)
    names = f.variables.name
    results = []
    for i in range(samples):
        ys, zs = random_balanced_partition(x_vars, derive_seed(seed, "partition", i))
        ranks = []
        for trial in range(count):
            rng = derive_rng(seed, "partition", i, "tau", trial)
            taus = {t: rng.randrange(p) for t in t_vars}
            ranks.append(modular_pd_rank(values, support, ys, zs, taus, p))
        logger.debug("Partition %d: ranks %s", i, ranks)
        results.append(
            PartitionRank(
                y=[names(v) for v in ys], z=[names(v) for v in zs], rank=max(ranks),
                trials=ranks,
            )
        )
    return results, p


def _hard_instance(family: HardFamily, n: int, field: Field, seed: int) -> Instance:
    if family == "quadratic":
        return gen_quadratic_subset_sum(n, field)
    if family == "scaled":
        if isinstance(field, PrimeField):
            field = ExtensionField(field.p, threshold_k(n, field.p) + 1)
        return gen_scaled_quadratic(n, field, seed=seed)
    if family == "vecinv":
        return gen_vector_invariant(n, 2, field)
    raise InvalidParameterError(
        f"Unknown hard family {family!r}", valid=["quadratic", "scaled", "vecinv"]
    )


def run_hard_rank(
    family: HardFamily,
    n: int,
    field: Field,
    *,
    trials: int | None = None,
    prime: int | None = None,
    seed: int = 0,
    samples: int = 8,
    truncate_degree: int | None = None,
    max_vars: int | None = None,
) -> PipelineOutput:
    """Minimum over balanced partitions of X of the PD rank of ``g`` over ``F(T)``.

    Small instances enumerate every balanced partition on the exact inverse.
    The quadratic family at ``n = 3`` samples *samples* partitions and works
    on the inverse's value table mod a prime. A prime field passed for the
    scaled family is widened to its threshold extension.

    Raises:
        SizeGuardError: Beyond the desk-scale sizes of each family.
    """
    limit = {"quadratic": 3, "scaled": 2, "vecinv": 1}.get(family, 0)
    if n > limit:
        raise SizeGuardError(
            f"Hard-rank pipeline for {family!r} supports n <= {limit}, got {n}"
        )
    instance = _hard_instance(family, n, field, seed)
    spec = instance.descriptor.field.spec
    if family == "quadratic" and n == 3:
        if truncate_degree is not None:
            raise InvalidParameterError("Truncation needs the exact inverse (n <= 2)")
        partitions, used_prime = _modular_ranks(
            instance,
            trials=trials,
            prime=prime,
            seed=seed,
            samples=samples,
            max_vars=max_vars,
        )
    else:
        partitions, used_prime = _exact_ranks(
            instance,
            trials=trials,
            prime=prime,
            seed=seed,
            truncate_degree=truncate_degree,
            max_vars=max_vars,
        )
    target = 1 << n
    min_rank = min(p.rank for p in partitions)
    report = HardRankReport(
        family=family,
        n=n,
        field=spec,
        prime=used_prime,
        partitions=partitions,
        min_rank=min_rank,
        target=target,
        satisfied=min_rank >= target,
    )
    logger.info(
        "%s n=%d: min rank %d over %d partitions", family, n, min_rank, len(partitions)
    )
    rows = [
        CsvRow(
            family, n, spec, seed, f"pd_rank[{' '.join(p.y)}|{' '.join(p.z)}]",
            p.rank, target, p.rank >= target,
        )
        for p in partitions
    ]
    rows.append(
        CsvRow(family, n, spec, seed, "min_rank", min_rank, target, report.satisfied)
    )
    return PipelineOutput(report, rows)


# ============================================================================
# Weakness of sums of ROABPs
# ============================================================================


def _marginal_deviation(n: int, samples: int, seed: int) -> tuple[float, bool]:
    freqs = marginal_frequencies(range(n), samples, seed)
    deviation = max(abs(v - 0.5) for v in freqs.values())
    return deviation, deviation <= 4 * sqrt(0.25 / samples)


def run_weakness(
    field: Field,
    *,
    n: int = 16,
    t: int = 2,
    width: int = 4,
    q: int = 4,
    r: int = 4,
    trials: int = 200,
    seed: int = 0,
    samples: int = 2000,
    roabps: SumRoabp | None = None,
) -> PipelineOutput:
    """Weakness experiment on a seeded random sum (or *roabps*) plus sampler checks."""
    if roabps is None:
        roabps = random_sum_roabp(
            field, roabp_variables(n), t, width=width, degree=1, seed=seed
        )
    size = len(roabps.variables)
    weakness = weakness_experiment(roabps, q, r, trials, seed)
    deviation, marginal_ok = _marginal_deviation(size, samples, seed)
    report = WeaknessPipelineReport(
        weakness=weakness,
        balanced=balanced_frequency(size, samples, seed),
        marginal_max_deviation=deviation,
        marginal_ok=marginal_ok,
    )
    spec = roabps.field.spec
    rows = [
        CsvRow(
            "sum-roabp", size, spec, seed, f"pd_rank[trial={tr.trial}]",
            tr.measured, tr.summand_cap, tr.holds,
        )
        for tr in weakness.trials
    ]
    rows += [
        CsvRow("sum-roabp", size, spec, seed, "eps_mean", weakness.eps_mean),
        CsvRow(
            "sum-roabp", size, spec, seed, "below_half_rank", weakness.below_half_rank
        ),
        CsvRow(
            "sum-roabp", size, spec, seed, "balanced_frequency",
            report.balanced.frequency, report.balanced.expected, report.balanced.within,
        ),
        CsvRow(
            "sum-roabp", size, spec, seed, "marginal_max_deviation",
            deviation, None, marginal_ok,
        ),
    ]
    return PipelineOutput(report, rows)
