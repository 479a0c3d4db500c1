"""Segment structure of ROABPs and the weakness experiment.

Cutting a width-``s`` ROABP into ``q`` segments of ``r`` consecutive layers
writes it as a sum of at most ``s^{q-1}`` products ``prod_j g_j`` with ``g_j``
over segment ``j``. For a partition ``(Y, Z)`` each product has PD rank at
most ``prod_j 2^{min(|Y_j|, |Z_j|)}``, so imbalanced segments force low rank.
"""

from dataclasses import dataclass
import logging
from math import sqrt
from statistics import mean

from ipslab.config import config_int
from ipslab.errors import InvalidParameterError
from ipslab.measures.partitions import random_balanced_partition
from ipslab.measures.pdmatrix import pd_matrix, rank_exact
from ipslab.roabp.model import Roabp, SumRoabp
from ipslab.schemas.roabp import WeaknessReport, WeaknessTrial
from ipslab.utils.seeds import derive_seed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SegmentDecomposition:
    q: int
    r: int
    blocks: tuple[tuple[int, ...], ...]
    boundary_widths: tuple[int, ...]


def segment_decomposition(a: Roabp, q: int, r: int) -> SegmentDecomposition:
    """Blocks of ``r`` consecutive variables in the program's order.

    Raises:
        InvalidParameterError: Unless ``q * r = n``.
    """
    if q < 1 or r < 1 or q * r != a.n:
        raise InvalidParameterError(f"Need q * r = n, got q={q!r}, r={r!r}, n={a.n}")
    blocks = tuple(tuple(a.order[j * r : (j + 1) * r]) for j in range(q))
    widths = a.widths
    return SegmentDecomposition(q, r, blocks, tuple(widths[j * r] for j in range(1, q)))


def segment_product_ranks(
    a: Roabp, q: int, r: int, y_vars: set[int], z_vars: set[int]
) -> list[tuple[int, int]]:
    """``(rank M_{Y_j,Z_j}(g_j), 2^{min(|Y_j|,|Z_j|)})`` per width-1 segment."""
    decomposition = segment_decomposition(a, q, r)
    out = []
    for j, block in enumerate(decomposition.blocks):
        g = a.segment_polynomial(j * r, (j + 1) * r)
        ys = [v for v in block if v in y_vars]
        zs = [v for v in block if v in z_vars]
        rank = rank_exact(pd_matrix(g, ys, zs, max_side=r))
        out.append((rank, 1 << min(len(ys), len(zs))))
    return out


def _imbalances(decomposition: SegmentDecomposition, y_vars: set[int]) -> list[float]:
    out = []
    for block in decomposition.blocks:
        in_y = sum(1 for v in block if v in y_vars)
        out.append(abs(in_y - (len(block) - in_y)) / 2)
    return out


def weakness_experiment(
    a: SumRoabp, q: int, r: int, trials: int, seed: int = 0
) -> WeaknessReport:
    """Compare ``rank M_{Y,Z}(A)`` with the segment caps on random balanced partitions.

    Raises:
        InvalidParameterError: If a summand is not multilinear or ``q * r != n``.
    """
    if not all(m.is_multilinear() for m in a.members):
        raise InvalidParameterError(
            "The weakness experiment needs multilinear summands"
        )
    decompositions = [segment_decomposition(m, q, r) for m in a.members]
    table = a.variables
    n = len(table)
    f = a.extract()
    side = config_int("roabp-max-vars")
    widths = [m.width for m in a.members]
    t, s = len(a.members), max(widths)
    threshold = sqrt(r) / 4
    scale = q * sqrt(r) / 4
    results = []
    for trial in range(trials):
        ys, zs = random_balanced_partition(range(n), derive_seed(seed, "trial", trial))
        y_set, z_set = set(ys), set(zs)
        imbalances = [_imbalances(d, y_set) for d in decompositions]
        # sum_j min(|Y_j|, |Z_j|) = n/2 - sum_j imbalance_j
        term_caps = [1 << round(n / 2 - sum(imb)) for imb in imbalances]
        summand_cap = sum(w ** (q - 1) * cap for w, cap in zip(widths, term_caps))
        measured = rank_exact(pd_matrix(f, ys, zs, max_side=side))
        segments_hold = None
        narrow = [m for m in a.members if m.width == 1]
        if narrow:
            segments_hold = all(
                rank <= cap
                for m in narrow
                for rank, cap in segment_product_ranks(m, q, r, y_set, z_set)
            )
        results.append(
            WeaknessTrial(
                trial=trial,
                y=[table.name(v) for v in ys],
                z=[table.name(v) for v in zs],
                imbalances=imbalances,
                d_counts=[sum(1 for x in imb if x <= threshold) for imb in imbalances],
                term_caps=term_caps,
                summand_cap=summand_cap,
                uniform_cap=t * s ** (q - 1) * max(term_caps),
                measured=measured,
                holds=measured <= summand_cap,
                segments_hold=segments_hold,
            )
        )
        logger.debug("Trial %d: rank %d, cap %d", trial, measured, summand_cap)
    eps = [min(sum(imb) for imb in tr.imbalances) / scale for tr in results]
    report = WeaknessReport(
        n=n,
        q=q,
        r=r,
        t=t,
        widths=widths,
        field=a.field.spec,
        seed=seed,
        trials=results,
        all_hold=all(tr.holds for tr in results),
        below_half_rank=(
            sum(1 for tr in results if tr.measured < 1 << (n // 2)) / trials
            if trials
            else 0.0
        ),
        eps_mean=mean(eps) if eps else 0.0,
        eps_min=min(eps, default=0.0),
        d_mean=mean(d for tr in results for d in tr.d_counts) if results else 0.0,
    )
    logger.info("Weakness experiment: %d trials, all hold=%s", trials, report.all_hold)
    return report
