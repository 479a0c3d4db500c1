"""Trailing-monomial bounds on algebraic rank and the Kalorkoti partition sum.

For a block ``S`` write ``f = sum_m m * f_m`` over monomials ``m`` in ``S``. If
the trailing monomials of some ``f_m`` are algebraically independent, so are
those ``f_m``. Constants do not change algebraic rank, so each ``f_m`` is
stripped of its constant term first and constant ``f_m`` are skipped.
"""

from collections.abc import Iterable
from itertools import combinations
import logging

from ipslab.algebra.monomials import (
    Monomial,
    MonomialOrder,
    VarPartition,
    mask_bits,
    vars_mask,
)
from ipslab.algebra.polynomials import SparsePoly
from ipslab.errors import InvalidParameterError, VariableMismatchError
from ipslab.hypercube.inverse import coeff_on_support
from ipslab.measures.independence import IndependentSet
from ipslab.schemas.reports import BlockBound, MeasureReport

logger = logging.getLogger(__name__)


def _check_block(f: SparsePoly, block: Iterable[int]) -> list[int]:
    ids = sorted(set(block))
    if ids and (ids[0] < 0 or ids[-1] >= len(f.variables)):
        raise VariableMismatchError(
            f"Block {ids!r} is not over the polynomial's variables"
        )
    return ids


def coefficient_trailing_monomials(
    f: SparsePoly, block: Iterable[int], order: MonomialOrder
) -> tuple[list[Monomial], int]:
    """TMs of the constant-free coefficients ``f_m``, ascending in *order*.

    Returns:
        The trailing monomials (one per non-constant ``f_m``, duplicates kept)
        and the number of constant ``f_m`` that were skipped.
    """
    ids = _check_block(f, block)
    tms = []
    constant = 0
    for coeff in f.coeff_decompose(ids).values():
        body = {m: c for m, c in coeff.terms.items() if not m.is_one()}
        if not body:
            constant += 1
            continue
        tms.append(min(body, key=order.key))
    return sorted(tms, key=order.key), constant


def greedy_independent(monomials: Iterable[Monomial]) -> list[Monomial]:
    chosen = IndependentSet()
    for m in monomials:
        chosen.add(m)
    return chosen.members


def alg_rank_lower_bound_via_TM(
    f: SparsePoly, block: Iterable[int], order: MonomialOrder, *, label: str = ""
) -> BlockBound:
    """Certified lower bound on the algebraic rank of *f* over *block*.

    The bound is the size of a greedy independent subset of the trailing
    monomials of the coefficients ``f_m``, taken in ascending order.
    """
    ids = _check_block(f, block)
    tms, constant = coefficient_trailing_monomials(f, ids, order)
    kept = greedy_independent(tms)
    return BlockBound(
        label=label,
        variables=[f.variables.name(v) for v in ids],
        bound=len(kept),
        tm_set=[f.variables.format_monomial(m) for m in kept],
        coefficients=len(tms),
        constant=constant,
    )


def _block_parts(f: SparsePoly, block_mask: int) -> list[int]:
    parts = {0}
    for m in f.terms:
        part = m.mask & block_mask
        if part:
            parts.add(part)
    return sorted(parts, key=lambda mask: (mask.bit_count(), mask))


def targeted_block_bound(
    f: SparsePoly,
    block: Iterable[int],
    order: MonomialOrder,
    *,
    label: str = "",
    max_degree: int = 2,
    max_support: int | None = None,
) -> BlockBound:
    """The TM bound for one block of the cube inverse of the axiom *f*.

    ``g`` is never formed. For every block part ``m`` of an axiom monomial
    (and for ``m = 1``) the coefficients of ``m * u`` in ``g`` are queried on
    sub-cubes for monomials ``u`` outside the block, degree by degree; the
    smallest nonzero ``u`` of the first degree that has one is the trailing
    monomial of the constant-free ``g_m``. Parts with nothing up to
    *max_degree* are counted as skipped.
    """
    ids = _check_block(f, block)
    if not f.is_multilinear():
        raise InvalidParameterError("Targeted queries need a multilinear axiom")
    block_mask = vars_mask(ids)
    candidates = [v for v in f.support_vars() if not block_mask >> v & 1]
    tms = []
    skipped = 0
    for part in _block_parts(f, block_mask):
        base = list(mask_bits(part))
        tm = None
        for degree in range(1, max_degree + 1):
            found = [
                Monomial.from_mask(vars_mask(combo))
                for combo in combinations(candidates, degree)
                if not f.field.is_zero(
                    coeff_on_support(f, base + list(combo), max_support=max_support)
                )
            ]
            if found:
                tm = min(found, key=order.key)
                break
        if tm is None:
            skipped += 1
            logger.debug(
                "No trailing monomial up to degree %d for part %#x", max_degree, part
            )
            continue
        tms.append(tm)
    tms.sort(key=order.key)
    kept = greedy_independent(tms)
    return BlockBound(
        label=label,
        variables=[f.variables.name(v) for v in ids],
        bound=len(kept),
        tm_set=[f.variables.format_monomial(m) for m in kept],
        coefficients=len(tms),
        constant=skipped,
        mode="targeted",
    )


def build_measure_report(
    blocks: list[BlockBound], order: MonomialOrder
) -> MeasureReport:
    return MeasureReport(
        order=order.label, blocks=blocks, total=sum(b.bound for b in blocks)
    )


def kalorkoti_bound(
    f: SparsePoly, partition: VarPartition, order: MonomialOrder
) -> MeasureReport:
    """Per-block TM bounds over *partition* and their raw sum."""
    blocks = [
        alg_rank_lower_bound_via_TM(f, block, order, label=partition.label(i))
        for i, block in enumerate(partition.blocks)
    ]
    report = build_measure_report(blocks, order)
    logger.info("Kalorkoti sum over %d blocks: %d", len(blocks), report.total)
    return report
