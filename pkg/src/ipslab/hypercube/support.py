"""Which monomials the cube inverse of a sparse axiom can and must contain.

For ``f = sum_i alpha_i m_i - beta`` with pairwise incomparable supports, every
``m_i`` appears in ``g`` with coefficient ``1/(alpha_i - beta) + 1/beta``, and a
multilinear monomial that is not the multilinearized product of some axiom
monomials has coefficient 0.
"""

from dataclasses import dataclass, field
from itertools import combinations
import logging
from typing import Any

from ipslab.algebra.monomials import Monomial, mask_bits
from ipslab.algebra.polynomials import SparsePoly
from ipslab.config import config_int
from ipslab.errors import (
    IncomparabilityError,
    InternalInvariantError,
    InvalidParameterError,
    SizeGuardError,
)
from ipslab.hypercube.inverse import boolean_inverse, coeff_on_support

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ContainmentEntry:
    monomial: str
    alpha: str
    coefficient: str
    expected: str
    nonzero: bool
    matches: bool


@dataclass(frozen=True)
class ContainmentReport:
    """Per-monomial coefficients of the axiom's monomials in its inverse."""

    beta: str
    entries: list[ContainmentEntry] = field(default_factory=list)

    @property
    def all_present(self) -> bool:
        return all(e.nonzero for e in self.entries)

    @property
    def all_match(self) -> bool:
        return all(e.matches for e in self.entries)


@dataclass(frozen=True)
class ZeroRuleResult:
    monomial: str
    is_forced_zero: bool
    verified_value: Any


@dataclass(frozen=True)
class ZeroScanReport:
    """Exhaustive scan of all multilinear monomials over the axiom's variables."""

    scanned: int
    reachable: int
    forced_zero: int
    violations: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations


def _axiom_supports(f: SparsePoly) -> list[Monomial]:
    if not f.is_multilinear():
        raise InvalidParameterError("Support rules need a multilinear axiom")
    return sorted(
        (m for m in f.terms if not m.is_one()), key=lambda m: (m.degree, m.exponents)
    )


def check_incomparable(f: SparsePoly) -> None:
    """Raise unless no monomial support of *f* is contained in another's.

    Raises:
        IncomparabilityError: Naming the first nested pair found.
    """
    for a, b in combinations(_axiom_supports(f), 2):
        if a.mask & b.mask == a.mask:
            pair = (f.variables.format_monomial(a), f.variables.format_monomial(b))
            raise IncomparabilityError(
                f"Support of {pair[0]!r} is contained in support of {pair[1]!r}", pair
            )


def check_support_containment(f: SparsePoly) -> ContainmentReport:
    """Confirm every axiom monomial has the closed-form nonzero coefficient in ``g``.

    Raises:
        IncomparabilityError: If two monomials of *f* have nested supports.
    """
    check_incomparable(f)
    fd = f.field
    beta = fd.neg(f.constant_term())
    entries = []
    for m in _axiom_supports(f):
        alpha = f.terms[m]
        value = coeff_on_support(f, mask_bits(m.mask))
        expected = fd.add(fd.inv(fd.sub(alpha, beta)), fd.inv(beta))
        entries.append(
            ContainmentEntry(
                monomial=f.variables.format_monomial(m),
                alpha=fd.format(alpha),
                coefficient=fd.format(value),
                expected=fd.format(expected),
                nonzero=not fd.is_zero(value),
                matches=value == expected,
            )
        )
    report = ContainmentReport(beta=fd.format(beta), entries=entries)
    logger.info(
        "Support containment: %d monomials, all present=%s",
        len(entries),
        report.all_present,
    )
    return report


def is_product_support(axiom_masks: list[int], target: int) -> bool:
    """Whether *target* is the union of the supports of some axiom monomials.

    A union equal to *target* can only use supports inside *target*, and using
    all of them is never worse, so one pass decides it.
    """
    union = 0
    for mask in axiom_masks:
        if mask & target == mask:
            union |= mask
    return union == target


def reachable_supports(axiom_masks: list[int], limit: int | None = None) -> set[int]:
    """All unions of axiom supports (the empty union included)."""
    reach = {0}
    for mask in axiom_masks:
        reach |= {r | mask for r in reach}
        if limit is not None and len(reach) > limit:
            raise SizeGuardError(f"Reachable-support closure exceeds {limit} entries")
    return reach


def check_zero_coeff_rule(f: SparsePoly, m: Monomial) -> ZeroRuleResult:
    """Decide whether *m* is forced to have coefficient 0 in ``g`` and confirm it.

    Raises:
        InternalInvariantError: If a forced-zero monomial has a nonzero coefficient.
    """
    masks = [a.mask for a in _axiom_supports(f)]
    forced = not is_product_support(masks, m.mask)
    value = coeff_on_support(f, mask_bits(m.mask))
    if forced and not f.field.is_zero(value):
        raise InternalInvariantError(
            f"Monomial {f.variables.format_monomial(m)!r} is not a product of axiom "
            f"monomials but has coefficient {f.field.format(value)!r}"
        )
    return ZeroRuleResult(
        monomial=f.variables.format_monomial(m),
        is_forced_zero=forced,
        verified_value=value,
    )


def scan_zero_coefficients(
    f: SparsePoly, *, max_vars: int | None = None
) -> ZeroScanReport:
    """Check the zero rule against the full inverse for every multilinear monomial."""
    support = f.support_vars()
    limit = config_int("max-vars", max_vars)
    if len(support) > limit:
        raise SizeGuardError(f"Zero scan over {len(support)} variables exceeds {limit}")
    g = boolean_inverse(f, max_vars=max_vars).g
    masks = [a.mask for a in _axiom_supports(f)]
    reach = reachable_supports(masks)
    violations = []
    forced = 0
    scanned = 0
    for local in range(1 << len(support)):
        target = 0
        for i in mask_bits(local):
            target |= 1 << support[i]
        scanned += 1
        if target in reach:
            continue
        forced += 1
        coeff = g.coefficient(Monomial.from_mask(target))
        if not f.field.is_zero(coeff):
            violations.append(f.variables.format_monomial(Monomial.from_mask(target)))
    return ZeroScanReport(
        scanned=scanned, reachable=len(reach), forced_zero=forced, violations=violations
    )
