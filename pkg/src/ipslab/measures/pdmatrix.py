"""Partial derivative matrices ``M_{Y,Z}(f)`` and their exact rank.

Entry ``(m_Y, m_Z)`` is the coefficient of ``m_Y * m_Z`` in ``f``. Only rows
and columns with a nonzero entry are materialized; the dropped ones are zero,
so the rank is that of the full ``2^|Y| x 2^|Z|`` matrix.
"""

from collections.abc import Iterable
from dataclasses import dataclass
import logging
from typing import Any

from ipslab.algebra.fields import Field
from ipslab.algebra.monomials import Monomial, vars_mask
from ipslab.algebra.polynomials import SparsePoly
from ipslab.config import config_int
from ipslab.errors import InvalidParameterError, SizeGuardError, VariableMismatchError
from ipslab.measures.rank import create_rank_strategy

logger = logging.getLogger(__name__)


def _monomial_key(m: Monomial) -> tuple:
    return (m.degree, m.exponents)


@dataclass(frozen=True)
class PDMatrix:
    """A sparsely materialized partial derivative matrix."""

    field: Field
    y_vars: tuple[int, ...]
    z_vars: tuple[int, ...]
    rows: tuple[Monomial, ...]
    cols: tuple[Monomial, ...]
    entries: tuple[tuple[Any, ...], ...]

    @property
    def logical_shape(self) -> tuple[int, int]:
        return 1 << len(self.y_vars), 1 << len(self.z_vars)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    @property
    def pruned(self) -> bool:
        return self.shape != self.logical_shape


def pd_matrix(
    f: SparsePoly,
    y_vars: Iterable[int],
    z_vars: Iterable[int],
    *,
    max_side: int | None = None,
) -> PDMatrix:
    """Build ``M_{Y,Z}(f)``.

    Raises:
        InvalidParameterError: If Y and Z overlap.
        VariableMismatchError: If *f* depends on a variable outside Y and Z.
        SizeGuardError: If |Y| or |Z| exceeds ``pd-max-side``.
    """
    ys, zs = tuple(sorted(set(y_vars))), tuple(sorted(set(z_vars)))
    if set(ys) & set(zs):
        raise InvalidParameterError(f"Y and Z overlap in {sorted(set(ys) & set(zs))!r}")
    limit = config_int("pd-max-side", max_side)
    if max(len(ys), len(zs)) > limit:
        raise SizeGuardError(
            f"PD matrix side {max(len(ys), len(zs))!r} exceeds the limit {limit}"
        )
    y_mask = vars_mask(ys)
    stray = f.support_mask & ~(y_mask | vars_mask(zs))
    if stray:
        name = f.variables.name((stray & -stray).bit_length() - 1)
        raise VariableMismatchError(f"Variable {name!r} is in neither Y nor Z")
    cells: dict[tuple[Monomial, Monomial], Any] = {}
    for m, c in f.terms.items():
        cells[m.split(y_mask)] = c
    rows = sorted({r for r, _ in cells}, key=_monomial_key)
    cols = sorted({c for _, c in cells}, key=_monomial_key)
    zero = f.field.zero()
    entries = tuple(tuple(cells.get((r, c), zero) for c in cols) for r in rows)
    return PDMatrix(f.field, ys, zs, tuple(rows), tuple(cols), entries)


def rank_exact(matrix: PDMatrix) -> int:
    """Exact rank with the strategy of the matrix's field."""
    if not matrix.rows:
        return 0
    rank = create_rank_strategy(matrix.field).rank(matrix.entries)
    logger.debug("Rank of %dx%d PD matrix: %d", *matrix.shape, rank)
    return rank
