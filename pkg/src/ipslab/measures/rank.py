"""Exact matrix rank, one strategy per kind of field.

Strategies follow a small protocol and are picked by :func:`create_rank_strategy`
from the field type: fraction-free (Bareiss) elimination over Q, numpy int64
elimination over F_p and plain Gaussian elimination with field operations for
extension fields.
"""

from collections.abc import Sequence
from fractions import Fraction
from math import lcm
from typing import Any, Protocol

import numpy as np

from ipslab.algebra.fields import ExtensionField, Field, PrimeField, RationalField
from ipslab.errors import InvalidParameterError
from ipslab.hypercube.transforms import NUMPY_MAX_PRIME


class RankStrategy(Protocol):
    """Protocol for exact rank computation over one field."""

    def rank(self, rows: Sequence[Sequence[Any]]) -> int:
        """Rank of the matrix given as a list of rows of field values."""
        ...


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination.

    Every division is exact: after ``k`` steps each live entry is a
    ``(k+1)``-minor of the input.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    previous = 1
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        head = work[rank]
        p = head[col]
        for i in range(rank + 1, len(work)):
            row = work[i]
            a = row[col]
            work[i] = [(p * row[j] - a * head[j]) // previous for j in range(ncols)]
        previous = p
        rank += 1
        if rank == len(work):
            break
    return rank


def rank_mod_p(matrix: Any, p: int) -> int:
    """Rank over F_p of an integer matrix using int64 row operations.

    Raises:
        InvalidParameterError: If ``p * p`` would overflow int64.
    """
    if p > NUMPY_MAX_PRIME:
        raise InvalidParameterError(f"Prime {p!r} too large for int64 elimination")
    m = np.array(matrix, dtype=np.int64) % p
    if m.ndim != 2 or m.size == 0:
        return 0
    nrows, ncols = m.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nonzero = np.flatnonzero(m[rank:, col])
        if nonzero.size == 0:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            m[[rank, pivot]] = m[[pivot, rank]]
        m[rank] = m[rank] * pow(int(m[rank, col]), -1, p) % p
        below = m[rank + 1 :, col]
        hits = np.flatnonzero(below)
        if hits.size:
            idx = rank + 1 + hits
            m[idx] = (m[idx] - np.outer(m[idx, col], m[rank]) % p) % p
        rank += 1
    return rank


class BareissRank:
    """Rank over Q: clear denominators row by row, then Bareiss."""

    def rank(self, rows: Sequence[Sequence[Fraction]]) -> int:
        scaled = []
        for row in rows:
            denominator = lcm(*(Fraction(v).denominator for v in row)) if row else 1
            scaled.append([int(Fraction(v) * denominator) for v in row])
        return bareiss_rank(scaled)


class ModularRank:
    """Rank over F_p: numpy elimination, falling back to Python ints for huge p."""

    def __init__(self, field: PrimeField) -> None:
        self.field = field

    def rank(self, rows: Sequence[Sequence[int]]) -> int:
        if not rows:
            return 0
        if self.field.p <= NUMPY_MAX_PRIME:
            return rank_mod_p(rows, self.field.p)
        return GaussRank(self.field).rank(rows)


class GaussRank:
    """Rank over any field by Gaussian elimination with field operations."""

    def __init__(self, field: Field) -> None:
        self.field = field

    def rank(self, rows: Sequence[Sequence[Any]]) -> int:
        f = self.field
        work = [list(r) for r in rows]
        if not work:
            return 0
        ncols = len(work[0])
        rank = 0
        for col in range(ncols):
            pivot = next(
                (i for i in range(rank, len(work)) if not f.is_zero(work[i][col])), None
            )
            if pivot is None:
                continue
            work[rank], work[pivot] = work[pivot], work[rank]
            head = work[rank]
            inv = f.inv(head[col])
            for i in range(rank + 1, len(work)):
                factor = f.mul(work[i][col], inv)
                if f.is_zero(factor):
                    continue
                work[i] = [f.sub(a, f.mul(factor, b)) for a, b in zip(work[i], head)]
            rank += 1
            if rank == len(work):
                break
        return rank


_STRATEGIES: dict[type, type] = {
    RationalField: BareissRank,
    PrimeField: ModularRank,
    ExtensionField: GaussRank,
}


def create_rank_strategy(field: Field) -> RankStrategy:
    """Create the rank strategy for *field*'s type (Gauss for unknown types)."""
    cls = _STRATEGIES.get(type(field), GaussRank)
    if cls is BareissRank:
        return BareissRank()
    return cls(field)
