"""Algebraic independence of monomials via exponent vectors.

Monomials are algebraically independent exactly when their exponent vectors
are linearly independent over Q, so everything here is rational linear algebra
on small integer vectors.
"""

from collections.abc import Iterable
from fractions import Fraction

from ipslab.algebra.monomials import Monomial
from ipslab.measures.rank import bareiss_rank


def exponent_matrix(monomials: Iterable[Monomial]) -> list[list[int]]:
    """Rows are exponent vectors over the union of the monomials' variables."""
    ms = list(monomials)
    columns = sorted(set().union(*(m.support for m in ms))) if ms else []
    return [[m.exponent(v) for v in columns] for m in ms]


def monomials_alg_independent(monomials: Iterable[Monomial]) -> bool:
    ms = list(monomials)
    return bareiss_rank(exponent_matrix(ms)) == len(ms)


class IndependentSet:
    """Greedy independent subset of exponent vectors, kept in echelon form.

    ``add`` keeps a monomial only if its exponent vector is outside the span
    of the ones kept so far.
    """

    def __init__(self) -> None:
        self._rows: dict[int, dict[int, Fraction]] = {}
        self.members: list[Monomial] = []

    def __len__(self) -> int:
        return len(self.members)

    def _reduce(self, m: Monomial) -> dict[int, Fraction]:
        vec = {v: Fraction(e) for v, e in m.exponents}
        while True:
            hits = sorted(v for v in vec if v in self._rows)
            if not hits:
                return vec
            pivot = hits[0]
            factor = vec[pivot]
            for v, c in self._rows[pivot].items():
                value = vec.get(v, 0) - factor * c
                if value:
                    vec[v] = value
                else:
                    vec.pop(v, None)

    def add(self, m: Monomial) -> bool:
        vec = self._reduce(m)
        if not vec:
            return False
        pivot = min(vec)
        scale = vec[pivot]
        row = {v: c / scale for v, c in vec.items()}
        # Clear the new pivot from existing rows so every pivot column is a unit column.
        for other in self._rows.values():
            factor = other.get(pivot)
            if factor:
                for v, c in row.items():
                    value = other.get(v, 0) - factor * c
                    if value:
                        other[v] = value
                    else:
                        other.pop(v, None)
        self._rows[pivot] = row
        self.members.append(m)
        return True
