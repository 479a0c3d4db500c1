"""Lower bounds on PD rank over the function field F(T) by random evaluation.

Substituting values for ``T`` is a ring map, so the rank can only drop: the
maximum over trials is a certified lower bound on the rank over ``F(T)``.
"""

from collections.abc import Iterable, Sequence
import logging

import numpy as np
import sympy

from ipslab.algebra.fields import PrimeField, RationalField
from ipslab.algebra.monomials import vars_mask
from ipslab.algebra.polynomials import SparsePoly
from ipslab.config import config_int, default_prime
from ipslab.errors import FieldDivisionError, InvalidParameterError, SizeGuardError
from ipslab.hypercube.transforms import check_numpy_prime, extend_bit_mod, mobius_mod
from ipslab.measures.pdmatrix import pd_matrix, rank_exact
from ipslab.measures.rank import rank_mod_p
from ipslab.schemas.reports import FunctionFieldRank
from ipslab.utils.seeds import derive_rng

logger = logging.getLogger(__name__)


def rank_over_function_field(
    g: SparsePoly,
    y_vars: Iterable[int],
    z_vars: Iterable[int],
    t_vars: Iterable[int],
    *,
    trials: int | None = None,
    prime: int | None = None,
    seed: int = 0,
) -> FunctionFieldRank:
    """Max over trials of ``rank M_{Y,Z}(g(X, tau))`` for random ``tau``.

    A polynomial over Q is reduced modulo *prime* (default: the configured
    prime) after substituting integer values; a trial whose reduction hits a
    vanishing denominator is discarded on its own. Over a finite field the
    values are drawn from that field.
    """
    ys, zs, ts = sorted(set(y_vars)), sorted(set(z_vars)), sorted(set(t_vars))
    if set(ts) & (set(ys) | set(zs)):
        raise InvalidParameterError("T-variables must be disjoint from Y and Z")
    count = config_int("rank-trials", trials)
    if isinstance(g.field, RationalField):
        p = prime or default_prime()
        modular = PrimeField(p)
    else:
        p = g.field.characteristic
        modular = None
    ranks = []
    discarded = 0
    for trial in range(count):
        rng = derive_rng(seed, "tau", trial)
        if modular is None:
            specialized = g.partial_evaluate({t: g.field.random(rng) for t in ts})
        else:
            taus = {t: g.field.from_int(modular.random(rng)) for t in ts}
            try:
                specialized = g.partial_evaluate(taus).to_field(modular)
            except FieldDivisionError:
                discarded += 1
                logger.debug("Trial %d: a denominator vanishes mod %d", trial, p)
                continue
        ranks.append(rank_exact(pd_matrix(specialized, ys, zs)))
        logger.debug("Trial %d: rank %d", trial, ranks[-1])
    if discarded:
        logger.warning(
            "Discarded %d of %d trials on a denominator vanishing mod %d",
            discarded,
            count,
            p,
        )
    return FunctionFieldRank(
        prime=p, trials=ranks, discarded=discarded, rank=max(ranks, default=0)
    )


def _subset_masks(bits: Sequence[int]) -> np.ndarray:
    masks = np.zeros(1, dtype=np.int64)
    for b in bits:
        masks = np.concatenate([masks, masks | (1 << b)])
    return masks


def modular_pd_rank(
    values: np.ndarray,
    support: Sequence[int],
    y_vars: Iterable[int],
    z_vars: Iterable[int],
    taus: dict[int, int],
    p: int,
) -> int:
    """PD rank of ``g(X, tau)`` straight from the value table of ``g`` mod *p*.

    *values* holds ``g`` at every point of the *support* cube (local bit ``i``
    is ``support[i]``). Each T-coordinate is fixed at its ``tau`` by
    multilinear extension, then the X table is Möbius-transformed into
    coefficients and indexed by ``m_Y | m_Z``.
    """
    check_numpy_prime(p)
    table = np.array(values, dtype=np.int64, copy=True)
    position = {v: i for i, v in enumerate(support)}
    t_bits = sorted((position[t] for t in taus if t in position), reverse=True)
    for bit in t_bits:
        table = extend_bit_mod(table, bit, taus[support[bit]], p)
    remaining = [v for v in support if v not in taus]
    local = {v: i for i, v in enumerate(remaining)}
    coeffs = mobius_mod(table, p)
    rows = _subset_masks([local[v] for v in sorted(set(y_vars)) if v in local])
    cols = _subset_masks([local[v] for v in sorted(set(z_vars)) if v in local])
    stray = set(remaining) - set(y_vars) - set(z_vars)
    if stray:
        raise InvalidParameterError(
            f"Support variables {sorted(stray)!r} are in neither Y nor Z"
        )
    return rank_mod_p(coeffs[rows[:, None] | cols[None, :]], p)


def symbolic_rank(
    g: SparsePoly, y_vars: Iterable[int], z_vars: Iterable[int], t_vars: Iterable[int]
) -> int:
    """Rank of ``M_{Y,Z}(g)`` over ``Q(T)`` with T kept as sympy symbols.

    Raises:
        InvalidParameterError: If *g* is not over Q.
        SizeGuardError: For more than three T-variables.
    """
    if not isinstance(g.field, RationalField):
        raise InvalidParameterError(f"Symbolic rank needs Q, got {g.field.spec!r}")
    ts = sorted(set(t_vars))
    if len(ts) > 3:
        raise SizeGuardError(
            f"Symbolic rank with {len(ts)} T-variables exceeds the limit 3"
        )
    symbols = {t: sympy.Symbol(g.variables.name(t)) for t in ts}
    t_mask = vars_mask(ts)
    entries: dict[tuple, sympy.Expr] = {}
    y_mask = vars_mask(y_vars)
    for m, c in g.terms.items():
        t_part, x_part = m.split(t_mask)
        cell = x_part.split(y_mask)
        term = sympy.Rational(c.numerator, c.denominator)
        for v, e in t_part.exponents:
            term *= symbols[v] ** e
        entries[cell] = entries.get(cell, 0) + term
    rows = sorted({r for r, _ in entries}, key=lambda m: (m.degree, m.exponents))
    cols = sorted({c for _, c in entries}, key=lambda m: (m.degree, m.exponents))
    if not rows:
        return 0
    matrix = sympy.Matrix([[entries.get((r, c), 0) for c in cols] for r in rows])
    return int(matrix.rank(simplify=True))
