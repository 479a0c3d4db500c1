"""Unsatisfiability on the Boolean cube and the multilinear cube inverse.

The cube variables of an axiom ``f`` are the variables of its support: the
inverse ``g`` of ``f`` modulo the Boolean axioms depends on nothing else.
Full tables are computed with the subset transforms of
:mod:`ipslab.hypercube.transforms`; :func:`coeff_on_support` only touches the
sub-cube below one monomial and is what the large instances use.
"""

from collections.abc import Iterable
from dataclasses import dataclass
import logging
import random
from typing import Any

import numpy as np

from ipslab.algebra.fields import PrimeField, convert
from ipslab.algebra.monomials import Monomial, mask_bits, vars_mask
from ipslab.algebra.polynomials import SparsePoly
from ipslab.config import config_int
from ipslab.errors import CubeSatisfiableError, SizeGuardError
from ipslab.hypercube.transforms import (
    check_numpy_prime,
    inverse_mod,
    mobius_mod,
    mobius_transform,
    zeta_mod,
    zeta_transform,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CubeCheck:
    """Outcome of an unsatisfiability check; truthy iff no zero was found."""

    unsat: bool
    witness: dict[str, int] | None
    points: int
    exhaustive: bool = True

    def __bool__(self) -> bool:
        return self.unsat


@dataclass(frozen=True)
class CubeInverse:
    """The unique multilinear ``g`` with ``g * f = 1`` on every Boolean point."""

    axiom: SparsePoly
    g: SparsePoly
    cube_vars: tuple[int, ...]


def _guard(n: int, max_vars: int | None, what: str) -> None:
    limit = config_int("max-vars", max_vars)
    if n > limit:
        raise SizeGuardError(
            f"{what} over {n} cube variables exceeds the exhaustive limit {limit}; "
            "use sampling (sample_unsat_on_cube) or targeted coefficients (coeff_on_support)"
        )


def _local_table(f: SparsePoly, local_vars: list[int]) -> list[Any]:
    """Coefficient table of ``mult(f)`` restricted to monomials over *local_vars*.

    Entry ``L`` belongs to the monomial whose support is the local bitmask ``L``
    (bit ``i`` is ``local_vars[i]``); monomials leaving *local_vars* are dropped,
    which is the restriction ``f|_{other vars = 0}``.
    """
    field = f.field
    position = {v: i for i, v in enumerate(local_vars)}
    allowed = vars_mask(local_vars)
    table = [field.zero()] * (1 << len(local_vars))
    for m, c in f.terms.items():
        if m.mask & ~allowed:
            continue
        local = 0
        for v in mask_bits(m.mask):
            local |= 1 << position[v]
        table[local] = field.add(table[local], c)
    return table


def _global_masks(local_vars: list[int]) -> list[int]:
    """``out[L]`` is the global support mask of local mask ``L``."""
    out = [0] * (1 << len(local_vars))
    for i, v in enumerate(local_vars):
        bit = 1 << i
        for low in range(bit):
            out[bit | low] = out[low] | (1 << v)
    return out


def _global_mask(local_vars: list[int], local: int) -> int:
    return vars_mask(local_vars[i] for i in mask_bits(local))


def _witness(f: SparsePoly, global_mask: int) -> dict[str, int]:
    return {name: global_mask >> v & 1 for v, name in enumerate(f.variables.names)}


def cube_values(
    f: SparsePoly, *, max_vars: int | None = None
) -> tuple[list[int], list[Any]]:
    """Values of *f* at every point of its support cube, indexed by local mask."""
    support = f.support_vars()
    _guard(len(support), max_vars, "Cube evaluation")
    return support, zeta_transform(_local_table(f, support), f.field)


def values_on_cube(
    f: SparsePoly, local_vars: list[int], *, max_vars: int | None = None
) -> list[Any]:
    """Values of *f* on the cube over *local_vars*, other variables 0, by local mask.

    Exponents are ignored, which is exact on Boolean points.
    """
    _guard(len(local_vars), max_vars, "Cube evaluation")
    return zeta_transform(_local_table(f, local_vars), f.field)


def is_unsat_on_cube(f: SparsePoly, *, max_vars: int | None = None) -> CubeCheck:
    """Decide exhaustively whether *f* is nonzero at every Boolean point.

    Variables outside the support do not change the value, so only the support
    cube is scanned; a witness sets them to 0.

    Raises:
        SizeGuardError: If the support exceeds the exhaustive limit.
    """
    support, values = cube_values(f, max_vars=max_vars)
    is_zero = f.field.is_zero
    for local, value in enumerate(values):
        if is_zero(value):
            mask = _global_mask(support, local)
            return CubeCheck(False, _witness(f, mask), len(values))
    return CubeCheck(True, None, len(values))


def sample_unsat_on_cube(f: SparsePoly, samples: int, seed: int = 0) -> CubeCheck:
    """One-sided sampling check: finds zeros, never proves unsatisfiability."""
    rng = random.Random(seed)
    support = f.support_vars()
    for _ in range(samples):
        mask = 0
        for v in support:
            if rng.getrandbits(1):
                mask |= 1 << v
        if f.field.is_zero(f.evaluate_mask(mask)):
            return CubeCheck(False, _witness(f, mask), samples, exhaustive=False)
    return CubeCheck(True, None, samples, exhaustive=False)


def boolean_inverse(f: SparsePoly, *, max_vars: int | None = None) -> CubeInverse:
    """Interpolate the multilinear inverse of *f* from its 2^n cube values.

    Raises:
        CubeSatisfiableError: If *f* vanishes at some Boolean point.
        SizeGuardError: If the support exceeds the exhaustive limit.
    """
    field = f.field
    support, values = cube_values(f, max_vars=max_vars)
    masks = _global_masks(support)
    for local, value in enumerate(values):
        if field.is_zero(value):
            witness = _witness(f, masks[local])
            raise CubeSatisfiableError(
                f"Axiom vanishes at the Boolean point {witness!r}", witness
            )
        values[local] = field.inv(value)
    coeffs = mobius_transform(values, field)
    g = SparsePoly(
        field,
        f.variables,
        {Monomial.from_mask(masks[local]): c for local, c in enumerate(coeffs)},
    )
    logger.debug(
        "Inverted axiom over %d cube variables: %d terms", len(support), len(g)
    )
    return CubeInverse(axiom=f, g=g, cube_vars=tuple(support))


def subcube_inverse(
    f: SparsePoly, variables: Iterable[int], *, max_support: int | None = None
) -> tuple[list[int], list[Any]]:
    """Coefficients in ``g`` of every monomial over *variables*, by local mask.

    Only the 2^|S| points below ``1_S`` are evaluated: the coefficient of
    ``prod_{i in A} x_i`` in ``g`` depends on ``g`` at points ``1_B``, ``B ⊆ A``.

    Raises:
        CubeSatisfiableError: If *f* vanishes on the sub-cube.
        SizeGuardError: If |S| exceeds ``coeff-max-support``.
    """
    local_vars = sorted(set(variables))
    limit = config_int("coeff-max-support", max_support)
    if len(local_vars) > limit:
        raise SizeGuardError(
            f"Targeted coefficient over {len(local_vars)} variables exceeds the limit {limit}"
        )
    field = f.field
    values = zeta_transform(_local_table(f, local_vars), field)
    for local, value in enumerate(values):
        if field.is_zero(value):
            witness = _witness(f, _global_mask(local_vars, local))
            raise CubeSatisfiableError(
                f"Axiom vanishes on the sub-cube at {witness!r}", witness
            )
        values[local] = field.inv(value)
    return local_vars, mobius_transform(values, field)


def coeff_on_support(
    f: SparsePoly, variables: Iterable[int], *, max_support: int | None = None
) -> Any:
    """Coefficient in the cube inverse of the multilinear monomial ``prod S``.

    Equals ``sum_{A ⊆ S} (-1)^{|S \\ A|} / f(1_A)``.
    """
    _, coeffs = subcube_inverse(f, variables, max_support=max_support)
    return coeffs[-1]


def modular_axiom(f: SparsePoly, p: int) -> SparsePoly:
    """*f* with coefficients mapped to F_p (identity when already over F_p)."""
    target = PrimeField(p)
    if f.field == target:
        return f
    return SparsePoly(
        target,
        f.variables,
        {m: convert(c, f.field, target) for m, c in f.terms.items()},
    )


def modular_cube_values(
    f: SparsePoly, p: int, *, max_vars: int | None = None
) -> tuple[list[int], np.ndarray]:
    """int64 table of *f* mod *p* on its support cube, indexed by local mask."""
    check_numpy_prime(p)
    fp = modular_axiom(f, p)
    support = fp.support_vars()
    _guard(len(support), max_vars, "Modular cube evaluation")
    position = {v: i for i, v in enumerate(support)}
    table = np.zeros(1 << len(support), dtype=np.int64)
    for m, c in fp.terms.items():
        local = 0
        for v in mask_bits(m.mask):
            local |= 1 << position[v]
        table[local] = (table[local] + c) % p
    return support, zeta_mod(table, p)


def modular_inverse_values(
    f: SparsePoly, p: int, *, max_vars: int | None = None
) -> tuple[list[int], np.ndarray]:
    """Values of ``1/f`` mod *p* on the support cube.

    Raises:
        CubeSatisfiableError: If some cube value of *f* is 0 mod *p*.
    """
    support, values = modular_cube_values(f, p, max_vars=max_vars)
    zeros = np.flatnonzero(values == 0)
    if zeros.size:
        witness = _witness(f, _global_mask(support, int(zeros[0])))
        raise CubeSatisfiableError(
            f"Axiom is 0 mod {p} at the Boolean point {witness!r}", witness
        )
    return support, inverse_mod(values, p)


def modular_inverse_table(
    f: SparsePoly, p: int, *, max_vars: int | None = None
) -> tuple[list[int], np.ndarray]:
    """Coefficients of the cube inverse mod *p*, indexed by local support mask."""
    support, values = modular_inverse_values(f, p, max_vars=max_vars)
    return support, mobius_mod(values, p)
