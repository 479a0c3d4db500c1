"""Subset (zeta / Möbius) transforms over the Boolean cube.

Tables are indexed by support bitmask: entry ``S`` of a coefficient table is
the coefficient of ``prod_{i in S} x_i``, entry ``S`` of a value table is the
value at the indicator point ``1_S``. The zeta transform maps coefficients to
values, the Möbius transform maps values back. Both are O(n 2^n) butterflies.

The numpy variants work modulo a prime with int64 arrays and need
``p * p < 2**63`` so products of reduced residues never overflow.
"""

from typing import Any

import numpy as np

from ipslab.algebra.fields import Field
from ipslab.errors import InvalidParameterError

# Largest prime modulus for which int64 products of residues are exact.
NUMPY_MAX_PRIME = 3_037_000_499


def zeta_transform(table: list[Any], field: Field) -> list[Any]:
    """In place: ``table[S] <- sum_{A subset S} table[A]``. Returns *table*."""
    add = field.add
    size = len(table)
    step = 1
    while step < size:
        for i in range(0, size, 2 * step):
            for j in range(i, i + step):
                table[j + step] = add(table[j + step], table[j])
        step <<= 1
    return table


def mobius_transform(table: list[Any], field: Field) -> list[Any]:
    """In place inverse of :func:`zeta_transform`."""
    sub = field.sub
    size = len(table)
    step = 1
    while step < size:
        for i in range(0, size, 2 * step):
            for j in range(i, i + step):
                table[j + step] = sub(table[j + step], table[j])
        step <<= 1
    return table


def check_numpy_prime(p: int) -> None:
    if p > NUMPY_MAX_PRIME:
        raise InvalidParameterError(
            f"Prime {p!r} is too large for int64 modular tables (max {NUMPY_MAX_PRIME})"
        )


def zeta_mod(table: np.ndarray, p: int) -> np.ndarray:
    """In place modular zeta transform of a 1-d int64 array of length 2^n."""
    step = 1
    while step < table.shape[0]:
        view = table.reshape(-1, 2, step)
        view[:, 1, :] += view[:, 0, :]
        view[:, 1, :] %= p
        step <<= 1
    return table


def mobius_mod(table: np.ndarray, p: int) -> np.ndarray:
    """In place modular Möbius transform of a 1-d int64 array of length 2^n."""
    step = 1
    while step < table.shape[0]:
        view = table.reshape(-1, 2, step)
        view[:, 1, :] -= view[:, 0, :]
        view[:, 1, :] %= p
        step <<= 1
    return table


def inverse_mod(values: np.ndarray, p: int) -> np.ndarray:
    """Elementwise inverse modulo *p* via Fermat; entries must be nonzero."""
    result = np.ones_like(values)
    base = values % p
    exponent = p - 2
    while exponent:
        if exponent & 1:
            result = result * base % p
        base = base * base % p
        exponent >>= 1
    return result


def extend_bit_mod(values: np.ndarray, bit: int, point: int, p: int) -> np.ndarray:
    """Fix cube coordinate *bit* of a value table at an arbitrary field point.

    Uses the multilinear extension ``(1 - point) * v|_{bit=0} + point * v|_{bit=1}``;
    the result has half the length and the higher bits shift down by one.
    """
    view = values.reshape(-1, 2, 1 << bit)
    low = (1 - point) % p
    out = (view[:, 0, :] * low % p + view[:, 1, :] * (point % p) % p) % p
    return out.reshape(-1)
