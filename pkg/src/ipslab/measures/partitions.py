"""Random and exhaustive bipartitions of a variable set."""

from collections.abc import Iterable, Iterator
import itertools
from math import comb, sqrt
import random

from ipslab.errors import InvalidParameterError
from ipslab.schemas.reports import BalancedFrequencyReport
from ipslab.utils.seeds import derive_rng

Bipartition = tuple[list[int], list[int]]


def _even(variables: Iterable[int]) -> list[int]:
    ordered = sorted(set(variables))
    if len(ordered) % 2:
        raise InvalidParameterError(
            f"A balanced partition needs an even number of variables, got {len(ordered)}"
        )
    return ordered


def random_balanced_partition(
    variables: Iterable[int], seed: int | random.Random
) -> Bipartition:
    """Uniform over balanced ``(Y, Z)``: a seeded shuffle split in half."""
    ordered = _even(variables)
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    rng.shuffle(ordered)
    half = len(ordered) // 2
    return sorted(ordered[:half]), sorted(ordered[half:])


def random_partition(variables: Iterable[int], rng: random.Random) -> Bipartition:
    """Each variable joins Y with probability 1/2, independently."""
    y, z = [], []
    for v in sorted(set(variables)):
        (y if rng.getrandbits(1) else z).append(v)
    return y, z


def balanced_partitions(variables: Iterable[int]) -> Iterator[Bipartition]:
    """Every balanced bipartition up to swapping sides, Y holding the smallest id.

    ``rank M_{Y,Z} = rank M_{Z,Y}``, so the swapped copies add nothing.
    """
    ordered = _even(variables)
    if not ordered:
        yield [], []
        return
    first, rest = ordered[0], ordered[1:]
    for others in itertools.combinations(rest, len(ordered) // 2 - 1):
        y = [first, *others]
        yield y, [v for v in ordered if v not in y]


def marginal_frequencies(
    variables: Iterable[int], samples: int, seed: int = 0
) -> dict[int, float]:
    """How often each variable lands in Y under :func:`random_balanced_partition`."""
    ordered = _even(variables)
    hits = dict.fromkeys(ordered, 0)
    rng = derive_rng(seed, "marginal")
    for _ in range(samples):
        for v in random_balanced_partition(ordered, rng)[0]:
            hits[v] += 1
    return {v: count / samples for v, count in hits.items()}


def balanced_frequency(n: int, samples: int, seed: int = 0) -> BalancedFrequencyReport:
    """Hit rate of the unconditioned sampler on balanced partitions of ``n`` vars."""
    if n < 2 or n % 2:
        raise InvalidParameterError(
            f"Balanced frequency needs an even n >= 2, got {n!r}"
        )
    rng = derive_rng(seed, "balanced")
    hits = sum(
        1 for _ in range(samples) if len(random_partition(range(n), rng)[0]) == n // 2
    )
    expected = comb(n, n // 2) / 2**n
    stderr = sqrt(expected * (1 - expected) / samples)
    frequency = hits / samples
    return BalancedFrequencyReport(
        n=n,
        samples=samples,
        frequency=frequency,
        expected=expected,
        stderr=stderr,
        within=abs(frequency - expected) <= 3 * stderr,
    )
