"""Sampling check that inverses of random sub-sums have full degree.

For ``f = sum_i alpha_i x_i - beta`` the coefficient of ``prod_{i in S'} x_i``
in the cube inverse is the top coefficient of the inverse of the sub-sum over
``S'``, so one sub-cube query per nonempty ``S'`` decides its degree.
"""

from itertools import combinations
import logging

from ipslab.algebra.fields import ExtensionField
from ipslab.algebra.monomials import Monomial
from ipslab.algebra.polynomials import SparsePoly
from ipslab.errors import InvalidParameterError
from ipslab.hypercube.inverse import coeff_on_support
from ipslab.instances.subset_sum import subset_variables
from ipslab.schemas.reports import DegreeExperimentReport
from ipslab.utils.seeds import derive_rng

logger = logging.getLogger(__name__)


def _has_full_degree(f: SparsePoly, n: int) -> bool:
    for size in range(1, n + 1):
        for subset in combinations(range(n), size):
            if f.field.is_zero(coeff_on_support(f, subset)):
                return False
    return True


def degree_experiment(
    n: int, field: ExtensionField, sample_size: int, trials: int, seed: int = 0
) -> DegreeExperimentReport:
    """Draw ``alpha`` uniformly from ``{0, ..., sample_size - 1}`` in the prime field.

    The shift is the generator z of *field*, which no prime-field sum reaches.

    Raises:
        InvalidParameterError: If *field* is not an extension field or the
            sample set does not fit in the prime field.
    """
    if not isinstance(field, ExtensionField):
        raise InvalidParameterError(
            f"Degree experiment needs an extension field, got {field.spec!r}",
            valid=["Fpk:p=<p>,k=<k>"],
        )
    if not 1 <= sample_size <= field.p:
        raise InvalidParameterError(
            f"Sample set size {sample_size!r} must be between 1 and p={field.p}"
        )
    table = subset_variables(n)
    beta = field.generator()
    failures = 0
    for trial in range(trials):
        rng = derive_rng(seed, "alpha", trial)
        terms = [
            (Monomial.from_mask(1 << i), field.from_int(rng.randrange(sample_size)))
            for i in range(n)
        ]
        terms.append((Monomial.one(), field.neg(beta)))
        f = SparsePoly.from_terms(field, table, terms)
        if not _has_full_degree(f, n):
            failures += 1
            logger.debug("Trial %d: some sub-sum inverse has low degree", trial)
    bound = 4**n / sample_size
    frequency = failures / trials if trials else 0.0
    return DegreeExperimentReport(
        n=n,
        field=field.spec,
        sample_size=sample_size,
        trials=trials,
        failures=failures,
        frequency=frequency,
        bound=bound,
        satisfied=frequency <= bound,
    )
