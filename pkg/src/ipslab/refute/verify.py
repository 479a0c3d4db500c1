"""Exact and randomized verification of linear certificates."""

from dataclasses import dataclass
import logging
from typing import Protocol

from ipslab.algebra.fields import PrimeField, RationalField
from ipslab.algebra.polynomials import SparsePoly
from ipslab.config import config_int, default_prime
from ipslab.errors import FieldDivisionError, InvalidParameterError
from ipslab.refute.certificate import LinRefutation
from ipslab.utils.seeds import derive_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verification; truthy iff the identity was confirmed."""

    ok: bool
    mode: str
    residual: SparsePoly | None = None
    trials: int = 0
    prime: int | None = None
    failed_trial: int | None = None

    def __bool__(self) -> bool:
        return self.ok


class CertificateVerifier(Protocol):
    """Protocol for certificate checkers."""

    def verify(self, refutation: LinRefutation) -> Verdict:
        ...


def verify_exact(refutation: LinRefutation) -> Verdict:
    """Expand ``g*f + sum h_j (x_j^2 - x_j) - 1`` and test it for zero."""
    residual = refutation.residual()
    if residual.is_zero():
        return Verdict(ok=True, mode="exact")
    logger.info("Certificate residual has %d terms", len(residual))
    return Verdict(ok=False, mode="exact", residual=residual)


def verify_randomized(
    refutation: LinRefutation,
    *,
    trials: int | None = None,
    prime: int | None = None,
    seed: int = 0,
) -> Verdict:
    """Evaluate the identity at random points; one-sided error ``<= (D/|F|)`` per trial.

    Certificates over Q are reduced modulo *prime*; over a finite field the
    points are drawn from the field itself.

    Raises:
        InvalidParameterError: If the field is not larger than the degree bound,
            or a coefficient's denominator vanishes modulo *prime*.
    """
    count = config_int("rank-trials", trials)
    bound = refutation.degree_bound()
    if isinstance(refutation.field, RationalField):
        p = prime or default_prime()
        target = PrimeField(p)
        try:
            parts = [refutation.axiom.to_field(target), refutation.g.to_field(target)]
            h = {v: q.to_field(target) for v, q in refutation.h.items()}
        except FieldDivisionError:
            raise InvalidParameterError(
                f"A certificate denominator vanishes mod {p}; choose another prime"
            ) from None
        size = p
    else:
        target = refutation.field
        p = target.characteristic
        parts = [refutation.axiom, refutation.g]
        h = dict(refutation.h)
        size = getattr(target, "order", p)
    if size <= bound:
        raise InvalidParameterError(
            f"Field of size {size} is too small for identity degree {bound}"
        )
    f_p, g_p = parts
    fd = target
    one = fd.one()
    for trial in range(count):
        rng = derive_rng(seed, "point", trial)
        point = {v: fd.random(rng) for v in range(len(f_p.variables))}
        value = fd.mul(g_p.evaluate(point), f_p.evaluate(point))
        for v, q in h.items():
            x = point[v]
            value = fd.add(value, fd.mul(q.evaluate(point), fd.sub(fd.mul(x, x), x)))
        if value != one:
            logger.info("Randomized check failed at trial %d", trial)
            return Verdict(
                ok=False,
                mode="randomized",
                trials=trial + 1,
                prime=p,
                failed_trial=trial,
            )
    return Verdict(ok=True, mode="randomized", trials=count, prime=p)


class ExactVerifier:
    def verify(self, refutation: LinRefutation) -> Verdict:
        return verify_exact(refutation)


class RandomizedVerifier:
    def __init__(
        self, trials: int | None = None, prime: int | None = None, seed: int = 0
    ) -> None:
        self.trials = trials
        self.prime = prime
        self.seed = seed

    def verify(self, refutation: LinRefutation) -> Verdict:
        return verify_randomized(
            refutation, trials=self.trials, prime=self.prime, seed=self.seed
        )


_VERIFIERS: dict[str, type] = {
    "exact": ExactVerifier,
    "randomized": RandomizedVerifier,
}


def create_verifier(mode: str, **options: int | None) -> CertificateVerifier:
    """Create a verifier by mode name; options go to the randomized verifier.

    Raises:
        InvalidParameterError: For an unknown mode.
    """
    cls = _VERIFIERS.get(mode)
    if cls is None:
        raise InvalidParameterError(
            f"Unknown verification mode {mode!r}", valid=list(_VERIFIERS)
        )
    if cls is ExactVerifier:
        return ExactVerifier()
    return cls(**options)
