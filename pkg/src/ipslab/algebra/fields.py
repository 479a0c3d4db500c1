"""Exact fields: the rationals, prime fields F_p and extension fields F_{p^k}.

Field elements are plain Python values owned by a field object that knows how
to combine them (``Fraction`` for Q, ``int`` in ``[0, p)`` for F_p and a
``k``-tuple of ``int`` coefficients ``(c0, ..., c_{k-1})`` for F_{p^k}).
Callers combine values through the field methods.

Field spec strings::

    Q                 the rationals
    Fp:65537          the prime field F_65537
    Fpk:p=2,k=2       F_4, modulus chosen by the deterministic rule
"""

from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import itertools
import json
import random
import re
from typing import Any, Protocol

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_gcdex, gf_irreducible_p, gf_mul, gf_rem

from ipslab.config import config_int
from ipslab.errors import FieldDivisionError, FieldMismatchError, InvalidParameterError


class Field(Protocol):
    """Protocol every coefficient field implements.

    Values are immutable and hashable; two values of the same field are equal
    iff they represent the same element.
    """

    spec: str
    characteristic: int

    def zero(self) -> Any: ...

    def one(self) -> Any: ...

    def from_int(self, n: int) -> Any: ...

    def add(self, a: Any, b: Any) -> Any: ...

    def sub(self, a: Any, b: Any) -> Any: ...

    def neg(self, a: Any) -> Any: ...

    def mul(self, a: Any, b: Any) -> Any: ...

    def inv(self, a: Any) -> Any: ...

    def div(self, a: Any, b: Any) -> Any: ...

    def is_zero(self, a: Any) -> bool: ...

    def parse(self, text: str) -> Any: ...

    def format(self, a: Any) -> str: ...

    def random(self, rng: random.Random) -> Any: ...

    def describe(self) -> dict[str, Any]: ...


@dataclass(frozen=True)
class RationalField:
    """The rationals, elements are reduced ``Fraction`` values."""

    spec: str = "Q"
    characteristic: int = 0

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def inv(self, a: Fraction) -> Fraction:
        if not a:
            raise FieldDivisionError("Inverse of 0 in Q")
        return 1 / Fraction(a)

    def div(self, a: Fraction, b: Fraction) -> Fraction:
        if not b:
            raise FieldDivisionError("Division by 0 in Q")
        return Fraction(a) / b

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    def parse(self, text: str) -> Fraction:
        return Fraction(str(text).strip())

    def format(self, a: Fraction) -> str:
        return f"{a.numerator}/{a.denominator}"

    def random(self, rng: random.Random, bound: int = 10) -> Fraction:
        """A random integer in ``[-bound, bound]``."""
        return Fraction(rng.randint(-bound, bound))

    def describe(self) -> dict[str, Any]:
        return {"spec": self.spec, "characteristic": 0}


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p; elements are ints in ``[0, p)``."""

    p: int
    spec: str = field(init=False)
    characteristic: int = field(init=False)

    def __post_init__(self) -> None:
        if self.p < 2 or not isprime(self.p):
            raise InvalidParameterError(f"Modulus {self.p!r} is not prime")
        object.__setattr__(self, "spec", f"Fp:{self.p}")
        object.__setattr__(self, "characteristic", self.p)

    @property
    def order(self) -> int:
        return self.p

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise FieldDivisionError(f"Inverse of 0 in {self.spec}")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def is_zero(self, a: int) -> bool:
        return a % self.p == 0

    def parse(self, text: str) -> int:
        value = Fraction(str(text).strip())
        return self.div(value.numerator % self.p, value.denominator % self.p)

    def format(self, a: int) -> str:
        return str(a)

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def describe(self) -> dict[str, Any]:
        return {"spec": self.spec, "characteristic": self.p}


def _desc(coeffs: tuple[int, ...]) -> list:
    """Ascending coefficient tuple -> stripped descending sympy dense list."""
    out = [ZZ(c) for c in reversed(coeffs)]
    while out and out[0] == 0:
        out.pop(0)
    return out


def _asc(desc: list, k: int) -> tuple[int, ...]:
    """Descending sympy dense list -> ascending tuple padded to length k."""
    values = [int(c) for c in reversed(desc)]
    return tuple(values + [0] * (k - len(values)))


@lru_cache(maxsize=None)
def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k over F_p.

    Candidates ``z^k + c_{k-1} z^{k-1} + ... + c_0`` are scanned in
    lexicographic order of ``(c_0, ..., c_{k-1})``. Returns the ascending
    coefficient tuple of length ``k + 1`` (last entry 1).
    """
    for lower in itertools.product(range(p), repeat=k):
        candidate = (*lower, 1)
        if gf_irreducible_p(_desc(candidate), p, ZZ):
            return candidate
    raise InvalidParameterError(f"No irreducible polynomial of degree {k} over F_{p}")


@dataclass(frozen=True)
class ExtensionField:
    """F_{p^k} as F_p[z] / (modulus); elements are ascending coefficient k-tuples."""

    p: int
    k: int
    modulus: tuple[int, ...] = ()
    spec: str = field(init=False)
    characteristic: int = field(init=False)

    def __post_init__(self) -> None:
        if self.p < 2 or not isprime(self.p):
            raise InvalidParameterError(f"Characteristic {self.p!r} is not prime")
        max_degree = config_int("extension-max-degree")
        if not 2 <= self.k <= max_degree:
            raise InvalidParameterError(
                f"Extension degree {self.k!r} outside [2, {max_degree}]"
            )
        modulus = tuple(self.modulus) or find_irreducible(self.p, self.k)
        if len(modulus) != self.k + 1 or modulus[-1] != 1:
            raise InvalidParameterError(
                f"Modulus {modulus!r} is not monic of degree {self.k}"
            )
        if not gf_irreducible_p(_desc(modulus), self.p, ZZ):
            raise InvalidParameterError(
                f"Modulus {modulus!r} is reducible over F_{self.p}"
            )
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "spec", f"Fpk:p={self.p},k={self.k}")
        object.__setattr__(self, "characteristic", self.p)

    @property
    def order(self) -> int:
        return self.p**self.k

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.k

    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.k - 1)

    def generator(self) -> tuple[int, ...]:
        """The class of z; it generates the whole field over F_p."""
        return (0, 1) + (0,) * (self.k - 2)

    def from_int(self, n: int) -> tuple[int, ...]:
        return (n % self.p,) + (0,) * (self.k - 1)

    def add(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: tuple[int, ...]) -> tuple[int, ...]:
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        product = gf_mul(_desc(a), _desc(b), self.p, ZZ)
        return _asc(gf_rem(product, _desc(self.modulus), self.p, ZZ), self.k)

    def inv(self, a: tuple[int, ...]) -> tuple[int, ...]:
        if self.is_zero(a):
            raise FieldDivisionError(f"Inverse of 0 in {self.spec}")
        s, _, h = gf_gcdex(_desc(a), _desc(self.modulus), self.p, ZZ)
        # the modulus is irreducible, so the monic gcd is 1
        assert [int(c) for c in h] == [1]
        return _asc(s, self.k)

    def div(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: tuple[int, ...]) -> bool:
        return not any(a)

    def in_prime_field(self, a: tuple[int, ...]) -> bool:
        return not any(a[1:])

    def parse(self, text: str) -> tuple[int, ...]:
        raw = json.loads(str(text))
        if isinstance(raw, int):
            return self.from_int(raw)
        if not isinstance(raw, list) or len(raw) > self.k:
            raise InvalidParameterError(f"Bad {self.spec} element {text!r}")
        return tuple(int(c) % self.p for c in raw) + (0,) * (self.k - len(raw))

    def format(self, a: tuple[int, ...]) -> str:
        return "[" + ",".join(str(c) for c in a) + "]"

    def random(self, rng: random.Random) -> tuple[int, ...]:
        return tuple(rng.randrange(self.p) for _ in range(self.k))

    def elements(self) -> Iterator[tuple[int, ...]]:
        return iter(itertools.product(range(self.p), repeat=self.k))

    def describe(self) -> dict[str, Any]:
        return {
            "spec": self.spec,
            "characteristic": self.p,
            "modulus": list(self.modulus),
        }


_SPEC_RE = {
    "Fp": re.compile(r"^Fp:(\d+)$"),
    "Fpk": re.compile(r"^Fpk:p=(\d+),k=(\d+)$"),
}


@lru_cache(maxsize=None)
def create_field(spec: str) -> Field:
    """Create a field from its spec string (``Q``, ``Fp:p``, ``Fpk:p=..,k=..``).

    Raises:
        InvalidParameterError: If the spec is malformed or the parameters are invalid.
    """
    text = spec.replace(" ", "")
    if text in ("Q", "QQ"):
        return RationalField()
    if m := _SPEC_RE["Fp"].match(text):
        return PrimeField(int(m.group(1)))
    if m := _SPEC_RE["Fpk"].match(text):
        return ExtensionField(int(m.group(1)), int(m.group(2)))
    raise InvalidParameterError(
        f"Unknown field spec {spec!r}", valid=["Q", "Fp:<p>", "Fpk:p=<p>,k=<k>"]
    )


def convert(value: Any, source: Field, target: Field) -> Any:
    """Map a value of *source* into *target* along the canonical ring map.

    Supported: identity, Q -> any field (denominator must stay invertible),
    F_p -> F_{p^k} and F_p -> F_p.

    Raises:
        FieldDivisionError: If a rational denominator vanishes in *target*.
        FieldMismatchError: For any other pair of fields.
    """
    if source == target:
        return value
    if isinstance(source, RationalField):
        return target.div(
            target.from_int(value.numerator), target.from_int(value.denominator)
        )
    if isinstance(source, PrimeField) and target.characteristic == source.p:
        return target.from_int(value)
    raise FieldMismatchError(f"No canonical map from {source.spec} to {target.spec}")
