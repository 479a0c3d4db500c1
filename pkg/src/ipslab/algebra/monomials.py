"""Monomials, variable tables, monomial orders and variable partitions.

Variables are dense integer ids; a :class:`VarTable` maps them to display
names such as ``x3``, ``y0`` or ``t_{1,2}``. A :class:`Monomial` stores its
sorted ``(var, exponent)`` pairs together with the bitmask of its support, so
multilinear work (nearly everything here) can run on plain ints.
"""

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
import re

from ipslab.errors import InvalidParameterError, VariableMismatchError


def mask_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of *mask* in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def vars_mask(variables: Iterable[int]) -> int:
    mask = 0
    for v in variables:
        mask |= 1 << v
    return mask


class Monomial:
    """An immutable power product ``prod x_v^e``.

    Invariants: exponents are positive, pairs are sorted by variable id and
    ``mask`` is the support bitmask; ``multilinear`` is true iff all exponents are 1.
    """

    __slots__ = ("exponents", "mask", "multilinear", "_hash")

    exponents: tuple[tuple[int, int], ...]
    mask: int
    multilinear: bool

    def __init__(self, exponents: Iterable[tuple[int, int]] = ()) -> None:
        pairs = tuple(sorted((int(v), int(e)) for v, e in exponents if e))
        if any(e < 0 for _, e in pairs):
            raise InvalidParameterError(f"Negative exponent in {pairs!r}")
        if len({v for v, _ in pairs}) != len(pairs):
            raise InvalidParameterError(f"Variable repeated in {pairs!r}")
        self.exponents = pairs
        self.mask = vars_mask(v for v, _ in pairs)
        self.multilinear = all(e == 1 for _, e in pairs)
        self._hash = hash(pairs)

    @classmethod
    def from_mask(cls, mask: int) -> "Monomial":
        """The multilinear monomial with support *mask*."""
        m = cls.__new__(cls)
        m.exponents = tuple((v, 1) for v in mask_bits(mask))
        m.mask = mask
        m.multilinear = True
        m._hash = hash(m.exponents)
        return m

    @classmethod
    def one(cls) -> "Monomial":
        return _ONE

    @classmethod
    def from_dict(cls, exponents: Mapping[int, int]) -> "Monomial":
        return cls(exponents.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self._hash == other._hash and self.exponents == other.exponents

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Monomial({self.exponents!r})"

    def __mul__(self, other: "Monomial") -> "Monomial":
        if self.multilinear and other.multilinear and not self.mask & other.mask:
            return Monomial.from_mask(self.mask | other.mask)
        merged = dict(self.exponents)
        for v, e in other.exponents:
            merged[v] = merged.get(v, 0) + e
        return Monomial(merged.items())

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exponents)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.exponents)

    def exponent(self, var: int) -> int:
        for v, e in self.exponents:
            if v == var:
                return e
        return 0

    def is_one(self) -> bool:
        return not self.exponents

    def multilinearize(self) -> "Monomial":
        return self if self.multilinear else Monomial.from_mask(self.mask)

    def split(self, mask: int) -> tuple["Monomial", "Monomial"]:
        """Split into the part over the variables in *mask* and the rest."""
        if self.multilinear:
            inside_mask, outside_mask = self.mask & mask, self.mask & ~mask
            return Monomial.from_mask(inside_mask), Monomial.from_mask(outside_mask)
        inside = [(v, e) for v, e in self.exponents if mask >> v & 1]
        outside = [(v, e) for v, e in self.exponents if not mask >> v & 1]
        return Monomial(inside), Monomial(outside)

    def with_exponent(self, var: int, exp: int) -> "Monomial":
        pairs = [(v, e) for v, e in self.exponents if v != var]
        if exp:
            pairs.append((var, exp))
        return Monomial(pairs)


_ONE = Monomial()


_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_{},]*$")


@dataclass(frozen=True)
class VarTable:
    """The ambient variable universe: id ``i`` has display name ``names[i]``."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise InvalidParameterError(f"Duplicate variable names in {self.names!r}")
        for name in self.names:
            if not _NAME_RE.match(name):
                raise InvalidParameterError(f"Invalid variable name {name!r}")

    @classmethod
    def of(cls, names: Iterable[str]) -> "VarTable":
        return cls(tuple(names))

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def __len__(self) -> int:
        return len(self.names)

    def id(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise VariableMismatchError(f"Unknown variable {name!r}") from None

    def ids(self, names: Iterable[str]) -> list[int]:
        return [self.id(name) for name in names]

    def name(self, var: int) -> str:
        return self.names[var]

    def extend(self, names: Iterable[str]) -> "VarTable":
        """This table followed by the names it does not yet contain."""
        extra = [n for n in names if n not in self.index]
        return VarTable(self.names + tuple(dict.fromkeys(extra)))

    def format_monomial(self, m: Monomial) -> str:
        if m.is_one():
            return "1"
        return "*".join(
            self.names[v] if e == 1 else f"{self.names[v]}^{e}" for v, e in m.exponents
        )

    def parse_monomial(self, text: str) -> Monomial:
        """Inverse of :meth:`format_monomial` (``x1*y0^2``; ``1`` is the unit)."""
        text = text.strip()
        if text in ("", "1"):
            return Monomial.one()
        pairs: dict[int, int] = {}
        for factor in text.split("*"):
            name, _, exp = factor.strip().partition("^")
            var = self.id(name)
            pairs[var] = pairs.get(var, 0) + (int(exp) if exp else 1)
        return Monomial(pairs.items())


@dataclass(frozen=True)
class MonomialOrder:
    """Graded order: total degree first, then lexicographic by variable rank.

    ``ranking`` lists variable ids from most to least significant (block by
    block, earlier block above later block); unlisted variables follow in
    ascending id order.
    """

    ranking: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...] = ()
    label: str = "blocks"

    @classmethod
    def from_blocks(
        cls, blocks: Sequence[Sequence[int]], label: str = "blocks"
    ) -> "MonomialOrder":
        ranking = [v for block in blocks for v in block]
        if len(set(ranking)) != len(ranking):
            raise InvalidParameterError("Monomial order blocks overlap")
        return cls(tuple(ranking), tuple(tuple(b) for b in blocks), label)

    @classmethod
    def from_prefixes(cls, variables: VarTable, spec: str) -> "MonomialOrder":
        """Build an order from a prefix chain such as ``"X>Y"`` or ``"X>T>Y"``.

        A variable belongs to the block whose letter its name starts with
        (case-insensitive). Within a block, higher ids rank higher
        (``y3 > y2 > y1 > y0``), so the lowest-indexed variable is the smallest.
        """
        letters = [part.strip().lower() for part in spec.split(">") if part.strip()]
        initials = [name[0].lower() for name in variables.names]
        blocks = [
            [i for i in reversed(range(len(initials))) if initials[i] == letter]
            for letter in letters
        ]
        return cls.from_blocks(blocks, ">".join(letter.upper() for letter in letters))

    @cached_property
    def _rank(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.ranking)}

    def key(self, m: Monomial) -> tuple:
        """Sort key: ``key(a) < key(b)`` iff ``a`` is below ``b`` in the order."""
        base = len(self.ranking)
        rank = self._rank
        ranked = sorted((rank.get(v, base + v), e) for v, e in m.exponents)
        return (m.degree, tuple((-r, e) for r, e in ranked))

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) > self.key(b)

    def sorted(
        self, monomials: Iterable[Monomial], descending: bool = True
    ) -> list[Monomial]:
        return sorted(monomials, key=self.key, reverse=descending)


@dataclass(frozen=True)
class VarPartition:
    """Disjoint variable blocks ``X_1, ..., X_t`` covering a declared variable set."""

    blocks: tuple[frozenset[int], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for block in self.blocks:
            if seen & block:
                raise InvalidParameterError(
                    f"Partition blocks are not disjoint: {sorted(seen & block)!r}"
                )
            seen |= block
        if self.labels and len(self.labels) != len(self.blocks):
            raise InvalidParameterError("One label per partition block is required")

    @classmethod
    def of(
        cls, blocks: Iterable[Iterable[int]], labels: Iterable[str] = ()
    ) -> "VarPartition":
        return cls(tuple(frozenset(b) for b in blocks), tuple(labels))

    @property
    def declared(self) -> frozenset[int]:
        return frozenset().union(*self.blocks)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"X{i + 1}"

    def names(self, variables: VarTable) -> list[list[str]]:
        return [[variables.name(v) for v in sorted(block)] for block in self.blocks]
