"""Sparse multivariate polynomials with exact coefficients.

A :class:`SparsePoly` is the universal value type: a map from
:class:`Monomial` to nonzero field values, tied to a :class:`Field` and an
ambient :class:`VarTable`. The zero polynomial is the empty map. Instances are
treated as immutable; every operation returns a new polynomial.
"""

from collections.abc import Callable, Iterable, Iterator, Mapping
from typing import Any

from ipslab.algebra.fields import Field, convert
from ipslab.algebra.monomials import Monomial, MonomialOrder, VarTable, vars_mask
from ipslab.errors import (
    FieldMismatchError,
    MissingVariableError,
    VariableMismatchError,
    ZeroPolynomialError,
)


class SparsePoly:
    """Exact sparse polynomial over ``field`` in the universe ``variables``."""

    __slots__ = ("field", "variables", "terms")

    field: Field
    variables: VarTable
    terms: dict[Monomial, Any]

    def __init__(
        self,
        field: Field,
        variables: VarTable,
        terms: Mapping[Monomial, Any] | None = None,
        *,
        trusted: bool = False,
    ) -> None:
        self.field = field
        self.variables = variables
        if trusted:
            self.terms = dict(terms or {})
            return
        is_zero = field.is_zero
        clean = {m: c for m, c in (terms or {}).items() if not is_zero(c)}
        limit = 1 << len(variables)
        for m in clean:
            if m.mask >= limit:
                raise VariableMismatchError(
                    f"Monomial {m!r} uses variables outside a table of size {len(variables)}"
                )
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field: Field, variables: VarTable) -> "SparsePoly":
        return cls(field, variables, trusted=True)

    @classmethod
    def constant(cls, field: Field, variables: VarTable, value: Any) -> "SparsePoly":
        return cls(field, variables, {Monomial.one(): value})

    @classmethod
    def var(cls, field: Field, variables: VarTable, name: str | int) -> "SparsePoly":
        v = variables.id(name) if isinstance(name, str) else name
        terms = {Monomial.from_mask(1 << v): field.one()}
        return cls(field, variables, terms, trusted=True)

    @classmethod
    def monomial(
        cls, field: Field, variables: VarTable, m: Monomial, coeff: Any = None
    ) -> "SparsePoly":
        return cls(field, variables, {m: field.one() if coeff is None else coeff})

    @classmethod
    def from_terms(
        cls, field: Field, variables: VarTable, terms: Iterable[tuple[Monomial, Any]]
    ) -> "SparsePoly":
        """Sum a stream of ``(monomial, coefficient)`` pairs, merging repeats."""
        acc: dict[Monomial, Any] = {}
        add = field.add
        for m, c in terms:
            acc[m] = add(acc[m], c) if m in acc else c
        return cls(field, variables, acc)

    # -- structure ----------------------------------------------------------

    def __repr__(self) -> str:
        return f"SparsePoly({self}, field={self.field.spec!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda item: _display_key(item[0])):
            coeff = self.field.format(c)
            if m.is_one():
                parts.append(coeff)
            else:
                parts.append(f"{coeff}*{self.variables.format_monomial(m)}")
        return " + ".join(parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return (
            self.field == other.field
            and self.variables == other.variables
            and self.terms == other.terms
        )

    __hash__ = None  # type: ignore[assignment]

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Any]]:
        return iter(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m.is_one() for m in self.terms)

    def is_multilinear(self) -> bool:
        return all(m.multilinear for m in self.terms)

    def degree(self) -> int:
        """Total degree; raises on the zero polynomial."""
        if not self.terms:
            raise ZeroPolynomialError("Degree of the zero polynomial is undefined")
        return max(m.degree for m in self.terms)

    def degree_in(self, var: int) -> int:
        return max((m.exponent(var) for m in self.terms), default=0)

    def coefficient(self, m: Monomial) -> Any:
        return self.terms.get(m, self.field.zero())

    def constant_term(self) -> Any:
        return self.coefficient(Monomial.one())

    @property
    def support_mask(self) -> int:
        mask = 0
        for m in self.terms:
            mask |= m.mask
        return mask

    def support_vars(self) -> list[int]:
        """Ids of the variables the polynomial depends on, ascending."""
        mask = self.support_mask
        return [v for v in range(mask.bit_length()) if mask >> v & 1]

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other: Any) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"Polynomials over {self.field.spec!r} and {other.field.spec!r}"
                )
            if other.variables != self.variables:
                raise VariableMismatchError(
                    "Polynomials over different variable tables"
                )
            return other
        if isinstance(other, int):
            value = self.field.from_int(other)
            return SparsePoly.constant(self.field, self.variables, value)
        return NotImplemented

    def __add__(self, other: Any) -> "SparsePoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        add, is_zero = self.field.add, self.field.is_zero
        acc = dict(self.terms)
        for m, c in other.terms.items():
            if m in acc:
                s = add(acc[m], c)
                if is_zero(s):
                    del acc[m]
                else:
                    acc[m] = s
            else:
                acc[m] = c
        return SparsePoly(self.field, self.variables, acc, trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "SparsePoly":
        neg = self.field.neg
        return SparsePoly(
            self.field,
            self.variables,
            {m: neg(c) for m, c in self.terms.items()},
            trusted=True,
        )

    def __sub__(self, other: Any) -> "SparsePoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "SparsePoly":
        return (-self) + other

    def __mul__(self, other: Any) -> "SparsePoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        add, mul, is_zero = self.field.add, self.field.mul, self.field.is_zero
        acc: dict[Monomial, Any] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                c = mul(c1, c2)
                acc[m] = add(acc[m], c) if m in acc else c
        return SparsePoly(
            self.field,
            self.variables,
            {m: c for m, c in acc.items() if not is_zero(c)},
            trusted=True,
        )

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "SparsePoly":
        if exponent < 0:
            raise ValueError(f"Negative exponent {exponent!r}")
        result = SparsePoly.constant(self.field, self.variables, self.field.one())
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, c: Any) -> "SparsePoly":
        if self.field.is_zero(c):
            return SparsePoly.zero(self.field, self.variables)
        mul = self.field.mul
        return SparsePoly(
            self.field,
            self.variables,
            {m: mul(v, c) for m, v in self.terms.items()},
            trusted=True,
        )

    def map_terms(self, fn: Callable[[Monomial], Monomial]) -> "SparsePoly":
        """Apply *fn* to every monomial, summing coefficients of colliding images."""
        return SparsePoly.from_terms(
            self.field, self.variables, ((fn(m), c) for m, c in self.terms.items())
        )

    # -- evaluation and substitution ----------------------------------------

    def _resolve_point(self, point: Mapping[Any, Any]) -> dict[int, Any]:
        resolved = {
            (self.variables.id(k) if isinstance(k, str) else k): v
            for k, v in point.items()
        }
        for v in self.support_vars():
            if v not in resolved:
                raise MissingVariableError(
                    f"Point does not assign variable {self.variables.name(v)!r}"
                )
        return resolved

    def evaluate(self, point: Mapping[Any, Any]) -> Any:
        """Substitute field values for every variable and fold exactly.

        Keys of *point* may be variable ids or names.

        Raises:
            MissingVariableError: If a variable of the support is unassigned.
        """
        values = self._resolve_point(point)
        f = self.field
        total = f.zero()
        for m, c in self.terms.items():
            term = c
            for v, e in m.exponents:
                x = values[v]
                for _ in range(e):
                    term = f.mul(term, x)
            total = f.add(total, term)
        return total

    def evaluate_mask(self, mask: int) -> Any:
        """Value at the Boolean point whose 1-coordinates are the bits of *mask*."""
        f = self.field
        total = f.zero()
        for m, c in self.terms.items():
            if not m.mask & ~mask:
                total = f.add(total, c)
        return total

    def partial_evaluate(self, values: Mapping[int, Any]) -> "SparsePoly":
        """Substitute field values for some variables, keeping the table."""
        f = self.field
        acc: dict[Monomial, Any] = {}
        for m, c in self.terms.items():
            coeff = c
            kept = []
            for v, e in m.exponents:
                if v in values:
                    for _ in range(e):
                        coeff = f.mul(coeff, values[v])
                else:
                    kept.append((v, e))
            if f.is_zero(coeff):
                continue
            key = Monomial(kept)
            acc[key] = f.add(acc[key], coeff) if key in acc else coeff
        return SparsePoly(self.field, self.variables, acc)

    def substitute(
        self, mapping: Mapping[int, "SparsePoly"], target: VarTable | None = None
    ) -> "SparsePoly":
        """Replace variables by polynomials over *target*.

        Variables without an entry in *mapping* are carried over by name, so
        they must exist in *target* (default: this polynomial's own table).
        """
        target = target or self.variables
        one = SparsePoly.constant(self.field, target, self.field.one())
        powers: dict[tuple[int, int], SparsePoly] = {}

        def image(v: int, e: int) -> SparsePoly:
            if (v, e) not in powers:
                if v in mapping:
                    base = mapping[v]
                else:
                    name = self.variables.name(v)
                    base = SparsePoly.var(self.field, target, target.id(name))
                powers[(v, e)] = base**e
            return powers[(v, e)]

        result = SparsePoly.zero(self.field, target)
        for m, c in self.terms.items():
            term = one.scale(c)
            for v, e in m.exponents:
                term = term * image(v, e)
            result = result + term
        return result

    def with_variables(self, target: VarTable) -> "SparsePoly":
        """Re-embed into another table by variable name."""
        if target == self.variables:
            return self
        ids = {v: target.id(self.variables.name(v)) for v in self.support_vars()}
        return SparsePoly(
            self.field,
            target,
            {
                Monomial((ids[v], e) for v, e in m.exponents): c
                for m, c in self.terms.items()
            },
        )

    def to_field(self, target: Field) -> "SparsePoly":
        """Map coefficients into *target* (e.g. Q -> F_p)."""
        return SparsePoly(
            target,
            self.variables,
            {m: convert(c, self.field, target) for m, c in self.terms.items()},
        )

    # -- structure-level operations -----------------------------------------

    def multilinearize(self) -> "SparsePoly":
        """Clamp every exponent to 1, summing coefficients of colliding images."""
        if self.is_multilinear():
            return self
        return self.map_terms(Monomial.multilinearize)

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        if not self.terms:
            raise ZeroPolynomialError("Leading monomial of the zero polynomial")
        return max(self.terms, key=order.key)

    def trailing_monomial(self, order: MonomialOrder) -> Monomial:
        if not self.terms:
            raise ZeroPolynomialError("Trailing monomial of the zero polynomial")
        return min(self.terms, key=order.key)

    def coeff_decompose(self, variables: Iterable[int]) -> dict[Monomial, "SparsePoly"]:
        """Write ``f = sum_m m * f_m``, ``m`` over *variables* and ``f_m`` free of them.

        Only the nonzero ``f_m`` are returned.
        """
        mask = vars_mask(variables)
        parts: dict[Monomial, dict[Monomial, Any]] = {}
        for m, c in self.terms.items():
            inside, rest = m.split(mask)
            parts.setdefault(inside, {})[rest] = c
        return {
            m: SparsePoly(self.field, self.variables, terms, trusted=True)
            for m, terms in parts.items()
        }

    def divide_boolean_axiom(self, var: int) -> tuple["SparsePoly", "SparsePoly"]:
        """Return ``(q, r)``, ``self = q * (var^2 - var) + r`` and ``deg_var r <= 1``.

        Uses ``x^e - x = (x^2 - x)(x^{e-2} + ... + x + 1)`` term by term.
        """
        f = self.field
        quotient: dict[Monomial, Any] = {}
        remainder: dict[Monomial, Any] = {}

        def bump(acc: dict[Monomial, Any], m: Monomial, c: Any) -> None:
            acc[m] = f.add(acc[m], c) if m in acc else c

        for m, c in self.terms.items():
            e = m.exponent(var)
            if e <= 1:
                bump(remainder, m, c)
                continue
            for j in range(e - 1):
                bump(quotient, m.with_exponent(var, j), c)
            bump(remainder, m.with_exponent(var, 1), c)
        return (
            SparsePoly(f, self.variables, quotient),
            SparsePoly(f, self.variables, remainder),
        )

    def reduce_boolean(self) -> tuple[dict[int, "SparsePoly"], "SparsePoly"]:
        """Divide by ``x_v^2 - x_v`` for every variable in ascending id order.

        Returns ``(witnesses, remainder)`` with
        ``self = remainder + sum_v witnesses[v] * (x_v^2 - x_v)``; the
        remainder equals :meth:`multilinearize`. Witnesses are present for
        every variable of the table (zero when nothing was divided).
        """
        witnesses: dict[int, SparsePoly] = {}
        rest = self
        for v in range(len(self.variables)):
            q, rest = rest.divide_boolean_axiom(v)
            witnesses[v] = q
        return witnesses, rest


def boolean_axiom(field: Field, variables: VarTable, var: int) -> SparsePoly:
    """The Boolean axiom ``x_var^2 - x_var``."""
    x = SparsePoly.var(field, variables, var)
    return x * x - x


def combine_boolean(
    field: Field, variables: VarTable, witnesses: Mapping[int, SparsePoly]
) -> SparsePoly:
    """``sum_v witnesses[v] * (x_v^2 - x_v)``."""
    total = SparsePoly.zero(field, variables)
    for v, h in witnesses.items():
        if not h.is_zero():
            total = total + h * boolean_axiom(field, variables, v)
    return total


def _display_key(m: Monomial) -> tuple:
    return (m.degree, m.exponents)
