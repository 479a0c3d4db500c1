"""Tests for subset transforms, cube inverses and the support rules."""

from fractions import Fraction
import random

import numpy as np
import pytest

from ipslab.algebra import Monomial, PrimeField, RationalField, SparsePoly, VarTable
from ipslab.errors import (
    CubeSatisfiableError,
    IncomparabilityError,
    InvalidParameterError,
    SizeGuardError,
)
from ipslab.hypercube import (
    boolean_inverse,
    check_incomparable,
    check_support_containment,
    check_zero_coeff_rule,
    coeff_on_support,
    is_unsat_on_cube,
    modular_inverse_table,
    sample_unsat_on_cube,
    scan_zero_coefficients,
)
from ipslab.hypercube.inverse import values_on_cube
from ipslab.hypercube.support import is_product_support, reachable_supports
from ipslab.hypercube.transforms import (
    check_numpy_prime,
    mobius_mod,
    mobius_transform,
    zeta_mod,
    zeta_transform,
)
from ipslab.instances import gen_blockwise_binary

TABLE = VarTable.of(["x1", "x2", "x3"])


def _linear(field, coeffs: list[int], shift: int) -> SparsePoly:
    """``sum_i coeffs[i] * x_{i+1} - shift`` over TABLE."""
    f = SparsePoly.constant(field, TABLE, field.from_int(-shift))
    for v, c in enumerate(coeffs):
        f = f + SparsePoly.var(field, TABLE, v) * c
    return f


def _random_unsat(field, seed: int) -> SparsePoly:
    """A seeded sparse axiom on at most 12 variables, shifted past every cube value."""
    rng = random.Random(seed)
    n = rng.randint(1, 12)
    table = VarTable.of([f"x{i}" for i in range(1, n + 1)])
    terms = [
        (
            Monomial.from_mask(rng.randrange(1, 1 << n)),
            field.from_int(rng.randint(-5, 5)),
        )
        for _ in range(rng.randint(1, 8))
    ]
    f = SparsePoly.from_terms(field, table, terms)
    squared = rng.randint(-3, 3)
    f = f + SparsePoly.var(field, table, rng.randrange(n)) ** 2 * squared
    bound = int(sum(abs(c) for _, c in f)) + 1
    return f - bound * rng.choice([1, -1])


# ============================================================================
# Transforms
# ============================================================================


def test_zeta_sums_over_subsets(qq: RationalField) -> None:
    """Test that zeta turns coefficients into subset sums and Möbius undoes it."""
    table = [qq.from_int(c) for c in (1, 2, 3, 4)]

    values = zeta_transform(list(table), qq)

    assert values == [1, 3, 4, 10]
    assert mobius_transform(values, qq) == table


def test_numpy_transforms_match_field_transforms(f101: PrimeField) -> None:
    """Test that the int64 butterflies agree with the generic ones mod p."""
    table = [5, 100, 37, 0, 1, 2, 99, 64]
    expected = zeta_transform(list(table), f101)

    values = zeta_mod(np.array(table, dtype=np.int64), 101)

    assert values.tolist() == expected
    assert mobius_mod(values, 101).tolist() == table


def test_numpy_prime_limit() -> None:
    """Test that primes too large for int64 products are refused."""
    check_numpy_prime(3_037_000_493)
    with pytest.raises(InvalidParameterError, match="too large"):
        check_numpy_prime(4_294_967_311)


# ============================================================================
# Unsatisfiability and the inverse
# ============================================================================


def test_unsat_check_finds_witness(qq: RationalField) -> None:
    """Test that a satisfiable axiom is reported with a zero of f."""
    f = _linear(qq, [1, 1, 0], 1)

    check = is_unsat_on_cube(f)

    assert not check
    assert check.witness is not None
    point = {name: qq.from_int(bit) for name, bit in check.witness.items()}
    assert f.evaluate(point) == 0


def test_unsat_check_scans_support_cube(qq: RationalField) -> None:
    """Test that only the support cube is scanned."""
    check = is_unsat_on_cube(_linear(qq, [1, 1, 0], 3))

    assert check
    assert check.points == 4
    assert check.exhaustive


def test_sampling_finds_zero(qq: RationalField) -> None:
    """Test the one-sided sampling check on a half-satisfiable axiom."""
    check = sample_unsat_on_cube(_linear(qq, [1, 1, 0], 1), samples=32, seed=0)

    assert not check
    assert not check.exhaustive


def test_inverse_of_two_variable_subset_sum(qq: RationalField) -> None:
    """Test the interpolated inverse of x1 + x2 - 3 against hand-computed values."""
    f = _linear(qq, [1, 1, 0], 3)

    inverse = boolean_inverse(f)

    g = inverse.g
    assert inverse.cube_vars == (0, 1)
    assert g.constant_term() == Fraction(-1, 3)
    assert g.coefficient(Monomial.from_mask(0b01)) == Fraction(-1, 6)
    assert g.coefficient(Monomial.from_mask(0b10)) == Fraction(-1, 6)
    assert g.coefficient(Monomial.from_mask(0b11)) == Fraction(-1, 3)
    for mask in range(4):
        assert qq.mul(g.evaluate_mask(mask), f.evaluate_mask(mask)) == 1


@pytest.mark.parametrize("seed", range(50))
def test_inverse_of_random_unsat_axioms(qq: RationalField, seed: int) -> None:
    """Test g(b) * f(b) = 1 at every cube point for seeded random axioms."""
    f = _random_unsat(qq, seed)
    rng = random.Random(seed)

    g = boolean_inverse(f).g

    assert g.is_multilinear()
    support = f.support_vars()
    g_values = values_on_cube(g, support)
    f_values = values_on_cube(f, support)
    assert all(a * b == 1 for a, b in zip(g_values, f_values, strict=True))
    for _ in range(16):
        mask = rng.randrange(1 << len(f.variables))
        assert g.evaluate_mask(mask) * f.evaluate_mask(mask) == 1


def test_inverse_rejects_satisfiable_axiom(qq: RationalField) -> None:
    """Test that CubeSatisfiableError carries the witness."""
    with pytest.raises(CubeSatisfiableError) as exc_info:
        boolean_inverse(_linear(qq, [1, 1, 1], 2))

    assert sum(exc_info.value.witness.values()) == 2


def test_inverse_size_guard(qq: RationalField) -> None:
    """Test that the exhaustive limit is enforced."""
    with pytest.raises(SizeGuardError, match="exhaustive limit"):
        boolean_inverse(_linear(qq, [1, 1, 1], 7), max_vars=2)


def test_inverse_over_extension_field(f4) -> None:
    """Test g * f = 1 on the cube for an axiom over F_4 with shift z."""
    z = f4.generator()
    f = SparsePoly.var(f4, TABLE, 0) + SparsePoly.var(f4, TABLE, 1)
    f = f - SparsePoly.constant(f4, TABLE, z)

    g = boolean_inverse(f).g

    for mask in range(4):
        assert f4.mul(g.evaluate_mask(mask), f.evaluate_mask(mask)) == f4.one()


def test_targeted_coefficient_matches_full_inverse(qq: RationalField) -> None:
    """Test that sub-cube queries agree with the interpolated inverse."""
    f = _linear(qq, [1, 2, 3], 7)
    g = boolean_inverse(f).g

    for mask in range(8):
        support = [v for v in range(3) if mask >> v & 1]
        assert coeff_on_support(f, support) == g.coefficient(Monomial.from_mask(mask))


def test_modular_inverse_table_matches_reduction(qq: RationalField) -> None:
    """Test the numpy inverse table against the exact inverse reduced mod p."""
    p = 10007
    f = _linear(qq, [1, 2, 3], 7)
    g = boolean_inverse(f).g.to_field(PrimeField(p))

    support, coeffs = modular_inverse_table(f, p)

    assert support == [0, 1, 2]
    assert coeffs.tolist() == [g.coefficient(Monomial.from_mask(m)) for m in range(8)]


# ============================================================================
# Support rules
# ============================================================================


def test_blockwise_support_containment(qq: RationalField) -> None:
    """Test that every blockwise monomial appears with the closed-form coefficient."""
    f = gen_blockwise_binary(4, qq).require_axiom()

    report = check_support_containment(f)

    assert report.beta == "-1/1"
    assert len(report.entries) == 7
    assert report.all_present
    assert report.all_match


def test_nested_supports_are_rejected(qq: RationalField) -> None:
    """Test the incomparability check names the nested pair."""
    x1, x2 = SparsePoly.var(qq, TABLE, 0), SparsePoly.var(qq, TABLE, 1)
    f = x1 + x1 * x2 - 3

    with pytest.raises(IncomparabilityError) as exc_info:
        check_incomparable(f)

    assert exc_info.value.pair == ("x1", "x1*x2")


def test_product_supports() -> None:
    """Test the union criterion and the reachable closure."""
    masks = [0b0011, 0b0110]

    assert is_product_support(masks, 0b0111)
    assert not is_product_support(masks, 0b0101)
    assert reachable_supports(masks) == {0, 0b0011, 0b0110, 0b0111}
    with pytest.raises(SizeGuardError):
        reachable_supports([1, 2, 4, 8], limit=4)


def test_zero_rule_on_blockwise(qq: RationalField) -> None:
    """Test that x1*x3 is forced to 0 while x1*y1 is not."""
    f = gen_blockwise_binary(4, qq).require_axiom()
    table = f.variables

    forced = check_zero_coeff_rule(f, table.parse_monomial("x1*x3"))
    free = check_zero_coeff_rule(f, table.parse_monomial("x1*y1"))

    assert forced.is_forced_zero
    assert forced.verified_value == 0
    assert not free.is_forced_zero
    assert free.verified_value != 0


def test_zero_scan_on_blockwise(qq: RationalField) -> None:
    """Test the exhaustive zero-rule scan over all 2^8 monomials."""
    f = gen_blockwise_binary(4, qq).require_axiom()

    report = scan_zero_coefficients(f)

    assert report.scanned == 256
    assert report.holds
    assert report.forced_zero == 256 - report.reachable
