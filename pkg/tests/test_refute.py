"""Tests for linear certificates: construction, lifting, verification and structure."""

from fractions import Fraction
from math import comb
import random

import pytest

from ipslab.algebra import PrimeField, RationalField, SparsePoly, VarTable
from ipslab.config import default_prime
from ipslab.errors import (
    InvalidParameterError,
    UnsupportedShapeError,
    VariableMismatchError,
)
from ipslab.hypercube import boolean_inverse
from ipslab.instances import gen_blockwise_binary, gen_subset_sum
from ipslab.refute import (
    LinRefutation,
    build_subset_sum_refutation,
    certificate_from_inverse,
    create_verifier,
    elem_sym_inverse_structure,
    functional_check_mult_ips,
    lift_sparse_refutation,
    subset_sum_inverse_coefficients,
    verify_exact,
    verify_randomized,
)
from ipslab.refute.certificate import Y_NAME, z_name

# ============================================================================
# Explicit subset-sum certificate
# ============================================================================


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 10])
@pytest.mark.parametrize("offset", [1, 2])
def test_subset_sum_certificate_verifies(
    qq: RationalField, n: int, offset: int
) -> None:
    """Test the closed-form certificate for beta = n + 1 and n + 2."""
    refutation = build_subset_sum_refutation(n, n + offset, qq)

    assert verify_exact(refutation)
    assert refutation.g.is_multilinear()
    assert refutation.g.degree() == n


def test_inverse_coefficients_n1(qq: RationalField) -> None:
    """Test alpha_0 = alpha_1 = -1/2 for x - 2."""
    coefficients = subset_sum_inverse_coefficients(1, 2, qq)
    assert coefficients == [Fraction(-1, 2), Fraction(-1, 2)]


@pytest.mark.parametrize("beta", [0, 2, 3])
def test_inverse_coefficients_reject_cube_values(qq: RationalField, beta: int) -> None:
    """Test that beta in 0..n has no inverse."""
    with pytest.raises(InvalidParameterError, match="cube value"):
        subset_sum_inverse_coefficients(3, beta, qq)


def test_explicit_certificate_needs_characteristic_zero(f101: PrimeField) -> None:
    """Test that prime fields are refused by the closed form."""
    with pytest.raises(InvalidParameterError, match="characteristic 0"):
        build_subset_sum_refutation(3, 4, f101)


def test_certificate_from_inverse_over_prime_field(f101: PrimeField) -> None:
    """Test Boolean division on an interpolated inverse mod p."""
    f = gen_subset_sum(3, 4, f101).require_axiom()

    refutation = certificate_from_inverse(f, boolean_inverse(f).g)

    assert verify_exact(refutation)


def test_certificate_from_inverse_rejects_non_inverse(qq: RationalField) -> None:
    """Test that g must invert f on the cube."""
    f = gen_subset_sum(2, 3, qq).require_axiom()

    with pytest.raises(InvalidParameterError, match="does not invert"):
        certificate_from_inverse(f, SparsePoly.constant(qq, f.variables, Fraction(1)))


# ============================================================================
# Verification
# ============================================================================


def test_perturbed_certificate_fails(qq: RationalField) -> None:
    """Test that g + 1 leaves the axiom itself as residual."""
    good = build_subset_sum_refutation(3, 4, qq)
    bad = LinRefutation(axiom=good.axiom, g=good.g + 1, h=good.h)

    exact = verify_exact(bad)
    randomized = verify_randomized(bad, trials=3, prime=101, seed=0)

    assert not exact
    assert exact.residual == good.axiom
    assert not randomized
    assert randomized.failed_trial is not None


@pytest.mark.parametrize("seed", range(30))
def test_randomized_agrees_with_exact(qq: RationalField, seed: int) -> None:
    """Test that both verifiers agree on valid and edited certificates."""
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    good = build_subset_sum_refutation(n, n + rng.randint(1, 3), qq)
    kind = seed % 3
    if kind == 0:
        refutation = good
    elif kind == 1:
        g = good.g + rng.randint(1, 5)
        refutation = LinRefutation(axiom=good.axiom, g=g, h=good.h)
    else:
        v = rng.randrange(n)
        h = dict(good.h)
        h[v] = h.get(v, SparsePoly.zero(qq, good.axiom.variables)) + 1
        refutation = LinRefutation(axiom=good.axiom, g=good.g, h=h)

    exact = verify_exact(refutation)
    randomized = verify_randomized(refutation, trials=3, seed=seed)

    assert bool(exact) == bool(randomized) == (kind == 0)


def test_randomized_verification_over_q_uses_default_prime(qq: RationalField) -> None:
    """Test that Q certificates are checked modulo the configured prime."""
    verdict = verify_randomized(build_subset_sum_refutation(4, 5, qq), trials=4, seed=2)

    assert verdict
    assert verdict.prime == default_prime()
    assert verdict.trials == 4


def test_randomized_verification_over_prime_field(f101: PrimeField) -> None:
    """Test that F_p certificates draw points from F_p."""
    f = gen_subset_sum(3, 4, f101).require_axiom()
    refutation = certificate_from_inverse(f, boolean_inverse(f).g)

    verdict = verify_randomized(refutation, trials=3)

    assert verdict
    assert verdict.prime == 101


def test_randomized_verification_needs_large_field() -> None:
    """Test that F_5 is too small for a degree-5 identity."""
    field = PrimeField(5)
    table = VarTable.of(["x1", "x2", "x3", "x4"])
    x = [SparsePoly.var(field, table, v) for v in range(4)]
    refutation = LinRefutation(axiom=x[0] + 1, g=x[0] * x[1] * x[2] * x[3])

    with pytest.raises(InvalidParameterError, match="too small"):
        verify_randomized(refutation, trials=1)


def test_create_verifier(qq: RationalField) -> None:
    """Test the verifier factory for both modes and an unknown one."""
    refutation = build_subset_sum_refutation(2, 3, qq)
    randomized = create_verifier("randomized", trials=2, seed=1)

    assert create_verifier("exact").verify(refutation).mode == "exact"
    assert randomized.verify(refutation).trials == 2
    with pytest.raises(InvalidParameterError) as exc_info:
        create_verifier("symbolic")
    assert exc_info.value.valid == ["exact", "randomized"]


# ============================================================================
# Placeholder form and JSON model
# ============================================================================


def test_placeholder_round_trip(qq: RationalField) -> None:
    """Test P = g y + sum h_j z_j and reading g, h back."""
    refutation = build_subset_sum_refutation(3, 4, qq)

    p = refutation.placeholder_poly()

    assert Y_NAME in p.variables.names
    assert z_name("x1") == "z_{x1}"
    assert z_name("x1") in p.variables.names
    assert LinRefutation.from_placeholder_poly(p, refutation.axiom) == refutation


def test_placeholder_shape_errors(qq: RationalField) -> None:
    """Test the shape checks on placeholder polynomials."""
    refutation = build_subset_sum_refutation(2, 3, qq)
    p = refutation.placeholder_poly()
    y = SparsePoly.var(qq, p.variables, Y_NAME)

    with pytest.raises(UnsupportedShapeError, match="no placeholder"):
        LinRefutation.from_placeholder_poly(p + 1, refutation.axiom)
    with pytest.raises(UnsupportedShapeError, match="not linear"):
        LinRefutation.from_placeholder_poly(p * y, refutation.axiom)


def test_certificate_model_round_trip(qq: RationalField) -> None:
    """Test that h is written densely and read back sparsely."""
    refutation = build_subset_sum_refutation(3, 5, qq)

    model = refutation.to_model()

    assert len(model.h) == 3
    assert LinRefutation.from_model(model) == refutation


def test_certificate_parts_share_table(qq: RationalField) -> None:
    """Test that g over another table is refused."""
    f = gen_subset_sum(2, 3, qq).require_axiom()
    other = SparsePoly.var(qq, VarTable.of(["x1", "x2", "x3"]), "x1")

    with pytest.raises(VariableMismatchError, match="share"):
        LinRefutation(axiom=f, g=other)


# ============================================================================
# Lifting
# ============================================================================


def test_lift_blockwise_n4(qq: RationalField) -> None:
    """Test the lifted certificate of the n = 4 blockwise axiom."""
    f = gen_blockwise_binary(4, qq).require_axiom()

    refutation = lift_sparse_refutation(f)

    assert refutation.axiom == f
    assert verify_exact(refutation)
    assert not refutation.g.is_multilinear()


@pytest.mark.parametrize(
    ("coeffs", "shift", "match"),
    [
        ([1, -1], 3, "positive integer"),
        ([1, 1], 1, "cube value"),
    ],
)
def test_lift_rejects_unsupported_shapes(
    qq: RationalField, coeffs: list[int], shift: int, match: str
) -> None:
    """Test the coefficient and shift checks."""
    table = VarTable.of(["x1", "x2"])
    f = SparsePoly.constant(qq, table, Fraction(-shift))
    for v, c in enumerate(coeffs):
        f = f + SparsePoly.var(qq, table, v) * c

    with pytest.raises(UnsupportedShapeError, match=match):
        lift_sparse_refutation(f)


def test_lift_needs_rationals(f101: PrimeField) -> None:
    """Test that lifting is defined over Q only."""
    with pytest.raises(UnsupportedShapeError, match="over Q"):
        lift_sparse_refutation(gen_subset_sum(2, 3, f101).require_axiom())


def test_lift_checks_the_requested_field(qq: RationalField, f101: PrimeField) -> None:
    """Test that the field argument must match the axiom's field."""
    f = gen_subset_sum(3, 4, qq).require_axiom()

    assert verify_exact(lift_sparse_refutation(f, qq))
    with pytest.raises(InvalidParameterError, match="lifting was asked for 'Fp:101'"):
        lift_sparse_refutation(f, f101)


# ============================================================================
# Functional view and elementary-symmetric structure
# ============================================================================


def test_functional_check_on_multilinear_certificate(qq: RationalField) -> None:
    """Test that the subset-sum g is the canonical inverse."""
    report = functional_check_mult_ips(build_subset_sum_refutation(3, 4, qq))

    assert report.verified
    assert report.multilinear
    assert report.cube_points == 8
    assert report.cube_agrees
    assert report.coefficientwise_equal
    assert report.g_degree == 3


def test_functional_check_on_lifted_certificate(qq: RationalField) -> None:
    """Test that a lifted g agrees with 1/f on the cube but not coefficient-wise."""
    f = gen_blockwise_binary(4, qq).require_axiom()

    report = functional_check_mult_ips(lift_sparse_refutation(f))

    assert report.verified
    assert report.cube_agrees
    assert not report.multilinear
    assert not report.coefficientwise_equal


def test_elem_sym_inverse_structure(qq: RationalField) -> None:
    """Test beta' + sum_{i >= d} alpha_i e_{n,i} for e_{4,2} - 7."""
    structure = elem_sym_inverse_structure(4, 2, 7, qq)

    assert structure.symmetric
    assert structure.pattern_ok
    assert structure.beta_prime == "-1/7"
    assert structure.alphas[1] == "0/1"
    assert structure.alphas[2] == "-1/42"
    assert structure.alphas[4] == "-4/7"


@pytest.mark.parametrize("n", range(1, 11))
@pytest.mark.parametrize("which", ["one", "half", "all"])
def test_elem_sym_structure_sweep(qq: RationalField, n: int, which: str) -> None:
    """Test the alpha pattern for d in {1, ceil(n/2), n} and beta = C(n, d) + 1."""
    d = {"one": 1, "half": (n + 1) // 2, "all": n}[which]

    structure = elem_sym_inverse_structure(n, d, comb(n, d) + 1, qq)

    assert structure.symmetric
    assert structure.pattern_ok
    alphas = [qq.parse(a) for a in structure.alphas]
    assert all(a == 0 for a in alphas[1:d])
    assert all(a != 0 for a in alphas[d:])
    assert qq.parse(structure.beta_prime) != 0


def test_elem_sym_structure_guards(qq: RationalField, f101: PrimeField) -> None:
    """Test the characteristic, size and shift checks."""
    with pytest.raises(InvalidParameterError, match="characteristic 0"):
        elem_sym_inverse_structure(4, 2, 7, f101)
    with pytest.raises(InvalidParameterError, match="exceeds"):
        elem_sym_inverse_structure(6, 2, 16, qq, max_n=5)
    with pytest.raises(InvalidParameterError, match="below"):
        elem_sym_inverse_structure(4, 2, 5, qq)
