"""Tests for the axiom family generators and the family registry."""

from fractions import Fraction
import logging

import pytest

from ipslab.algebra import (
    ExtensionField,
    Monomial,
    RationalField,
    SparsePoly,
    VarTable,
    create_field,
)
from ipslab.errors import InvalidParameterError, SizeGuardError
from ipslab.instances import (
    constdeg_shape,
    create_instance,
    elementary_symmetric,
    family_names,
    gen_blockwise_binary,
    gen_elem_sym_axiom,
    gen_quadratic_subset_sum,
    gen_scaled_quadratic,
    gen_setmultilinear_constdeg,
    gen_subset_sum,
    gen_vector_invariant,
    list_valid_constdeg,
    threshold_k,
    valid_blockwise_sizes,
)

# ============================================================================
# Blockwise binary encoding
# ============================================================================


def test_valid_blockwise_sizes() -> None:
    """Test that n = 2^L with L dividing n gives exactly these sizes."""
    assert valid_blockwise_sizes() == [2, 4, 16, 256, 65536]
    assert valid_blockwise_sizes(16) == [2, 4, 16]


def test_blockwise_n4_shape(qq: RationalField) -> None:
    """Test the n = 4 instance: two blocks of two, y0 shared by both empty subsets."""
    instance = gen_blockwise_binary(4, qq)
    f = instance.require_axiom()
    table = f.variables

    assert table.names == ("x1", "x2", "x3", "x4", "y0", "y1", "y2", "y3")
    assert len(f) == 8
    assert f.degree() == 3
    assert f.constant_term() == 1
    assert f.coefficient(table.parse_monomial("y0")) == 2
    assert f.coefficient(table.parse_monomial("x1*x2*y3")) == 1
    assert f.coefficient(table.parse_monomial("x3*y1")) == 1
    assert instance.partition is not None
    assert instance.partition.names(table) == [
        ["x1", "x2"],
        ["x3", "x4"],
        ["y0", "y1", "y2", "y3"],
    ]


def test_blockwise_exclusive_drops_empty_and_full_subsets(qq: RationalField) -> None:
    """Test the proper-subset variant."""
    f = gen_blockwise_binary(4, qq, inclusive=False).require_axiom()

    assert len(f) == 5
    assert f.degree() == 2


@pytest.mark.parametrize("n", [3, 8, 32])
def test_blockwise_rejects_invalid_sizes(qq: RationalField, n: int) -> None:
    """Test that sizes failing the divisibility check list the valid ones."""
    with pytest.raises(InvalidParameterError) as exc_info:
        gen_blockwise_binary(n, qq)

    assert exc_info.value.valid == valid_blockwise_sizes()


def test_blockwise_needs_shift_outside_prime_field(f101) -> None:
    """Test that a prime field cannot host the shift."""
    with pytest.raises(InvalidParameterError, match="extension field"):
        gen_blockwise_binary(4, f101)


def test_blockwise_char2_keeps_y0(f4: ExtensionField) -> None:
    """Test that y0 keeps a unit coefficient over F_4, where 2 * y0 would vanish."""
    instance = gen_blockwise_binary(4, f4)
    f = instance.require_axiom()

    assert f.coefficient(f.variables.parse_monomial("y0")) == f4.one()
    assert len(f) == 8
    assert f.constant_term() == f4.generator()
    assert any("merged into one y0 term" in note for note in instance.descriptor.notes)


def test_blockwise_odd_characteristic_keeps_multiplicity() -> None:
    """Test that y0 carries coefficient N when the characteristic does not divide it."""
    f9 = create_field("Fpk:p=3,k=2")
    f = gen_blockwise_binary(4, f9).require_axiom()

    assert f.coefficient(f.variables.parse_monomial("y0")) == f9.from_int(2)


def test_descriptor_model(qq: RationalField) -> None:
    """Test the serializable descriptor of a blockwise instance."""
    model = gen_blockwise_binary(4, qq).descriptor.to_model()

    assert model.family == "blockwise"
    assert model.block_labels == ["X1", "X2", "Y"]
    assert model.beta == "1/1"
    assert model.params == {"n": 4, "inclusive": True}


# ============================================================================
# Set-multilinear constant degree
# ============================================================================


def test_constdeg_shape_and_listing() -> None:
    """Test the integrality checks."""
    shape = constdeg_shape(4, 4)

    assert shape is not None
    assert (shape.width, shape.row_length, shape.groups) == (2, 4, 2)
    assert shape.sparsity == 32
    assert constdeg_shape(4, 3) is None
    assert constdeg_shape(4, 5) is None
    assert (4, 4) in list_valid_constdeg(16)
    assert (16, 8) in list_valid_constdeg(16)


def test_smconst_smallest_instance(qq: RationalField) -> None:
    """Test (n, c) = (4, 4): 32 set-multilinear terms of degree 5."""
    instance = gen_setmultilinear_constdeg(4, 4, qq)
    f = instance.require_axiom()

    assert len(f.variables) == 32
    assert len(f) == 33
    assert f.degree() == 5
    assert instance.partition is not None
    assert [instance.partition.label(i) for i in range(3)] == ["X1", "X2", "Y"]
    for pi in instance.descriptor.pi_tables:
        assert len(pi) == 16
        assert len(set(pi.values())) == 16


def test_smconst_seeded_bijections_are_deterministic(qq: RationalField) -> None:
    """Test that a seed gives reproducible, non-lexicographic bijections."""
    a = gen_setmultilinear_constdeg(4, 4, qq, seed=7)
    b = gen_setmultilinear_constdeg(4, 4, qq, seed=7)
    plain = gen_setmultilinear_constdeg(4, 4, qq)

    assert a.axiom == b.axiom
    assert a.descriptor.pi_tables == b.descriptor.pi_tables
    assert a.descriptor.pi_tables != plain.descriptor.pi_tables


def test_smconst_rejects_failing_sizes(qq: RationalField) -> None:
    """Test that (n, c) failing the checks raise."""
    with pytest.raises(InvalidParameterError, match="integrality"):
        gen_setmultilinear_constdeg(4, 3, qq)


# ============================================================================
# Subset-sum families
# ============================================================================


def test_subset_sum(qq: RationalField, caplog: pytest.LogCaptureFixture) -> None:
    """Test x1 + x2 + x3 - beta and the warning for a cube value."""
    f = gen_subset_sum(3, 4, qq).require_axiom()

    assert f.constant_term() == -4
    assert len(f) == 4

    with caplog.at_level(logging.WARNING):
        gen_subset_sum(3, 2, qq)
    assert "satisfiable" in caplog.text


def test_quadratic_subset_sum_n1(qq: RationalField) -> None:
    """Test the n = 1 quadratic instance t * x0 * x1 - 2."""
    instance = gen_quadratic_subset_sum(1, qq)
    f = instance.require_axiom()

    assert f.variables.names == ("x0", "x1", "t_{0,1}")
    assert f.coefficient(f.variables.parse_monomial("x0*x1*t_{0,1}")) == 1
    assert f.constant_term() == -2
    assert instance.partition is not None
    assert instance.partition.labels == ("X", "T")


def test_threshold_k_rules() -> None:
    """Test the smallest k with p^k above each threshold."""
    assert threshold_k(1, 2) == 3
    assert threshold_k(1, 2, "rank-bound") == 4
    assert threshold_k(2, 101) == 1
    with pytest.raises(InvalidParameterError):
        threshold_k(1, 2, "other")  # type: ignore[arg-type]


def test_scaled_quadratic_records_threshold(qq: RationalField) -> None:
    """Test the scaled family over its threshold extension and its refusal of Q."""
    field = ExtensionField(2, 4)

    instance = gen_scaled_quadratic(1, field, seed=3)

    assert instance.descriptor.params["threshold_k"] == 3
    assert instance.descriptor.beta == field.generator()
    assert all(field.in_prime_field(a) for a in instance.descriptor.alphas)
    assert not any("differs" in note for note in instance.descriptor.notes)
    with pytest.raises(InvalidParameterError, match="extension field"):
        gen_scaled_quadratic(1, qq)


def test_scaled_quadratic_explicit_alphas(f4: ExtensionField) -> None:
    """Test explicit alphas and the length check."""
    instance = gen_scaled_quadratic(1, f4, alphas=[1])

    assert any("differs" in note for note in instance.descriptor.notes)
    with pytest.raises(InvalidParameterError, match="Expected 1 alphas"):
        gen_scaled_quadratic(1, f4, alphas=[1, 1])


def test_elementary_symmetric(qq: RationalField) -> None:
    """Test e_2 of three variables."""
    table = VarTable.of(["x1", "x2", "x3"])
    x = [SparsePoly.var(qq, table, v) for v in range(3)]

    e2 = elementary_symmetric(qq, table, range(3), 2)

    assert e2 == x[0] * x[1] + x[0] * x[2] + x[1] * x[2]
    assert elementary_symmetric(qq, table, range(3), 0).constant_term() == 1


def test_elem_sym_axiom_default_beta(qq: RationalField) -> None:
    """Test the default shift C(n, d) + 1 and the range check on d."""
    instance = gen_elem_sym_axiom(4, 2, qq)

    assert instance.descriptor.beta == 7
    assert instance.require_axiom().degree() == 2
    with pytest.raises(InvalidParameterError):
        gen_elem_sym_axiom(3, 4, qq)


# ============================================================================
# Vector invariant
# ============================================================================


def test_vector_invariant_n1_is_expanded(qq: RationalField) -> None:
    """Test the single-factor product 1 - t + t (x1 x4 - x2 x3) - beta."""
    instance = gen_vector_invariant(1, 2, qq)
    f = instance.require_axiom()
    table = f.variables

    assert table.names == ("x1", "x2", "x3", "x4", "t_{1,2,3,4}")
    assert f.constant_term() == -1
    assert f.coefficient(table.parse_monomial("x1*x4*t_{1,2,3,4}")) == 1
    assert f.coefficient(table.parse_monomial("x2*x3*t_{1,2,3,4}")) == -1
    assert f.coefficient(table.parse_monomial("t_{1,2,3,4}")) == -1
    for mask in range(1 << 5):
        assert instance.factored.evaluate_mask(mask) == f.evaluate_mask(mask)


def test_vector_invariant_n2_stays_factored(qq: RationalField) -> None:
    """Test that 70 factors are kept unexpanded but still evaluate."""
    instance = gen_vector_invariant(2, 3, qq)

    assert instance.axiom is None
    assert instance.descriptor.params["factors"] == 70
    assert instance.factored.evaluate_mask(0) == Fraction(-2)
    with pytest.raises(InvalidParameterError, match="factored"):
        instance.require_axiom()
    with pytest.raises(SizeGuardError):
        instance.factored.expand()


@pytest.mark.parametrize("spec", ["Fp:2", "Fp:3", "Fpk:p=3,k=2"])
def test_vector_invariant_rejects_small_characteristic(spec: str) -> None:
    """Test that characteristic 2 and 3 are refused."""
    with pytest.raises(InvalidParameterError, match="characteristic"):
        gen_vector_invariant(1, 2, create_field(spec))


@pytest.mark.parametrize("beta", [-1, 0, 1])
def test_vector_invariant_rejects_cube_values(qq: RationalField, beta: int) -> None:
    """Test that beta in {-1, 0, 1} is refused."""
    with pytest.raises(InvalidParameterError, match="cube value"):
        gen_vector_invariant(1, beta, qq)


# ============================================================================
# Registry
# ============================================================================


def test_family_names() -> None:
    """Test that every family is registered."""
    assert family_names() == [
        "blockwise", "esym", "quadratic", "scaled", "smconst", "subset", "vecinv",
    ]


def test_create_instance_ignores_none_params(qq: RationalField) -> None:
    """Test that None parameters fall back to family defaults."""
    instance = create_instance("subset", qq, n=3, beta=None, c=None)

    assert instance.descriptor.beta == 4
    assert instance.require_axiom().coefficient(Monomial.from_mask(1)) == 1


def test_create_instance_unknown_family(qq: RationalField) -> None:
    """Test that an unknown family lists the known ones."""
    with pytest.raises(InvalidParameterError) as exc_info:
        create_instance("nope", qq, n=1)

    assert exc_info.value.valid == family_names()
