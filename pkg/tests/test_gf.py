"""
Tests for the finite field module.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convertible_codes.errors import FieldMismatchError, PreconditionError
from convertible_codes.gf import (
    FieldSpec,
    add,
    exponents_to_elements,
    inv,
    mul,
    multiplicative_order,
    nth_root_of_unity,
    power,
    primitive_element,
)

SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
GF256 = FieldSpec.from_order(256)


def test_prime_field_arithmetic(gf13):
    """Test that GF(13) adds, multiplies and inverts modulo 13."""
    assert add(gf13.element(7), gf13.element(9)).value == 3
    assert mul(gf13.element(5), gf13.element(8)).value == 1
    assert inv(gf13.element(3)).value == 9
    assert power(gf13.element(2), 6).value == 12


def test_gf16_uses_pinned_modulus(gf16):
    """Test that GF(16) is built on x^4 + x + 1 with the integer encoding."""
    assert gf16.modulus == (1, 0, 0, 1, 1)
    assert str(gf16) == "GF(2^4)"
    assert (gf16.element(13) + gf16.element(13)).value == 0
    assert (gf16.element(6) * gf16.element(7)).value == 1
    assert inv(gf16.element(6)).value == 7
    assert (gf16.element(2) ** 4).value == 3


def test_identities(gf13, gf16):
    """Test that zero and one act as identities and inverses of one are one."""
    for spec in (gf13, gf16):
        one, zero = spec.element(1), spec.element(0)
        for a in spec.elements():
            assert (a + zero) == a
            assert (a * one) == a
            assert (a**0) == one
        assert inv(one) == one


def test_negative_power_inverts_first(gf13):
    """Test that a negative exponent is the power of the inverse."""
    a = gf13.element(6)
    assert power(a, -3) == power(inv(a), 3)
    assert (a / a).value == 1


def test_zero_has_no_inverse(gf13):
    """Test that inverting zero raises a precondition error."""
    with pytest.raises(PreconditionError):
        inv(gf13.element(0))
    with pytest.raises(PreconditionError):
        power(gf13.element(0), -1)


def test_mixed_fields_rejected(gf13, gf11):
    """Test that elements of different fields cannot be combined."""
    with pytest.raises(FieldMismatchError):
        add(gf13.element(1), gf11.element(1))


def test_primitive_element(gf13, gf16):
    """Test that the smallest generator is picked in both worked fields."""
    assert primitive_element(gf13).value == 2
    assert primitive_element(gf16).value == 2
    assert multiplicative_order(primitive_element(FieldSpec(11))) == 10
    with pytest.raises(PreconditionError):
        primitive_element(FieldSpec(2))


def test_nth_root_of_unity(gf13):
    """Test that roots of unity have exactly the requested order."""
    assert nth_root_of_unity(gf13, 2).value == 12
    assert nth_root_of_unity(gf13, 4).value == 8
    assert nth_root_of_unity(gf13, 1).value == 1
    assert multiplicative_order(nth_root_of_unity(gf13, 6)) == 6
    with pytest.raises(PreconditionError):
        nth_root_of_unity(gf13, 5)


def test_exponents_to_elements(gf13):
    """Test that exponents map to powers of the primitive element."""
    assert exponents_to_elements(gf13, range(1, 6)) == (2, 4, 8, 3, 6)
    assert exponents_to_elements(gf13, [0, 12]) == (1, 1)


def test_field_spec_validation():
    """Test that invalid characteristics, orders and moduli are rejected."""
    with pytest.raises(PreconditionError):
        FieldSpec(4)
    with pytest.raises(PreconditionError):
        FieldSpec.from_order(6)
    with pytest.raises(PreconditionError):
        FieldSpec(2, 4, (1, 0, 0, 0, 1))  # (x + 1)^4
    with pytest.raises(PreconditionError):
        FieldSpec.from_order(1 << 17)
    with pytest.raises(PreconditionError):
        FieldSpec(13).element(13)


def test_explicit_irreducible_modulus():
    """Test that an irreducible but non-primitive modulus is accepted."""
    spec = FieldSpec(2, 4, (1, 1, 1, 1, 1))
    assert spec.q == 16
    assert spec != FieldSpec.from_order(16)


def test_array_rejects_out_of_range(gf13):
    """Test that canonical integers outside [0, q) are refused."""
    with pytest.raises(PreconditionError):
        gf13.array([1, 13])
    with pytest.raises(FieldMismatchError):
        gf13.array(FieldSpec(11).array([1, 2]))


def test_random_vector_is_seeded(gf13):
    """Test that random vectors depend only on the generator state."""
    a = gf13.random_vector(np.random.default_rng(5), 8)
    b = gf13.random_vector(np.random.default_rng(5), 8)
    assert a == b
    assert all(0 <= v < 13 for v in a)


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_field_axioms_exhaustive(q):
    """Test the field axioms on every triple of elements of small fields."""
    spec = FieldSpec.from_order(q)
    GF = spec.galois_field()
    a, b, c = (GF(x.ravel()) for x in np.meshgrid(np.arange(q), np.arange(q), np.arange(q)))
    assert np.array_equal(a + b, b + a)
    assert np.array_equal(a * b, b * a)
    assert np.array_equal((a + b) + c, a + (b + c))
    assert np.array_equal((a * b) * c, a * (b * c))
    assert np.array_equal(a * (b + c), a * b + a * c)
    nonzero = GF(np.arange(1, q))
    assert np.all(nonzero * np.reciprocal(nonzero) == GF(1))
    assert np.all(GF(np.arange(q)) + (-GF(np.arange(q))) == GF(0))


@settings(max_examples=200, deadline=None)
@given(
    st.integers(0, 255),
    st.integers(0, 255),
    st.integers(1, 255),
)
def test_element_operators_agree_with_functions(a, b, c):
    """Test that FieldElement operators match add/mul/inv in GF(256)."""
    x, y, z = GF256.element(a), GF256.element(b), GF256.element(c)
    assert x + y == add(x, y)
    assert (x - y) + y == x
    assert x * y == mul(x, y)
    assert (x * z) / z == x
    assert -(-x) == x
    assert z ** (GF256.q - 1) == GF256.element(1)
