import pytest

from fullwit.errors import SizeGuardError
from fullwit.gf import FieldSpec, field, find_modulus, is_prime


def test_find_modulus_examples():
    assert find_modulus(2, 1) == (0, 1)
    assert find_modulus(2, 2) == (1, 1, 1)
    assert find_modulus(3, 1) == (0, 1)
    # low-degree-first comparison puts x^3 + x^2 + 1 before x^3 + x + 1
    assert find_modulus(2, 3) == (1, 0, 1, 1)


def test_find_modulus_is_deterministic():
    assert find_modulus(3, 2) == find_modulus(3, 2)


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        FieldSpec(2, 2, (0, 0, 1))  # x^2
    with pytest.raises(ValueError):
        FieldSpec(2, 2, (1, 0, 1))  # (x + 1)^2


def test_non_monic_modulus_rejected():
    with pytest.raises(ValueError):
        FieldSpec(3, 2, (1, 1, 2))


def test_nonprime_p_rejected():
    with pytest.raises(ValueError):
        field(4)
    with pytest.raises(ValueError):
        field(1)


def test_table_limit_guard():
    with pytest.raises(SizeGuardError):
        field(2, 10)


def test_is_prime():
    assert [m for m in range(20) if is_prime(m)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_f5_inverse():
    assert field(5).inv(2) == 3


def test_f4_product():
    # x * x = x + 1 modulo x^2 + x + 1
    assert field(2, 2).mul(2, 2) == 3


def test_additive_identity():
    spec = field(3, 2)
    for a in spec.elements():
        assert spec.add(a, 0) == a
        assert spec.add(a, spec.neg(a)) == 0


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        field(7).inv(0)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_prime_field_matches_integer_arithmetic(p):
    spec = field(p)
    for a in range(p):
        for b in range(p):
            assert spec.add(a, b) == (a + b) % p
            assert spec.mul(a, b) == (a * b) % p


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2)])
def test_frobenius_is_additive(p, k):
    spec = field(p, k)
    for a in spec.elements():
        for b in spec.elements():
            assert spec.pow(spec.add(a, b), p) == spec.add(spec.pow(a, p), spec.pow(b, p))


def test_inverses_are_inverses():
    spec = field(3, 2)
    for a in range(1, spec.q):
        assert spec.mul(a, spec.inv(a)) == 1


def test_trace_identity_on_prime_field():
    spec = field(5)
    for a in spec.elements():
        assert spec.trace(a) == a


def test_trace_example_f4():
    assert field(2, 2).trace(2) == 1


def test_trace_of_zero():
    for spec in (field(2, 2), field(3, 2), field(2, 3)):
        assert spec.trace(0) == 0


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2)])
def test_trace_fibers_have_equal_size(p, k):
    spec = field(p, k)
    counts = [0] * p
    for a in spec.elements():
        counts[spec.trace(a)] += 1
    assert counts == [spec.q // p] * p


def test_spec_equality_and_hash():
    assert field(2, 2) == FieldSpec(2, 2, (1, 1, 1))
    assert hash(field(2, 2)) == hash(FieldSpec(2, 2, (1, 1, 1)))
    assert field(2, 2) != field(2, 1)


def test_encode_decode_roundtrip():
    spec = field(3, 2)
    for a in spec.elements():
        assert spec.encode(spec.decode(a)) == a
