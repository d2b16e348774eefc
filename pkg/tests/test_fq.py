import pytest

from ffgon.errors import MalformedInput
from ffgon.fq import Field, field, is_prime


FIELDS = [field(2), field(3), field(5), field(2, 2), field(2, 3), field(3, 2), field(2, 4)]


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}")
def test_field_axioms_exhaustive(F):
    q = F.q
    for a in range(q):
        assert F.add(a, 0) == a
        assert F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in range(q):
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            for c in range(q):
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
                assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
                assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}")
def test_element_count_and_encoding(F):
    assert len(set(F.elements())) == F.q == F.p ** F.e
    for a in F.elements():
        assert F.from_coeffs(F.to_coeffs(a)) == a


def test_frobenius_fixed_field():
    # a^q = a for all a; a^p = a exactly on the prime field
    F = field(2, 3)
    for a in F.elements():
        assert F.pow(a, F.q) == a
    prime_fixed = [a for a in F.elements() if F.pow(a, F.p) == a]
    assert sorted(prime_fixed) == [0, 1]


def test_bad_inputs_rejected():
    with pytest.raises(MalformedInput):
        Field(4)
    with pytest.raises(MalformedInput):
        Field(2, 2, modulus=(0, 0, 1))  # u^2 is reducible
    with pytest.raises(MalformedInput):
        Field(2, 6)  # no default modulus shipped


def test_custom_modulus():
    # x^2 + x + 2 over F_3 (irreducible: no roots)
    F = Field(3, 2, modulus=(2, 1, 1))
    assert F.q == 9
    for a in range(1, 9):
        assert F.mul(a, F.inv(a)) == 1


def test_elem_text_roundtrip():
    for F in FIELDS:
        for a in F.elements():
            assert F.elem_parse(F.elem_str(a)) == a


def test_is_prime_small():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
