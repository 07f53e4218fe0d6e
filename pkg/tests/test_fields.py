import random
from fractions import Fraction

import pytest

from q8cy.errors import (
    DivisionByZero,
    InfiniteField,
    MixedFields,
    NoSquareRootOfMinusOne,
)
from q8cy.fields import (
    FieldSpec,
    arith,
    enumerate_field,
    field_for,
    is_prime,
    parse_field_string,
    sqrt_minus_one,
)

F13 = FieldSpec("prime", p=13)
F5 = FieldSpec("prime", p=5)
F7 = FieldSpec("prime", p=7)
F9 = FieldSpec("prime_ext", p=3, k=2)
QQ = FieldSpec("rational")
QI = FieldSpec("gaussian_rational")

ALL_SPECS = (F13, F5, F9, QQ, QI, FieldSpec("prime_ext", p=13, k=2))


def test_arith_examples():
    f = field_for(F13)
    assert arith(f.scalar(5), f.scalar(8), "mul").value == 1
    q = field_for(QQ)
    assert arith(q.scalar(Fraction(1, 3)), q.scalar(Fraction(2, 3)), "add").value == 1
    with pytest.raises(DivisionByZero):
        arith(f.scalar(7), f.scalar(0), "div")


def test_scalar_operators():
    f = field_for(F13)
    a, b = f.scalar(9), f.scalar(6)
    assert (a + b).value == 2
    assert (a - b).value == 3
    assert (a * b).value == 2
    assert (a / b).value == f.mul(9, f.inv(6))
    assert (-a).value == 4
    assert a == f.scalar(9) and a != b


def test_mixed_fields_rejected():
    a = field_for(F13).scalar(1)
    b = field_for(F5).scalar(1)
    with pytest.raises(MixedFields):
        _ = a + b
    with pytest.raises(MixedFields):
        arith(a, b, "mul")


def test_sqrt_minus_one_values():
    assert sqrt_minus_one(F13).value == 5
    assert sqrt_minus_one(F5).value == 2
    assert sqrt_minus_one(QI).value == (Fraction(0), Fraction(1))
    with pytest.raises(NoSquareRootOfMinusOne):
        sqrt_minus_one(F7)
    with pytest.raises(NoSquareRootOfMinusOne):
        sqrt_minus_one(QQ)


def test_sqrt_minus_one_squares_to_minus_one():
    for spec in (F13, F5, F9, QI, FieldSpec("prime_ext", p=13, k=2),
                 FieldSpec("prime", p=29), FieldSpec("prime", p=101)):
        f = field_for(spec)
        i = f.sqrt_minus_one()
        assert f.add(f.mul(i, i), f.one) == f.zero, spec


def test_sqrt_is_canonical_smallest_residue():
    for p in (5, 13, 17, 29, 37):
        f = field_for(FieldSpec("prime", p=p))
        roots = [x for x in range(p) if (x * x + 1) % p == 0]
        assert f.sqrt_minus_one() == min(roots)


def test_enumerate_field():
    assert [s.value for s in enumerate_field(F5)] == [0, 1, 2, 3, 4]
    nine = list(enumerate_field(F9))
    assert len(nine) == 9
    assert len({s.value for s in nine}) == 9
    with pytest.raises(InfiniteField):
        next(iter(enumerate_field(QQ)))


def test_enumerate_yields_qk_distinct_values():
    for spec in (F13, F9, FieldSpec("prime_ext", p=5, k=3)):
        f = field_for(spec)
        vals = list(f.elements())
        assert len(vals) == f.size()
        assert len(set(vals)) == f.size()


def test_field_axioms_on_random_triples():
    for spec in ALL_SPECS:
        f = field_for(spec)
        rng = random.Random(2024)
        for _ in range(1000):
            a = f.random_element(rng)
            b = f.random_element(rng)
            c = f.random_element(rng)
            assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
            assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
            if b != f.zero:
                assert f.mul(f.mul(a, b), f.inv(b)) == a


def test_canonical_residues():
    f = field_for(F13)
    assert f.from_int(-1) == 12
    assert f.from_int(13) == 0
    assert f.sub(0, 5) == 8


def test_ext_field_arithmetic():
    f = field_for(F9)
    x = (0, 1)
    # the default modulus for F_9 is x^2 + 1, so x^2 = -1
    assert f.spec.modulus_poly == (1, 0, 1)
    assert f.mul(x, x) == f.neg(f.one)
    assert f.mul(x, f.inv(x)) == f.one


def test_spec_validation():
    with pytest.raises(ValueError):
        FieldSpec("prime", p=12)
    with pytest.raises(ValueError):
        FieldSpec("prime", p=2)
    with pytest.raises(ValueError):
        FieldSpec("prime_ext", p=5, k=2, modulus_poly=(4, 0, 1))  # x^2-1 splits
    with pytest.raises(ValueError):
        FieldSpec("unknown")
    assert is_prime(2**61 - 1)
    assert not is_prime(2**60)


def test_parse_field_string():
    assert parse_field_string("fp:13") == F13
    assert parse_field_string("fp:13^2").k == 2
    assert parse_field_string("qi") == QI
    assert parse_field_string("q") == QQ
    with pytest.raises(ValueError):
        parse_field_string("gf13")


def test_format_parse_roundtrip():
    rng = random.Random(7)
    for spec in ALL_SPECS:
        f = field_for(spec)
        for _ in range(50):
            a = f.random_element(rng)
            assert f.parse(f.format(a)) == a


def test_field_spec_json_roundtrip():
    for spec in ALL_SPECS:
        assert FieldSpec.from_json(spec.to_json()) == spec
