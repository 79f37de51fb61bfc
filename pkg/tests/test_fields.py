from fractions import Fraction

import pytest

from cilines.errors import ConstraintViolated, ParseError
from cilines.fields import RATIONALS, field_from_str, is_prime, prime_field


def test_primality_small():
    primes = [2, 3, 5, 7, 11, 1_000_003, (1 << 61) - 1]
    composites = [1, 0, 4, 9, 561, 1_000_001, 2_047]  # 561 Carmichael, 2047 = 23*89
    assert all(is_prime(p) for p in primes)
    assert not any(is_prime(c) for c in composites)


def test_field_construction_guards():
    with pytest.raises(ConstraintViolated):
        prime_field(6)
    with pytest.raises(ConstraintViolated):
        prime_field(1 << 62)
    assert prime_field(5).characteristic == 5
    assert RATIONALS.characteristic == 0


def test_arithmetic_mod_p():
    f = prime_field(7)
    assert f.add(5, 4) == 2
    assert f.mul(3, 5) == 1
    assert f.inv(3) == 5
    assert f.neg(2) == 5
    assert f.make(-1) == 6
    assert f.make(Fraction(1, 2)) == 4  # 2 * 4 = 8 = 1


def test_arithmetic_rationals():
    f = RATIONALS
    assert f.div(f.make(1), f.make(3)) == Fraction(1, 3)
    assert f.inv(Fraction(2, 5)) == Fraction(5, 2)
    with pytest.raises(ZeroDivisionError):
        f.inv(f.zero)


def test_parse_and_str_roundtrip():
    assert field_from_str("Q") is RATIONALS
    assert field_from_str("F:11").p == 11
    with pytest.raises(ParseError):
        field_from_str("GF(4)")
    f = prime_field(13)
    assert field_from_str(str(f)) == f
    assert f.parse("7/2") == f.div(f.make(7), f.make(2))
    with pytest.raises(ParseError):
        f.parse("x")
