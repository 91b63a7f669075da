from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from tropvol.errors import MalformedInput
from tropvol.valfield import ONE, Monomial, mono_mul, mono_pow, parse_fraction, trop

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero = rationals.filter(lambda x: x != 0)
monomials = st.builds(Monomial, nonzero, rationals)


def M(c, e):
    return Monomial(F(c), F(e))


class TestExamples:
    def test_mul(self):
        assert mono_mul(M(2, F(1, 2)), M(3, F(1, 3))) == M(6, F(5, 6))
        assert mono_mul(ONE, M(F(7, 3), -2)) == M(F(7, 3), -2)
        assert mono_mul(M(2, 1), M(F(1, 2), -1)) == ONE

    def test_pow(self):
        assert mono_pow(M(5, F(3, 7)), 0) == ONE
        assert mono_pow(M(2, F(3, 2)), -2) == M(F(1, 4), -3)
        assert mono_pow(M(1, 1), 5) == M(1, 5)

    def test_trop(self):
        assert trop(M(5, 0)) == 0
        assert trop(M(1, 1)) == 1
        assert trop(M(2, F(3, 2))) == F(3, 2)


def test_zero_coefficient_rejected():
    with pytest.raises(ValueError):
        Monomial(F(0), F(1))


def test_floats_rejected():
    with pytest.raises(TypeError):
        Monomial(0.5, 1)


def test_json_round_trip():
    m = M(F(-3, 4), F(5, 2))
    assert m.to_json() == {"coeff": "-3/4", "exp": "5/2"}
    assert Monomial.from_json(m.to_json()) == m
    assert Monomial.from_json({"coeff": 2, "exp": 1}) == M(2, 1)


def test_json_rejects_garbage():
    with pytest.raises(MalformedInput):
        Monomial.from_json({"coeff": "x", "exp": 1})
    with pytest.raises(MalformedInput):
        parse_fraction(1.5)


@given(monomials, monomials)
def test_trop_is_a_homomorphism(a, b):
    assert trop(mono_mul(a, b)) == trop(a) + trop(b)


@given(monomials, st.integers(-4, 4), st.integers(-4, 4))
def test_power_law(a, j, k):
    assert mono_pow(a, j + k) == mono_mul(mono_pow(a, j), mono_pow(a, k))


@given(monomials, monomials, monomials)
def test_group_laws(a, b, c):
    assert mono_mul(a, b) == mono_mul(b, a)
    assert mono_mul(mono_mul(a, b), c) == mono_mul(a, mono_mul(b, c))
    assert mono_mul(a, ONE) == a
    assert mono_mul(a, a.inverse()) == ONE
