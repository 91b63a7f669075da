import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from tropvol.errors import MalformedInput
from tropvol.gammageo import box, half_open_ppd, interval, normalize, point, product
from tropvol.motclass import (ONE, ZERO, L, MotClass, class_of_torus, mot_add, mot_mul,
                              mot_pow, vol_polyhedral)

from formulas import random_formula

polys = st.lists(st.integers(-5, 5), max_size=5).map(MotClass)


class TestRing:
    def test_examples(self):
        assert mot_add(L - 1, ONE) == L
        assert mot_mul(L - 1, L + 1) == L ** 2 - 1
        assert mot_pow(L - 1, 0) == ONE

    def test_canonical_form(self):
        assert MotClass([1, 2, 0, 0]).coeffs == (1, 2)
        assert MotClass([0, 0]) == ZERO
        assert ZERO.is_zero() and ZERO.degree is None
        assert (L - L).coeffs == ()

    def test_rejects_non_integers(self):
        with pytest.raises(TypeError):
            MotClass([F(1, 2)])
        with pytest.raises(ValueError):
            L ** -1

    @given(polys, polys, polys)
    def test_ring_laws(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == ZERO

    @given(polys, st.integers(-3, 3))
    def test_evaluation_is_a_homomorphism(self, a, x):
        b = L ** 2 - 3
        assert (a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x)
        assert (a + b).evaluate(x) == a.evaluate(x) + b.evaluate(x)


class TestTorus:
    def test_examples(self):
        assert class_of_torus(0) == ONE
        assert class_of_torus(1) == L - 1
        assert class_of_torus(3) == MotClass([-1, 3, -3, 1])

    def test_euler_specialization(self):
        for n in range(1, 6):
            assert class_of_torus(n).evaluate(1) == 0
        assert class_of_torus(0).evaluate(1) == 1


class TestFormatting:
    def test_pretty(self):
        assert str(class_of_torus(2)) == "L^2 - 2L + 1"
        assert str(ZERO) == "0"
        assert str(L) == "L"
        assert str(-L ** 3 + 4) == "-L^3 + 4"

    def test_json(self):
        c = class_of_torus(2)
        assert c.to_json() == {"poly": [1, -2, 1]}
        assert MotClass.from_json(c.to_json()) == c
        with pytest.raises(MalformedInput):
            MotClass.from_json({"poly": [1.5]})
        with pytest.raises(MalformedInput):
            MotClass.from_json([1, 2])


class TestVolPolyhedral:
    def test_examples(self):
        assert vol_polyhedral(point([0])) == L - 1
        assert vol_polyhedral(interval(0, 1)) == ZERO
        assert vol_polyhedral(box([0, 0], [1, 1])) == (L - 1) ** 2

    def test_boxes(self):
        for n in range(1, 5):
            assert vol_polyhedral(box([-1] * n, [F(3, 2)] * n)) == class_of_torus(n)

    def test_fundamental_domains_vanish(self):
        for E in ([[3]], [[2, 1], [1, 2]], [[1, 0, 0], [1, 2, 0], [0, -1, 3]]):
            assert vol_polyhedral(half_open_ppd(E)).is_zero()

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_additive_and_multiplicative(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 2)
        A = normalize(random_formula(rng, n, rng.randint(1, 4)), n)
        B = normalize(random_formula(rng, n, rng.randint(1, 4)), n)
        assert vol_polyhedral(A - B) + vol_polyhedral(A & B) == vol_polyhedral(A)
        C = normalize(random_formula(rng, 1, rng.randint(1, 3)), 1)
        assert vol_polyhedral(product(A, C)) == vol_polyhedral(A) * vol_polyhedral(C)
