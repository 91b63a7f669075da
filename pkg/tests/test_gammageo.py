import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from tropvol.errors import MalformedInput, NonStabilized, SingularMatrix
from tropvol.gammageo import (DefinableSet, affine_image, box, chi_prime, chi_truncated, fiber,
                              formula_from_json, formula_to_json, half_open_ppd, interval,
                              normalize, parse_formula, point, product, project)
from tropvol.gammageo import euler, lp
from tropvol.gammageo.formula import Constraint

from formulas import random_formula
from oracles import chi_bounded_oracle, chi_prime_oracle


def S(text, n=None):
    return DefinableSet.parse(text, n)


class TestParser:
    def test_chained_and_connectives(self):
        f, n = parse_formula("0 <= x1 < 1 & (x2 > 0 | x2 = -1)")
        assert n == 2
        assert f.holds([F(1, 2), F(3)])
        assert f.holds([0, -1])
        assert not f.holds([1, 1])

    def test_coefficients_and_fractions(self):
        f, n = parse_formula("2x1 - 3x2 <= 5/2")
        assert n == 2
        assert f.holds([0, 0]) and not f.holds([2, 0])

    def test_lines_conjoin_and_dim(self):
        f, n = parse_formula("dim 3\n# comment\nx1 >= 0\nx1 < 1\n")
        assert n == 3
        assert f.holds([0, 7, 7]) and not f.holds([1, 0, 0])

    def test_negation(self):
        f, _ = parse_formula("not (x < 0) and ~(x > 1)")
        assert f.holds([0]) and f.holds([1]) and not f.holds([2])

    def test_errors_carry_position(self):
        with pytest.raises(MalformedInput) as exc:
            parse_formula("x1 <= 1\nx1 $ 2")
        assert exc.value.line == 2
        assert exc.value.col is not None
        with pytest.raises(MalformedInput):
            parse_formula("x3 <= 1", 2)

    def test_json_round_trip(self):
        f, n = parse_formula("0 <= x1 < 1 | ~(x2 = 3)")
        g = formula_from_json(formula_to_json(f), n)
        assert normalize(f, n).equals(normalize(g, n))

    def test_constraint_display(self):
        assert str(Constraint((-1, 0), "<=", -1)) == "x1 >= 1"
        assert str(Constraint((2, -3), "<=", F(5, 2))) == "2x1 - 3x2 <= 5/2"


class TestNormalize:
    def test_absorption(self):
        out = S("x >= 0 | x >= 1")
        assert len(out.cells) == 1
        assert out.equals(S("x >= 0"))

    def test_difference(self):
        out = normalize(parse_formula("x >= 0")[0] - parse_formula("x >= 1")[0], 1)
        assert len(out.cells) == 1
        assert out.equals(interval(0, 1))

    def test_empty(self):
        assert S("x < 0 & x > 1").cells == ()

    def test_deterministic(self):
        f, n = parse_formula("(x1 + x2 < 2 | x1 = 0) & x2 >= -1")
        assert str(normalize(f, n)) == str(normalize(f, n))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_cells_disjoint_and_exact(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 3)
        f = random_formula(rng, n, rng.randint(1, 5))
        out = normalize(f, n)
        cells = out.cells
        for i in range(len(cells)):
            for j in range(i):
                rows = cells[i].rows() + cells[j].rows()
                assert not lp.feasible(rows, n)
        # sample points of each cell satisfy the formula
        for c in cells:
            assert f.holds(c.sample())
        # and grid points agree
        pts = [F(k, 2) for k in range(-8, 9)]
        for _ in range(20):
            x = [rng.choice(pts) for _ in range(n)]
            assert (x in out) == f.holds(x)


class TestChiPrime:
    def test_examples(self):
        assert chi_prime(S("x = 0")) == 1
        assert chi_prime(S("0 <= x < 1")) == 0
        assert chi_prime(S("x >= 0")) == 1
        assert chi_prime(S("0 < x1 < 1 & 0 < x2 < 1")) == 1
        assert chi_prime(box([0, 0], [1, 1])) == 1
        assert chi_prime(DefinableSet.empty(2)) == 0

    def test_more_values(self):
        assert chi_prime(S("0 < x < 1")) == -1
        assert chi_prime(S("x > 0")) == 0
        assert chi_prime(DefinableSet.everything(2)) == 1
        assert chi_prime(S("x1 >= 0 & x2 >= 0")) == 1
        assert chi_prime(S("x1 > 0 & x2 >= 0")) == 0

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_matches_oracle(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 3)
        f = random_formula(rng, n, rng.randint(1, 6))
        assert chi_prime(normalize(f, n)) == chi_prime_oracle(f, n)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_bounded_matches_face_sum(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 2)
        f = random_formula(rng, n, rng.randint(1, 4))
        for i in range(n):
            f = f & parse_formula("-4 <= x%d <= 4" % (i + 1), n)[0]
        assert chi_prime(normalize(f, n)) == chi_bounded_oracle(f, n)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_additive(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 3)
        A = normalize(random_formula(rng, n, rng.randint(1, 4)), n)
        B = normalize(random_formula(rng, n, rng.randint(1, 4)), n)
        assert chi_prime(A | B) == chi_prime(A) + chi_prime(B) - chi_prime(A & B)
        assert chi_prime(A) == chi_prime(A - B) + chi_prime(A & B)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_multiplicative(self, seed):
        rng = random.Random(seed)
        n1, n2 = rng.randint(1, 2), 1
        A = normalize(random_formula(rng, n1, rng.randint(1, 3)), n1)
        B = normalize(random_formula(rng, n2, rng.randint(1, 3)), n2)
        assert chi_prime(product(A, B)) == chi_prime(A) * chi_prime(B)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_affine_invariance(self, seed):
        rng = random.Random(seed)
        A = normalize(random_formula(rng, 2, rng.randint(1, 4)), 2)
        mats = [[[1, 1], [0, 1]], [[0, 1], [1, 0]], [[-1, 0], [2, 1]], [[2, 1], [1, 1]]]
        M = rng.choice(mats)
        shift = [F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(2)]
        assert chi_prime(affine_image(A, M, shift)) == chi_prime(A)

    def test_non_stabilized_is_reported(self, monkeypatch):
        monkeypatch.setattr(euler, "stabilization_bound", lambda S: 1)
        with pytest.raises(NonStabilized) as exc:
            chi_prime(S("x >= 2"))
        assert tuple(exc.value.values) == (0, 1)

    def test_truncation(self):
        assert chi_truncated(S("x > 0"), 3) == 0
        assert chi_truncated(S("x >= 5"), 3) == 0
        assert chi_truncated(S("x >= 5"), 6) == 1


class TestConstructions:
    def test_product(self):
        sq = product(interval(0, 1), interval(0, 1))
        assert sq.equals(S("0 <= x1 < 1 & 0 <= x2 < 1"))
        assert chi_prime(sq) == 0
        assert product(DefinableSet.empty(1), interval(0, 1)).cells == ()
        A = S("x < 3")
        assert product(A, point([2])).equals(S("x1 < 3 & x2 = 2"))

    def test_affine_image(self):
        A = interval(0, 1)
        assert affine_image(A, [[1]]).equals(A)
        assert affine_image(A, [[1]], [3]).equals(interval(3, 4))
        sq = box([0, 0], [1, 1])
        sheared = affine_image(sq, [[1, 1], [0, 1]])
        assert [2, 1] in sheared and [0, 1] not in sheared
        assert chi_prime(sheared) == chi_prime(sq)
        hsq = product(interval(0, 1), interval(0, 1))
        assert chi_prime(affine_image(hsq, [[1, 1], [0, 1]])) == 0
        with pytest.raises(SingularMatrix):
            affine_image(sq, [[1, 1], [1, 1]])

    def test_half_open_ppd(self):
        assert half_open_ppd([[3]]).equals(interval(0, 3))
        assert half_open_ppd([[1, 0], [0, 1]]).equals(product(interval(0, 1), interval(0, 1)))
        P = half_open_ppd([[2, 1], [1, 2]])
        assert chi_prime(P) == 0
        assert [0, 0] in P and [3, 3] not in P and [2, 1] not in P
        assert chi_prime(half_open_ppd([[2, 1], [1, 2]], closed=True)) == 1
        with pytest.raises(SingularMatrix):
            half_open_ppd([[1, 2], [2, 4]])

    def test_project_and_fiber(self):
        A = S("x1 < 3 & x1 >= -1")
        B = S("0 < x < 2")
        assert project(product(A, B), [0]).equals(A)
        T = S("0 <= x2 & x2 < x1")
        assert fiber(T, [2]).equals(interval(0, 2))
        assert fiber(T, [0]).cells == ()
        tri = S("x1 >= 0 & x2 >= 0 & x1 + x2 <= 1")
        assert project(tri, [1]).equals(box([0], [1]))
        assert fiber(tri, [F(1, 3)], fixed=[1]).equals(box([0], [F(2, 3)]))

    def test_json_round_trip(self):
        A = S("0 <= x1 < 1 | x2 = 3")
        assert DefinableSet.from_json(A.to_json()).equals(A)
