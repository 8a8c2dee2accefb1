"""Scalars, 2x2 matrices, real Jordan forms, exp-polynomials, exp(tA)."""

import math
import random
from fractions import Fraction

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import WORKED_A, WORKED_B, M, rand_mat
from linsym import ExpPoly, Mat2, Scalar, commutator, mat_exp_numeric, real_jordan
from linsym.errors import ConflictingDiscriminant, MalformedInput, SingularP, UnsupportedDiscriminant
from linsym.linalg import JordanKind

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


class TestScalar:
    def test_parse_forms(self):
        assert Scalar.parse("3/4") == Scalar(Fraction(3, 4))
        assert Scalar.parse({"rat": "1", "ext": "2", "d": 3}) == Scalar(1, 2, 3)
        with pytest.raises(MalformedInput):
            Scalar.parse("1/0")
        with pytest.raises(MalformedInput):
            Scalar.parse("abc")

    def test_square_free_normalization(self):
        # sqrt(12) = 2 sqrt(3)
        assert Scalar(0, 1, 12) == Scalar(0, 2, 3)

    def test_extension_arithmetic(self):
        r = Scalar(0, 1, 2)
        assert r * r == Scalar(2)
        assert (Scalar(1, 1, 2) * Scalar(1, -1, 2)) == Scalar(-1)
        assert (Scalar(1, 1, 2) / Scalar(1, 1, 2)) == Scalar(1)

    def test_mixed_extensions_rejected(self):
        with pytest.raises(ConflictingDiscriminant):
            Scalar(0, 1, 2) + Scalar(0, 1, 3)

    def test_sqrt(self):
        assert Scalar(Fraction(9, 4)).sqrt() == Scalar(Fraction(3, 2))
        assert Scalar(33).sqrt() == Scalar(0, 1, 33)
        with pytest.raises(UnsupportedDiscriminant):
            Scalar(1, 1, 2).sqrt()  # would need a nested radical
        with pytest.raises(UnsupportedDiscriminant):
            Scalar(3).sqrt(d_hint=2)

    def test_exact_sign(self):
        # 1 - sqrt(2) < 0 < 3 - 2 sqrt(2)
        assert Scalar(1, -1, 2).sign() == -1
        assert Scalar(3, -2, 2).sign() == 1
        assert Scalar(3, -2, 2) > 0

    def test_json_roundtrip(self):
        for s in (Scalar(Fraction(-7, 3)), Scalar(Fraction(1, 4), Fraction(-1, 44), 33)):
            assert Scalar.parse(s.to_json()) == s

    @given(fracs, fracs, fracs, fracs)
    def test_field_laws_in_q_sqrt5(self, a, b, c, d):
        x, y = Scalar(a, b, 5), Scalar(c, d, 5)
        assert (x + y) - y == x
        assert x * y == y * x
        if not y.is_zero():
            assert (x / y) * y == x
        assert math.isclose(float(x * y), float(x) * float(y), rel_tol=1e-9, abs_tol=1e-9)


class TestCommutator:
    def test_worked_example(self):
        assert commutator(WORKED_A, WORKED_B) == M([[-1, 0], [0, 1]])

    def test_identity_commutes(self, rng):
        B = rand_mat(rng)
        assert commutator(Mat2.identity(), B).is_zero()

    def test_j1_fixture(self):
        assert commutator(M([[0, 0], [0, 4]]), M([[4, 1], [0, 0]])) == M([[0, -4], [0, 0]])

    def test_bilinear_and_alternating(self, rng):
        for _ in range(50):
            A, B, C = rand_mat(rng), rand_mat(rng), rand_mat(rng)
            k = Scalar(Fraction(rng.randint(-5, 5), rng.randint(1, 5)))
            assert commutator(A + C * k, B) == commutator(A, B) + commutator(C, B) * k
            assert commutator(A, A).is_zero()

    def test_singular_inverse(self):
        with pytest.raises(SingularP):
            M([[1, 2], [2, 4]]).inv()


class TestRealJordan:
    def test_diagonal_untouched(self):
        jr = real_jordan(Mat2.diag(2, 3))
        assert jr.kind is JordanKind.J1 and jr.J == Mat2.diag(2, 3) and jr.P == Mat2.identity()

    def test_swap_matrix(self):
        jr = real_jordan(WORKED_A)
        assert jr.kind is JordanKind.J1
        assert jr.J == Mat2.diag(1, -1)
        assert jr.P == M([[Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 2), Fraction(-1, 2)]])
        assert jr.P * WORKED_A * jr.P.inv() == jr.J

    def test_rotation_block(self):
        A = M([[0, 1], [-1, 0]])
        jr = real_jordan(A)
        assert jr.kind is JordanKind.J2 and jr.J == A and jr.P == Mat2.identity()

    def test_nilpotent_block(self):
        A = M([[0, 1], [0, 0]])
        jr = real_jordan(A)
        assert jr.kind is JordanKind.J3 and jr.J == A and jr.P == Mat2.identity()

    def test_j2_orientation_gives_positive_c(self):
        jr = real_jordan(M([[1, -2], [2, 1]]))
        assert jr.kind is JordanKind.J2
        assert jr.J == M([[1, 2], [-2, 1]])

    def test_repeated_diagonalizable_is_j1(self):
        jr = real_jordan(Mat2.scalar(3))
        assert jr.kind is JordanKind.J1 and jr.eigen == (Scalar(3), Scalar(3))

    def test_irrational_eigenvalues(self):
        A = M([[1, 2], [3, 4]])
        jr = real_jordan(A)
        assert jr.J.is_diagonal()
        assert jr.eigen[0] == Scalar(Fraction(5, 2), Fraction(1, 2), 33)
        assert jr.P * A * jr.P.inv() == jr.J

    def test_declared_discriminant_conflict(self):
        with pytest.raises(UnsupportedDiscriminant):
            real_jordan(M([[1, 2], [3, 4]]), d=2)

    def test_round_trip_200_random(self):
        rng = random.Random(7)
        kinds = set()
        for i in range(200):
            A = rand_mat(rng, 4, 3)
            if i % 4 == 0:  # force a repeated eigenvalue now and then
                A = Mat2(A.a11, A.a12, Scalar(0), A.a11)
            jr = real_jordan(A)
            kinds.add(jr.kind)
            assert jr.P.inv() * jr.J * jr.P == A
            if jr.kind is JordanKind.J2:
                assert jr.J.a12 > 0 and jr.J.a11 == jr.J.a22
            if jr.kind is JordanKind.J3:
                assert jr.J.a12 == 1 and jr.J.a21.is_zero()
        assert kinds == set(JordanKind)


small_terms = st.lists(
    st.tuples(st.integers(-4, 4).filter(bool), st.integers(0, 3), st.integers(-2, 2)),
    max_size=4)


def _ep(terms):
    out = ExpPoly.zero()
    for c, k, mu in terms:
        out = out + ExpPoly.monomial(k, c, mu)
    return out


class TestExpPoly:
    def test_derive_examples(self):
        e = ExpPoly.exp(-2)
        assert e.derive() == ExpPoly.exp(-2, -2)
        assert ExpPoly.const(1).derive().is_zero()
        xe = ExpPoly.monomial(1, 1, -2)
        assert xe.derive() == ExpPoly.exp(-2) + ExpPoly.monomial(1, -2, -2)

    @settings(max_examples=150, deadline=None)
    @given(small_terms, small_terms)
    def test_derivation_rules(self, p, q):
        p, q = _ep(p), _ep(q)
        assert (p + q).derive() == p.derive() + q.derive()
        assert (p * q).derive() == p.derive() * q + p * q.derive()

    @settings(max_examples=60, deadline=None)
    @given(small_terms, st.floats(-1.5, 1.5))
    def test_numeric_derivative(self, p, x):
        p = _ep(p)
        h = 1e-6
        fd = (p(x + h) - p(x - h)) / (2 * h)
        assert abs(fd - p.derive()(x)) < 1e-5 * max(1.0, abs(fd))

    def test_shift_carries_constant_exponent(self):
        p = ExpPoly.exp(-2).shift_x(1)
        assert math.isclose(p(0.3), math.exp(-2 * 1.3))
        assert p.constant_value() is None
        # shifting back restores the original exactly
        assert p.shift_x(-1) == ExpPoly.exp(-2)
        assert p.derive() == p * -2

    def test_scale_x(self):
        p = ExpPoly.monomial(2, 3, 1)
        assert math.isclose(p.scale_x(2)(0.4), p(0.8))

    def test_json_roundtrip(self):
        p = ExpPoly.monomial(1, Scalar(Fraction(2, 3)), -1) + ExpPoly.exp(-2).shift_x(1)
        assert ExpPoly.from_json(p.to_json()) == p

    def test_term_order_canonical(self):
        a = ExpPoly.exp(1) + ExpPoly.monomial(2, 1, -1) + ExpPoly.const(5)
        b = ExpPoly.const(5) + ExpPoly.exp(1) + ExpPoly.monomial(2, 1, -1)
        assert a == b and a.to_json() == b.to_json()


class TestMatExp:
    def test_zero(self):
        assert np.allclose(mat_exp_numeric(Mat2.zero(), 2.7), np.eye(2), atol=0)

    def test_involution(self):
        # A^2 = I: exp(sA) = cosh(s) I + sinh(s) A
        got = mat_exp_numeric(WORKED_A, 1.0)
        want = np.array([[math.cosh(1), math.sinh(1)], [math.sinh(1), math.cosh(1)]])
        assert np.allclose(got, want, atol=1e-14, rtol=0)

    def test_diagonal(self):
        assert np.allclose(mat_exp_numeric(Mat2.diag(1, 2), math.log(2)), np.diag([2.0, 4.0]),
                           atol=1e-13, rtol=0)

    def test_against_scipy_and_group_law(self):
        rng = random.Random(11)
        for _ in range(200):
            A = rand_mat(rng, 5, 3)
            s, t = rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)
            ref = scipy.linalg.expm(A.to_float() * t)
            assert np.allclose(mat_exp_numeric(A, t), ref, rtol=1e-10, atol=1e-10)
            lhs = mat_exp_numeric(A, s) @ mat_exp_numeric(A, t)
            assert np.allclose(lhs, mat_exp_numeric(A, s + t), rtol=1e-10, atol=1e-10)

    def test_near_defective(self):
        A = M([[1, 1], [Fraction(1, 10**12), 1]])
        assert np.allclose(mat_exp_numeric(A, 0.5), scipy.linalg.expm(0.5 * A.to_float()),
                           rtol=1e-12, atol=1e-12)
