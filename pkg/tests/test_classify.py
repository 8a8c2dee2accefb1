"""J1 determining equations, coefficient space, and labels."""

import random
from fractions import Fraction

import pytest

from conftest import LAMBDAS, M, j1_A, one_extra_B, rand_frac, two_extra_B
from linsym import (
    CaseJ1,
    CaseJ2,
    CaseJ3,
    ExpPoly,
    Label,
    Mat2,
    Scalar,
    VectorField,
    admittance_residual,
    branch_coeff_space,
    classify_canonical,
    classify_system,
    determining_residuals,
    h_values,
    solve_coeff_space,
    x1_field,
    x2_field,
)
from linsym.canonical import canonical_system
from linsym.classify import LITERATURE_MARKER, x1bar_field
from linsym.reduction import SystemSpec
from oracles import symmetry_dimension

S = Scalar.coerce


def test_h_values():
    h = h_values(Mat2.zero(), S(1))
    assert (h.h1, h.h2) == (2, 4)
    for lam in LAMBDAS:
        L = S(lam) * S(lam)
        assert h_values(two_extra_B(lam, 3), S(lam)).h2 == 0
        assert h_values(Mat2.scalar(-L), S(lam)).h1 == 0


class TestResiduals:
    def test_one_extra_example(self):
        res = determining_residuals(M([[4, 1], [0, 0]]), S(1), 1, 0)
        assert all(r.is_zero() for r in res)

    def test_two_extra_any_coefficients(self):
        rng = random.Random(1)
        for lam in LAMBDAS:
            B = two_extra_B(lam, rand_frac(rng))
            for _ in range(10):
                c1, c2 = S(rand_frac(rng)), S(rand_frac(rng))
                assert all(r.is_zero() for r in determining_residuals(B, S(lam), c1, c2))

    def test_zero_coefficients(self):
        rng = random.Random(2)
        B = Mat2(*(S(rand_frac(rng)) for _ in range(4)))
        assert all(r.is_zero() for r in determining_residuals(B, S(2), 0, 0))

    def test_match_admittance_of_span(self):
        # the six residuals vanish exactly when C1 Xbar1 + C2 X2 is admitted
        rng = random.Random(3)
        for _ in range(60):
            lam = S(rng.choice(LAMBDAS))
            B = Mat2(*(S(rng.choice([-1, 0, 1, 2])) for _ in range(4)))
            c1, c2 = S(rng.choice([0, 1, -2])), S(rng.choice([0, 1, 3]))
            vf = x1bar_field(B, lam) * c1 + x2_field(lam) * c2
            eqs_zero = all(r.is_zero() for r in determining_residuals(B, lam, c1, c2))
            admitted = admittance_residual(j1_A(lam), B, vf).is_zero()
            assert eqs_zero == admitted or vf.is_zero()


class TestCoeffSpace:
    def test_one_extra(self):
        for lam in LAMBDAS:
            cs = solve_coeff_space(one_extra_B(lam, 2, 1), S(lam))
            assert (cs.dim, cs.c1_free, cs.c2_free) == (1, True, False)

    def test_two_extra(self):
        for lam in LAMBDAS:
            cs = solve_coeff_space(two_extra_B(lam, 1), S(lam))
            assert (cs.dim, cs.c1_free, cs.c2_free) == (2, True, True)

    def test_none(self):
        assert solve_coeff_space(M([[1, 1], [1, 1]]), S(1)).dim == 0

    def test_degenerate_orientation(self):
        # b12 = 0: the reduced equations leave C1 free but Xbar1 vanishes
        B = M([[4, 0], [1, 0]])
        assert x1bar_field(B, S(1)).is_zero()
        assert solve_coeff_space(B, S(1)).dim == 0

    def test_rank_vs_branch_500_random(self):
        rng = random.Random(500)
        disagreements = 0
        hits = {0: 0, 1: 0, 2: 0}
        for i in range(500):
            lam = S(Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2])))
            L = lam * lam
            b12, b21 = S(rand_frac(rng, 3, 2)), S(rand_frac(rng, 3, 2))
            b22 = S(rand_frac(rng, 3, 2))
            kind = i % 4
            if kind == 0:
                B = Mat2(b22 + 4 * L, b12, S(0), b22)
            elif kind == 1:
                B = Mat2(L / 4, b12, S(0), -15 * L / 4)
            elif kind == 2:
                B = Mat2(b22 + 4 * L, b12, b21, b22)
            else:
                B = Mat2(S(rand_frac(rng, 3, 2)), b12, b21, b22)
            rank, branch = solve_coeff_space(B, lam), branch_coeff_space(B, lam)
            disagreements += rank != branch
            hits[rank.dim] += 1
        assert disagreements == 0
        assert all(hits.values())


class TestClassify:
    def test_one_extra(self):
        rep = classify_canonical(CaseJ1(S(1), M([[4, 5], [0, 0]])))
        assert rep.label is Label.J1_ONE_EXTRA
        X1 = rep.generators[-1]
        assert X1.xi.is_zero() and X1.M.a12 == ExpPoly.exp(-2)
        assert X1.M.a11.is_zero() and X1.M.a21.is_zero() and X1.M.a22.is_zero()

    def test_two_extra(self):
        rep = classify_canonical(CaseJ1(S(1), M([[Fraction(1, 4), 1], [0, Fraction(-15, 4)]])))
        assert rep.label is Label.J1_TWO_EXTRA
        X2 = rep.generators[-1]
        e = ExpPoly.exp(-1)
        assert X2 == VectorField(e * 2, Mat2(-e, ExpPoly.zero(), ExpPoly.zero(), e * 3), name=X2.name)

    def test_j2_j3(self):
        assert classify_canonical(CaseJ2(M([[0, 1], [0, 0]]))).label is Label.J2_NO_EXTENSION
        assert classify_canonical(CaseJ3(Mat2.diag(1, 2))).label is Label.J3_NO_EXTENSION

    def test_commuting_marker(self):
        rep = classify_system(SystemSpec(Mat2.zero(), Mat2.diag(1, 2)))
        assert rep.label is Label.COMMUTING_REDUCIBLE
        assert LITERATURE_MARKER in rep.notes
        assert rep.jordan_M is not None and rep.jordan_M.kind.value == "J1"

    def test_h2_zero_whenever_extended(self):
        rng = random.Random(4)
        for _ in range(100):
            lam = S(rng.choice(LAMBDAS))
            B = Mat2(*(S(rng.choice([-4, 0, 1, 4])) for _ in range(4)))
            if rng.random() < 0.5:
                B = one_extra_B(lam, rng.choice([0, 1]), rng.choice([0, 1]))
            if B.a12.is_zero() and B.a21.is_zero():
                continue
            rep = classify_canonical(CaseJ1(lam, B))
            if rep.label in (Label.J1_ONE_EXTRA, Label.J1_TWO_EXTRA):
                assert h_values(rep.canonical.B, rep.canonical.lam).h2 == 0

    def test_mirror_consistency(self):
        # a classified system and its y <-> z mirror get the same label
        rng = random.Random(5)
        for _ in range(40):
            lam = S(rng.choice(LAMBDAS))
            B = one_extra_B(lam, rng.choice([1, 2, -1]), rng.choice([0, 1, -2]))
            if rng.random() < 0.3:
                B = two_extra_B(lam, rng.choice([1, -1]))
            A = j1_A(lam)
            mirror = (Mat2(A.a22, S(0), S(0), A.a11), Mat2(B.a22, B.a21, B.a12, B.a11))
            r1 = classify_system(SystemSpec(A, B))
            r2 = classify_system(SystemSpec(*mirror))
            assert r1.label == r2.label
            assert len(r2.generators_original) == len(r1.generators)


@pytest.mark.parametrize("A, B", [
    (j1_A(1), one_extra_B(1, 1, 0)),
    (j1_A(Fraction(-1, 2)), two_extra_B(Fraction(-1, 2), 2)),
    (j1_A(1), M([[1, 1], [1, 1]])),
    (M([[0, 1], [-1, 0]]), Mat2.diag(1, 2)),
    (M([[0, 1], [-1, 0]]), M([[3, -2], [5, 1]])),
    (M([[0, 1], [0, 0]]), M([[1, 0], [1, 2]])),
    (M([[0, 1], [0, 0]]), M([[2, 7], [0, -1]])),
    (M([[4, 0], [0, 0]]), M([[0, 0], [1, 4]])),  # mirrored one-extra
    (M([[0, 1], [1, 0]]), M([[0, 1], [0, 0]])),
])
def test_generator_count_matches_prolongation_oracle(A, B):
    rep = classify_system(SystemSpec(A, B))
    assert symmetry_dimension(A, B) == len(rep.generators)
