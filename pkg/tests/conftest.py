import random
from fractions import Fraction

import pytest

from linsym import Mat2, Scalar


def M(rows):
    return Mat2.from_rows(rows)


def rand_frac(rng: random.Random, num: int = 6, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_mat(rng: random.Random, num: int = 6, den: int = 4) -> Mat2:
    return Mat2(*(Scalar(rand_frac(rng, num, den)) for _ in range(4)))


# y'' = A y' + B y from the worked example with AB - BA = diag(-1, 1)
WORKED_A = M([[0, 1], [1, 0]])
WORKED_B = M([[0, 1], [0, 0]])

LAMBDAS = (Fraction(1), Fraction(-1, 2), Fraction(3))


def j1_A(lam) -> Mat2:
    return Mat2.diag(0, 4 * Scalar.coerce(lam))


def one_extra_B(lam, b12, b22) -> Mat2:
    lam, b22 = Scalar.coerce(lam), Scalar.coerce(b22)
    return Mat2(b22 + 4 * lam * lam, Scalar.coerce(b12), Scalar(0), b22)


def two_extra_B(lam, b12) -> Mat2:
    L = Scalar.coerce(lam) ** 2
    return Mat2(L / 4, Scalar.coerce(b12), Scalar(0), -15 * L / 4)


@pytest.fixture
def rng():
    return random.Random(20240601)
