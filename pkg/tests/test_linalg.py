"""Exact linear algebra against sympy matrices."""

import random
from fractions import Fraction
from math import gcd

import pytest
import sympy

from coxforge.errors import SingularMatrixError
from coxforge.linalg import (
    clear_denominators,
    invert,
    nullspace,
    primitive_integer_vector,
    rank,
    rref,
    solve,
)


def random_matrix(rng, nrows, ncols, lo=-6, hi=6):
    return [[Fraction(rng.randint(lo, hi), rng.randint(1, 3))
             for _ in range(ncols)] for _ in range(nrows)]


def to_sympy(rows):
    return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator)
                          if isinstance(v, Fraction) else v for v in row]
                         for row in rows])


def test_rank_matches_sympy():
    rng = random.Random(51)
    for _ in range(60):
        nrows, ncols = rng.randint(1, 6), rng.randint(1, 6)
        rows = random_matrix(rng, nrows, ncols)
        assert rank(rows) == to_sympy(rows).rank()


def test_rank_low_rank_constructions():
    rng = random.Random(52)
    for _ in range(30):
        base = random_matrix(rng, 2, 5)
        rows = [[a + b for a, b in zip(base[0], base[1])], base[0],
                [3 * v for v in base[1]], base[1]]
        assert rank(rows) == to_sympy(rows).rank()


def test_nullspace_vectors_annihilate_and_count():
    rng = random.Random(53)
    for _ in range(60):
        nrows, ncols = rng.randint(1, 5), rng.randint(1, 6)
        rows = random_matrix(rng, nrows, ncols)
        basis = nullspace(rows, ncols)
        assert len(basis) == ncols - rank(rows)
        for vec in basis:
            assert all(sum(r * v for r, v in zip(row, vec)) == 0 for row in rows)
        assert rank(list(basis)) == len(basis) if basis else True


def test_nullspace_is_canonical_reduced_basis():
    rows = [[1, 1, 1, 1, 1], [1, 2, 3, 4, 5]]
    assert nullspace(rows, 5) == [
        (1, -2, 1, 0, 0), (2, -3, 0, 1, 0), (3, -4, 0, 0, 1)]


def test_rref_pivots_and_idempotence():
    rng = random.Random(54)
    for _ in range(40):
        rows = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        reduced, pivots = rref(rows)
        again, pivots2 = rref(reduced)
        assert again == reduced and pivots2 == pivots
        for k, j in enumerate(pivots):
            assert reduced[k][j] == 1
            assert all(reduced[i][j] == 0 for i in range(len(reduced)) if i != k)


def test_solve_and_invert_match_sympy():
    rng = random.Random(55)
    done = 0
    while done < 30:
        n = rng.randint(1, 5)
        rows = random_matrix(rng, n, n)
        if to_sympy(rows).det() == 0:
            continue
        done += 1
        rhs = [Fraction(rng.randint(-5, 5)) for _ in range(n)]
        x = solve(rows, rhs)
        assert [sum(r * v for r, v in zip(row, x)) for row in rows] == rhs
        inv = invert(rows)
        assert to_sympy(inv) == to_sympy(rows) ** -1


def test_singular_solve_raises():
    with pytest.raises(SingularMatrixError):
        solve([[1, 2], [2, 4]], [1, 0])
    with pytest.raises(SingularMatrixError):
        invert([[0, 0], [0, 0]])


def test_clear_denominators_gives_integer_multiples():
    row = [Fraction(1, 2), Fraction(2, 3), Fraction(0)]
    cleared = clear_denominators(row)
    assert all(isinstance(v, int) for v in cleared)
    ratio = Fraction(cleared[0], 1) / row[0]
    assert [Fraction(v) for v in cleared] == [v * ratio for v in row]


def test_primitive_integer_vector_normalization():
    vec = primitive_integer_vector([Fraction(-2, 3), Fraction(4, 3), Fraction(0)])
    assert vec == (1, -2, 0)
    g = gcd(gcd(vec[0], vec[1]), vec[2])
    assert g == 1
    assert next(v for v in vec if v) > 0
