"""
Tests for exact linear algebra over Q, checked against sympy.
"""

import random
from fractions import Fraction

import pytest
import sympy

from rings.errors import SingularMatrixError
from rings.linalg import Subspace, inverse, matmul, rref, vandermonde


def _sympy(matrix):
    return sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in matrix])


def _fractions(matrix):
    return [[Fraction(int(c.p), int(c.q)) for c in row] for row in matrix.tolist()]


def test_subspace_rref_is_unique():
    space = Subspace(2, [{0: Fraction(2), 1: Fraction(4)}, {1: Fraction(1)}])
    assert space == Subspace.full(2)
    assert space.rank == 2
    assert space.pivots == (0, 1)


def test_subspace_membership_and_complement():
    space = Subspace(4, [{0: 1, 2: 1}, {1: 1, 2: -1}])
    assert space.contains({0: 2, 1: 3, 2: -1})
    assert not space.contains({2: 1})
    assert space.complement() == (2, 3)
    assert space.reduce({0: 1}) == {2: Fraction(-1)}


def test_absorb_reports_growth():
    space = Subspace.zero(3)
    assert space.absorb({0: 1, 1: 1})
    assert not space.absorb({0: 2, 1: 2})
    assert space.rank == 1
    assert not space.absorb({})


def test_rows_match_sympy_rref():
    rng = random.Random(5)
    vectors = [{i: Fraction(rng.randint(-3, 3)) for i in range(5)} for _ in range(3)]
    space = Subspace(5, vectors)
    dense = [[v.get(i, 0) for i in range(5)] for v in vectors]
    reduced, pivots = _sympy(dense).rref()
    expected = [row for row in _fractions(reduced) if any(row)]
    assert [list(row) for row in space.rows] == expected
    assert space.pivots == tuple(pivots)


def test_batch_rref_pivots():
    reduced, pivots = rref([[0, 2, 4], [0, 1, 3], [0, 0, 0]])
    assert pivots == [1, 2]
    assert reduced == [[0, 1, 0], [0, 0, 1]]


@pytest.mark.parametrize("seed", range(5))
def test_inverse_matches_sympy(seed):
    rng = random.Random(seed)
    while True:
        M = [[Fraction(rng.randint(-4, 4), rng.choice((1, 2))) for _ in range(4)] for _ in range(4)]
        if _sympy(M).det() != 0:
            break
    assert inverse(M) == _fractions(_sympy(M).inv())
    identity = [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]
    assert matmul(M, inverse(M)) == identity


def test_inverse_of_singular_matrix():
    with pytest.raises(SingularMatrixError):
        inverse([[1, 2], [2, 4]])


def test_vandermonde_rows():
    assert vandermonde([0, 2]) == [[1, 0], [1, 2]]
