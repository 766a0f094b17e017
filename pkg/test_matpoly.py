"""
Tests for ring matrices, central polynomials and right substitution.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from determinants.matpoly import (CentralPoly, PolynomialRing, RingMatrix, lift_matrix, matrix_image,
                                  poly_eval_left, poly_eval_right, random_matrix)
from rings.errors import BackendMismatchError
from rings.findim import from_grassmann, quotient
from rings.grassmann import GrassmannBackend
from rings.linalg import Subspace
from rings.ringcore import RationalRing, SampleSpec, Sampler

seeds = st.integers(min_value=0, max_value=10 ** 6)


@pytest.fixture
def e2():
    return GrassmannBackend(2)


def test_trace_is_not_cyclic_over_grassmann(e2):
    v1, v2 = e2.generators()
    A = RingMatrix.diagonal(e2, [v1, 0])
    B = RingMatrix.diagonal(e2, [v2, 0])
    assert (A * B).trace() == v1 * v2
    assert (B * A).trace() == -(v1 * v2)
    assert (A * B).trace() != (B * A).trace()


def test_identity_and_powers(e2):
    v1, v2 = e2.generators()
    A = RingMatrix(e2, [[v1, v2], [0, v1]])
    assert A ** 0 == RingMatrix.identity(e2, 2)
    assert (A * A).is_zero()
    assert RingMatrix.identity(GrassmannBackend(3), 2).trace() == 2


def test_matrix_arithmetic_with_scalars():
    Q = RationalRing()
    A = RingMatrix(Q, [[1, 2], [3, 4]])
    assert A + A == 2 * A
    assert A - A == RingMatrix.zero(Q, 2)
    assert (A * A)[0, 1] == 10
    assert str(A * Fraction(1, 2)) == "[[1/2, 1], [3/2, 2]]"


def test_shape_and_backend_errors(e2):
    with pytest.raises(ValueError):
        RingMatrix(e2, [[1, 2]])
    with pytest.raises(ValueError):
        RingMatrix(e2, [[1]]) + RingMatrix.identity(e2, 2)
    with pytest.raises(BackendMismatchError):
        RingMatrix.identity(e2, 2) * RingMatrix.identity(GrassmannBackend(3), 2)
    with pytest.raises(BackendMismatchError):
        RingMatrix(e2, [[GrassmannBackend(3).generator(1)]])


def test_polynomial_product_keeps_coefficient_order(e2):
    v1, v2 = e2.generators()
    ring = PolynomialRing(e2)
    p = ring.constant(v1) + ring.x()
    q = ring.constant(v2) + ring.x()
    assert p * q == CentralPoly(e2, [v1 * v2, v1 + v2, 1])
    assert q * p == CentralPoly(e2, [-(v1 * v2), v1 + v2, 1])
    assert (p * q).degree == 2
    assert CentralPoly(e2, [1, 0, 0]).degree == 0
    assert CentralPoly(e2).degree == -1


def test_polynomial_render(e2):
    v1, v2 = e2.generators()
    p = CentralPoly(e2, [v1 * v2, -2 * v1, 0, 2])
    assert str(p) == "2*x^3 - 2*v1*x + v1*v2"
    assert str(CentralPoly(e2, [1, v1 + v2])) == "(v1 + v2)*x + 1"


def test_evaluate_at_rational(e2):
    v1, _ = e2.generators()
    p = CentralPoly(e2, [v1, 1, 1])
    assert p.evaluate_at(2) == v1 + 6


def test_right_substitution(e2):
    v1, v2 = e2.generators()
    A = RingMatrix(e2, [[0, v1], [v2, 0]])
    assert poly_eval_right(A, CentralPoly(e2, [0, 1])) == A
    value = poly_eval_right(A, CentralPoly(e2, [-(v1 * v2), 0, 1]))
    assert value == RingMatrix(e2, [[0, 0], [0, -2 * v1 * v2]])


def test_substitution_side_matters(e2):
    v1, v2 = e2.generators()
    A = RingMatrix.diagonal(e2, [v1, 0])
    p = CentralPoly(e2, [0, v2])
    assert poly_eval_right(A, p) == RingMatrix.diagonal(e2, [v1 * v2, 0])
    assert poly_eval_left(p, A) == RingMatrix.diagonal(e2, [v2 * v1, 0])
    assert poly_eval_right(A, p) != poly_eval_left(p, A)


def test_substitution_needs_matching_backend(e2):
    with pytest.raises(BackendMismatchError):
        poly_eval_right(RingMatrix.identity(e2, 2), CentralPoly(GrassmannBackend(3), [1]))


def test_matrix_image_and_lift():
    alg = from_grassmann(2)
    q = quotient(alg, Subspace(4, [{3: 1}]))
    s = alg.symbols()
    A = RingMatrix(alg, [[s["v1"] + 3 * s["v1"] * s["v2"], 0], [0, s["v2"]]])
    image = matrix_image(A, q)
    assert image[0, 0] == q.algebra.symbols()["v1"]
    assert lift_matrix(image, q)[0, 0] == s["v1"]
    with pytest.raises(BackendMismatchError):
        lift_matrix(A, q)


@given(seeds)
@hsettings(max_examples=15, deadline=None)
def test_matrix_image_is_multiplicative(seed):
    alg = from_grassmann(3)
    q = quotient(alg, Subspace(8, [{7: 1}]))
    sampler = Sampler(alg, SampleSpec(seed))
    A, B = random_matrix(sampler, 2), random_matrix(sampler, 2)
    assert matrix_image(A * B, q) == matrix_image(A, q) * matrix_image(B, q)


@given(seeds)
@hsettings(max_examples=15, deadline=None)
def test_matrix_multiplication_is_associative(seed):
    sampler = Sampler(GrassmannBackend(4), SampleSpec(seed))
    A, B, C = (random_matrix(sampler, 2) for _ in range(3))
    assert (A * B) * C == A * (B * C)
