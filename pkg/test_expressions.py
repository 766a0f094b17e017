"""
Tests for the element and matrix expression parser.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from config.settings import settings
from cli.expressions import Negation, Number, Power, Symbol, parse_ast, parse_element, parse_matrix
from determinants.matpoly import RingMatrix, random_matrix
from rings.errors import (ExponentOverflowError, ExpressionSyntaxError, MatrixCellError, RaggedMatrixError,
                          UnknownGeneratorError)
from rings.findim import from_grassmann, upper_triangular
from rings.grassmann import GrassmannBackend
from rings.relfree import build
from rings.ringcore import RationalRing, SampleSpec, Sampler

seeds = st.integers(min_value=0, max_value=10 ** 6)


def test_grassmann_expression():
    E = GrassmannBackend(2)
    v1, v2 = E.generators()
    assert parse_element("v1*v2 - v2*v1", E) == 2 * v1 * v2
    assert parse_element("(1 + v1)^2", E) == 1 + 2 * v1
    assert parse_element("3/4", E) == E.from_rational(Fraction(3, 4))


def test_leading_minus_binds_to_the_atom():
    assert parse_ast("-x^2") == Power(Negation(Symbol("x")), 2)
    assert parse_ast("7/2") == Number(Fraction(7, 2))
    E = GrassmannBackend(2)
    assert not parse_element("-v1^2", E)
    assert parse_element("-3/2*v1", E) == Fraction(-3, 2) * E.generator(1)


def test_relfree_expression():
    rel = build(2, 3, 5)
    x, y = rel.letter(1), rel.letter(2)
    value = parse_element("(1/2)*x^2 + y", rel.algebra)
    assert value == Fraction(1, 2) * x * x + y
    assert parse_element("x*y - y*x", rel.algebra) == x * y - y * x


def test_rational_expression():
    assert parse_element("(1/2 + 1/3) * 6", RationalRing()) == 5


@pytest.mark.parametrize("text,symbol", [("v3", "v3"), ("v1v2", "v1v2"), ("2*w + v1", "w")])
def test_unknown_generators(text, symbol):
    with pytest.raises(UnknownGeneratorError) as info:
        parse_element(text, GrassmannBackend(2))
    assert info.value.symbol == symbol


@pytest.mark.parametrize("text", ["2x", "(v1 + ", "v1 ** 2", "1/0", ""])
def test_syntax_errors(text):
    with pytest.raises(ExpressionSyntaxError):
        parse_element(text, GrassmannBackend(2))


def test_syntax_error_position():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_element("v1 + * v2", GrassmannBackend(2))
    assert info.value.line == 1
    assert info.value.column > 1


def test_exponent_cap(monkeypatch):
    monkeypatch.setattr(settings, "max_exponent", 64)
    with pytest.raises(ExponentOverflowError):
        parse_element("v1^100", GrassmannBackend(2))
    assert not parse_element("v1^64", GrassmannBackend(2))


def test_parse_matrix():
    E = GrassmannBackend(4)
    A = parse_matrix("[[v1, v2], [v3, v4]]", E)
    assert A == RingMatrix(E, [E.generators()[:2], E.generators()[2:]])
    assert parse_matrix("[[0,1],[1,0]]", RationalRing(), 2)[0, 1] == 1


def test_ragged_matrix():
    with pytest.raises(RaggedMatrixError):
        parse_matrix("[[v1], [v2]]", GrassmannBackend(2))
    with pytest.raises(RaggedMatrixError):
        parse_matrix("[[v1, v2], [0, 0]]", GrassmannBackend(2), n=3)


def test_bad_cell_reports_coordinates():
    with pytest.raises(MatrixCellError) as info:
        parse_matrix("[[v1, v9], [0, 0]]", GrassmannBackend(4))
    assert (info.value.row, info.value.column) == (1, 2)
    assert isinstance(info.value.cause, UnknownGeneratorError)


def test_malformed_brackets():
    with pytest.raises(ExpressionSyntaxError):
        parse_matrix("[[v1, v2], [v3, v4]", GrassmannBackend(4))


@given(seeds)
@hsettings(max_examples=25, deadline=None)
def test_rendered_elements_parse_back(seed):
    for backend in (GrassmannBackend(4), upper_triangular(from_grassmann(2), 2), build(2, 3, 4).algebra):
        x = Sampler(backend, SampleSpec(seed)).element()
        assert parse_element(str(x), backend) == x


@given(seeds)
@hsettings(max_examples=10, deadline=None)
def test_rendered_matrices_parse_back(seed):
    E = GrassmannBackend(3)
    A = random_matrix(Sampler(E, SampleSpec(seed)), 2)
    assert parse_matrix(A.render(), E, 2) == A
