"""
Element and matrix expressions.

Grammar (no implicit multiplication, so 'v1v2' is one unknown symbol):

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' uint)?
    atom     := rational | symbol | '(' expr ')' | '-' atom
    rational := int ('/' uint)?
    symbol   := letter (letter | digit)*

A leading minus binds to the atom, so '-x^2' is (-x)^2.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

import pyparsing as pp

from config.settings import settings
from determinants.matpoly import RingMatrix
from rings.errors import (ExponentOverflowError, ExpressionError, ExpressionSyntaxError, MatrixCellError,
                          RaggedMatrixError, UnknownGeneratorError)
from rings.ringcore import RingBackend

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Number:
    value: Fraction


@dataclass(frozen=True)
class Symbol:
    name: str


@dataclass(frozen=True)
class Negation:
    operand: "Node"


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Product:
    factors: Tuple["Node", ...]


@dataclass(frozen=True)
class Sum:
    """First term is added; each later term carries its sign."""
    first: "Node"
    rest: Tuple[Tuple[str, "Node"], ...]


Node = Union[Number, Symbol, Negation, Power, Product, Sum]


def _number(s, loc, tokens):
    numerator, _, denominator = tokens[0].partition("/")
    if denominator and int(denominator) == 0:
        raise pp.ParseFatalException(s, loc, "zero denominator")
    return Number(Fraction(int(numerator), int(denominator) if denominator else 1))


def _factor(tokens):
    if len(tokens) == 1:
        return tokens[0]
    return Power(tokens[0], int(tokens[1]))


def _term(tokens):
    if len(tokens) == 1:
        return tokens[0]
    return Product(tuple(tokens))


def _expr(tokens):
    if len(tokens) == 1:
        return tokens[0]
    rest = tuple((tokens[i], tokens[i + 1]) for i in range(1, len(tokens), 2))
    return Sum(tokens[0], rest)


def _build_grammar() -> pp.ParserElement:
    expr = pp.Forward()
    atom = pp.Forward()

    rational = pp.Regex(r"\d+(?:\s*/\s*\d+)?").set_parse_action(
        lambda s, loc, t: _number(s, loc, ["".join(t[0].split())]))
    symbol = pp.Word(pp.alphas, pp.alphanums).set_parse_action(lambda t: Symbol(t[0]))
    group = pp.Suppress("(") + expr + pp.Suppress(")")
    negation = (pp.Suppress("-") + atom).set_parse_action(lambda t: Negation(t[0]))
    atom <<= rational | symbol | group | negation

    factor = (atom + pp.Optional(pp.Suppress("^") + pp.Word(pp.nums))).set_parse_action(_factor)
    term = (factor + pp.ZeroOrMore(pp.Suppress("*") + factor)).set_parse_action(_term)
    expr <<= (term + pp.ZeroOrMore(pp.one_of("+ -") + term)).set_parse_action(_expr)
    return expr


_GRAMMAR = _build_grammar()


def parse_ast(text: str) -> Node:
    """
    Parse text into an expression tree.

    Raises:
        ExpressionSyntaxError: with the 1-based line and column of the problem
    """
    try:
        return _GRAMMAR.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as e:
        raise ExpressionSyntaxError(e.msg, e.lineno, e.col) from None


def evaluate(node: Node, backend: RingBackend, symbols: Optional[Dict[str, Any]] = None):
    """
    Value of an expression tree in a backend; products keep their left-to-right order.

    Raises:
        UnknownGeneratorError: for a symbol the backend does not define
        ExponentOverflowError: for an exponent above NILCAYLEY_MAX_EXPONENT
    """
    symbols = backend.symbols() if symbols is None else symbols
    if isinstance(node, Number):
        return backend.from_rational(node.value)
    if isinstance(node, Symbol):
        if node.name not in symbols:
            raise UnknownGeneratorError(node.name, symbols.keys())
        return symbols[node.name]
    if isinstance(node, Negation):
        return -evaluate(node.operand, backend, symbols)
    if isinstance(node, Power):
        if node.exponent > settings.max_exponent:
            raise ExponentOverflowError(
                f"exponent {node.exponent} exceeds NILCAYLEY_MAX_EXPONENT={settings.max_exponent}")
        return evaluate(node.base, backend, symbols) ** node.exponent
    if isinstance(node, Product):
        result = evaluate(node.factors[0], backend, symbols)
        for factor in node.factors[1:]:
            result = result * evaluate(factor, backend, symbols)
        return result
    if isinstance(node, Sum):
        result = evaluate(node.first, backend, symbols)
        for sign, term in node.rest:
            value = evaluate(term, backend, symbols)
            result = result + value if sign == "+" else result - value
        return result
    raise TypeError(f"not an expression node: {node!r}")


def parse_element(text: str, backend: RingBackend, symbols: Optional[Dict[str, Any]] = None):
    """Parse and evaluate one element of the backend."""
    return evaluate(parse_ast(text), backend, symbols)


_CELL = pp.Regex(r"[^,\[\]]+")
_ROW = pp.Group(pp.Suppress("[") + pp.DelimitedList(_CELL) + pp.Suppress("]"))
_MATRIX = pp.Suppress("[") + pp.DelimitedList(_ROW) + pp.Suppress("]")


def parse_matrix(text: str, backend: RingBackend, n: Optional[int] = None) -> RingMatrix:
    """
    Parse '[[e11, e12], [e21, e22]]' into a RingMatrix.

    Args:
        text: bracketed rows of element expressions
        backend: backend the cells are evaluated in
        n: expected size; inferred from the row count when omitted

    Raises:
        ExpressionSyntaxError: if the bracket structure is malformed
        RaggedMatrixError: if the rows are not n cells each, or not n of them
        MatrixCellError: for an element error, with the 1-based cell coordinates
    """
    try:
        rows: List[List[str]] = [list(row) for row in _MATRIX.parse_string(text, parse_all=True)]
    except pp.ParseBaseException as e:
        raise ExpressionSyntaxError(e.msg, e.lineno, e.col) from None

    size = len(rows) if n is None else n
    lengths = [len(row) for row in rows]
    if len(rows) != size or any(length != size for length in lengths):
        raise RaggedMatrixError(f"expected {size} rows of {size} cells, got row lengths {lengths}")

    symbols = backend.symbols()
    entries = []
    for i, row in enumerate(rows):
        values = []
        for j, cell in enumerate(row):
            try:
                values.append(parse_element(cell, backend, symbols))
            except ExpressionError as e:
                raise MatrixCellError(i + 1, j + 1, e) from e
        entries.append(values)
    logger.debug("Parsed %dx%d matrix over %s", size, size, backend.describe())
    return RingMatrix(backend, entries)
