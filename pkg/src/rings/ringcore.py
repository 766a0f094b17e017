"""
Ring foundation: exact rational scalars, the backend contract every concrete
ring implements, seeded sampling and the commutator combinators.
"""

import re
import random
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from rings.errors import BackendMismatchError

logger = logging.getLogger(__name__)

# The base field is Q; Fraction keeps lowest terms with a positive denominator.
Rational = Fraction
Scalar = Union[int, Fraction]

_RATIONAL_TEXT = re.compile(r"\s*(-?\d+)(?:\s*/\s*(\d+))?\s*")

# Generator tuples are swept exhaustively before random trials up to this many.
GENERATOR_SWEEP_LIMIT = 4096


def is_scalar(value: Any) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def to_rational(value: Scalar) -> Fraction:
    if not is_scalar(value):
        raise TypeError(f"expected an int or Fraction, got {type(value).__name__}")
    return Fraction(value)


def render_rational(value: Scalar) -> str:
    return str(Fraction(value))


def parse_rational(text: str) -> Fraction:
    """Inverse of render_rational; accepts 'p' or 'p/q' with q > 0."""
    match = _RATIONAL_TEXT.fullmatch(text)
    if not match or match.group(2) == "0":
        raise ValueError(f"not a rational literal: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) else 1
    return Fraction(numerator, denominator)


def render_terms(terms: Iterable[Tuple[Fraction, str]]) -> str:
    """
    Canonical text for a linear combination.

    Args:
        terms: (coefficient, label) pairs in display order; '' labels the unit

    Returns:
        Text such as '3/2*v1*v2 - v3 + 1', or '0' for no terms
    """
    pieces = []
    for coefficient, label in terms:
        magnitude = abs(coefficient)
        if not label:
            body = render_rational(magnitude)
        elif magnitude == 1:
            body = label
        else:
            body = f"{render_rational(magnitude)}*{label}"
        pieces.append(("-" if coefficient < 0 else "+", body))

    if not pieces:
        return "0"
    sign, body = pieces[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


class RingElement(ABC):
    """
    Immutable element of a concrete backend.

    Subclasses provide the primitive operations; the operators here coerce
    rational scalars through q -> q*1 and refuse operands of another backend.
    """

    __slots__ = ()

    @property
    @abstractmethod
    def backend(self) -> "RingBackend":
        ...

    @abstractmethod
    def _add(self, other: "RingElement") -> "RingElement":
        ...

    @abstractmethod
    def _mul(self, other: "RingElement") -> "RingElement":
        ...

    @abstractmethod
    def _scale(self, q: Fraction) -> "RingElement":
        ...

    @abstractmethod
    def _key(self) -> Any:
        """Hashable canonical form; equal elements have equal keys."""

    @abstractmethod
    def __neg__(self) -> "RingElement":
        ...

    @abstractmethod
    def __bool__(self) -> bool:
        ...

    def _coerce(self, other):
        if is_scalar(other):
            return self.backend.from_rational(other)
        if isinstance(other, RingElement):
            if other.backend != self.backend:
                raise BackendMismatchError(
                    f"cannot combine elements of {self.backend.describe()} and {other.backend.describe()}")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._add(other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._add(-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other._add(-self)

    def __mul__(self, other):
        if is_scalar(other):
            return self._scale(Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._mul(other)

    def __rmul__(self, other):
        if is_scalar(other):
            return self._scale(Fraction(other))
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponents must be nonnegative integers")
        result = self.backend.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except BackendMismatchError:
            return False
        if other is NotImplemented:
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash((self.backend, self._key()))

    def __str__(self):
        return self.backend.render(self)

    def __repr__(self):
        return f"{type(self).__name__}({self.backend.render(self)!r})"


class RingBackend(ABC):
    """
    Contract of an associative Q-algebra with 1.

    Elements support +, -, * (with each other and with rational scalars),
    unary minus and truth testing (false exactly for zero), so generic code
    uses operators; the named methods below are the same contract spelled out.
    """

    name: str = "ring"

    @abstractmethod
    def zero(self):
        ...

    @abstractmethod
    def one(self):
        ...

    @abstractmethod
    def from_rational(self, q: Scalar):
        ...

    @abstractmethod
    def generators(self) -> Sequence[Any]:
        """Finite generating family used for sampling."""

    @abstractmethod
    def symbols(self) -> Dict[str, Any]:
        """Generator names accepted by the expression parser."""

    @abstractmethod
    def render(self, element) -> str:
        ...

    @abstractmethod
    def contains(self, element) -> bool:
        ...

    @abstractmethod
    def _identity(self) -> Any:
        """Hashable value identifying the backend."""

    def describe(self) -> str:
        return self.name

    def add(self, a, b):
        return a + b

    def negate(self, a):
        return -a

    def multiply(self, a, b):
        return a * b

    def scale(self, q: Scalar, a):
        return to_rational(q) * a

    def is_zero(self, a) -> bool:
        return not a

    def equal(self, a, b) -> bool:
        return self.is_zero(a - b)

    def sum(self, items: Iterable[Any]):
        total = self.zero()
        for item in items:
            total = total + item
        return total

    def check(self, element) -> None:
        if not self.contains(element):
            raise BackendMismatchError(f"{element!r} is not an element of {self.describe()}")

    def __eq__(self, other):
        return isinstance(other, RingBackend) and type(self) is type(other) and self._identity() == other._identity()

    def __hash__(self):
        return hash((type(self).__name__, self._identity()))

    def __repr__(self):
        return f"<{type(self).__name__} {self.describe()}>"


class RationalRing(RingBackend):
    """Q itself; its elements are plain Fractions."""

    name = "rational"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_rational(self, q: Scalar):
        return to_rational(q)

    def generators(self):
        return [Fraction(1)]

    def symbols(self):
        return {}

    def render(self, element) -> str:
        return render_rational(element)

    def contains(self, element) -> bool:
        return is_scalar(element)

    def _identity(self):
        return "Q"


@dataclass(frozen=True)
class SampleSpec:
    """Deterministic recipe for random elements: identical specs give identical samples."""

    seed: int
    term_count: int = 3
    coefficient_bound: int = 3
    max_degree: int = 3
    degree_bias: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        if self.term_count < 1 or self.coefficient_bound < 1 or self.max_degree < 0:
            raise ValueError("term_count and coefficient_bound must be >= 1, max_degree >= 0")
        if self.degree_bias is not None and len(self.degree_bias) != self.max_degree + 1:
            raise ValueError("degree_bias needs one weight per degree 0..max_degree")

    def derive(self, offset: int) -> "SampleSpec":
        """Same recipe, independent stream."""
        return SampleSpec(self.seed * 1_000_003 + offset, self.term_count,
                          self.coefficient_bound, self.max_degree, self.degree_bias)


class Sampler:
    """Seeded source of sparse Q-combinations of short generator products."""

    def __init__(self, backend: RingBackend, spec: SampleSpec):
        self.backend = backend
        self.spec = spec
        self.rng = random.Random(spec.seed)
        self._generators = list(backend.generators())

    def coefficient(self) -> Fraction:
        numerator = self.rng.randint(1, self.spec.coefficient_bound) * self.rng.choice((1, -1))
        return Fraction(numerator, self.rng.choice((1, 1, 1, 2)))

    def _degree(self, minimum: int) -> int:
        degrees = list(range(minimum, self.spec.max_degree + 1))
        if not degrees:
            return minimum
        if self.spec.degree_bias is None:
            return self.rng.choice(degrees)
        weights = [self.spec.degree_bias[d] for d in degrees]
        return self.rng.choices(degrees, weights=weights)[0]

    def element(self, nilpotent: bool = False):
        """
        Random element; with nilpotent=True every term has degree >= 1, so the
        result has no constant term (nilpotent in E_m and truncated algebras).
        """
        total = self.backend.zero()
        for _ in range(self.spec.term_count):
            monomial = self.backend.one()
            degree = self._degree(1 if nilpotent else 0) if self._generators else 0
            for _ in range(degree):
                monomial = monomial * self.rng.choice(self._generators)
            total = total + self.coefficient() * monomial
        return total

    def elements(self, count: int, nilpotent: bool = False) -> List[Any]:
        return [self.element(nilpotent) for _ in range(count)]


def commutator(a, b):
    """[a,b] = ab - ba."""
    return a * b - b * a


def left_normed(xs: Sequence[Any]):
    """
    Left-normed Lie product [x1, ..., xk]_k = [...[[x1, x2], x3], ..., xk].

    Raises:
        ValueError: for an empty sequence
    """
    if not xs:
        raise ValueError("left_normed needs at least one element")
    return reduce(commutator, xs[1:], xs[0])


def left_normed_collapsing(xs: Sequence[Any]):
    """Same product through [x1, ..., x_{k+1}]_{k+1} = [[x1, x2], x3, ..., x_{k+1}]_k."""
    if not xs:
        raise ValueError("left_normed needs at least one element")
    if len(xs) == 1:
        return xs[0]
    return left_normed_collapsing([commutator(xs[0], xs[1]), *xs[2:]])


@dataclass
class LieNilpotencyReport:
    """Outcome of a randomized falsification check of [x1, ..., x_{k+1}] = 0."""

    k: int
    holds: bool
    tuples_checked: int
    witness: Optional[Tuple[Any, ...]] = None
    residual: Any = None

    def __bool__(self):
        return self.holds


def is_lie_nilpotent_sampled(backend: RingBackend, k: int, spec: SampleSpec, trials: int) -> LieNilpotencyReport:
    """
    Falsification check of property L_k (not a proof).

    Generator (k+1)-tuples are swept first when there are at most
    GENERATOR_SWEEP_LIMIT of them, then `trials` random tuples are drawn.

    Returns:
        Report that is truthy iff every checked tuple gave zero; on failure it
        carries the first counterexample tuple and its nonzero commutator
    """
    if k < 1 or trials < 1:
        raise ValueError("k and trials must be >= 1")

    checked = 0
    generators = list(backend.generators())
    candidates: Iterable[Tuple[Any, ...]] = ()
    if len(generators) ** (k + 1) <= GENERATOR_SWEEP_LIMIT:
        candidates = product(generators, repeat=k + 1)

    for xs in candidates:
        checked += 1
        value = left_normed(xs)
        if value:
            logger.debug("L_%d fails on generator tuple after %d checks", k, checked)
            return LieNilpotencyReport(k, False, checked, tuple(xs), value)

    sampler = Sampler(backend, spec)
    for _ in range(trials):
        xs = tuple(sampler.elements(k + 1))
        checked += 1
        value = left_normed(xs)
        if value:
            logger.debug("L_%d fails on sampled tuple after %d checks", k, checked)
            return LieNilpotencyReport(k, False, checked, xs, value)

    return LieNilpotencyReport(k, True, checked)
