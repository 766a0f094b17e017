"""
Square matrices over any ring backend and polynomials in one central
indeterminate x with ring coefficients.

Substituting a matrix into a polynomial puts each coefficient on the RIGHT of
the matching power: (A)p = I*l0 + A*l1 + ... + A^d*ld.
"""

import logging
from fractions import Fraction
from typing import Any, Callable, List, Optional, Sequence, Tuple

from rings.errors import BackendMismatchError
from rings.findim import QuotientAlgebra
from rings.ringcore import RingBackend, RingElement, Sampler, Scalar, is_scalar

logger = logging.getLogger(__name__)


class RingMatrix:
    """
    Immutable n x n matrix whose entries all belong to one backend.

    Rational entries are embedded through q -> q*1.
    """

    __slots__ = ("backend", "entries")

    def __init__(self, backend: RingBackend, rows: Sequence[Sequence[Any]]):
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ValueError(f"matrix must be square and nonempty, got row lengths {[len(r) for r in rows]}")
        entries = []
        for row in rows:
            converted = []
            for value in row:
                if is_scalar(value):
                    value = backend.from_rational(value)
                else:
                    backend.check(value)
                converted.append(value)
            entries.append(tuple(converted))
        self.backend = backend
        self.entries: Tuple[Tuple[Any, ...], ...] = tuple(entries)

    @classmethod
    def identity(cls, backend: RingBackend, n: int) -> "RingMatrix":
        return cls.scalar(backend, n, 1)

    @classmethod
    def zero(cls, backend: RingBackend, n: int) -> "RingMatrix":
        return cls.scalar(backend, n, 0)

    @classmethod
    def scalar(cls, backend: RingBackend, n: int, value: Any) -> "RingMatrix":
        """value * I_n for a rational or backend element."""
        zero = backend.zero()
        return cls(backend, [[value if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, backend: RingBackend, values: Sequence[Any]) -> "RingMatrix":
        n = len(values)
        zero = backend.zero()
        return cls(backend, [[values[i] if i == j else zero for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: Tuple[int, int]):
        i, j = index
        return self.entries[i][j]

    def _check_compatible(self, other: "RingMatrix") -> None:
        if not isinstance(other, RingMatrix):
            raise TypeError(f"expected a RingMatrix, got {type(other).__name__}")
        if other.backend != self.backend:
            raise BackendMismatchError(
                f"matrices over {self.backend.describe()} and {other.backend.describe()}")
        if other.n != self.n:
            raise ValueError(f"size mismatch: {self.n}x{self.n} and {other.n}x{other.n}")

    def map(self, fn: Callable[[Any], Any], backend: Optional[RingBackend] = None) -> "RingMatrix":
        """Entrywise image, optionally into another backend."""
        return RingMatrix(backend or self.backend, [[fn(a) for a in row] for row in self.entries])

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        self._check_compatible(other)
        return RingMatrix(self.backend, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: "RingMatrix") -> "RingMatrix":
        self._check_compatible(other)
        return RingMatrix(self.backend, [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __neg__(self) -> "RingMatrix":
        return self.map(lambda a: -a)

    def __mul__(self, other):
        if is_scalar(other):
            q = Fraction(other)
            return self.map(lambda a: a * q)
        self._check_compatible(other)
        n = self.n
        columns = list(zip(*other.entries))
        rows = []
        for i in range(n):
            row = self.entries[i]
            rows.append([self.backend.sum(row[t] * columns[j][t] for t in range(n)) for j in range(n)])
        return RingMatrix(self.backend, rows)

    def __rmul__(self, other):
        if is_scalar(other):
            return self * other
        return NotImplemented

    def left_scale(self, c) -> "RingMatrix":
        """c * A, the element multiplying every entry from the left."""
        return self.map(lambda a: c * a)

    def right_scale(self, c) -> "RingMatrix":
        """A * c."""
        return self.map(lambda a: a * c)

    def power(self, exponent: int) -> "RingMatrix":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("matrix exponents must be nonnegative integers")
        result = RingMatrix.identity(self.backend, self.n)
        for _ in range(exponent):
            result = result * self
        return result

    __pow__ = power

    def trace(self):
        return self.backend.sum(self.entries[i][i] for i in range(self.n))

    def is_zero(self) -> bool:
        return all(not a for row in self.entries for a in row)

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.backend == other.backend and self.entries == other.entries

    def __hash__(self):
        return hash((self.backend, self.entries))

    def to_strings(self) -> List[List[str]]:
        return [[self.backend.render(a) for a in row] for row in self.entries]

    def render(self) -> str:
        """Bracket form accepted by the matrix parser."""
        return "[" + ", ".join("[" + ", ".join(row) + "]" for row in self.to_strings()) + "]"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RingMatrix({self.backend.describe()}, {self.render()})"


class CentralPoly(RingElement):
    """
    l0 + l1*x + ... + ld*x^d with coefficients in a base backend and x central.

    Trailing zero coefficients are dropped; the zero polynomial has none.
    """

    __slots__ = ("base", "coefficients")

    def __init__(self, base: RingBackend, coefficients: Sequence[Any] = ()):
        converted = []
        for c in coefficients:
            if is_scalar(c):
                c = base.from_rational(c)
            else:
                base.check(c)
            converted.append(c)
        while converted and not converted[-1]:
            converted.pop()
        self.base = base
        self.coefficients: Tuple[Any, ...] = tuple(converted)

    @property
    def backend(self) -> "PolynomialRing":
        return PolynomialRing(self.base)

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def leading(self):
        return self.coefficients[-1] if self.coefficients else self.base.zero()

    def coefficient(self, i: int):
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else self.base.zero()

    def _key(self):
        return self.coefficients

    def __bool__(self):
        return bool(self.coefficients)

    def __neg__(self):
        return CentralPoly(self.base, [-c for c in self.coefficients])

    def _add(self, other: "CentralPoly"):
        size = max(len(self.coefficients), len(other.coefficients))
        return CentralPoly(self.base, [self.coefficient(i) + other.coefficient(i) for i in range(size)])

    def _scale(self, q: Fraction):
        return CentralPoly(self.base, [c * q for c in self.coefficients])

    def _mul(self, other: "CentralPoly"):
        return poly_mul(self, other)

    def evaluate_at(self, q: Scalar):
        """Value at x = q; a ring homomorphism R[x] -> R since x is central."""
        total = self.base.zero()
        power = Fraction(1)
        for c in self.coefficients:
            total = total + c * power
            power *= q
        return total


class PolynomialRing(RingBackend):
    """R[x] with x central, so matrices over R[x] reuse every generic matrix routine."""

    name = "poly"

    def __init__(self, base: RingBackend):
        self.base = base

    def zero(self):
        return CentralPoly(self.base)

    def one(self):
        return CentralPoly(self.base, [1])

    def from_rational(self, q: Scalar):
        return CentralPoly(self.base, [q])

    def constant(self, c) -> CentralPoly:
        return CentralPoly(self.base, [c])

    def x(self) -> CentralPoly:
        return CentralPoly(self.base, [0, 1])

    def generators(self):
        return [self.x()] + [self.constant(g) for g in self.base.generators()]

    def symbols(self):
        return {}

    def render(self, element: CentralPoly) -> str:
        pieces = []
        for i in range(element.degree, -1, -1):
            c = element.coefficients[i]
            if not c:
                continue
            text = self.base.render(c)
            if i == 0:
                pieces.append(text)
                continue
            power = "x" if i == 1 else f"x^{i}"
            if text == "1":
                pieces.append(power)
            elif text == "-1":
                pieces.append(f"-{power}")
            elif " " in text:
                pieces.append(f"({text})*{power}")
            else:
                pieces.append(f"{text}*{power}")
        return " + ".join(pieces).replace("+ -", "- ") if pieces else "0"

    def contains(self, element) -> bool:
        return isinstance(element, CentralPoly) and element.base == self.base

    def describe(self) -> str:
        return f"{self.base.describe()}[x]"

    def _identity(self):
        return self.base


def poly_mul(p: CentralPoly, q: CentralPoly) -> CentralPoly:
    """Order-preserving convolution: coefficient c is sum_{i+j=c} p_i q_j with p_i on the left."""
    if p.base != q.base:
        raise BackendMismatchError(f"polynomials over {p.base.describe()} and {q.base.describe()}")
    if not p or not q:
        return CentralPoly(p.base)
    size = len(p.coefficients) + len(q.coefficients) - 1
    result = [p.base.zero() for _ in range(size)]
    for i, a in enumerate(p.coefficients):
        if not a:
            continue
        for j, b in enumerate(q.coefficients):
            if b:
                result[i + j] = result[i + j] + a * b
    return CentralPoly(p.base, result)


def poly_eval_right(A: RingMatrix, p: CentralPoly) -> RingMatrix:
    """
    (A)p = sum_i A^i * (l_i I_n).

    Evaluated right-Horner: R <- A*R + I*l_i from the top coefficient down.

    Raises:
        BackendMismatchError: if p's coefficients are not over A's backend
    """
    if p.base != A.backend:
        raise BackendMismatchError(f"polynomial over {p.base.describe()}, matrix over {A.backend.describe()}")
    result = RingMatrix.zero(A.backend, A.n)
    for c in reversed(p.coefficients):
        result = A * result + RingMatrix.scalar(A.backend, A.n, c)
    return result


def poly_eval_left(p: CentralPoly, A: RingMatrix) -> RingMatrix:
    """sum_i (l_i I_n) * A^i; only used to show the side matters."""
    if p.base != A.backend:
        raise BackendMismatchError(f"polynomial over {p.base.describe()}, matrix over {A.backend.describe()}")
    result = RingMatrix.zero(A.backend, A.n)
    power = RingMatrix.identity(A.backend, A.n)
    for c in p.coefficients:
        result = result + RingMatrix.scalar(A.backend, A.n, c) * power
        power = power * A
    return result


def matrix_image(A: RingMatrix, quotient: QuotientAlgebra) -> RingMatrix:
    """Entrywise projection M_n(R) -> M_n(R/I)."""
    if A.backend != quotient.parent:
        raise BackendMismatchError(f"matrix over {A.backend.describe()}, quotient of {quotient.parent.describe()}")
    return A.map(quotient.project, quotient.algebra)


def lift_matrix(A: RingMatrix, quotient: QuotientAlgebra) -> RingMatrix:
    """Entrywise canonical lift M_n(R/I) -> M_n(R)."""
    if A.backend != quotient.algebra:
        raise BackendMismatchError(f"matrix over {A.backend.describe()} is not over {quotient.algebra.describe()}")
    return A.map(quotient.lift, quotient.parent)


def random_matrix(sampler: Sampler, n: int, nilpotent: bool = False) -> RingMatrix:
    return RingMatrix(sampler.backend, [sampler.elements(n, nilpotent) for _ in range(n)])
