"""
Grassmann algebra E_m over Q: m anticommuting generators v1..vm with v_i^2 = 0.

A square-free monomial v_{i1}...v_{ir} (i1 < ... < ir) is stored as the bitmask
with bits i1-1, ..., ir-1 set; the empty mask is the unit.
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional

from rings.errors import BackendMismatchError, GuardrailError
from rings.ringcore import RingBackend, RingElement, Scalar, render_terms, to_rational

MAX_GENERATORS = 62


def check_generator_count(m: int) -> None:
    if not isinstance(m, int) or not 1 <= m <= MAX_GENERATORS:
        raise GuardrailError(f"Grassmann generator count must be in 1..{MAX_GENERATORS}, got {m}")


def monomial_sign(left: int, right: int) -> int:
    """
    Sign of v_left * v_right for disjoint masks: (-1)^(inversions), counting
    pairs (i in left, j in right) with i > j.
    """
    swaps = 0
    rest = right
    while rest:
        low = rest & -rest
        swaps += (left >> low.bit_length()).bit_count()
        rest ^= low
    return -1 if swaps & 1 else 1


def mask_indices(mask: int) -> List[int]:
    """1-based generator indices of a monomial, increasing."""
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def monomial_label(mask: int) -> str:
    return "*".join(f"v{i}" for i in mask_indices(mask))


class GrassmannElement(RingElement):
    """Sparse combination of monomials; zero coefficients are never stored."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Optional[Mapping[int, Scalar]] = None):
        check_generator_count(m)
        cleaned: Dict[int, Fraction] = {}
        limit = 1 << m
        for mask, coefficient in (terms or {}).items():
            if not 0 <= mask < limit:
                raise ValueError(f"mask {mask:#x} uses a generator beyond v{m}")
            coefficient = to_rational(coefficient)
            if coefficient:
                cleaned[mask] = coefficient
        self.m = m
        self.terms = cleaned

    @classmethod
    def scalar(cls, m: int, q: Scalar) -> "GrassmannElement":
        return cls(m, {0: q})

    @classmethod
    def generator(cls, m: int, index: int) -> "GrassmannElement":
        if not 1 <= index <= m:
            raise ValueError(f"v{index} is not a generator of E_{m}")
        return cls(m, {1 << (index - 1): 1})

    @classmethod
    def monomial(cls, m: int, indices: Iterable[int], coefficient: Scalar = 1) -> "GrassmannElement":
        """Product v_{i1} v_{i2} ... in the given (not necessarily sorted) order."""
        result = cls.scalar(m, coefficient)
        for index in indices:
            result = result * cls.generator(m, index)
        return result

    @property
    def backend(self) -> "GrassmannBackend":
        return GrassmannBackend(self.m)

    def _key(self):
        return frozenset(self.terms.items())

    def __bool__(self):
        return bool(self.terms)

    def __neg__(self):
        return GrassmannElement(self.m, {mask: -c for mask, c in self.terms.items()})

    def _add(self, other: "GrassmannElement"):
        terms = dict(self.terms)
        for mask, coefficient in other.terms.items():
            terms[mask] = terms.get(mask, 0) + coefficient
        return GrassmannElement(self.m, terms)

    def _scale(self, q: Fraction):
        if not q:
            return GrassmannElement(self.m)
        return GrassmannElement(self.m, {mask: q * c for mask, c in self.terms.items()})

    def _mul(self, other: "GrassmannElement"):
        return gmul(self, other)

    def degree(self) -> int:
        """Largest monomial degree; -1 for zero."""
        return max((mask.bit_count() for mask in self.terms), default=-1)

    def even_part(self) -> "GrassmannElement":
        return GrassmannElement(self.m, {k: c for k, c in self.terms.items() if k.bit_count() % 2 == 0})

    def odd_part(self) -> "GrassmannElement":
        return GrassmannElement(self.m, {k: c for k, c in self.terms.items() if k.bit_count() % 2 == 1})

    def is_odd(self) -> bool:
        return all(mask.bit_count() % 2 == 1 for mask in self.terms)


def gmul(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    """
    Bilinear extension of the monomial product: overlapping masks vanish,
    disjoint masks multiply to their union with the inversion sign.

    Raises:
        BackendMismatchError: if the generator counts differ
    """
    if a.m != b.m:
        raise BackendMismatchError(f"cannot multiply elements of E_{a.m} and E_{b.m}")
    terms: Dict[int, Fraction] = {}
    for left, x in a.terms.items():
        for right, y in b.terms.items():
            if left & right:
                continue
            mask = left | right
            value = x * y if monomial_sign(left, right) > 0 else -(x * y)
            terms[mask] = terms.get(mask, 0) + value
    return GrassmannElement(a.m, terms)


class GrassmannBackend(RingBackend):
    """E_m as a ring backend with generators v1..vm, dimension 2^m."""

    name = "grassmann"

    def __init__(self, m: int):
        check_generator_count(m)
        self.m = m

    @property
    def dimension(self) -> int:
        return 1 << self.m

    def zero(self):
        return GrassmannElement(self.m)

    def one(self):
        return GrassmannElement.scalar(self.m, 1)

    def from_rational(self, q: Scalar):
        return GrassmannElement.scalar(self.m, q)

    def generator(self, index: int) -> GrassmannElement:
        return GrassmannElement.generator(self.m, index)

    def generators(self):
        return [self.generator(i) for i in range(1, self.m + 1)]

    def symbols(self):
        return {f"v{i}": self.generator(i) for i in range(1, self.m + 1)}

    def render(self, element: GrassmannElement) -> str:
        ordered = sorted(element.terms, key=lambda mask: (-mask.bit_count(), mask_indices(mask)))
        return render_terms((element.terms[mask], monomial_label(mask)) for mask in ordered)

    def contains(self, element) -> bool:
        return isinstance(element, GrassmannElement) and element.m == self.m

    def describe(self) -> str:
        return f"grassmann:{self.m}"

    def _identity(self):
        return self.m


def grassmann_backend(m: int) -> GrassmannBackend:
    """
    Backend for E_m.

    Raises:
        GuardrailError: unless 1 <= m <= 62
    """
    return GrassmannBackend(m)
