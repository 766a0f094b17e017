"""
Finite-dimensional associative Q-algebras given by structure constants.

Provides two-sided ideals (commutator, double commutator, Jennings), ideal
powers, quotient algebras with canonical sections, the upper triangular
construction U_t and JSON import/export of structure constants.
"""

import random
import logging
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from config.settings import settings
from rings.errors import ArithmeticConsistencyError, BackendMismatchError, GuardrailError, NotAnIdealError
from rings.grassmann import GrassmannElement, check_generator_count, monomial_label, monomial_sign
from rings.linalg import Subspace, Vector, axpy, clean, densify
from rings.ringcore import RingBackend, RingElement, Scalar, parse_rational, render_rational, render_terms, to_rational

logger = logging.getLogger(__name__)

# from_grassmann keeps one coordinate per monomial, so m is bounded by the dense size.
MAX_DENSE_GRASSMANN = 12
SAMPLED_ASSOCIATIVITY_TRIPLES = 1000

BasisProduct = Tuple[Tuple[int, Fraction], ...]


class DenseTable:
    """Materialized structure constants {(i, j): ((k, c), ...)}; missing pairs multiply to 0."""

    def __init__(self, entries: Mapping[Tuple[int, int], Iterable[Tuple[int, Fraction]]]):
        self.entries: Dict[Tuple[int, int], BasisProduct] = {}
        for pair, products in entries.items():
            products = tuple((k, Fraction(c)) for k, c in products if c)
            if products:
                self.entries[pair] = products

    def __call__(self, i: int, j: int) -> BasisProduct:
        return self.entries.get((i, j), ())


class GrassmannTable:
    """Monomial products of E_m computed on demand (basis index = bitmask)."""

    def __init__(self, m: int):
        self.m = m

    def __call__(self, i: int, j: int) -> BasisProduct:
        if i & j:
            return ()
        return ((i | j, Fraction(monomial_sign(i, j))),)


class UpperTriangularTable:
    """E_pq(x)b * E_q'r(x)b' = delta_qq' E_pr(x)(bb'), computed from the base table."""

    def __init__(self, base: "StructureAlgebra", positions: Sequence[Tuple[int, int]]):
        self.base = base
        self.positions = list(positions)
        self.slot = {pq: s for s, pq in enumerate(self.positions)}

    def __call__(self, i: int, j: int) -> BasisProduct:
        width = self.base.dim
        (p, q), b = self.positions[i // width], i % width
        (q2, r), b2 = self.positions[j // width], j % width
        if q != q2:
            return ()
        offset = self.slot[(p, r)] * width
        return tuple((offset + k, c) for k, c in self.base.table(b, b2))


class AlgebraElement(RingElement):
    """Element of a StructureAlgebra, kept as a sparse coordinate map."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "StructureAlgebra", terms: Mapping[int, Scalar]):
        self.algebra = algebra
        self.terms: Vector = clean(terms)

    @property
    def backend(self) -> "StructureAlgebra":
        return self.algebra

    @property
    def coordinates(self) -> Tuple[Fraction, ...]:
        return densify(self.terms, self.algebra.dim)

    def _key(self):
        return frozenset(self.terms.items())

    def __bool__(self):
        return bool(self.terms)

    def __neg__(self):
        return AlgebraElement(self.algebra, {i: -c for i, c in self.terms.items()})

    def _add(self, other: "AlgebraElement"):
        terms = dict(self.terms)
        axpy(terms, Fraction(1), other.terms)
        return AlgebraElement(self.algebra, terms)

    def _scale(self, q: Fraction):
        return AlgebraElement(self.algebra, {i: q * c for i, c in self.terms.items()})

    def _mul(self, other: "AlgebraElement"):
        return AlgebraElement(self.algebra, self.algebra.multiply_vectors(self.terms, other.terms))


class StructureAlgebra(RingBackend):
    """
    Associative Q-algebra with basis b_0..b_{dim-1} and b_i b_j = sum_k c_ijk b_k.

    Args:
        dim: dimension
        labels: basis labels, written as products of symbol names ('1' for the unit)
        table: callable (i, j) -> ((k, c_ijk), ...)
        unit: coordinates of 1
        name: display name
        generator_vectors: multiplicative generating family (defaults to the basis)
        symbol_vectors: parser names for elements
        check: verify unit law and associativity at construction
    """

    name = "algebra"

    def __init__(self, dim: int, labels: Sequence[str], table: Callable[[int, int], BasisProduct],
                 unit: Mapping[int, Scalar], *, name: str = "algebra",
                 generator_vectors: Optional[Sequence[Mapping[int, Scalar]]] = None,
                 symbol_vectors: Optional[Mapping[str, Mapping[int, Scalar]]] = None,
                 check: bool = True):
        if dim > settings.max_dim:
            raise GuardrailError(f"algebra dimension {dim} exceeds NILCAYLEY_MAX_DIM={settings.max_dim}")
        if len(labels) != dim:
            raise ValueError(f"expected {dim} labels, got {len(labels)}")
        self.dim = dim
        self.labels = list(labels)
        self.table = table
        self.unit: Vector = clean(unit)
        self.name = name
        self._generator_vectors = None if generator_vectors is None else [clean(v) for v in generator_vectors]
        self._symbol_vectors = {key: clean(v) for key, v in (symbol_vectors or {}).items()}
        if check:
            self.check_axioms()
        logger.debug("Built %s (dim %d)", name, dim)

    # -- arithmetic on coordinate maps -------------------------------------------------

    def multiply_vectors(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vector:
        result: Vector = {}
        for i, x in u.items():
            for j, y in v.items():
                products = self.table(i, j)
                if not products:
                    continue
                xy = x * y
                for k, c in products:
                    value = result.get(k, 0) + xy * c
                    if value:
                        result[k] = value
                    else:
                        del result[k]
        return result

    def bracket_vectors(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vector:
        result = self.multiply_vectors(u, v)
        axpy(result, Fraction(-1), self.multiply_vectors(v, u))
        return result

    def basis_vector(self, i: int) -> Vector:
        return {i: Fraction(1)}

    def basis_vectors(self) -> List[Vector]:
        return [self.basis_vector(i) for i in range(self.dim)]

    def multiplier_vectors(self) -> List[Vector]:
        """A family whose products span the algebra: the generators if known, else the basis."""
        if self._generator_vectors is None:
            return self.basis_vectors()
        return list(self._generator_vectors)

    def check_axioms(self) -> None:
        """
        Unit law on every basis element; associativity on every basis triple up
        to NILCAYLEY_EXHAUSTIVE_DIM, on sampled triples above.

        Raises:
            ArithmeticConsistencyError: on the first violated law
        """
        for i in range(self.dim):
            b = self.basis_vector(i)
            if self.multiply_vectors(self.unit, b) != b or self.multiply_vectors(b, self.unit) != b:
                raise ArithmeticConsistencyError(f"{self.name}: unit law fails on {self.labels[i]}")

        if self.dim <= settings.exhaustive_dim:
            triples: Iterable[Tuple[int, int, int]] = (
                (i, j, k) for i in range(self.dim) for j in range(self.dim) for k in range(self.dim))
        else:
            rng = random.Random(self.dim)
            triples = [tuple(rng.randrange(self.dim) for _ in range(3))
                       for _ in range(SAMPLED_ASSOCIATIVITY_TRIPLES)]

        for i, j, k in triples:
            left = self.multiply_vectors(self.multiply_vectors({i: 1}, {j: 1}), {k: 1})
            right = self.multiply_vectors({i: 1}, self.multiply_vectors({j: 1}, {k: 1}))
            if left != right:
                raise ArithmeticConsistencyError(
                    f"{self.name}: associativity fails on ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})")

    # -- ring backend contract ------------------------------------------------------

    def element(self, terms: Mapping[int, Scalar]) -> AlgebraElement:
        if any(not 0 <= i < self.dim for i in terms):
            raise ValueError(f"coordinate index out of range for {self.name}")
        return AlgebraElement(self, terms)

    def basis_element(self, i: int) -> AlgebraElement:
        return AlgebraElement(self, {i: 1})

    def basis(self) -> List[AlgebraElement]:
        return [self.basis_element(i) for i in range(self.dim)]

    def zero(self):
        return AlgebraElement(self, {})

    def one(self):
        return AlgebraElement(self, self.unit)

    def from_rational(self, q: Scalar):
        q = to_rational(q)
        return AlgebraElement(self, {i: q * c for i, c in self.unit.items()})

    def generators(self):
        return [AlgebraElement(self, v) for v in self.multiplier_vectors()]

    def symbols(self):
        return {key: AlgebraElement(self, v) for key, v in self._symbol_vectors.items()}

    def render(self, element: AlgebraElement) -> str:
        return render_terms((element.terms[i], "" if self.labels[i] == "1" else self.labels[i])
                            for i in sorted(element.terms))

    def contains(self, element) -> bool:
        return isinstance(element, AlgebraElement) and element.algebra is self

    def describe(self) -> str:
        return self.name

    def _identity(self):
        return id(self)

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return id(self)

    # -- structure-constant export -----------------------------------------------------

    def to_json(self) -> Dict[str, Any]:
        """{dim, labels, unit, table: [[i, j, k, 'c'], ...], symbols: {name: [[i, 'c'], ...]}} with rational strings."""
        table = [[i, j, k, render_rational(c)]
                 for i in range(self.dim) for j in range(self.dim) for k, c in self.table(i, j)]
        return {
            "name": self.name,
            "dim": self.dim,
            "labels": list(self.labels),
            "unit": [render_rational(c) for c in densify(self.unit, self.dim)],
            "table": table,
            "symbols": {key: [[i, render_rational(c)] for i, c in sorted(v.items())]
                        for key, v in self._symbol_vectors.items()},
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any], check: bool = True) -> "StructureAlgebra":
        entries: Dict[Tuple[int, int], List[Tuple[int, Fraction]]] = {}
        for i, j, k, c in data["table"]:
            entries.setdefault((int(i), int(j)), []).append((int(k), parse_rational(str(c))))
        unit = {i: parse_rational(str(c)) for i, c in enumerate(data["unit"])}
        symbols = {key: {int(i): parse_rational(str(c)) for i, c in pairs}
                   for key, pairs in data.get("symbols", {}).items()}
        return cls(int(data["dim"]), data["labels"], DenseTable(entries), unit,
                   name=data.get("name", "algebra"), symbol_vectors=symbols, check=check)


# -- concrete algebras -----------------------------------------------------------------

def scalars() -> StructureAlgebra:
    """Q as the one-dimensional algebra."""
    return StructureAlgebra(1, ["1"], DenseTable({(0, 0): ((0, 1),)}), {0: 1},
                            name="Q", generator_vectors=[])


def from_grassmann(m: int) -> StructureAlgebra:
    """
    E_m as structure constants; basis index = monomial bitmask.

    Raises:
        GuardrailError: for m > 12
    """
    check_generator_count(m)
    if m > MAX_DENSE_GRASSMANN:
        raise GuardrailError(f"from_grassmann supports m <= {MAX_DENSE_GRASSMANN}, got {m}")
    dim = 1 << m
    labels = ["1"] + [monomial_label(mask) for mask in range(1, dim)]
    generators = {f"v{i + 1}": {1 << i: 1} for i in range(m)}
    return StructureAlgebra(dim, labels, GrassmannTable(m), {0: 1}, name=f"E_{m}",
                            generator_vectors=list(generators.values()), symbol_vectors=generators)


def grassmann_to_algebra(element: GrassmannElement, algebra: StructureAlgebra) -> AlgebraElement:
    """Coordinates of a Grassmann element in from_grassmann(m)."""
    if not isinstance(algebra.table, GrassmannTable) or algebra.table.m != element.m:
        raise BackendMismatchError(f"{algebra.name} is not E_{element.m}")
    return algebra.element(element.terms)


def upper_triangular(base: StructureAlgebra, t: int) -> StructureAlgebra:
    """
    U_t(base): t x t upper triangular matrices over base, basis E_pq (x) b_i for p <= q.

    Symbols: e<p><q> is E_pq (x) 1 and every base symbol g is diag(g, ..., g).
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    positions = [(p, q) for p in range(1, t + 1) for q in range(p, t + 1)]
    width = base.dim
    dim = len(positions) * width
    if dim > settings.max_dim:
        raise GuardrailError(f"U_{t}({base.name}) has dimension {dim} > NILCAYLEY_MAX_DIM={settings.max_dim}")

    def unit_name(p: int, q: int) -> str:
        return f"e{p}{q}" if t < 10 else f"e{p}_{q}"

    labels = []
    for p, q in positions:
        for label in base.labels:
            labels.append(unit_name(p, q) if label == "1" else f"{unit_name(p, q)}*{label}")

    def block(slot: int, vector: Mapping[int, Fraction]) -> Vector:
        return {slot * width + k: c for k, c in vector.items()}

    def diagonal(vector: Mapping[int, Fraction]) -> Vector:
        result: Vector = {}
        for slot, (p, q) in enumerate(positions):
            if p == q:
                result.update(block(slot, vector))
        return result

    matrix_units = {unit_name(p, q): block(slot, base.unit) for slot, (p, q) in enumerate(positions)}
    symbols = dict(matrix_units)
    for key, vector in base._symbol_vectors.items():
        symbols.setdefault(key, diagonal(vector))
    generators = list(matrix_units.values()) + [diagonal(v) for v in base.multiplier_vectors()]

    return StructureAlgebra(dim, labels, UpperTriangularTable(base, positions), diagonal(base.unit),
                            name=f"U_{t}({base.name})", generator_vectors=generators, symbol_vectors=symbols)


# -- ideals ------------------------------------------------------------------------

IdealGenerators = Iterable[Union[AlgebraElement, Mapping[int, Fraction]]]


def _vectors(alg: StructureAlgebra, items: IdealGenerators) -> List[Vector]:
    vectors = []
    for item in items:
        if isinstance(item, AlgebraElement):
            alg.check(item)
            vectors.append(dict(item.terms))
        else:
            vectors.append(clean(item))
    return vectors


def ideal_generated(alg: StructureAlgebra, gens: IdealGenerators) -> Subspace:
    """
    Smallest two-sided ideal containing gens: the span is grown by left and
    right products with a multiplicative generating family until the rank is
    stable, which makes it closed under every basis element.
    """
    space = Subspace(alg.dim)
    frontier = [v for v in _vectors(alg, gens) if space.absorb(v)]
    multipliers = alg.multiplier_vectors()
    while frontier:
        x = frontier.pop()
        for m in multipliers:
            for product_vector in (alg.multiply_vectors(m, x), alg.multiply_vectors(x, m)):
                if space.absorb(product_vector):
                    frontier.append(product_vector)
    logger.debug("Ideal of %s closed at rank %d", alg.name, space.rank)
    return space


def bracket_span(alg: StructureAlgebra, vectors: Iterable[Mapping[int, Fraction]]) -> Subspace:
    """span{[x, b_j] : x in vectors, b_j basis}; bilinearity makes basis arguments enough."""
    space = Subspace(alg.dim)
    for x in vectors:
        for j in range(alg.dim):
            space.absorb(alg.bracket_vectors(x, {j: Fraction(1)}))
    return space


def commutator_ideal(alg: StructureAlgebra) -> Subspace:
    """T = R[R,R]R."""
    return ideal_generated(alg, bracket_span(alg, alg.basis_vectors()).basis())


def double_commutator_ideal(alg: StructureAlgebra) -> Subspace:
    """D = R[[R,R],R]R."""
    commutators = bracket_span(alg, alg.basis_vectors())
    return ideal_generated(alg, bracket_span(alg, commutators.basis()).basis())


def jennings_ideal(alg: StructureAlgebra, k: int) -> Subspace:
    """Ideal generated by all left-normed k-commutators [x1, ..., xk]_k."""
    if k < 2:
        raise ValueError("jennings_ideal needs k >= 2")
    span = Subspace.full(alg.dim)
    for _ in range(k - 1):
        span = bracket_span(alg, span.basis())
    return ideal_generated(alg, span.basis())


def ideal_power(alg: StructureAlgebra, ideal: Subspace, s: int) -> Subspace:
    """I^s, built as I^{j+1} = span{x y : x in basis(I^j), y in basis(I)}."""
    if s < 1:
        raise ValueError("ideal_power needs s >= 1")
    power = ideal
    factors = ideal.basis()
    for _ in range(s - 1):
        if power.is_zero():
            break
        power = Subspace(alg.dim, (alg.multiply_vectors(x, y) for x in power.basis() for y in factors))
    return power


def nilpotency_index(alg: StructureAlgebra, ideal: Subspace, limit: int) -> Optional[int]:
    """Least s <= limit with I^s = 0, or None."""
    power = ideal
    factors = ideal.basis()
    for s in range(1, limit + 1):
        if power.is_zero():
            return s
        power = Subspace(alg.dim, (alg.multiply_vectors(x, y) for x in power.basis() for y in factors))
    return None


def is_ideal(alg: StructureAlgebra, space: Subspace, multipliers: Optional[Sequence[Vector]] = None) -> bool:
    """Closure of the subspace under left and right multiplication by every multiplier (default: basis)."""
    multipliers = alg.basis_vectors() if multipliers is None else multipliers
    for x in space.basis():
        for m in multipliers:
            if not space.contains(alg.multiply_vectors(m, x)) or not space.contains(alg.multiply_vectors(x, m)):
                return False
    return True


class QuotientAlgebra:
    """
    R/I with the canonical section: the coset of x is represented by the
    non-pivot coordinates of x reduced modulo the RREF basis of I.
    """

    def __init__(self, parent: StructureAlgebra, ideal: Subspace, check: bool = True):
        if ideal.dim != parent.dim:
            raise BackendMismatchError(f"ideal lives in Q^{ideal.dim}, {parent.name} has dimension {parent.dim}")
        if not is_ideal(parent, ideal, parent.multiplier_vectors()):
            raise NotAnIdealError(f"subspace of rank {ideal.rank} is not a two-sided ideal of {parent.name}")
        self.parent = parent
        self.ideal = ideal
        self.section = ideal.complement()
        self._position = {column: i for i, column in enumerate(self.section)}

        entries = {}
        for a, i in enumerate(self.section):
            for b, j in enumerate(self.section):
                image = self.project_vector(dict(parent.table(i, j)))
                if image:
                    entries[(a, b)] = tuple(image.items())

        self.algebra = StructureAlgebra(
            len(self.section),
            [parent.labels[i] for i in self.section],
            DenseTable(entries),
            self.project_vector(parent.unit),
            name=f"{parent.name}/I[{ideal.rank}]",
            generator_vectors=[self.project_vector(v) for v in parent.multiplier_vectors()],
            symbol_vectors={key: self.project_vector(v) for key, v in parent._symbol_vectors.items()},
            check=check,
        )
        logger.debug("Quotient of %s by rank-%d ideal has dimension %d", parent.name, ideal.rank, len(self.section))

    @property
    def dim(self) -> int:
        return len(self.section)

    def project_vector(self, vector: Mapping[int, Fraction]) -> Vector:
        return {self._position[i]: c for i, c in self.ideal.reduce(vector).items()}

    def lift_vector(self, vector: Mapping[int, Fraction]) -> Vector:
        return {self.section[i]: Fraction(c) for i, c in vector.items() if c}

    def project(self, element: AlgebraElement) -> AlgebraElement:
        self.parent.check(element)
        return AlgebraElement(self.algebra, self.project_vector(element.terms))

    def lift(self, element: AlgebraElement) -> AlgebraElement:
        self.algebra.check(element)
        return AlgebraElement(self.parent, self.lift_vector(element.terms))

    def normal_form(self, element: AlgebraElement) -> AlgebraElement:
        """lift(project(x)): the canonical representative of x + I."""
        return self.lift(self.project(element))


def quotient(alg: StructureAlgebra, ideal: Subspace, check: bool = True) -> QuotientAlgebra:
    """
    R/I.

    Raises:
        NotAnIdealError: if the subspace is not closed under multiplication
    """
    return QuotientAlgebra(alg, ideal, check=check)


IDEAL_KINDS = ("double_commutator", "commutator", "jennings")


def ideal_of_kind(alg: StructureAlgebra, kind: str, k: Optional[int] = None) -> Subspace:
    if kind == "double_commutator":
        return double_commutator_ideal(alg)
    if kind == "commutator":
        return commutator_ideal(alg)
    if kind == "jennings":
        if k is None:
            raise ValueError("the jennings ideal needs k")
        return jennings_ideal(alg, k)
    raise ValueError(f"unknown ideal kind {kind!r}; expected one of {', '.join(IDEAL_KINDS)}")
