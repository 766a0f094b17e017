"""
Truncated relatively free Lie nilpotent algebras.

The span of words of degree <= d in m letters, with concatenation as product
(words longer than d vanish), modulo the two-sided ideal generated by every
left-normed (k+1)-commutator of nonempty words. The result satisfies
[x1, ..., x_{k+1}] = 0 for all its elements and, for d >= k, no shorter
left-normed identity.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from config.settings import settings
from rings.errors import ArithmeticConsistencyError, GuardrailError
from rings.findim import AlgebraElement, QuotientAlgebra, StructureAlgebra, ideal_generated
from rings.linalg import Subspace, Vector
from rings.ringcore import Scalar, left_normed, to_rational

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]


def letter_names(m: int) -> List[str]:
    """x, y, z for up to three letters, x1..xm beyond."""
    if m <= 3:
        return ["x", "y", "z"][:m]
    return [f"x{i}" for i in range(1, m + 1)]


def word_count(m: int, d: int) -> int:
    return sum(m ** j for j in range(d + 1))


def words_up_to(m: int, d: int) -> List[Word]:
    """All words of degree <= d in graded lexicographic order (the empty word first)."""
    words: List[Word] = [()]
    layer: List[Word] = [()]
    for _ in range(d):
        layer = [w + (letter,) for w in layer for letter in range(m)]
        words.extend(layer)
    return words


def truncated_free_mul(a: Mapping[Word, Scalar], b: Mapping[Word, Scalar], d: int) -> Dict[Word, Fraction]:
    """Concatenation product of word combinations; words of degree > d are dropped."""
    result: Dict[Word, Fraction] = {}
    for u, x in a.items():
        for v, y in b.items():
            if len(u) + len(v) > d:
                continue
            w = u + v
            value = result.get(w, 0) + to_rational(x) * to_rational(y)
            if value:
                result[w] = value
            else:
                del result[w]
    return result


class WordTable:
    """Structure constants of the truncated free algebra over an indexed word list."""

    def __init__(self, words: Sequence[Word], d: int):
        self.words = list(words)
        self.index = {w: i for i, w in enumerate(self.words)}
        self.d = d

    def __call__(self, i: int, j: int):
        u, v = self.words[i], self.words[j]
        if len(u) + len(v) > self.d:
            return ()
        return ((self.index[u + v], Fraction(1)),)


def truncated_free_algebra(m: int, d: int) -> StructureAlgebra:
    """
    Q<x1..xm> truncated above degree d as structure constants.

    Raises:
        GuardrailError: if the word count exceeds NILCAYLEY_MAX_DIM
    """
    if m < 1 or d < 0:
        raise ValueError("truncated_free_algebra needs m >= 1 and d >= 0")
    size = word_count(m, d)
    if size > settings.max_dim:
        raise GuardrailError(
            f"{size} words of degree <= {d} in {m} letters exceed NILCAYLEY_MAX_DIM={settings.max_dim}")
    names = letter_names(m)
    words = words_up_to(m, d)
    table = WordTable(words, d)
    labels = ["*".join(names[letter] for letter in w) or "1" for w in words]
    letters = {names[i]: {table.index[(i,)]: 1} for i in range(m)} if d >= 1 else {}
    return StructureAlgebra(len(words), labels, table, {0: 1}, name=f"F_{m}[<={d}]",
                            generator_vectors=list(letters.values()), symbol_vectors=letters)


def _commutator_relations(free: StructureAlgebra, table: WordTable, k: int, d: int) -> Iterator[Vector]:
    """Left-normed (k+1)-commutators of nonempty words with total degree <= d, sharing prefixes."""
    nonempty = [w for w in table.words if w]

    def extend(prefix: Vector, depth: int, budget: int) -> Iterator[Vector]:
        for w in nonempty:
            if len(w) > budget - (k + 1 - depth):
                break
            bracket = free.bracket_vectors(prefix, {table.index[w]: Fraction(1)})
            if not bracket:
                continue
            if depth == k + 1:
                yield bracket
            else:
                yield from extend(bracket, depth + 1, budget - len(w))

    for first in nonempty:
        if len(first) > d - k:
            break
        yield from extend({table.index[first]: Fraction(1)}, 2, d - len(first))


@dataclass
class RelFreeAlgebra:
    """Truncated relatively free L_k algebra on m letters, truncated at degree d."""

    m: int
    k: int
    d: int
    free: StructureAlgebra
    relations: Subspace
    quotient: QuotientAlgebra

    @property
    def algebra(self) -> StructureAlgebra:
        return self.quotient.algebra

    @property
    def dim(self) -> int:
        return self.quotient.dim

    def describe(self) -> str:
        return f"relfree:{self.m},{self.k},{self.d}"

    def word_element(self, terms: Mapping[Word, Scalar]) -> AlgebraElement:
        """Element of the free algebra from {word: coefficient}; words above degree d vanish."""
        index = self.free.table.index
        return self.free.element({index[w]: c for w, c in terms.items() if len(w) <= self.d})

    def normal_form(self, element: AlgebraElement) -> AlgebraElement:
        """Image of a free-algebra element in the quotient (canonical-section coordinates)."""
        return self.quotient.project(element)

    def letter(self, i: int) -> AlgebraElement:
        """Image of the i-th letter (1-based)."""
        return self.normal_form(self.word_element({(i - 1,): 1}))


def _check_exact_index(rel: RelFreeAlgebra) -> None:
    """[y, x, ..., x]_k survives in degree k, so the algebra is not L_{k-1}."""
    x, y = rel.letter(1), rel.letter(2)
    if not left_normed([y] + [x] * (rel.k - 1)):
        raise ArithmeticConsistencyError(f"{rel.describe()}: the k-commutator [y, x, ..., x] vanished")


@lru_cache(maxsize=16)
def build(m: int, k: int, d: int) -> RelFreeAlgebra:
    """
    Build the truncated relatively free L_k algebra.

    Args:
        m: number of letters (>= 1)
        k: Lie nilpotency index (>= 2)
        d: truncation degree; below k+1 no relation fits and the quotient is the free algebra

    Returns:
        RelFreeAlgebra whose `algebra` is the quotient as a StructureAlgebra

    Raises:
        GuardrailError: if sum_{j<=d} m^j exceeds NILCAYLEY_MAX_DIM
    """
    if m < 1 or k < 2 or d < 0:
        raise ValueError("build needs m >= 1, k >= 2 and d >= 0")

    free = truncated_free_algebra(m, d)
    relations = ideal_generated(free, _commutator_relations(free, free.table, k, d))
    quotient = QuotientAlgebra(free, relations)
    quotient.algebra.name = f"relfree({m},{k},{d})"
    rel = RelFreeAlgebra(m, k, d, free, relations, quotient)
    logger.info("Built %s: %d words, relation rank %d, dimension %d",
                rel.describe(), free.dim, relations.rank, rel.dim)

    if m >= 2 and d >= k:
        _check_exact_index(rel)
    return rel
