"""
Exact linear algebra over Q: sparse vectors, reduced row-echelon subspaces and
rational matrix inversion.

Sparse vectors are dicts {column: nonzero Fraction}.
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from rings.errors import SingularMatrixError

Vector = Dict[int, Fraction]


def clean(vector: Mapping[int, Fraction]) -> Vector:
    return {i: Fraction(c) for i, c in vector.items() if c}


def axpy(target: Vector, scale: Fraction, source: Mapping[int, Fraction]) -> None:
    """target += scale * source, in place, dropping cancelled entries."""
    for i, c in source.items():
        value = target.get(i, 0) + scale * c
        if value:
            target[i] = value
        else:
            target.pop(i, None)


def densify(vector: Mapping[int, Fraction], dim: int) -> Tuple[Fraction, ...]:
    return tuple(Fraction(vector.get(i, 0)) for i in range(dim))


class Subspace:
    """
    Subspace of Q^dim kept in reduced row-echelon form.

    Rows are indexed by pivot: each pivot row has a 1 in its pivot column, its
    leading entry is that 1, and every other row is 0 in that column. The RREF
    of a subspace is unique, so two Subspaces are equal iff their rows are.
    """

    def __init__(self, dim: int, vectors: Iterable[Mapping[int, Fraction]] = ()):
        self.dim = dim
        self._rows: Dict[int, Vector] = {}
        for vector in vectors:
            self.absorb(vector)

    @classmethod
    def zero(cls, dim: int) -> "Subspace":
        return cls(dim)

    @classmethod
    def full(cls, dim: int) -> "Subspace":
        return cls(dim, ({i: Fraction(1)} for i in range(dim)))

    def reduce(self, vector: Mapping[int, Fraction]) -> Vector:
        """Remainder of vector modulo the subspace; zero iff it is a member."""
        remainder = clean(vector)
        hits = [(p, remainder[p]) for p in remainder if p in self._rows]
        for pivot, coefficient in hits:
            axpy(remainder, -coefficient, self._rows[pivot])
        return remainder

    def contains(self, vector: Mapping[int, Fraction]) -> bool:
        return not self.reduce(vector)

    def absorb(self, vector: Mapping[int, Fraction]) -> bool:
        """Grow the span in place (used while a span is being closed); True if the rank grew."""
        remainder = self.reduce(vector)
        if not remainder:
            return False
        pivot = min(remainder)
        lead = remainder[pivot]
        remainder = {i: c / lead for i, c in remainder.items()}
        for row in self._rows.values():
            coefficient = row.get(pivot)
            if coefficient:
                axpy(row, -coefficient, remainder)
        self._rows[pivot] = remainder
        return True

    def extended(self, vectors: Iterable[Mapping[int, Fraction]]) -> "Subspace":
        copy = Subspace(self.dim)
        copy._rows = {p: dict(row) for p, row in self._rows.items()}
        for vector in vectors:
            copy.absorb(vector)
        return copy

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(sorted(self._rows))

    def basis(self) -> List[Vector]:
        """Sparse RREF rows in pivot order."""
        return [dict(self._rows[p]) for p in self.pivots]

    @property
    def rows(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(densify(self._rows[p], self.dim) for p in self.pivots)

    def complement(self) -> Tuple[int, ...]:
        """Non-pivot columns: coordinates of the canonical section."""
        return tuple(i for i in range(self.dim) if i not in self._rows)

    def is_zero(self) -> bool:
        return not self._rows

    def __bool__(self):
        return bool(self._rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.dim == other.dim and self._rows == other._rows

    def __repr__(self):
        return f"Subspace(dim={self.dim}, rank={self.rank})"


def rref(rows: Sequence[Sequence[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """
    Batch Gauss-Jordan elimination of a dense matrix.

    Within each column the pivot is the candidate of smallest nonzero
    magnitude. Returns the nonzero RREF rows and their pivot columns.
    """
    matrix = [[Fraction(c) for c in row] for row in rows]
    if not matrix:
        return [], []
    width = len(matrix[0])
    pivots: List[int] = []
    top = 0
    for column in range(width):
        candidates = [r for r in range(top, len(matrix)) if matrix[r][column]]
        if not candidates:
            continue
        best = min(candidates, key=lambda r: abs(matrix[r][column]))
        matrix[top], matrix[best] = matrix[best], matrix[top]
        lead = matrix[top][column]
        matrix[top] = [c / lead for c in matrix[top]]
        for r in range(len(matrix)):
            if r != top and matrix[r][column]:
                factor = matrix[r][column]
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[top])]
        pivots.append(column)
        top += 1
        if top == len(matrix):
            break
    return matrix[:top], pivots


def inverse(matrix: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """
    Inverse of a square rational matrix.

    Raises:
        SingularMatrixError: if the matrix is not invertible
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("inverse needs a square matrix")
    augmented = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    reduced, pivots = rref(augmented)
    if pivots[:n] != list(range(n)) or len(reduced) < n:
        raise SingularMatrixError("matrix is singular over Q")
    return [row[n:] for row in reduced]


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    return [[sum((Fraction(a[i][t]) * b[t][j] for t in range(len(b))), Fraction(0))
             for j in range(len(b[0]))] for i in range(len(a))]


def vandermonde(points: Sequence[Fraction]) -> List[List[Fraction]]:
    return [[Fraction(p) ** j for j in range(len(points))] for p in points]
