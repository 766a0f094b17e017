"""
Right determinant theory over noncommutative rings.

Symmetric determinant and symmetric adjoint (double permutation sums with the
factor order kept), the right adjoint sequence P1 = A*, P_{j+1} = (A P1...Pj)*,
the k-th right adjoint and determinant, and the k-th right characteristic
polynomial p_{A,k}(x) = rdet_k(xI - A).
"""

import math
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Any, List, Optional, Tuple

from config.settings import settings
from determinants.matpoly import CentralPoly, PolynomialRing, RingMatrix
from rings.errors import ArithmeticConsistencyError, GuardrailError
from rings.linalg import inverse, vandermonde

logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]


@lru_cache(maxsize=None)
def signed_permutations(n: int) -> Tuple[Tuple[Permutation, int], ...]:
    """S_n in lexicographic order with signs."""
    result = []
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        result.append((perm, -1 if inversions % 2 else 1))
    return tuple(result)


@lru_cache(maxsize=None)
def fixing(n: int, position: int, value: int) -> Tuple[Tuple[Permutation, int], ...]:
    """Signed permutations sending position to value."""
    return tuple((perm, sign) for perm, sign in signed_permutations(n) if perm[position] == value)


def check_size(n: int, allow_large: bool = False) -> None:
    if n < 1:
        raise ValueError("matrices must be at least 1x1")
    if n > settings.max_n and not allow_large:
        raise GuardrailError(f"n={n} exceeds NILCAYLEY_MAX_N={settings.max_n} (use --allow-large)")


def check_level(k: int, allow_large: bool = False) -> None:
    if k < 1:
        raise ValueError("the right adjoint sequence is defined for k >= 1")
    if k > settings.max_k and not allow_large:
        raise GuardrailError(f"k={k} exceeds NILCAYLEY_MAX_K={settings.max_k} (use --allow-large)")


def _ordered_product(A: RingMatrix, alpha: Permutation, beta: Permutation, skip: Optional[int] = None):
    """a_{alpha(1),beta(1)} ... a_{alpha(n),beta(n)} left to right, leaving out position `skip`."""
    result = None
    for t in range(A.n):
        if t == skip:
            continue
        factor = A.entries[alpha[t]][beta[t]]
        if not factor:
            return None
        result = factor if result is None else result * factor
        if not result:
            return None
    return A.backend.one() if result is None else result


def _beta_partial(A: RingMatrix, beta: Permutation, beta_sign: int, alphas, skip: Optional[int] = None):
    total = A.backend.zero()
    for alpha, alpha_sign in alphas:
        term = _ordered_product(A, alpha, beta, skip)
        if term is None:
            continue
        total = total + term if alpha_sign * beta_sign > 0 else total - term
    return total


def sdet(A: RingMatrix, workers: int = 1, allow_large: bool = False):
    """
    Symmetric determinant sum_{alpha,beta} sgn(alpha)sgn(beta) a_{alpha(1),beta(1)}...a_{alpha(n),beta(n)}.

    With workers > 1 the outer beta sum is sharded over threads; partial sums
    are added back in beta order.

    Raises:
        GuardrailError: if n exceeds NILCAYLEY_MAX_N
    """
    check_size(A.n, allow_large)
    perms = signed_permutations(A.n)
    if workers > 1 and len(perms) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            partials = list(executor.map(lambda item: _beta_partial(A, item[0], item[1], perms), perms))
    else:
        partials = [_beta_partial(A, beta, sign, perms) for beta, sign in perms]
    return A.backend.sum(partials)


def sym_adjoint(A: RingMatrix, allow_large: bool = False) -> RingMatrix:
    """
    Symmetric adjoint A*: entry (r,s) sums over alpha(s) = s, beta(s) = r the
    signed ordered products leaving out position s. For n = 1, A* = [1].
    """
    check_size(A.n, allow_large)
    n = A.n
    rows = []
    for r in range(n):
        row = []
        for s in range(n):
            alphas = fixing(n, s, s)
            row.append(A.backend.sum(_beta_partial(A, beta, sign, alphas, skip=s) for beta, sign in fixing(n, s, r)))
        rows.append(row)
    return RingMatrix(A.backend, rows)


def minor(A: RingMatrix, row: int, column: int) -> RingMatrix:
    """A with the given row and column (0-based) deleted."""
    if A.n < 2:
        raise ValueError("a 1x1 matrix has no minors")
    return RingMatrix(A.backend, [[a for j, a in enumerate(r) if j != column]
                                  for i, r in enumerate(A.entries) if i != row])


@dataclass
class AdjointChain:
    """Right adjoint sequence of A up to level k."""

    A: RingMatrix
    matrices: List[RingMatrix]
    products: List[RingMatrix]
    tail: RingMatrix

    @property
    def k(self) -> int:
        return len(self.matrices)


def right_adjoint_chain(A: RingMatrix, k: int, allow_large: bool = False) -> AdjointChain:
    """
    P1 = A*, P_{j+1} = (A P1 ... Pj)*.

    Returns:
        AdjointChain with matrices [P1..Pk], products [A P1, A P1 P2, ...] and
        tail = P1 ... Pk
    """
    check_size(A.n, allow_large)
    check_level(k, allow_large)
    matrices: List[RingMatrix] = []
    products: List[RingMatrix] = []
    running = A
    tail = None
    for level in range(k):
        P = sym_adjoint(running, allow_large)
        matrices.append(P)
        running = running * P
        products.append(running)
        tail = P if tail is None else tail * P
        logger.debug("Adjoint chain over %s: level %d done", A.backend.describe(), level + 1)
    return AdjointChain(A, matrices, products, tail)


def radj(A: RingMatrix, k: int, allow_large: bool = False) -> RingMatrix:
    """k-th right adjoint n P1...Pk."""
    return right_adjoint_chain(A, k, allow_large).tail * A.n


def rdet(A: RingMatrix, k: int, allow_large: bool = False):
    """k-th right determinant tr(A P1...Pk)."""
    return right_adjoint_chain(A, k, allow_large).products[-1].trace()


def leading_coefficient(n: int, k: int) -> int:
    """n * ((n-1)!)^(1 + n + ... + n^(k-1))."""
    return n * math.factorial(n - 1) ** sum(n ** j for j in range(k))


@dataclass
class CharPolyResult:
    """Coefficients l_0..l_{n^k} of p_{A,k}(x)."""

    k: int
    n: int
    coefficients: Tuple[Any, ...]
    backend: Any

    @property
    def poly(self) -> CentralPoly:
        return CentralPoly(self.backend, self.coefficients)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self):
        return self.coefficients[-1]

    def to_strings(self) -> List[str]:
        return [self.backend.render(c) for c in self.coefficients]


def characteristic_matrix(A: RingMatrix) -> RingMatrix:
    """xI - A over R[x]."""
    ring = PolynomialRing(A.backend)
    x = ring.x()
    n = A.n
    return RingMatrix(ring, [[(x if i == j else ring.zero()) - ring.constant(A.entries[i][j])
                              for j in range(n)] for i in range(n)])


def _expected(A: RingMatrix, k: int) -> Tuple[int, Any]:
    return A.n ** k, A.backend.from_rational(leading_coefficient(A.n, k))


def char_poly(A: RingMatrix, k: int, allow_large: bool = False) -> CharPolyResult:
    """
    p_{A,k}(x) = rdet_k(xI - A), computed over R[x].

    Raises:
        ArithmeticConsistencyError: if the degree is not n^k or the leading
            coefficient is not n((n-1)!)^(1+n+...+n^(k-1))
        GuardrailError: if n or k exceeds its cap
    """
    check_size(A.n, allow_large)
    check_level(k, allow_large)
    p = rdet(characteristic_matrix(A), k, allow_large)
    degree, lead = _expected(A, k)
    if p.degree != degree or p.leading != lead:
        raise ArithmeticConsistencyError(
            f"p_(A,{k}) has degree {p.degree} and leading coefficient {A.backend.render(p.leading)}, "
            f"expected degree {degree} and {A.backend.render(lead)}")
    logger.debug("char_poly over %s: n=%d k=%d degree %d", A.backend.describe(), A.n, k, degree)
    return CharPolyResult(k, A.n, p.coefficients, A.backend)


def char_poly_by_evaluation(A: RingMatrix, k: int, allow_large: bool = False) -> CharPolyResult:
    """
    Same coefficients from rdet_k(cI - A) at c = 0..n^k and Vandermonde
    interpolation; substituting a rational for the central x is a ring map.
    """
    check_size(A.n, allow_large)
    check_level(k, allow_large)
    degree = A.n ** k
    points = [Fraction(c) for c in range(degree + 1)]
    values = [rdet(RingMatrix.scalar(A.backend, A.n, c) - A, k, allow_large) for c in points]
    weights = inverse(vandermonde(points))
    coefficients = tuple(A.backend.sum(values[c] * weights[i][c] for c in range(len(points)) if weights[i][c])
                         for i in range(degree + 1))
    return CharPolyResult(k, A.n, coefficients, A.backend)
