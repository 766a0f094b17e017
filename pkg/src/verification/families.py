"""
2 x 2 matrices with tr(A) = tr(A^2) = 0 by construction.

Random matrices almost never satisfy both trace conditions, so the
trace-nilpotency checks draw from these families instead.
"""

import logging
from fractions import Fraction

from determinants.matpoly import RingMatrix
from rings.grassmann import GrassmannBackend
from rings.ringcore import Sampler

logger = logging.getLogger(__name__)

MAX_SOLVE_ITERATIONS = 64


def grassmann_odd_traceless(backend: GrassmannBackend, sampler: Sampler) -> RingMatrix:
    """
    [[a, b], [c, -a]] with a, b, c odd: a^2 = 0 and bc + cb = 0, so
    tr(A^2) = 2a^2 + bc + cb = 0.
    """
    if not isinstance(backend, GrassmannBackend):
        raise TypeError("grassmann_odd_traceless needs a Grassmann backend")
    a, b, c = (sampler.element(nilpotent=True).odd_part() for _ in range(3))
    return RingMatrix(backend, [[a, b], [c, -a]])


def sylvester_traceless(backend, sampler: Sampler) -> RingMatrix:
    """
    [[a, b], [c, -a]] with b = beta + n (beta a nonzero rational, n without
    constant term) and c the solution of bc + cb = -2a^2, found by iterating
    c <- -a^2/beta - (nc + cn)/(2 beta) until it is stable.

    Raises:
        ValueError: if the iteration does not stabilize (n is not nilpotent)
    """
    a = sampler.element(nilpotent=True)
    n = sampler.element(nilpotent=True)
    beta = sampler.coefficient()
    b = n + beta
    target = a * a * Fraction(-2)

    c = backend.zero()
    for step in range(MAX_SOLVE_ITERATIONS):
        following = a * a * (-1 / beta) - (n * c + c * n) * (1 / (2 * beta))
        if following == c:
            break
        c = following
    else:
        raise ValueError(f"bc + cb = -2a^2 did not stabilize over {backend.describe()}")

    if b * c + c * b != target:
        raise ValueError(f"bc + cb = -2a^2 has no fixed-point solution over {backend.describe()}")
    logger.debug("Sylvester solve over %s stabilized after %d steps", backend.describe(), step)
    return RingMatrix(backend, [[a, b], [c, -a]])
