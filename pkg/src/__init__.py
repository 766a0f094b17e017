# nilcayley - exact Cayley-Hamilton identities over Lie nilpotent rings
"""
Exact computer algebra for symmetric determinants, right adjoint sequences and
right characteristic polynomials over noncommutative rings.
"""

__version__ = "0.1.0"
