"""Schemes over the field with one element.

A small computer-algebra library for commutative monoids, their prime
spectra, glued monoidal spaces, sheaves of modules, base extension to
ordinary rings, and zeta functions.
"""

__version__ = "0.1.0"
