"""
Galois fields and rings, character sums, mutually unbiased bases, phase operators,
cyclic codes and finite projective geometries, with numerical and exhaustive checks.
"""

__version__ = "0.1.0"
