"""Relative commutants of subfactors attached to complex Hadamard matrices."""

__version__ = "0.1.0"
