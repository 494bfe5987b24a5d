"""Odd-cycle-packing tree-decompositions and the integer-program reduction pipeline."""

__version__ = "0.1.0"
