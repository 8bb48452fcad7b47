"""Exact computations on the hyperplanes of the space c of convergent sequences."""

__version__ = "0.1.0"
