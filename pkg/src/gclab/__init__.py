"""Finite groupoids, torsors and group cohomology with exact certificates."""

__version__ = "0.1.0"
